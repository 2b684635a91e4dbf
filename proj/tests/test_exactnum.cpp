#include "cuspcensus/error.hpp"
#include "cuspcensus/exactnum.hpp"

#include <doctest.h>

#include <random>

using namespace cuspcensus;

TEST_SUITE("exactnum")
{
    TEST_CASE("pi enclosure brackets pi")
    {
        const auto pi8 = pi_enclosure(8);
        // 355/113 - 3e-7 < pi < 355/113: a classical bracket.
        const Rational upper(355, 113);
        const Rational lower = upper - make_rational(3, 10000000);
        CHECK(pi8.lo() <= lower);
        CHECK(pi8.hi() >= upper);
        CHECK(pi8.lo() >= make_rational(3141, 1000));
        CHECK(pi8.hi() <= make_rational(3142, 1000));
        CHECK(pi8.lo() > 3);
        CHECK(pi8.hi() < 4);

        CHECK(pi_enclosure(16).width() <= make_rational(1, 65536));
        const auto pi64 = pi_enclosure(64);
        CHECK(lower < pi64.lo());
        CHECK(pi64.hi() < upper);
    }

    TEST_CASE("pi enclosure never widens with more precision")
    {
        RationalInterval prev = pi_enclosure(8);
        for (unsigned bits = 16; bits <= 512; bits *= 2) {
            const auto next = pi_enclosure(bits);
            CHECK(next.width() <= prev.width());
            CHECK(next.width() <= Rational(1) / Rational(Integer(1) << bits));
            // Both contain pi, so they overlap.
            CHECK(next.lo() <= prev.hi());
            CHECK(prev.lo() <= next.hi());
            prev = next;
        }
    }

    TEST_CASE("interval_pow")
    {
        CHECK(interval_pow(RationalInterval(Rational(2)), 3) == RationalInterval(Rational(8)));
        CHECK(interval_pow(RationalInterval(Rational(-1), Rational(1)), 2) ==
              RationalInterval(Rational(0), Rational(1)));
        CHECK(interval_pow(RationalInterval(Rational(-2), Rational(1)), 3) ==
              RationalInterval(Rational(-8), Rational(1)));
        CHECK(interval_pow(RationalInterval(Rational(-3), Rational(-2)), 2) ==
              RationalInterval(Rational(4), Rational(9)));
        CHECK(interval_pow(RationalInterval(Rational(5)), 0) == RationalInterval(Rational(1)));
        // pi^2 = 9.86960440...
        // pi^2 = 9.8696044010893...
        const auto pi2 = interval_pow(pi_enclosure(16), 2);
        CHECK(pi2.contains(make_rational(98696, 10000)));
        CHECK(pi2.contains(make_rational(98696044011L, 10000000000L)));
        CHECK(pi2.width() < make_rational(1, 1000));
        const auto fine = interval_pow(pi_enclosure(64), 2);
        CHECK(fine.lo() > make_rational(98696044010L, 10000000000L));
        CHECK(fine.hi() < make_rational(98696044011L, 10000000000L));
    }

    TEST_CASE("factorial")
    {
        CHECK(factorial(0) == 1);
        CHECK(factorial(5) == 120);
        const Integer f27("10888869450418352160768000000");
        CHECK(factorial(27) == f27);
        Integer iter = 1;
        for (unsigned k = 2; k <= 28; ++k) {
            iter *= k;
        }
        CHECK(factorial(28) == iter);
        CHECK(f27 * 28 == factorial(28));
        CHECK_THROWS_AS(factorial(kFactorialGuard + 1), ResourceError);
    }

    TEST_CASE("interval_compare")
    {
        const RationalInterval x(Rational(2), Rational(3));
        CHECK(interval_compare(x, Rational(1)) == Comparison::ProvenGreater);
        CHECK(interval_compare(x, Rational(5)) == Comparison::ProvenLess);
        CHECK(interval_compare(x, make_rational(5, 2)) == Comparison::Undecided);
        CHECK(interval_compare(x, Rational(2)) == Comparison::Undecided);
    }

    TEST_CASE("decide escalates precision and gives up at the cap")
    {
        // The enclosure only separates pi from 3.1415926 beyond 24 bits.
        const Rational c("31415926/10000000");
        const auto d = decide([](unsigned bits) { return pi_enclosure(bits / 8); }, c, 64, 512);
        CHECK(d.verdict == Comparison::ProvenGreater);
        CHECK(d.precision_bits > 64);
        const auto pi = pi_enclosure(600);
        CHECK_THROWS_AS(decide([&](unsigned) { return pi; }, pi.lo() + pi.width() / 2, 128, 512), ResourceError);
    }

    TEST_CASE("rationals are canonical")
    {
        CHECK(make_rational(6, -4) == make_rational(-3, 2));
        CHECK(make_rational(6, -4).get_den() == 2);
        CHECK(parse_rational("-10/4") == make_rational(-5, 2));
        CHECK(parse_rational("7") == 7);
        CHECK_THROWS_AS(parse_rational("1/0"), InputError);
        CHECK_THROWS_AS(parse_rational("x"), InputError);
        CHECK_THROWS_AS(parse_rational(""), InputError);
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<long> dist(-50, 50);
        for (int i = 0; i < 500; ++i) {
            const long a = dist(rng), b = dist(rng) | 1, c = dist(rng), d = dist(rng) | 1;
            CHECK((make_rational(a, b) == make_rational(c, d)) == (Integer(a) * d == Integer(c) * b));
        }
    }

    TEST_CASE("division by an interval containing zero is an error")
    {
        const RationalInterval one(Rational(1));
        CHECK_THROWS_AS(one / RationalInterval(Rational(-1), Rational(1)), InputError);
        CHECK(one / RationalInterval(Rational(2), Rational(4)) == RationalInterval(make_rational(1, 4), make_rational(1, 2)));
    }

    TEST_CASE("sqrt enclosure")
    {
        const auto r = sqrt_enclosure(Rational(2), 64);
        CHECK(r.lo() * r.lo() <= 2);
        CHECK(r.hi() * r.hi() >= 2);
        CHECK(r.width() <= Rational(1) / Rational(Integer(1) << 64));
        CHECK(sqrt_enclosure(make_rational(9, 4), 32).contains(make_rational(3, 2)));
    }

    TEST_CASE("rounding outward keeps the interval")
    {
        const RationalInterval x(make_rational(1, 3), make_rational(2, 3));
        const auto r = x.rounded_outward(10);
        CHECK(r.contains(x));
        CHECK(r.width() < x.width() + make_rational(1, 256));
    }

    TEST_CASE("is_prime")
    {
        CHECK_FALSE(is_prime(0));
        CHECK_FALSE(is_prime(1));
        CHECK(is_prime(2));
        CHECK(is_prime(17));
        CHECK_FALSE(is_prime(91));
        CHECK(is_prime(7919));
    }
}
