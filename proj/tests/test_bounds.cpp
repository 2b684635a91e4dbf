#include "cuspcensus/bounds.hpp"
#include "cuspcensus/error.hpp"
#include "cuspcensus/qforms.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace cuspcensus;
using namespace cuspcensus::bounds;
using rootdata::type_B;
using rootdata::type_D;

namespace {

// Double-precision reference through lgamma; only good to ~1e-12 relative.
double log_prasad_reference(const std::vector<unsigned>& exps)
{
    const double log_two_pi = std::log(2.0 * M_PI);
    double s = 0;
    for (unsigned m : exps) {
        s += std::lgamma(m + 1.0) - (m + 1.0) * log_two_pi;
    }
    return s;
}

double log_mid(const RationalInterval& x)
{
    const Rational mid = (x.lo() + x.hi()) / 2;
    long e_num = 0, e_den = 0;
    const double n = mpz_get_d_2exp(&e_num, mid.get_num_mpz_t());
    const double d = mpz_get_d_2exp(&e_den, mid.get_den_mpz_t());
    return std::log(n / d) + static_cast<double>(e_num - e_den) * std::log(2.0);
}

} // namespace

TEST_SUITE("bounds")
{
    TEST_CASE("prasad product of the empty exponent list")
    {
        const auto p = prasad_product({}, 64);
        CHECK(p == RationalInterval(Rational(1)));
    }

    TEST_CASE("prasad product at the even crossover")
    {
        const auto b13 = rootdata::exponents(type_B(13));
        const auto b14 = rootdata::exponents(type_B(14));
        CHECK(prasad_product(b13, 128).hi() < 1);
        CHECK(prasad_product(b14, 128).lo() > 9);
    }

    TEST_CASE("prasad product agrees with an lgamma reference")
    {
        for (unsigned r = 1; r <= 40; ++r) {
            for (const auto& t : {type_B(r), type_D(std::max(r, 3u))}) {
                const auto exps = rootdata::exponents(t);
                const auto p = prasad_product(exps, 128);
                CHECK(p.lo() <= p.hi());
                CHECK(p.width() * 1000000 < p.lo());
                CHECK(log_mid(p) == doctest::Approx(log_prasad_reference(exps)).epsilon(1e-9));
            }
        }
        // mpmath at 40 digits: prasad(D15) = 0.92476126210429...
        const auto d15 = prasad_product(rootdata::exponents(type_D(15)), 128);
        CHECK(d15.lo() > make_rational(924761262104L, 1000000000000L));
        CHECK(d15.hi() < make_rational(924761262105L, 1000000000000L));
    }

    TEST_CASE("B_r product increases once the new factor exceeds one")
    {
        RationalInterval prev = prasad_product(rootdata::exponents(type_B(8)), 128);
        for (unsigned r = 9; r <= 60; ++r) {
            const auto next = prasad_product(rootdata::exponents(type_B(r)), 128);
            CHECK(next.lo() > prev.hi());
            prev = next;
        }
    }

    TEST_CASE("euler lower bound")
    {
        CHECK(euler_lower_bound(2, 1) == make_rational(4, 3));
        CHECK(euler_lower_bound(2, 8) == make_rational(512, 3));
        CHECK(euler_lower_bound(17, 1) == make_rational(289, 18));
        CHECK_THROWS_AS(euler_lower_bound(4, 1), InputError);
        CHECK_THROWS_AS(euler_lower_bound(3, 0), InputError);
    }

    TEST_CASE("normalized local factor")
    {
        CHECK(normalized_local_factor(2, 8) == make_rational(512, 363));
        CHECK(normalized_local_factor(2, 8) > 1);
        CHECK(normalized_local_factor(2, 1) == make_rational(1, 12));
        Integer p9;
        mpz_ui_pow_ui(p9.get_mpz_t(), 17, 9);
        CHECK(normalized_local_factor(17, 8) == Rational(p9) / Rational(18 * 121));
        CHECK(normalized_local_factor(17, 8) > 1);
    }

    TEST_CASE("the cutoffs hold: no factor below one at r >= 8 or p >= 17")
    {
        for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 101UL}) {
            for (unsigned r = 1; r <= 40; ++r) {
                if (r >= kDelta0RankCutoff || p >= kDelta0PrimeCutoff) {
                    CHECK(normalized_local_factor(p, r) >= 1);
                }
            }
        }
    }

    TEST_CASE("delta0 derivation lists exact factors")
    {
        const auto d = delta0_derivation();
        CHECK(d.value <= 1);
        CHECK(d.value > 0);
        Rational product = 1;
        for (const auto& f : d.factors) {
            CHECK(f.value < 1);
            CHECK(f.value == normalized_local_factor(f.prime, f.rank));
            // The chosen rank minimizes the factor for its prime.
            for (unsigned r = 1; r < kDelta0RankCutoff; ++r) {
                CHECK(f.value <= normalized_local_factor(f.prime, r));
            }
            product *= f.value;
        }
        CHECK(product == d.value);
        CHECK(derive_delta0() == d.value);
        // Independent recomputation of the per-prime minima.
        Rational expected = 1;
        for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
            Rational best = 1;
            for (unsigned r = 1; r < 8; ++r) {
                Integer num;
                mpz_ui_pow_ui(num.get_mpz_t(), p, r + 1);
                best = std::min(best, Rational(Rational(num) / Rational(Integer((p + 1) * (r + 3) * (r + 3)))));
            }
            expected *= best;
        }
        CHECK(d.value == expected);
        CHECK(d.value == make_rational(1, 12) * make_rational(9, 64) * make_rational(25, 96) * make_rational(49, 128) *
                             make_rational(121, 192) * make_rational(169, 224));
        REQUIRE(d.uniform_rank_products.size() == 7);
        CHECK(d.uniform_rank_products[1].value == make_rational(3, 125));
    }

    TEST_CASE("brauer-siegel bound")
    {
        // (5 pi / 6)^2 = 6.8538919452009434853...
        const auto one = brauer_siegel_bound(1, 64);
        CHECK(one.lo() > make_rational(68538919452L, 10000000000L));
        CHECK(one.hi() < make_rational(68538919453L, 10000000000L));
        const auto three = brauer_siegel_bound(3, 64);
        CHECK(three == RationalInterval(one.lo() * 3, one.hi() * 3));
        CHECK(brauer_siegel_bound(4, 64).hi() >= qforms::class_number(-4));
        CHECK_THROWS_AS(brauer_siegel_bound(0, 64), InputError);
    }

    TEST_CASE("finiteness enumeration")
    {
        const auto tiny = finiteness_enumerate(Rational(1) / Rational(Integer("1" + std::string(100, '0'))), make_rational(3, 200));
        CHECK(tiny.types.empty());

        const auto f = finiteness_enumerate(Rational(1), make_rational(3, 200));
        CHECK(f.factor_exceeds_one_from == 17);
        CHECK(f.tails.size() == 2);
        CHECK_FALSE(f.types.empty());
        for (const auto& t : f.tails) {
            CHECK(t.tail_rank >= t.monotone_from_rank);
            CHECK(t.value_at_tail.lo() > f.threshold);
        }
        // B14 still passes at x = 1: its product over 2 * 2^2 is about 1.25,
        // well below 200/3. Everything from B15 on is excluded.
        CHECK(std::find(f.types.begin(), f.types.end(), type_B(14)) != f.types.end());
        for (unsigned r = 15; r <= 60; ++r) {
            CHECK(std::find(f.types.begin(), f.types.end(), type_B(r)) == f.types.end());
        }
        CHECK_FALSE(f.trace.empty());

        const auto lo = finiteness_enumerate(make_rational(1, 10), make_rational(3, 200));
        const auto hi = finiteness_enumerate(Rational(10), make_rational(3, 200));
        for (const auto& t : lo.types) {
            CHECK(std::find(f.types.begin(), f.types.end(), t) != f.types.end());
        }
        for (const auto& t : f.types) {
            CHECK(std::find(hi.types.begin(), hi.types.end(), t) != hi.types.end());
        }
        CHECK_THROWS_AS(finiteness_enumerate(Rational(0), make_rational(3, 200)), InputError);
        CHECK_THROWS_AS(finiteness_enumerate(Rational(1), Rational(2)), InputError);
        CHECK_THROWS_AS(finiteness_enumerate(Rational(1), make_rational(3, 200), 128, 5), ResourceError);
    }

    TEST_CASE("one-cusp certificates")
    {
        CHECK(one_cusp_certificate(30).verdict == Verdict::Proven);
        CHECK(one_cusp_certificate(28).verdict == Verdict::NotProvenByThisBound);
        CHECK(one_cusp_certificate(10).verdict == Verdict::NotProvenByThisBound);
        const auto r31 = one_cusp_certificate(31);
        CHECK(r31.verdict == Verdict::Proven);
        CHECK(r31.discriminant_exponent == make_rational(31, 2));
        CHECK(r31.anisotropic_type == "D15");
        // Without the 3^(31/2) factor the n = 31 case would fail.
        CHECK(r31.compared_value.lo() / r31.discriminant_factor.hi() < 8);
        CHECK(one_cusp_certificate(33).threshold == 4);
        CHECK(one_cusp_certificate(35).threshold == 8);
        CHECK_THROWS_AS(one_cusp_certificate(3), InputError);
    }

    TEST_CASE("default galois bound")
    {
        CHECK(default_galois_bound(10) == 8);
        CHECK(default_galois_bound(11) == 32);
    }
}
