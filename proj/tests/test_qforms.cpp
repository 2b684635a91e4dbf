#include "cuspcensus/error.hpp"
#include "cuspcensus/qforms.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace cuspcensus;
using namespace cuspcensus::qforms;

namespace {

BinaryForm transform(const BinaryForm& f, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s)
{
    const auto value = [&](std::int64_t x, std::int64_t y) { return f.a * x * x + f.b * x * y + f.c * y * y; };
    return {value(p, r), 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s, value(q, s)};
}

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows)
{
    IntMatrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

RatMatrix rat_diag(const std::vector<long>& d)
{
    RatMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        m(i, i) = d[i];
    }
    return m;
}

std::vector<std::vector<std::int64_t>> rows_of(const GramLattice& g)
{
    std::vector<std::vector<std::int64_t>> rows(g.dim(), std::vector<std::int64_t>(g.dim()));
    for (std::size_t i = 0; i < g.dim(); ++i) {
        for (std::size_t j = 0; j < g.dim(); ++j) {
            rows[i][j] = g(i, j);
        }
    }
    return rows;
}

// Random unimodular matrix as a product of elementary moves.
IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int moves)
{
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> coef(-1, 1);
    for (int k = 0; k < moves; ++k) {
        const std::size_t i = idx(rng), j = idx(rng);
        if (i == j) {
            for (std::size_t r = 0; r < n; ++r) {
                u(r, i) = -u(r, i);
            }
            continue;
        }
        const int c = coef(rng);
        for (std::size_t r = 0; r < n; ++r) {
            u(r, i) += c * u(r, j);
        }
    }
    return u;
}

std::map<std::int64_t, std::size_t> histogram(const std::vector<ShortVector>& sv)
{
    std::map<std::int64_t, std::size_t> h;
    for (const auto& v : sv) {
        ++h[v.value];
    }
    return h;
}

} // namespace

TEST_SUITE("qforms")
{
    TEST_CASE("binary reduction examples")
    {
        CHECK(reduce_binary({1, 0, 1}) == BinaryForm{1, 0, 1});
        CHECK(reduce_binary({2, 2, 3}) == BinaryForm{2, 2, 3});
        const auto r = reduce_binary({3, 10, 9});
        CHECK(r == BinaryForm{1, 0, 2});
        CHECK(r.discriminant() == -8);
        CHECK_THROWS_AS(reduce_binary({-1, 0, 1}), InputError);
        CHECK_THROWS_AS(reduce_binary({1, 3, 1}), InputError);
    }

    TEST_CASE("reduction undoes random unimodular transforms")
    {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<std::int64_t> e(-3, 3);
        for (std::int64_t d = -3; d >= -200; --d) {
            if (((d % 4) + 4) % 4 > 1) {
                continue;
            }
            for (const auto& g : reduced_forms(d)) {
                for (int k = 0; k < 5; ++k) {
                    std::int64_t p = e(rng), q = e(rng), r = e(rng), s = e(rng);
                    if (p * s - q * r != 1) {
                        continue;
                    }
                    CHECK(reduce_binary(transform(g, p, q, r, s)) == g);
                }
            }
        }
    }

    TEST_CASE("class numbers")
    {
        CHECK(class_number(-4) == 1);
        CHECK(reduced_forms(-4) == std::vector<BinaryForm>{{1, 0, 1}});
        CHECK(class_number(-20) == 2);
        CHECK(reduced_forms(-20) == std::vector<BinaryForm>{{1, 0, 5}, {2, 2, 3}});
        CHECK(class_number(-23) == 3);
        CHECK(reduced_forms(-23) == std::vector<BinaryForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
        CHECK(class_number(-3) == 1);
        CHECK(class_number(-163) == 1);
        CHECK(class_number(-12) == 1); // (2,2,2) is not primitive
        CHECK_THROWS_AS(class_number(5), InputError);
        CHECK_THROWS_AS(class_number(-5), InputError);
        CHECK_THROWS_AS(class_number(0), InputError);
    }

    TEST_CASE("class numbers agree with the orbit-partition oracle")
    {
        for (std::int64_t d = -3; d >= -300; --d) {
            if (((d % 4) + 4) % 4 > 1) {
                continue;
            }
            CHECK_MESSAGE(class_number(d) == oracle::orbit_class_number(d), "d = " << d);
        }
    }

    TEST_CASE("short vector examples")
    {
        const auto i2 = short_vectors(GramLattice::identity(2), 1);
        CHECK(i2.size() == 2);
        for (const auto& v : i2) {
            CHECK(v.value == 1);
        }
        const auto h3 = histogram(short_vectors(GramLattice::identity(3), 2));
        CHECK(h3 == std::map<std::int64_t, std::size_t>{{1, 3}, {2, 6}});
        const auto hex = short_vectors(GramLattice(int_matrix({{2, 1}, {1, 2}})), 2);
        CHECK(hex.size() == 3);
        CHECK_THROWS_AS(short_vectors(GramLattice(int_matrix({{1, 2}, {2, 1}})), 2), InputError);
    }

    TEST_CASE("short vectors agree with a naive box search and the exact walk")
    {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 2 + trial % 3;
            IntMatrix base = IntMatrix::identity(n);
            std::uniform_int_distribution<int> diag(1, 4);
            for (std::size_t i = 0; i < n; ++i) {
                base(i, i) = diag(rng);
            }
            const IntMatrix u = random_unimodular(n, rng, 4);
            const GramLattice g(u.transpose() * base * u);
            const std::int64_t bound = 6;
            const auto fast = short_vectors(g, bound);
            const auto exact = short_vectors_exact(g, bound);
            // The box radius covers every vector of norm <= bound because
            // the coordinates satisfy |x| <= sqrt(bound * max eigenvalue of G^-1)
            // and that is small for these mild transforms; widen generously.
            const auto box = oracle::box_short_vectors(rows_of(g), bound, 12);
            CHECK(fast.size() == box.size());
            CHECK(exact.size() == box.size());
            CHECK(histogram(fast) == histogram(exact));
            for (const auto& v : fast) {
                CHECK(g.norm(v.coords) == v.value);
                CHECK(v.value <= bound);
            }
        }
    }

    TEST_CASE("lattice minimum and LLL")
    {
        const GramLattice hex(int_matrix({{2, 1}, {1, 2}}));
        CHECK(lattice_minimum(hex) == 2);
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 3 + trial % 4;
            const IntMatrix u = random_unimodular(n, rng, 12);
            const IntMatrix g = u.transpose() * u;
            const auto red = lll_reduce(g);
            CHECK(red.transform.transpose() * g * red.transform == red.lattice.matrix());
            CHECK(abs(determinant(red.transform)) == 1);
            CHECK(red.lattice.determinant() == 1);
            // Lovasz condition with delta = 3/4 bounds the first vector by 2^((n-1)/2).
            CHECK(red.lattice(0, 0) <= (std::int64_t{1} << (n - 1)));
        }
    }

    TEST_CASE("isometry examples")
    {
        const auto i2 = GramLattice::identity(2);
        const auto u = isometry_test(i2, i2);
        REQUIRE(u.has_value());
        CHECK(verify_isometry(i2, i2, *u));
        CHECK_FALSE(isometry_test(i2, GramLattice(int_matrix({{1, 0}, {0, 2}}))).has_value());

        const GramLattice a(int_matrix({{2, 1}, {1, 2}}));
        const GramLattice b(int_matrix({{2, -1}, {-1, 2}}));
        const auto w = isometry_test(a, b);
        REQUIRE(w.has_value());
        CHECK(verify_isometry(a, b, *w));
        // Brute force over entries in [-2, 2] agrees that such a U exists.
        std::size_t found = 0;
        for (long p = -2; p <= 2; ++p)
            for (long q = -2; q <= 2; ++q)
                for (long r = -2; r <= 2; ++r)
                    for (long s = -2; s <= 2; ++s) {
                        IntMatrix m(2, 2);
                        m(0, 0) = p, m(0, 1) = q, m(1, 0) = r, m(1, 1) = s;
                        found += verify_isometry(a, b, m) ? 1 : 0;
                    }
        CHECK(found == 12);
        CHECK_THROWS_AS(isometry_test(i2, GramLattice::identity(3)), InputError);
    }

    TEST_CASE("isometry test on transformed pairs")
    {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t n = 2 + trial % 5;
            IntMatrix base = IntMatrix::identity(n);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                base(i, i) = 2;
                base(i, i + 1) = base(i + 1, i) = (trial % 2 == 0) ? 1 : 0;
            }
            base(n - 1, n - 1) = 3;
            const GramLattice g1(base);
            const IntMatrix u = random_unimodular(n, rng, 8);
            const GramLattice g2(u.transpose() * base * u);
            const auto fwd = isometry_test(g1, g2);
            const auto back = isometry_test(g2, g1);
            REQUIRE(fwd.has_value());
            REQUIRE(back.has_value());
            CHECK(verify_isometry(g1, g2, *fwd));
            CHECK(verify_isometry(g2, g1, *back));
        }
    }

    TEST_CASE("signature")
    {
        CHECK(signature(RationalForm(rat_diag({1, 1, -1}))) == Signature{2, 1});
        RatMatrix h(2, 2);
        h(0, 1) = h(1, 0) = 1;
        CHECK(signature(RationalForm(h)) == Signature{1, 1});
        CHECK(signature(RationalForm(rat_diag({1, 2, 3, -5}))) == Signature{3, 1});
        CHECK_THROWS_AS(RationalForm(rat_diag({1, 0, 1})), InputError);
    }

    TEST_CASE("diagonalization is a congruence")
    {
        RatMatrix g(3, 3);
        g(0, 1) = g(1, 0) = 1;
        g(1, 2) = g(2, 1) = make_rational(1, 2);
        g(2, 2) = 3;
        const auto d = diagonalize(g);
        RatMatrix diag(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            diag(i, i) = d.diagonal[i];
        }
        CHECK(d.basis.transpose() * g * d.basis == diag);
    }

    TEST_CASE("gram text format")
    {
        const auto m = parse_gram_text("# comment\n2\n1 1/2 # trailing\n1/2 3\n");
        CHECK(m(0, 1) == make_rational(1, 2));
        CHECK(parse_gram_text(format_gram_text(m)) == m);
        CHECK_THROWS_AS(parse_gram_text("2\n1 0\n"), InputError);
        CHECK_THROWS_AS(parse_gram_text("2\n1 0\n0 x\n"), InputError);
        CHECK_THROWS_AS(parse_gram_text("2\n1 0 0\n0 1\n"), InputError);
        CHECK_THROWS_AS(parse_gram_text(""), InputError);
        CHECK_THROWS_AS(to_lattice(m), InputError);
        CHECK_THROWS_AS(load_gram_file("/nonexistent/file.gram"), InputError);
    }

    TEST_CASE("hilbert symbol examples")
    {
        for (long b : {-7L, -1L, 2L, 3L, 10L}) {
            for (Place p : {kRealPlace, 2UL, 3UL, 5UL, 7UL}) {
                CHECK(hilbert_symbol(Rational(1), Rational(b), p) == 1);
            }
        }
        CHECK(hilbert_symbol(Rational(-1), Rational(-1), kRealPlace) == -1);
        CHECK(hilbert_symbol(Rational(-1), Rational(-1), 2) == -1);
        CHECK(hilbert_symbol(Rational(2), Rational(5), 5) == oracle::hilbert_brute(2, 5, 5));
        CHECK(hilbert_symbol(Rational(2), Rational(5), 5) == -1);
        CHECK_THROWS_AS(hilbert_symbol(Rational(0), Rational(1), 3), InputError);
    }

    TEST_CASE("hilbert symbol agrees with brute-force local solubility")
    {
        std::vector<long> sf;
        for (long a = -30; a <= 30; ++a) {
            if (a == 0) {
                continue;
            }
            bool squarefree = true;
            for (long q = 2; q * q <= std::abs(a); ++q) {
                squarefree = squarefree && std::abs(a) % (q * q) != 0;
            }
            if (squarefree) {
                sf.push_back(a);
            }
        }
        for (long a : sf) {
            for (long b : sf) {
                CHECK_MESSAGE(hilbert_symbol(Rational(a), Rational(b), 2) == oracle::hilbert_brute(a, b, 2),
                              "(" << a << ", " << b << ")_2");
            }
        }
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<std::size_t> pick(0, sf.size() - 1);
        for (int k = 0; k < 40; ++k) {
            const long a = sf[pick(rng)], b = sf[pick(rng)];
            for (long p : {3L, 5L}) {
                CHECK_MESSAGE(hilbert_symbol(Rational(a), Rational(b), p) == oracle::hilbert_brute(a, b, p),
                              "(" << a << ", " << b << ")_" << p);
            }
        }
        // Scaling by squares, including rational ones, changes nothing.
        CHECK(hilbert_symbol(make_rational(2 * 9, 4), Rational(5 * 49), 5) == hilbert_symbol(Rational(2), Rational(5), 5));
    }

    TEST_CASE("isotropy examples")
    {
        CHECK(is_isotropic(RationalForm(rat_diag({1, 1, -1}))));
        CHECK_FALSE(is_isotropic(RationalForm(rat_diag({1, 1, 1}))));
        CHECK_FALSE(is_isotropic(RationalForm(rat_diag({1, 1, -7}))));
        CHECK(is_isotropic(RationalForm(rat_diag({1, 1, -2}))));
        CHECK_FALSE(is_isotropic(RationalForm(rat_diag({1, 1, 1, -7}))));
        CHECK(is_isotropic(RationalForm(rat_diag({1, 1, 1, -3}))));
        CHECK(is_isotropic(RationalForm(rat_diag({1, 1, 1, 1, -7}))));
        CHECK_FALSE(is_isotropic(RationalForm(rat_diag({1, -3}))));
        CHECK(is_isotropic(RationalForm(rat_diag({1, -4}))));
        // x^2 + y^2 = 7 z^2 has no solution with coordinates up to 60.
        bool found = false;
        for (long x = 0; x <= 60 && !found; ++x)
            for (long y = 0; y <= 60 && !found; ++y)
                for (long z = 1; z <= 60 && !found; ++z)
                    found = x * x + y * y == 7 * z * z;
        CHECK_FALSE(found);
    }

    TEST_CASE("isotropy agrees with bounded search when the search succeeds")
    {
        std::mt19937_64 rng(21);
        std::uniform_int_distribution<long> coef(-12, 12);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = 2 + trial % 3;
            std::vector<long> d(n);
            for (auto& x : d) {
                do {
                    x = coef(rng);
                } while (x == 0);
            }
            const RationalForm q(rat_diag(d));
            bool found = false;
            std::vector<long> x(n, -6);
            while (!found) {
                long v = 0;
                bool nonzero = false;
                for (std::size_t i = 0; i < n; ++i) {
                    v += d[i] * x[i] * x[i];
                    nonzero = nonzero || x[i] != 0;
                }
                found = nonzero && v == 0;
                std::size_t i = 0;
                while (i < n && x[i] == 6) {
                    x[i++] = -6;
                }
                if (i == n) {
                    break;
                }
                ++x[i];
            }
            const bool definite = std::all_of(d.begin(), d.end(), [](long v) { return v > 0; }) ||
                                  std::all_of(d.begin(), d.end(), [](long v) { return v < 0; });
            if (found) {
                CHECK(is_isotropic(q));
            }
            if (definite) {
                CHECK_FALSE(is_isotropic(q));
            }
        }
    }
}
