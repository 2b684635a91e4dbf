#include "cuspcensus/error.hpp"
#include "cuspcensus/qforms.hpp"

#include <set>

namespace cuspcensus::qforms {

namespace {

constexpr unsigned long kTrialLimit = 10'000'000;

// Prime factorization of |n| (n != 0) by trial division.
std::vector<std::pair<Integer, unsigned>> factor(Integer n)
{
    n = abs(n);
    std::vector<std::pair<Integer, unsigned>> out;
    for (unsigned long p = 2; n > 1; p = (p == 2 ? 3 : p + 2)) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
            out.emplace_back(n, 1);
            break;
        }
        if (Integer(p) * p > n) {
            out.emplace_back(n, 1);
            break;
        }
        if (p > kTrialLimit) {
            throw ResourceError("cannot factor " + n.get_str() + " by trial division");
        }
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        if (e > 0) {
            out.emplace_back(Integer(p), e);
        }
    }
    return out;
}

int legendre(const Integer& a, const Integer& p)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

int mod8(const Integer& x)
{
    Integer r;
    mpz_mod_ui(r.get_mpz_t(), x.get_mpz_t(), 8);
    return static_cast<int>(r.get_ui());
}

// Splits a squarefree integer as p^alpha * u.
std::pair<unsigned, Integer> split_prime(const Integer& a, const Integer& p)
{
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) != 0) {
        Integer u;
        mpz_divexact(u.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        return {1, u};
    }
    return {0, a};
}

int hilbert_squarefree(const Integer& a, const Integer& b, Place place)
{
    if (place == kRealPlace) {
        return (a < 0 && b < 0) ? -1 : 1;
    }
    const Integer p(place);
    const auto [alpha, u] = split_prime(a, p);
    const auto [beta, v] = split_prime(b, p);
    if (place == 2) {
        const int u8 = mod8(u);
        const int v8 = mod8(v);
        const int eps_u = ((u8 - 1) / 2) % 2;
        const int eps_v = ((v8 - 1) / 2) % 2;
        const int om_u = ((u8 * u8 - 1) / 8) % 2;
        const int om_v = ((v8 * v8 - 1) / 8) % 2;
        const int e = eps_u * eps_v + static_cast<int>(alpha) * om_v + static_cast<int>(beta) * om_u;
        return e % 2 == 0 ? 1 : -1;
    }
    int s = 1;
    if (alpha == 1 && beta == 1 && (place % 4) == 3) {
        s = -s;
    }
    if (beta == 1) {
        s *= legendre(u, p);
    }
    if (alpha == 1) {
        s *= legendre(v, p);
    }
    return s;
}

bool square_in_qp(const Integer& d, Place place)
{
    // d squarefree
    if (place == 2) {
        return mod8(d) == 1;
    }
    const Integer p(place);
    if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) != 0) {
        return false;
    }
    return legendre(d, p) == 1;
}

} // namespace

Integer squarefree_part(const Rational& a)
{
    if (a == 0) {
        throw InputError("square class of zero");
    }
    const Integer n = a.get_num() * a.get_den();
    Integer out = n < 0 ? -1 : 1;
    for (const auto& [p, e] : factor(n)) {
        if (e % 2 == 1) {
            out *= p;
        }
    }
    return out;
}

int hilbert_symbol(const Rational& a, const Rational& b, Place p)
{
    if (a == 0 || b == 0) {
        throw InputError("Hilbert symbol of zero");
    }
    if (p != kRealPlace && !is_prime(p)) {
        throw InputError(std::to_string(p) + " is not a prime");
    }
    return hilbert_squarefree(squarefree_part(a), squarefree_part(b), p);
}

bool is_isotropic(const RationalForm& q)
{
    const std::size_t n = q.dim();
    const Signature sig = q.signature();
    if (sig.positive == 0 || sig.negative == 0) {
        return false;
    }
    if (n >= 5) {
        return true;
    }
    std::vector<Integer> a;
    Integer prod = 1;
    for (const auto& v : q.diagonalization().diagonal) {
        a.push_back(squarefree_part(v));
        prod *= a.back();
    }
    const Integer d = squarefree_part(Rational(prod));
    if (n == 2) {
        return squarefree_part(Rational(-prod)) == 1;
    }
    std::set<unsigned long> primes{2};
    for (const auto& x : a) {
        for (const auto& [p, e] : factor(x)) {
            if (!p.fits_ulong_p()) {
                throw ResourceError("prime factor too large for local analysis");
            }
            primes.insert(p.get_ui());
        }
    }
    for (const unsigned long p : primes) {
        int eps = 1;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                eps *= hilbert_squarefree(a[i], a[j], p);
            }
        }
        if (n == 3) {
            if (eps != hilbert_squarefree(Integer(-1), squarefree_part(Rational(-d)), p)) {
                return false;
            }
        } else if (square_in_qp(d, p) && eps != hilbert_squarefree(Integer(-1), Integer(-1), p)) {
            return false;
        }
    }
    return true;
}

} // namespace cuspcensus::qforms
