#include "cuspcensus/exactnum.hpp"

#include "cuspcensus/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace cuspcensus {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw InputError("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text)
{
    auto valid_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) {
            return false;
        }
        return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                           [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    auto strip_plus = [](const std::string& s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };

    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-') {
        throw InputError("malformed rational '" + text + "'");
    }
    return make_rational(Integer(strip_plus(num)), Integer(strip_plus(den)));
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

RationalInterval::RationalInterval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi)
{
    if (lo_ > hi_) {
        throw InputError("interval with lo > hi");
    }
}

namespace {

// Approximate binary exponent of |q|; only used to pick a rounding scale.
long magnitude_bits(const Rational& q)
{
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

Rational scale_pow2(const Rational& q, long k)
{
    Rational r;
    if (k >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpq_div_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    }
    return r;
}

Rational round_down(const Rational& q, unsigned bits)
{
    if (q == 0) {
        return q;
    }
    const long k = static_cast<long>(bits) - magnitude_bits(q);
    if (mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2) <= 2 * bits + 8) {
        return q;
    }
    return scale_pow2(Rational(floor(scale_pow2(q, k))), -k);
}

Rational round_up(const Rational& q, unsigned bits) { return -round_down(-q, bits); }

} // namespace

RationalInterval RationalInterval::rounded_outward(unsigned bits) const
{
    return RationalInterval(round_down(lo_, bits), round_up(hi_, bits));
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b)
{
    return RationalInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b)
{
    return RationalInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

RationalInterval operator-(const RationalInterval& a) { return RationalInterval(-a.hi_, -a.lo_); }

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b)
{
    const std::array<Rational, 4> p{a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    const auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    return RationalInterval(*mn, *mx);
}

RationalInterval operator/(const RationalInterval& a, const RationalInterval& b)
{
    if (b.contains_zero()) {
        throw InputError("interval division by an interval containing zero");
    }
    return a * RationalInterval(1 / b.hi_, 1 / b.lo_);
}

namespace {

// atan(1/x) for integer x >= 2, bracketed by consecutive partial sums of the
// alternating series. Stops once the next term is below 2^-bits.
RationalInterval atan_inverse(unsigned long x, unsigned bits)
{
    const Integer x2 = Integer(x) * x;
    const Rational tolerance = scale_pow2(Rational(1), -static_cast<long>(bits));
    Integer power = x; // x^(2k+1)
    Rational sum = 0;
    for (unsigned long k = 0;; ++k) {
        const Rational term = make_rational(1, Integer(2 * k + 1) * power);
        const Rational next = (k % 2 == 0) ? Rational(sum + term) : Rational(sum - term);
        if (term <= tolerance) {
            return RationalInterval(std::min(sum, next), std::max(sum, next));
        }
        sum = next;
        power *= x2;
    }
}

} // namespace

RationalInterval pi_enclosure(unsigned precision_bits)
{
    const unsigned inner = precision_bits + 6;
    const RationalInterval a = atan_inverse(5, inner);
    const RationalInterval b = atan_inverse(239, inner);
    const RationalInterval pi = RationalInterval(Rational(16)) * a - RationalInterval(Rational(4)) * b;
    return pi.rounded_outward(precision_bits + 8);
}

namespace {

Rational pow_exact(const Rational& x, unsigned k)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), k);
    return r;
}

} // namespace

RationalInterval interval_pow(const RationalInterval& x, unsigned k)
{
    if (k == 0) {
        return RationalInterval(Rational(1));
    }
    const Rational a = pow_exact(x.lo(), k);
    const Rational b = pow_exact(x.hi(), k);
    if (k % 2 == 1 || x.lo() >= 0) {
        return RationalInterval(a, b);
    }
    if (x.hi() <= 0) {
        return RationalInterval(b, a);
    }
    return RationalInterval(Rational(0), std::max(a, b));
}

RationalInterval sqrt_enclosure(const Rational& x, unsigned precision_bits)
{
    if (x < 0) {
        throw InputError("square root of a negative rational");
    }
    Integer scaled = x.get_num() * x.get_den();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * precision_bits);
    Integer s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    Integer den = x.get_den();
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), precision_bits);
    const Rational lo = make_rational(s, den);
    const Rational hi = (s * s == scaled) ? lo : make_rational(s + 1, den);
    return RationalInterval(lo, hi);
}

Integer factorial(unsigned m)
{
    if (m > kFactorialGuard) {
        throw ResourceError("factorial argument " + std::to_string(m) + " exceeds guard " +
                            std::to_string(kFactorialGuard));
    }
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), m);
    return r;
}

Comparison interval_compare(const RationalInterval& x, const Rational& c)
{
    if (x.lo() > c) {
        return Comparison::ProvenGreater;
    }
    if (x.hi() < c) {
        return Comparison::ProvenLess;
    }
    return Comparison::Undecided;
}

std::string to_string(Comparison c)
{
    switch (c) {
    case Comparison::ProvenGreater:
        return "ProvenGreater";
    case Comparison::ProvenLess:
        return "ProvenLess";
    case Comparison::Undecided:
        break;
    }
    return "Undecided";
}

DecidedComparison decide(const std::function<RationalInterval(unsigned)>& enclose,
                         const Rational& c,
                         unsigned start_bits,
                         unsigned cap_bits)
{
    for (unsigned bits = std::max(start_bits, 8U);; bits *= 2) {
        const unsigned used = std::min(bits, cap_bits);
        RationalInterval value = enclose(used);
        const Comparison verdict = interval_compare(value, c);
        if (verdict != Comparison::Undecided) {
            return {verdict, std::move(value), used};
        }
        if (used >= cap_bits) {
            throw ResourceError("comparison against " + to_string(c) + " undecided at " +
                                std::to_string(cap_bits) + " bits");
        }
    }
}

} // namespace cuspcensus

namespace cuspcensus {

bool is_prime(unsigned long n)
{
    if (n < 2) {
        return false;
    }
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

} // namespace cuspcensus
