#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace cuspcensus {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws InputError on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "a", "-a" or "a/b". Throws InputError on malformed text.
Rational parse_rational(const std::string& text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Closed interval [lo, hi] with exact rational endpoints.
///
/// Arithmetic is outward-sound: the result of every operation contains the
/// exact result for every choice of operands inside the input intervals.
class RationalInterval {
public:
    RationalInterval() : lo_(0), hi_(0) {}
    explicit RationalInterval(const Rational& point) : lo_(point), hi_(point) {}
    RationalInterval(const Rational& lo, const Rational& hi);

    [[nodiscard]] const Rational& lo() const noexcept { return lo_; }
    [[nodiscard]] const Rational& hi() const noexcept { return hi_; }
    [[nodiscard]] Rational width() const { return hi_ - lo_; }

    [[nodiscard]] bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    [[nodiscard]] bool contains(const RationalInterval& other) const
    {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }
    [[nodiscard]] bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }

    /// Widens the endpoints to dyadic rationals carrying roughly `bits`
    /// significant bits. Keeps long products from growing without bound.
    [[nodiscard]] RationalInterval rounded_outward(unsigned bits) const;

    friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
    /// Throws InputError when the divisor contains zero.
    friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator-(const RationalInterval& a);

    friend bool operator==(const RationalInterval& a, const RationalInterval& b)
    {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Rational lo_;
    Rational hi_;
};

/// Enclosure of pi with width at most 2^-precision_bits, from Machin's
/// formula 16 atan(1/5) - 4 atan(1/239) with alternating-series brackets.
RationalInterval pi_enclosure(unsigned precision_bits);

/// Encloses x^k for every real x in the interval.
RationalInterval interval_pow(const RationalInterval& x, unsigned k);

/// Encloses sqrt(x) for x >= 0 with width at most 2^-precision_bits.
RationalInterval sqrt_enclosure(const Rational& x, unsigned precision_bits);

constexpr unsigned kFactorialGuard = 10000;

/// Exact m!. Throws ResourceError when m exceeds kFactorialGuard.
Integer factorial(unsigned m);

enum class Comparison { ProvenGreater, ProvenLess, Undecided };

Comparison interval_compare(const RationalInterval& x, const Rational& c);

std::string to_string(Comparison c);

constexpr unsigned kDefaultPrecisionBits = 128;
constexpr unsigned kPrecisionCapBits = 512;

struct DecidedComparison {
    Comparison verdict;       // never Undecided
    RationalInterval value;   // enclosure at the precision that decided
    unsigned precision_bits;
};

/// Evaluates `enclose(bits)` and compares against c, doubling the precision
/// on Undecided until `cap_bits`. Throws ResourceError if still undecided.
DecidedComparison decide(const std::function<RationalInterval(unsigned)>& enclose,
                         const Rational& c,
                         unsigned start_bits = kDefaultPrecisionBits,
                         unsigned cap_bits = kPrecisionCapBits);

} // namespace cuspcensus

namespace cuspcensus {

/// Deterministic trial-division primality test.
bool is_prime(unsigned long n);

} // namespace cuspcensus
