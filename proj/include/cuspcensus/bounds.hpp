#pragma once

#include "cuspcensus/exactnum.hpp"
#include "cuspcensus/rootdata.hpp"

#include <span>
#include <string>
#include <vector>

namespace cuspcensus::bounds {

RationalInterval two_pi_enclosure(unsigned precision_bits);

/// Encloses prod_i m_i! / (2 pi)^(m_i + 1). The empty product is [1, 1].
RationalInterval prasad_product(std::span<const unsigned> exponents, unsigned precision_bits);

/// p^(r+1) / (p + 1). Throws InputError if p is not prime or r == 0.
Rational euler_lower_bound(unsigned long p, unsigned r);

/// p^(r+1) / ((p + 1) (r + 3)^2): the Euler-factor lower bound divided by
/// the coarse (r + 3)^2 bound on n^eps(v) #Xi.
Rational normalized_local_factor(unsigned long p, unsigned r);

/// Local factors below 1 can only occur for ranks below this cutoff...
constexpr unsigned kDelta0RankCutoff = 8;
/// ...and for primes below this one.
constexpr unsigned long kDelta0PrimeCutoff = 17;

struct LocalFactor {
    unsigned long prime = 0;
    unsigned rank = 0;
    Rational value;
};

struct Delta0Derivation {
    /// Product of the per-prime worst factors.
    Rational value;
    std::vector<LocalFactor> factors;
    /// For each rank r below the cutoff, the product over primes of the
    /// factors below 1 at that fixed rank.
    std::vector<LocalFactor> uniform_rank_products; // prime field unused
    /// Every factor below 1 seen during the scan.
    std::vector<LocalFactor> candidates;
    std::string reading;
};

Delta0Derivation delta0_derivation();
Rational derive_delta0();

/// Encloses (5 pi / 6)^2 * disc.
RationalInterval brauer_siegel_bound(const Integer& disc, unsigned precision_bits);

struct TailCertificate {
    rootdata::Family family = rootdata::Family::B;
    unsigned monotone_from_rank = 0; // value increases with rank from here on
    unsigned tail_rank = 0;          // value exceeds the threshold from here on
    RationalInterval value_at_tail;
};

struct FinitenessResult {
    Rational x;
    Rational delta0;
    Rational threshold; // x / delta0
    unsigned factor_exceeds_one_from = 0; // smallest m >= 6 with m!/(2pi)^(m+1) > 1
    std::vector<rootdata::LieType> types;
    std::vector<TailCertificate> tails;
    std::vector<std::string> trace;
};

constexpr unsigned kDefaultRankCap = 200;

/// Lists every B_r and D_r (both 1D and 2D) with
/// prasad_product / (2 * center_order_bound^2) <= x / delta0.
FinitenessResult finiteness_enumerate(const Rational& x,
                                      const Rational& delta0,
                                      unsigned precision_bits = kDefaultPrecisionBits,
                                      unsigned rank_cap = kDefaultRankCap);

enum class Verdict { Proven, NotProvenByThisBound };

std::string to_string(Verdict v);

struct BoundReport {
    unsigned dimension = 0;        // n for hyperbolic n-space
    std::string branch;            // which case analysis ran
    std::string anisotropic_type;  // Lie type of the definite part, e.g. "B14"
    std::vector<unsigned> exponents;
    RationalInterval prasad_product;
    RationalInterval discriminant_factor{Rational(1)};
    Rational discriminant_exponent{0};
    RationalInterval class_number_factor{Rational(1)};
    RationalInterval compared_value;
    Rational delta0_used{1};
    Rational threshold;
    Comparison comparison = Comparison::Undecided;
    Verdict verdict = Verdict::NotProvenByThisBound;
    unsigned precision_bits = 0;
    std::vector<std::string> notes;
};

/// Decides whether the volume bound rules out a one-cusped maximal
/// arithmetic lattice in Spin(n, 1). Throws InputError for n < 4.
BoundReport one_cusp_certificate(unsigned n, unsigned precision_bits = kDefaultPrecisionBits);

/// Coarse default for #delta(G(Q))'_Theta in the quadratic-form case:
/// 2 * (center order bound of Spin(n + 1 variables))^2, taking h, D, #T, Xi
/// all trivial.
Rational default_galois_bound(unsigned n);

} // namespace cuspcensus::bounds
