#include "cuspcensus/bounds.hpp"

#include "cuspcensus/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cuspcensus::bounds {

using cuspcensus::to_string;

using rootdata::Family;
using rootdata::LieType;

RationalInterval two_pi_enclosure(unsigned precision_bits)
{
    return RationalInterval(Rational(2)) * pi_enclosure(precision_bits + 1);
}

namespace {

unsigned bit_length(unsigned long v)
{
    unsigned n = 0;
    while (v != 0) {
        ++n;
        v >>= 1;
    }
    return n;
}

// x^k for x > 0, rounding outward after every multiplication.
RationalInterval pow_rounded(const RationalInterval& x, unsigned long k, unsigned bits)
{
    RationalInterval result(Rational(1));
    RationalInterval base = x.rounded_outward(bits);
    while (k != 0) {
        if (k & 1UL) {
            result = (result * base).rounded_outward(bits);
        }
        k >>= 1;
        if (k != 0) {
            base = (base * base).rounded_outward(bits);
        }
    }
    return result;
}

RationalInterval scaled(const RationalInterval& x, const Rational& c) { return RationalInterval(c) * x; }

} // namespace

RationalInterval prasad_product(std::span<const unsigned> exponents, unsigned precision_bits)
{
    if (exponents.empty()) {
        return RationalInterval(Rational(1));
    }
    unsigned long total = 0;
    Integer numerator = 1;
    for (const unsigned m : exponents) {
        total += m + 1UL;
        numerator *= factorial(m);
    }
    const unsigned work = precision_bits + 2 * bit_length(total) + 16;
    const RationalInterval denominator = pow_rounded(two_pi_enclosure(work), total, work);
    return (RationalInterval(Rational(numerator)) / denominator).rounded_outward(work);
}

Rational euler_lower_bound(unsigned long p, unsigned r)
{
    if (!is_prime(p)) {
        throw InputError(std::to_string(p) + " is not prime");
    }
    if (r == 0) {
        throw InputError("local rank must be positive");
    }
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), p, r + 1UL);
    return make_rational(power, Integer(p) + 1);
}

Rational normalized_local_factor(unsigned long p, unsigned r)
{
    const Integer r3 = Integer(r) + 3;
    return euler_lower_bound(p, r) / Rational(r3 * r3);
}

Delta0Derivation delta0_derivation()
{
    Delta0Derivation d;
    d.value = 1;
    std::map<unsigned, Rational> per_rank;
    for (unsigned long p = 2; p < kDelta0PrimeCutoff; ++p) {
        if (!is_prime(p)) {
            continue;
        }
        std::optional<LocalFactor> worst;
        for (unsigned r = 1; r < kDelta0RankCutoff; ++r) {
            const Rational f = normalized_local_factor(p, r);
            if (f >= 1) {
                continue;
            }
            d.candidates.push_back({p, r, f});
            auto [it, inserted] = per_rank.try_emplace(r, Rational(1));
            it->second *= f;
            if (!worst || f < worst->value) {
                worst = LocalFactor{p, r, f};
            }
        }
        if (worst) {
            d.value *= worst->value;
            d.factors.push_back(*worst);
        }
    }
    for (const auto& [r, prod] : per_rank) {
        d.uniform_rank_products.push_back({0, r, prod});
    }
    d.reading = "local factor p^(r+1)/((p+1)(r+3)^2) below 1 only for r < 8 and p < 17; "
                "one factor per prime at its minimizing rank";
    return d;
}

Rational derive_delta0() { return delta0_derivation().value; }

RationalInterval brauer_siegel_bound(const Integer& disc, unsigned precision_bits)
{
    if (disc < 1) {
        throw InputError("discriminant for the class number bound must be positive");
    }
    const RationalInterval c = scaled(pi_enclosure(precision_bits + 8), make_rational(5, 6));
    return scaled(interval_pow(c, 2), Rational(disc));
}

namespace {

RationalInterval factor_enclosure(unsigned m, unsigned bits)
{
    const std::vector<unsigned> single{m};
    return prasad_product(single, bits);
}

unsigned family_min_rank(Family f) { return f == Family::D ? 3 : 1; }

std::vector<unsigned> family_exponents(Family f, unsigned rank)
{
    return rootdata::exponents(f == Family::D ? rootdata::type_D(rank) : rootdata::type_B(rank));
}

unsigned family_center_bound(Family f)
{
    return rootdata::group_data(f == Family::D ? rootdata::type_D(3) : rootdata::type_B(1)).center_order_bound;
}

} // namespace

FinitenessResult finiteness_enumerate(const Rational& x, const Rational& delta0, unsigned precision_bits,
                                      unsigned rank_cap)
{
    if (x <= 0) {
        throw InputError("cusp bound x must be positive");
    }
    if (delta0 <= 0 || delta0 > 1) {
        throw InputError("delta0 must lie in (0, 1]");
    }
    FinitenessResult out;
    out.x = x;
    out.delta0 = delta0;
    out.threshold = x / delta0;

    // f(m + 1) / f(m) = (m + 1) / (2 pi), so f increases from m = 6 on once 2 pi < 7.
    const auto two_pi = decide(two_pi_enclosure, Rational(7), precision_bits);
    if (two_pi.verdict != Comparison::ProvenLess) {
        throw ResourceError("could not certify 2 pi < 7");
    }
    out.trace.push_back("2pi in [" + to_string(two_pi.value.lo()) + ", " + to_string(two_pi.value.hi()) +
                        "] < 7, so m!/(2pi)^(m+1) is increasing for m >= 6");
    unsigned m_star = 6;
    for (;; ++m_star) {
        if (m_star > 2 * rank_cap) {
            throw ResourceError("single factor never exceeded 1 below the rank cap");
        }
        const auto f = decide([m_star](unsigned b) { return factor_enclosure(m_star, b); }, Rational(1),
                              precision_bits);
        if (f.verdict == Comparison::ProvenGreater) {
            out.trace.push_back(std::to_string(m_star) + "!/(2pi)^" + std::to_string(m_star + 1) + " >= " +
                                to_string(f.value.lo()) + " > 1, hence every factor with m >= " +
                                std::to_string(m_star) + " exceeds 1");
            break;
        }
    }
    out.factor_exceeds_one_from = m_star;

    for (const Family family : {Family::B, Family::D}) {
        const unsigned cb = family_center_bound(family);
        const Rational scale = make_rational(1, 2 * cb * cb);
        const std::string name = family == Family::B ? "B" : "D";
        // B_r -> B_{r+1} multiplies by f(2r+1); D_r -> D_{r+1} by f(2r-1) * r / (2 pi).
        const unsigned monotone_from = family == Family::B ? m_star / 2 : std::max((m_star + 2) / 2, 7U);
        out.trace.push_back(name + "_r: value increases with r for r >= " + std::to_string(monotone_from) +
                            (family == Family::B ? " (new factor f(2r+1) > 1)"
                                                 : " (new factor f(2r-1) * r/(2pi) > 1)"));
        std::optional<TailCertificate> tail;
        for (unsigned r = family_min_rank(family); r <= rank_cap; ++r) {
            const auto exps = family_exponents(family, r);
            const auto decided = decide(
                [&](unsigned b) { return scaled(prasad_product(exps, b), scale); }, out.threshold, precision_bits);
            const bool excluded = decided.verdict == Comparison::ProvenGreater;
            if (!excluded) {
                if (family == Family::B) {
                    out.types.push_back(rootdata::type_B(r));
                } else {
                    out.types.push_back(rootdata::type_D(r, true));
                    out.types.push_back(rootdata::type_D(r, false));
                }
            }
            if (excluded && r >= monotone_from) {
                tail = TailCertificate{family, monotone_from, r, decided.value};
                out.trace.push_back(name + "_" + std::to_string(r) + ": value >= " + to_string(decided.value.lo()) +
                                    " > " + to_string(out.threshold) + "; all ranks >= " + std::to_string(r) +
                                    " excluded by monotonicity");
                break;
            }
        }
        if (!tail) {
            throw ResourceError("no tail exclusion for family " + name + " below rank cap " +
                                std::to_string(rank_cap));
        }
        out.tails.push_back(*tail);
    }
    return out;
}

std::string to_string(Verdict v) { return v == Verdict::Proven ? "Proven" : "NotProvenByThisBound"; }

BoundReport one_cusp_certificate(unsigned n, unsigned precision_bits)
{
    if (n < 4) {
        throw InputError("one-cusp certificate needs dimension n >= 4");
    }
    BoundReport rep;
    rep.dimension = n;
    rep.exponents = rootdata::orthogonal_exponents(n - 1);
    const unsigned r = static_cast<unsigned>(rep.exponents.size());
    rep.notes.push_back("parahoric factor exceeds 1 when every local rank is at least 8; delta0 replaced by 1");
    rep.notes.push_back("c = 4 since the spin group of q' has index two in its pin group");

    if (n % 2 == 0) {
        rep.branch = "n even: definite part of type B_r, r = (n-2)/2, require product > 8";
        rep.anisotropic_type = "B" + std::to_string(r);
        rep.threshold = 8;
    } else if (r % 2 == 0) {
        rep.branch = "n odd, r = (n-1)/2 even: definite part of type 1D_r, require product > 4";
        rep.anisotropic_type = "D" + std::to_string(r);
        rep.threshold = 4;
    } else {
        rep.branch = "n odd, r = (n-1)/2 odd: definite part of type D_r, require (6/(5 pi^2)) * product > 8";
        rep.anisotropic_type = "D" + std::to_string(r);
        rep.threshold = 8;
        if (n == 31) {
            rep.branch += " with discriminant factor 3^(31/2)";
            rep.discriminant_exponent = make_rational(31, 2);
            rep.notes.push_back("n = 31: D_l >= 3 contributes 3^(31/2), enclosed as sqrt(3^31)");
        }
    }
    const bool odd_rank_branch = n % 2 == 1 && r % 2 == 1;

    auto enclose = [&](unsigned bits) {
        rep.prasad_product = prasad_product(rep.exponents, bits);
        RationalInterval value = rep.prasad_product;
        if (odd_rank_branch) {
            const RationalInterval pi = pi_enclosure(bits + 8);
            rep.class_number_factor = RationalInterval(Rational(6)) / (RationalInterval(Rational(5)) * interval_pow(pi, 2));
            value = value * rep.class_number_factor;
        }
        if (rep.discriminant_exponent != 0) {
            Integer p3;
            mpz_ui_pow_ui(p3.get_mpz_t(), 3, 31);
            rep.discriminant_factor = sqrt_enclosure(Rational(p3), bits);
            value = value * rep.discriminant_factor;
        }
        return value;
    };
    const auto decided = decide(enclose, rep.threshold, precision_bits);
    rep.compared_value = decided.value;
    rep.comparison = decided.verdict;
    rep.precision_bits = decided.precision_bits;
    rep.verdict = decided.verdict == Comparison::ProvenGreater ? Verdict::Proven : Verdict::NotProvenByThisBound;
    return rep;
}

Rational default_galois_bound(unsigned n)
{
    if (n < 2) {
        throw InputError("hyperbolic dimension must be at least 2");
    }
    const unsigned center = (n % 2 == 0) ? 2 : 4;
    return Rational(2 * center * center);
}

} // namespace cuspcensus::bounds
