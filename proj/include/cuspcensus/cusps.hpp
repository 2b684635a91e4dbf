#pragma once

#include "cuspcensus/genus.hpp"
#include "cuspcensus/qforms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cuspcensus::cusps {

using qforms::RationalForm;

/// q written as a hyperbolic plane plus a definite part q'.
struct SplitForm {
    RatMatrix original;
    /// Columns e, f, w_1, ..., w_{n-1}: C^T Q C = [[0,1],[1,0]] + Q'.
    RatMatrix basis_change;
    RatMatrix q_prime_rational;
    /// scaling * q_prime_rational, primitive integral.
    qforms::GramLattice q_prime;
    Rational scaling;
    /// Height of the isotropic vector found, in diagonal coordinates.
    std::int64_t search_height_used = 0;
};

constexpr std::int64_t kDefaultSearchHeight = 1000;
constexpr std::int64_t kMaxSearchHeight = 100000;

/// Throws Error(Cocompact) for an anisotropic form, Error(SearchExhausted)
/// if no isotropic vector turns up below max_height (the search restarts
/// with a tenfold height until then), InputError unless the signature is
/// (n, 1) with n >= 2.
SplitForm split_hyperbolic(const RationalForm& q,
                           std::int64_t search_height = kDefaultSearchHeight,
                           std::int64_t max_height = kMaxSearchHeight);

enum class FieldKind { Rational, ImaginaryQuadratic, Quaternion };

/// Index bound for the unit group of the hermitian form over each base
/// algebra: 2, 6, 24.
int unit_group_constant(FieldKind kind);

enum class CountRoute { BinaryClassNumber, NeighborCensus };

struct CuspCertificate {
    SplitForm split;
    CountRoute route = CountRoute::NeighborCensus;
    std::optional<genus::SpinorGenusCensus> census;
    std::optional<qforms::BinaryForm> binary_form;
    std::int64_t binary_discriminant = 0;
    std::size_t principal_cusps = 0;
    /// False when the census ran out of budget: the count is then only a
    /// lower bound on the number of classes.
    bool complete = true;
    /// Whether the count is claimed as an equality (special parahoric at
    /// every place, adelic Iwasawa decomposition) or only as a lower bound.
    bool equality_claimed = true;
    std::string hypothesis;

    int c0 = 2;
    int c = 4;
    std::optional<Rational> galois_bound;
    std::string galois_bound_provenance;
    std::optional<Rational> maximal_lower_bound;
    std::optional<Integer> maximal_cusps_at_least;
};

struct CountOptions {
    std::optional<unsigned long> prime;
    std::size_t budget = genus::kDefaultBudget;
    bool assume_iwasawa = true;
};

/// Throws InputError if q' has rank below 2.
CuspCertificate principal_cusp_count(const SplitForm& split, const CountOptions& options = {});

/// Fills maximal_lower_bound = principal_cusps / (c * galois_bound).
/// Throws InputError if galois_bound < 1.
CuspCertificate maximal_lower_bound(CuspCertificate cert, const Rational& galois_bound, const std::string& provenance);

} // namespace cuspcensus::cusps
