#pragma once

#include "cuspcensus/qforms.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace cuspcensus::genus {

using qforms::GramLattice;
using qforms::IntVector;

/// Isometry invariants used to skip most backtracking tests: determinant,
/// minimum, and the norm histogram of vectors up to twice the minimum.
struct Fingerprint {
    Integer determinant;
    std::int64_t minimum = 0;
    std::map<std::int64_t, std::size_t> histogram;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
    friend bool operator<(const Fingerprint& a, const Fingerprint& b)
    {
        if (a.determinant != b.determinant) {
            return a.determinant < b.determinant;
        }
        if (a.minimum != b.minimum) {
            return a.minimum < b.minimum;
        }
        return a.histogram < b.histogram;
    }
};

Fingerprint fingerprint(const GramLattice& lattice);

struct NeighborStep {
    GramLattice base;
    unsigned long prime = 0;
    IntVector seed;      // lift with q(seed) = 0 mod p^2
    IntMatrix generator; // rows: p * (basis of the neighbor) in base coordinates
    GramLattice result;  // LLL-reduced Gram matrix of the neighbor
};

/// Throws InputError unless p is an odd prime not dividing det(L), L is
/// positive definite and dim(L) >= 3.
void check_admissible(const GramLattice& lattice, unsigned long p);

/// Smallest odd prime not dividing 2 det(L).
unsigned long default_prime(const GramLattice& lattice);

/// Projective isotropic lines of L / pL, each normalized so that its first
/// nonzero coordinate is 1, in lexicographic order.
std::vector<IntVector> isotropic_lines(const GramLattice& lattice, unsigned long p);

/// The p-neighbor L_v + Z v/p attached to an isotropic line.
NeighborStep neighbor(const GramLattice& lattice, unsigned long p, const IntVector& line);

/// One neighbor per isotropic line. Throws InputError on inadmissible input,
/// and if no isotropic line exists.
std::vector<GramLattice> p_neighbors(const GramLattice& lattice, unsigned long p);

constexpr std::size_t kDefaultBudget = 10000;

struct CensusOptions {
    /// Maximum number of pairwise non-isometric representatives.
    std::size_t budget = kDefaultBudget;
    /// Processes the isotropic lines of each lattice in a shuffled order.
    std::optional<std::uint64_t> shuffle_seed;
};

struct SpinorGenusCensus {
    std::vector<GramLattice> representatives;
    /// Sorted adjacency lists between representative indices.
    std::vector<std::vector<std::size_t>> edges;
    unsigned long prime = 0;
    bool exhausted = false;
    std::size_t neighbors_examined = 0;
    std::size_t isometry_tests = 0;
};

/// Closure of L under p-neighbors modulo isometry.
SpinorGenusCensus spinor_genus_classes(const GramLattice& lattice, unsigned long p, const CensusOptions& options = {});

} // namespace cuspcensus::genus
