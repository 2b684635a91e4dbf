#pragma once

#include "cuspcensus/exactnum.hpp"
#include "cuspcensus/matrix.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cuspcensus::qforms {

// ---------------------------------------------------------------------------
// Binary forms

/// a x^2 + b x y + c y^2.
struct BinaryForm {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    [[nodiscard]] std::int64_t discriminant() const { return b * b - 4 * a * c; }
    [[nodiscard]] bool is_reduced() const;
    [[nodiscard]] bool is_primitive() const;

    friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
    friend auto operator<=>(const BinaryForm&, const BinaryForm&) = default;
};

/// Gauss reduction to the unique reduced form in the proper equivalence
/// class. Throws InputError unless a > 0 and the discriminant is negative.
BinaryForm reduce_binary(BinaryForm f);

/// The reduced primitive forms of discriminant d, sorted.
std::vector<BinaryForm> reduced_forms(std::int64_t d);

/// Number of classes of primitive positive definite forms of discriminant d.
/// Throws InputError unless d < 0 and d = 0, 1 mod 4.
std::int64_t class_number(std::int64_t d);

// ---------------------------------------------------------------------------
// Integral lattices

using IntVector = std::vector<std::int64_t>;

struct ShortVector {
    IntVector coords;
    std::int64_t value = 0;
};

/// Symmetric integral Gram matrix of a lattice. Positive definiteness is
/// checked on demand by the operations that need it.
class GramLattice {
public:
    GramLattice() = default;
    /// Throws InputError if the matrix is not square and symmetric, or has
    /// entries beyond the supported magnitude, or dimension exceeds 16.
    explicit GramLattice(const IntMatrix& gram);

    static GramLattice identity(std::size_t d);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::int64_t operator()(std::size_t i, std::size_t j) const { return gram_[i * dim_ + j]; }
    [[nodiscard]] const Integer& determinant() const noexcept { return det_; }
    [[nodiscard]] IntMatrix matrix() const;

    [[nodiscard]] bool positive_definite() const;

    /// x^T G y, exact.
    [[nodiscard]] std::int64_t inner(const IntVector& x, const IntVector& y) const;
    [[nodiscard]] std::int64_t norm(const IntVector& x) const { return inner(x, x); }

    /// Short vectors up to `bound`, cached per lattice (shared across
    /// copies, initialization guarded).
    [[nodiscard]] const std::vector<ShortVector>& cached_short_vectors(std::int64_t bound) const;

    [[nodiscard]] std::int64_t max_diagonal() const;
    [[nodiscard]] std::int64_t min_diagonal() const;

    friend bool operator==(const GramLattice& a, const GramLattice& b)
    {
        return a.dim_ == b.dim_ && a.gram_ == b.gram_;
    }

private:
    struct Cache;

    std::size_t dim_ = 0;
    std::vector<std::int64_t> gram_;
    Integer det_ = 1;
    std::shared_ptr<Cache> cache_;
};

constexpr std::size_t kMaxLatticeDim = 16;

/// All v != 0 with v^T G v <= bound, one of each pair +-v (the last nonzero
/// coordinate is positive), in enumeration order. Fincke-Pohst over the
/// rational LDL^T decomposition: the walk runs in double precision with
/// widened pruning and each vector's norm is checked exactly.
/// Throws InputError if the lattice is not positive definite.
std::vector<ShortVector> short_vectors(const GramLattice& lattice, std::int64_t bound);

/// The same enumeration with every pruning decision in exact rationals.
std::vector<ShortVector> short_vectors_exact(const GramLattice& lattice, std::int64_t bound);

/// Minimum nonzero norm.
std::int64_t lattice_minimum(const GramLattice& lattice);

struct ReducedLattice {
    GramLattice lattice;
    IntMatrix transform; // columns: new basis in old coordinates; T^T G T = G'
};

/// Integral LLL (delta = 3/4) driven purely by the Gram matrix. The input
/// must be positive definite; the result is isometric to it.
ReducedLattice lll_reduce(const IntMatrix& gram);

/// Returns U with U^T G1 U = G2 if the lattices are isometric.
/// Throws InputError on a dimension mismatch or indefinite input.
std::optional<IntMatrix> isometry_test(const GramLattice& first, const GramLattice& second);

/// Checks U^T G1 U == G2 and |det U| == 1.
bool verify_isometry(const GramLattice& first, const GramLattice& second, const IntMatrix& u);

// ---------------------------------------------------------------------------
// Rational forms

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct Diagonalization {
    std::vector<Rational> diagonal;
    RatMatrix basis; // columns; basis^T G basis = diag(diagonal)
};

/// Exact congruence diagonalization. Throws InputError on a degenerate form.
Diagonalization diagonalize(const RatMatrix& gram);

class RationalForm {
public:
    /// Throws InputError unless square, symmetric, nondegenerate and of
    /// dimension at most 16.
    explicit RationalForm(RatMatrix gram);

    static RationalForm diagonal(const std::vector<Rational>& entries);

    [[nodiscard]] const RatMatrix& gram() const noexcept { return gram_; }
    [[nodiscard]] std::size_t dim() const noexcept { return gram_.rows(); }
    [[nodiscard]] const Signature& signature() const noexcept { return signature_; }
    [[nodiscard]] const Diagonalization& diagonalization() const noexcept { return diag_; }

    [[nodiscard]] Rational value(const std::vector<Rational>& x) const;
    [[nodiscard]] Rational bilinear(const std::vector<Rational>& x, const std::vector<Rational>& y) const;

private:
    RatMatrix gram_;
    Diagonalization diag_;
    Signature signature_;
};

Signature signature(const RationalForm& q);

/// Parses the plain-text Gram format: first line the dimension, then one row
/// per line of integers or p/q rationals; '#' starts a comment.
RatMatrix parse_gram_text(const std::string& text);
RatMatrix load_gram_file(const std::string& path);
std::string format_gram_text(const RatMatrix& gram);

/// Interprets a rational matrix as an integral lattice; throws InputError if
/// some entry is not an integer.
GramLattice to_lattice(const RatMatrix& gram);

// ---------------------------------------------------------------------------
// Local invariants

/// A place of Q: a prime, or 0 for the real place.
using Place = unsigned long;
constexpr Place kRealPlace = 0;

/// Hilbert symbol (a, b)_p in {+1, -1}. Throws InputError on a zero argument.
int hilbert_symbol(const Rational& a, const Rational& b, Place p);

/// Squarefree integer in the square class of a nonzero rational.
Integer squarefree_part(const Rational& a);

/// Hasse-Minkowski isotropy test over Q.
bool is_isotropic(const RationalForm& q);

} // namespace cuspcensus::qforms
