#include "cuspcensus/error.hpp"
#include "cuspcensus/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace cuspcensus::qforms {

namespace {

// Keeps every inner product of short vectors comfortably inside int64.
constexpr std::int64_t kEntryLimit = std::int64_t{1} << 31;

} // namespace

struct GramLattice::Cache {
    std::mutex mutex;
    std::map<std::int64_t, std::vector<ShortVector>> by_bound;
};

GramLattice::GramLattice(const IntMatrix& gram) : dim_(gram.rows()), cache_(std::make_shared<Cache>())
{
    if (!gram.symmetric()) {
        throw InputError("Gram matrix must be square and symmetric");
    }
    if (dim_ > kMaxLatticeDim) {
        throw InputError("lattice dimension " + std::to_string(dim_) + " exceeds 16");
    }
    gram_.reserve(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            const Integer& v = gram(i, j);
            if (abs(v) >= kEntryLimit) {
                throw InputError("Gram entry " + v.get_str() + " too large");
            }
            gram_.push_back(v.get_si());
        }
    }
    det_ = cuspcensus::determinant(gram);
}

GramLattice GramLattice::identity(std::size_t d) { return GramLattice(IntMatrix::identity(d)); }

IntMatrix GramLattice::matrix() const
{
    IntMatrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            m(i, j) = Integer(static_cast<long>((*this)(i, j)));
        }
    }
    return m;
}

bool GramLattice::positive_definite() const
{
    // Leading principal minors.
    for (std::size_t k = 1; k <= dim_; ++k) {
        IntMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                minor(i, j) = Integer(static_cast<long>((*this)(i, j)));
            }
        }
        if (cuspcensus::determinant(minor) <= 0) {
            return false;
        }
    }
    return true;
}

std::int64_t GramLattice::inner(const IntVector& x, const IntVector& y) const
{
    __int128 acc = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] == 0) {
            continue;
        }
        __int128 row = 0;
        for (std::size_t j = 0; j < dim_; ++j) {
            row += static_cast<__int128>(gram_[i * dim_ + j]) * y[j];
        }
        acc += row * x[i];
    }
    if (acc > std::numeric_limits<std::int64_t>::max() || acc < std::numeric_limits<std::int64_t>::min()) {
        throw ResourceError("inner product overflows 64 bits");
    }
    return static_cast<std::int64_t>(acc);
}

const std::vector<ShortVector>& GramLattice::cached_short_vectors(std::int64_t bound) const
{
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->by_bound.find(bound);
    if (it == cache_->by_bound.end()) {
        it = cache_->by_bound.emplace(bound, short_vectors(*this, bound)).first;
    }
    return it->second;
}

std::int64_t GramLattice::max_diagonal() const
{
    std::int64_t m = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        m = std::max(m, (*this)(i, i));
    }
    return m;
}

std::int64_t GramLattice::min_diagonal() const
{
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < dim_; ++i) {
        m = std::min(m, (*this)(i, i));
    }
    return m;
}

namespace {

struct Ldl {
    std::vector<Rational> d;       // pivots
    std::vector<Rational> l;       // l[i * n + k] for i > k
};

// G = L D L^T with L unit lower triangular; nullopt unless positive definite.
std::optional<Ldl> ldl_positive(const GramLattice& g)
{
    const std::size_t n = g.dim();
    Ldl out;
    out.d.resize(n);
    out.l.assign(n * n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        Rational dj = Rational(static_cast<long>(g(j, j)));
        for (std::size_t k = 0; k < j; ++k) {
            dj -= out.l[j * n + k] * out.l[j * n + k] * out.d[k];
        }
        if (dj <= 0) {
            return std::nullopt;
        }
        out.d[j] = dj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rational v = Rational(static_cast<long>(g(i, j)));
            for (std::size_t k = 0; k < j; ++k) {
                v -= out.l[i * n + k] * out.l[j * n + k] * out.d[k];
            }
            out.l[i * n + j] = v / dj;
        }
    }
    return out;
}

class Enumerator {
public:
    Enumerator(const GramLattice& g, const Ldl& ldl, std::int64_t bound)
        : g_(g), ldl_(ldl), n_(g.dim()), bound_(bound), x_(n_, 0)
    {
    }

    std::vector<ShortVector> run()
    {
        if (n_ > 0) {
            descend(n_ - 1, Rational(bound_), true);
        }
        return std::move(out_);
    }

private:
    bool feasible(std::size_t k, const Rational& shift, std::int64_t x, const Rational& budget) const
    {
        const Rational t = shift + x;
        return ldl_.d[k] * t * t <= budget;
    }

    void visit(std::size_t k, const Rational& shift, std::int64_t x, const Rational& budget, bool upper_zero)
    {
        x_[k] = x;
        const Rational t = shift + x;
        const Rational rest = budget - ldl_.d[k] * t * t;
        if (k == 0) {
            if (upper_zero && x == 0) {
                return;
            }
            const std::int64_t v = g_.norm(x_);
            out_.push_back({x_, v});
        } else {
            descend(k - 1, rest, upper_zero && x == 0);
        }
    }

    // All integers x with d_k (x + shift)^2 <= budget form an interval that
    // contains the nearest integer to -shift whenever it is nonempty.
    void descend(std::size_t k, const Rational& budget, bool upper_zero)
    {
        Rational shift = 0;
        for (std::size_t i = k + 1; i < n_; ++i) {
            if (x_[i] != 0) {
                shift += ldl_.l[i * n_ + k] * x_[i];
            }
        }
        const Rational neg = -shift;
        const std::int64_t centre = floor(neg + Rational(1, 2)).get_si();
        const std::int64_t lowest = upper_zero ? 0 : std::numeric_limits<std::int64_t>::min();
        for (std::int64_t x = std::max(centre, lowest); feasible(k, shift, x, budget); ++x) {
            visit(k, shift, x, budget, upper_zero);
        }
        for (std::int64_t x = centre - 1; x >= lowest && feasible(k, shift, x, budget); --x) {
            visit(k, shift, x, budget, upper_zero);
        }
        x_[k] = 0;
    }

    const GramLattice& g_;
    const Ldl& ldl_;
    std::size_t n_;
    std::int64_t bound_;
    IntVector x_;
    std::vector<ShortVector> out_;
};

// Same walk in double precision. The rounding error of a shift is below
// 20 ulp of the magnitudes summed, and each level loses under 8 ulp of the
// bound from the budget; the pruning slack of 1e-9 on both dwarfs that for
// dimension <= 16, so no vector within the bound is lost. The exact norm
// check at the leaves drops the extras.
class FloatEnumerator {
public:
    FloatEnumerator(const GramLattice& g, const Ldl& ldl, std::int64_t bound)
        : g_(g), n_(g.dim()), bound_(bound), d_(n_), l_(n_ * n_), x_(n_, 0)
    {
        for (std::size_t i = 0; i < n_; ++i) {
            d_[i] = ldl.d[i].get_d();
            for (std::size_t k = 0; k < i; ++k) {
                l_[i * n_ + k] = ldl.l[i * n_ + k].get_d();
            }
        }
    }

    std::vector<ShortVector> run()
    {
        if (n_ > 0) {
            const double b = static_cast<double>(bound_);
            slack_ = kSlack * (1.0 + b);
            descend(n_ - 1, b, true);
        }
        return std::move(out_);
    }

private:
    static constexpr double kSlack = 1e-9;

    // Smallest |x + shift| compatible with the rounding error in shift.
    static double gap(double shift, double tol, std::int64_t x)
    {
        const double t = std::abs(static_cast<double>(x) + shift) - tol;
        return t > 0 ? t : 0.0;
    }

    void descend(std::size_t k, double budget, bool upper_zero)
    {
        double shift = 0;
        double mag = 0;
        for (std::size_t i = k + 1; i < n_; ++i) {
            if (x_[i] != 0) {
                const double term = l_[i * n_ + k] * static_cast<double>(x_[i]);
                shift += term;
                mag += std::abs(term);
            }
        }
        const double limit = budget + slack_;
        const auto tol = [&](std::int64_t x) { return kSlack * (1.0 + mag + std::abs(static_cast<double>(x))); };
        const auto feasible = [&](std::int64_t x) {
            const double t = gap(shift, tol(x), x);
            return d_[k] * t * t <= limit;
        };
        const auto visit = [&](std::int64_t x) {
            x_[k] = x;
            if (k == 0) {
                if (upper_zero && x == 0) {
                    return;
                }
                const std::int64_t v = g_.norm(x_);
                if (v <= bound_) {
                    out_.push_back({x_, v});
                }
                return;
            }
            const double t = gap(shift, tol(x), x);
            descend(k - 1, budget - d_[k] * t * t, upper_zero && x == 0);
        };
        const std::int64_t centre = static_cast<std::int64_t>(std::llround(-shift));
        const std::int64_t lowest = upper_zero ? 0 : std::numeric_limits<std::int64_t>::min();
        for (std::int64_t x = std::max(centre, lowest); feasible(x); ++x) {
            visit(x);
        }
        for (std::int64_t x = centre - 1; x >= lowest && feasible(x); --x) {
            visit(x);
        }
        x_[k] = 0;
    }

    const GramLattice& g_;
    std::size_t n_;
    std::int64_t bound_;
    std::vector<double> d_;
    std::vector<double> l_;
    double slack_ = 0;
    IntVector x_;
    std::vector<ShortVector> out_;
};

// Above this the double walk would lose too much relative precision.
constexpr std::int64_t kFloatBoundLimit = std::int64_t{1} << 40;

} // namespace

std::vector<ShortVector> short_vectors(const GramLattice& lattice, std::int64_t bound)
{
    const auto ldl = ldl_positive(lattice);
    if (!ldl) {
        throw InputError("short vector enumeration needs a positive definite lattice");
    }
    if (bound < 1) {
        return {};
    }
    if (bound <= kFloatBoundLimit) {
        return FloatEnumerator(lattice, *ldl, bound).run();
    }
    return Enumerator(lattice, *ldl, bound).run();
}

std::vector<ShortVector> short_vectors_exact(const GramLattice& lattice, std::int64_t bound)
{
    const auto ldl = ldl_positive(lattice);
    if (!ldl) {
        throw InputError("short vector enumeration needs a positive definite lattice");
    }
    if (bound < 1) {
        return {};
    }
    return Enumerator(lattice, *ldl, bound).run();
}

std::int64_t lattice_minimum(const GramLattice& lattice)
{
    const auto sv = lattice.cached_short_vectors(lattice.min_diagonal());
    std::int64_t m = lattice.min_diagonal();
    for (const auto& v : sv) {
        m = std::min(m, v.value);
    }
    return m;
}

ReducedLattice lll_reduce(const IntMatrix& gram_in)
{
    // Integral LLL on the Gram matrix (fraction-free d_i and lambda_ij),
    // indices shifted so that d[0] = 1 and d[i + 1] belongs to basis vector i.
    const std::size_t n = gram_in.rows();
    IntMatrix g = gram_in;
    IntMatrix h = IntMatrix::identity(n);
    if (n == 0) {
        return {GramLattice(g), h};
    }
    std::vector<Integer> d(n + 1, Integer(0));
    IntMatrix lambda(n, n);
    d[0] = 1;
    d[1] = g(0, 0);
    if (d[1] <= 0) {
        throw InputError("LLL needs a positive definite Gram matrix");
    }

    auto reduce = [&](std::size_t k, std::size_t l) {
        Integer twice = 2 * lambda(k, l);
        if (abs(twice) <= d[l + 1]) {
            return;
        }
        // q = nearest integer to lambda / d_l
        Integer q;
        Integer num = 2 * lambda(k, l) + d[l + 1];
        Integer den = 2 * d[l + 1];
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        // b_k -= q b_l on the Gram matrix.
        const Integer gkl = g(k, l);
        const Integer gll = g(l, l);
        g(k, k) = g(k, k) - 2 * q * gkl + q * q * gll;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) {
                continue;
            }
            g(k, i) -= q * g(l, i);
            g(i, k) = g(k, i);
        }
        for (std::size_t i = 0; i < n; ++i) {
            h(i, k) -= q * h(i, l);
        }
        lambda(k, l) -= q * d[l + 1];
        for (std::size_t i = 0; i < l; ++i) {
            lambda(k, i) -= q * lambda(l, i);
        }
    };

    auto swap = [&](std::size_t k, std::size_t kmax) {
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(h(i, k), h(i, k - 1));
        }
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(g(k, i), g(k - 1, i));
        }
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(g(i, k), g(i, k - 1));
        }
        for (std::size_t j = 0; j + 1 < k; ++j) {
            std::swap(lambda(k, j), lambda(k - 1, j));
        }
        const Integer lam = lambda(k, k - 1);
        Integer b = d[k - 1] * d[k + 1] + lam * lam;
        mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d[k].get_mpz_t());
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            const Integer t = lambda(i, k);
            Integer a = d[k + 1] * lambda(i, k - 1) - lam * t;
            mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d[k].get_mpz_t());
            lambda(i, k) = a;
            Integer c = b * t + lam * lambda(i, k);
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d[k + 1].get_mpz_t());
            lambda(i, k - 1) = c;
        }
        d[k] = b;
    };

    std::size_t k = 1;
    std::size_t kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 0; j <= k; ++j) {
                Integer u = g(k, j);
                for (std::size_t i = 0; i < j; ++i) {
                    u = d[i + 1] * u - lambda(k, i) * lambda(j, i);
                    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i].get_mpz_t());
                }
                if (j < k) {
                    lambda(k, j) = u;
                } else {
                    if (u <= 0) {
                        throw InputError("LLL needs a positive definite Gram matrix");
                    }
                    d[k + 1] = u;
                }
            }
        }
        reduce(k, k - 1);
        const Integer lam = lambda(k, k - 1);
        if (4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam * lam) {
            swap(k, kmax);
            k = std::max<std::size_t>(1, k - 1);
        } else {
            for (std::size_t l = k - 1; l-- > 0;) {
                reduce(k, l);
            }
            ++k;
        }
    }
    return {GramLattice(g), h};
}

} // namespace cuspcensus::qforms
