#include "cuspcensus/matrix.hpp"

#include "cuspcensus/error.hpp"

#include <utility>

namespace cuspcensus {

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = Rational(m(i, j));
        }
    }
    return r;
}

Integer determinant(const IntMatrix& input)
{
    if (input.rows() != input.cols()) {
        throw InputError("determinant of a non-square matrix");
    }
    const std::size_t n = input.rows();
    if (n == 0) {
        return 1;
    }
    IntMatrix a = input;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a(swap_row, k) == 0) {
                ++swap_row;
            }
            if (swap_row == n) {
                return 0;
            }
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(swap_row, j));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& input)
{
    if (input.rows() != input.cols()) {
        throw InputError("determinant of a non-square matrix");
    }
    RatMatrix a = input;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a(piv, k) == 0) {
            ++piv;
        }
        if (piv == n) {
            return 0;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
            }
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) {
                continue;
            }
            const Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= f * a(k, j);
            }
        }
    }
    return det;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a(piv, col) == 0) {
            ++piv;
        }
        if (piv == a.rows()) {
            continue;
        }
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::swap(a(row, j), a(piv, j));
        }
        const Rational lead = a(row, col);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            a(row, j) /= lead;
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) {
                continue;
            }
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < a.cols(); ++j) {
                a(i, j) -= f * a(row, j);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

RatMatrix kernel(const RatMatrix& m)
{
    RatMatrix a = m;
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (const auto p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (!is_pivot[j]) {
            free_cols.push_back(j);
        }
    }
    RatMatrix basis(a.cols(), free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        basis(free_cols[f], f) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            basis(pivots[r], f) = -a(r, free_cols[f]);
        }
    }
    return basis;
}

std::optional<RatMatrix> inverse(const RatMatrix& m)
{
    const std::size_t n = m.rows();
    if (n != m.cols()) {
        throw InputError("inverse of a non-square matrix");
    }
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = 1;
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        return std::nullopt;
    }
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv(i, j) = aug(i, n + j);
        }
    }
    return inv;
}

IntMatrix row_hermite_basis(const IntMatrix& generators)
{
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < generators.rows(); ++i) {
        std::vector<Integer> r(generators.cols());
        for (std::size_t j = 0; j < generators.cols(); ++j) {
            r[j] = generators(i, j);
        }
        rows.push_back(std::move(r));
    }
    const std::size_t n = generators.cols();
    std::vector<std::vector<Integer>> basis;
    for (std::size_t col = 0; col < n; ++col) {
        // Euclid on column `col` among the remaining rows.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) {
                    best = i;
                }
            }
            if (best == rows.size()) {
                break;
            }
            bool reduced_any = false;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][col] == 0) {
                    continue;
                }
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t());
                for (std::size_t j = col; j < n; ++j) {
                    rows[i][j] -= q * rows[best][j];
                }
                reduced_any = true;
            }
            if (!reduced_any) {
                if (rows[best][col] < 0) {
                    for (std::size_t j = col; j < n; ++j) {
                        rows[best][j] = -rows[best][j];
                    }
                }
                basis.push_back(rows[best]);
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
                break;
            }
        }
    }
    // Reduce entries above each pivot.
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::size_t pc = 0;
        while (basis[i][pc] == 0) {
            ++pc;
        }
        for (std::size_t k = 0; k < i; ++k) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), basis[k][pc].get_mpz_t(), basis[i][pc].get_mpz_t());
            if (q != 0) {
                for (std::size_t j = pc; j < n; ++j) {
                    basis[k][j] -= q * basis[i][j];
                }
            }
        }
    }
    IntMatrix out(basis.size(), n);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = basis[i][j];
        }
    }
    return out;
}

} // namespace cuspcensus
