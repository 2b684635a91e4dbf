#include "cuspcensus/error.hpp"
#include "cuspcensus/qforms.hpp"

#include <fstream>
#include <sstream>

namespace cuspcensus::qforms {

namespace {

// Congruence operations: basis column i += f * column j.
void add_multiple(RatMatrix& a, RatMatrix& basis, std::size_t i, std::size_t j, const Rational& f)
{
    const std::size_t n = a.rows();
    for (std::size_t r = 0; r < n; ++r) {
        basis(r, i) += f * basis(r, j);
    }
    for (std::size_t c = 0; c < n; ++c) {
        a(i, c) += f * a(j, c);
    }
    for (std::size_t r = 0; r < n; ++r) {
        a(r, i) += f * a(r, j);
    }
}

void swap_basis(RatMatrix& a, RatMatrix& basis, std::size_t i, std::size_t j)
{
    const std::size_t n = a.rows();
    for (std::size_t r = 0; r < n; ++r) {
        std::swap(basis(r, i), basis(r, j));
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(i, c), a(j, c));
    }
    for (std::size_t r = 0; r < n; ++r) {
        std::swap(a(r, i), a(r, j));
    }
}

} // namespace

Diagonalization diagonalize(const RatMatrix& gram)
{
    if (!gram.symmetric()) {
        throw InputError("quadratic form Gram matrix must be square and symmetric");
    }
    const std::size_t n = gram.rows();
    RatMatrix a = gram;
    RatMatrix basis = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t j = k + 1;
            while (j < n && a(j, j) == 0) {
                ++j;
            }
            if (j < n) {
                swap_basis(a, basis, k, j);
            } else {
                j = k + 1;
                while (j < n && a(k, j) == 0) {
                    ++j;
                }
                if (j == n) {
                    throw InputError("degenerate quadratic form");
                }
                add_multiple(a, basis, k, j, Rational(1));
            }
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) != 0) {
                add_multiple(a, basis, i, k, -a(i, k) / a(k, k));
            }
        }
    }
    Diagonalization out;
    out.basis = std::move(basis);
    for (std::size_t k = 0; k < n; ++k) {
        out.diagonal.push_back(a(k, k));
    }
    return out;
}

RationalForm::RationalForm(RatMatrix gram) : gram_(std::move(gram))
{
    if (gram_.rows() > kMaxLatticeDim) {
        throw InputError("form dimension exceeds 16");
    }
    if (gram_.rows() == 0) {
        throw InputError("empty quadratic form");
    }
    diag_ = diagonalize(gram_);
    for (const auto& v : diag_.diagonal) {
        (v > 0 ? signature_.positive : signature_.negative) += 1;
    }
}

RationalForm RationalForm::diagonal(const std::vector<Rational>& entries)
{
    RatMatrix g(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        g(i, i) = entries[i];
    }
    return RationalForm(std::move(g));
}

Rational RationalForm::bilinear(const std::vector<Rational>& x, const std::vector<Rational>& y) const
{
    Rational s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) {
            s += x[i] * gram_(i, j) * y[j];
        }
    }
    return s;
}

Rational RationalForm::value(const std::vector<Rational>& x) const { return bilinear(x, x); }

Signature signature(const RationalForm& q) { return q.signature(); }

RatMatrix parse_gram_text(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<Rational>> rows;
    std::optional<std::size_t> dim;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) {
            tokens.push_back(tok);
        }
        if (tokens.empty()) {
            continue;
        }
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (!dim) {
            if (tokens.size() != 1) {
                throw InputError(where + "expected the dimension alone");
            }
            const Rational d = parse_rational(tokens[0]);
            if (d.get_den() != 1 || d < 1 || d > static_cast<long>(kMaxLatticeDim)) {
                throw InputError(where + "dimension must be an integer in [1, 16]");
            }
            dim = d.get_num().get_ui();
            continue;
        }
        if (tokens.size() != *dim) {
            throw InputError(where + "expected " + std::to_string(*dim) + " entries");
        }
        if (rows.size() == *dim) {
            throw InputError(where + "too many rows");
        }
        std::vector<Rational> row;
        for (const auto& tok : tokens) {
            try {
                row.push_back(parse_rational(tok));
            } catch (const InputError& e) {
                throw InputError(where + e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    if (!dim) {
        throw InputError("empty Gram file");
    }
    if (rows.size() != *dim) {
        throw InputError("expected " + std::to_string(*dim) + " rows, found " + std::to_string(rows.size()));
    }
    RatMatrix g(*dim, *dim);
    for (std::size_t i = 0; i < *dim; ++i) {
        for (std::size_t j = 0; j < *dim; ++j) {
            g(i, j) = rows[i][j];
        }
    }
    if (!g.symmetric()) {
        throw InputError("Gram matrix is not symmetric");
    }
    return g;
}

RatMatrix load_gram_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_gram_text(buf.str());
}

std::string format_gram_text(const RatMatrix& gram)
{
    std::ostringstream out;
    out << gram.rows() << '\n';
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        for (std::size_t j = 0; j < gram.cols(); ++j) {
            out << (j ? " " : "") << to_string(gram(i, j));
        }
        out << '\n';
    }
    return out.str();
}

GramLattice to_lattice(const RatMatrix& gram)
{
    IntMatrix m(gram.rows(), gram.cols());
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        for (std::size_t j = 0; j < gram.cols(); ++j) {
            if (gram(i, j).get_den() != 1) {
                throw InputError("Gram entry " + to_string(gram(i, j)) + " is not an integer");
            }
            m(i, j) = gram(i, j).get_num();
        }
    }
    return GramLattice(m);
}

} // namespace cuspcensus::qforms
