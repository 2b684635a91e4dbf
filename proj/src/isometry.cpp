#include "cuspcensus/error.hpp"
#include "cuspcensus/qforms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace cuspcensus::qforms {

namespace {

std::map<std::int64_t, std::size_t> value_histogram(const std::vector<ShortVector>& sv)
{
    std::map<std::int64_t, std::size_t> h;
    for (const auto& v : sv) {
        ++h[v.value];
    }
    return h;
}

struct Candidate {
    IntVector coords;
    IntVector image; // G1 * coords
};

class IsometrySearch {
public:
    IsometrySearch(const GramLattice& first, const GramLattice& second,
                   std::vector<std::vector<Candidate>> candidates, std::vector<std::size_t> order)
        : g1_(first), g2_(second), candidates_(std::move(candidates)), order_(std::move(order)),
          chosen_(order_.size(), nullptr)
    {
    }

    std::optional<IntMatrix> run()
    {
        if (!extend(0)) {
            return std::nullopt;
        }
        const std::size_t n = g1_.dim();
        IntMatrix u(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                u(i, j) = Integer(static_cast<long>(chosen_[j]->coords[i]));
            }
        }
        return u;
    }

private:
    static std::int64_t dot(const IntVector& a, const IntVector& b)
    {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            s += a[i] * b[i];
        }
        return s;
    }

    bool extend(std::size_t depth)
    {
        if (depth == order_.size()) {
            return true;
        }
        const std::size_t col = order_[depth];
        for (const Candidate& c : candidates_[col]) {
            bool ok = true;
            for (std::size_t s = 0; s < depth && ok; ++s) {
                const std::size_t other = order_[s];
                ok = dot(c.coords, chosen_[other]->image) == g2_(col, other);
            }
            if (!ok) {
                continue;
            }
            chosen_[col] = &c;
            if (extend(depth + 1)) {
                return true;
            }
        }
        chosen_[col] = nullptr;
        return false;
    }

    const GramLattice& g1_;
    const GramLattice& g2_;
    std::vector<std::vector<Candidate>> candidates_;
    std::vector<std::size_t> order_;
    std::vector<const Candidate*> chosen_;
};

using LocalInvariant = std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::size_t>>;

// Counts of (norm w, |<x, w>|) over the short vectors w; preserved by any
// isometry, and cheap compared to a dead end deep in the backtracking.
LocalInvariant local_invariant(const IntVector& gx, const std::vector<ShortVector>& sv)
{
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> counts;
    for (const auto& w : sv) {
        std::int64_t ip = 0;
        for (std::size_t i = 0; i < gx.size(); ++i) {
            ip += gx[i] * w.coords[i];
        }
        ++counts[{w.value, ip < 0 ? -ip : ip}];
    }
    return {counts.begin(), counts.end()};
}

constexpr std::size_t kLocalInvariantLimit = 4000;

IntVector apply_gram(const GramLattice& g, const IntVector& x)
{
    IntVector y(g.dim(), 0);
    for (std::size_t i = 0; i < g.dim(); ++i) {
        for (std::size_t j = 0; j < g.dim(); ++j) {
            y[i] += g(i, j) * x[j];
        }
    }
    return y;
}

} // namespace

std::optional<IntMatrix> isometry_test(const GramLattice& first, const GramLattice& second)
{
    if (first.dim() != second.dim()) {
        throw InputError("isometry test needs lattices of equal dimension");
    }
    if (!first.positive_definite() || !second.positive_definite()) {
        throw InputError("isometry test needs positive definite lattices");
    }
    if (first.determinant() != second.determinant()) {
        return std::nullopt;
    }
    const std::size_t n = first.dim();
    if (n == 0) {
        return IntMatrix(0, 0);
    }
    const std::int64_t bound = std::max(first.max_diagonal(), second.max_diagonal());
    const auto& sv1 = first.cached_short_vectors(bound);
    const auto& sv2 = second.cached_short_vectors(bound);
    if (value_histogram(sv1) != value_histogram(sv2)) {
        return std::nullopt;
    }

    // Images of the basis of `second` must be vectors of `first` with
    // matching norms; both signs are candidates.
    const bool refine = sv1.size() <= kLocalInvariantLimit;
    std::vector<LocalInvariant> targets(n);
    if (refine) {
        for (std::size_t j = 0; j < n; ++j) {
            IntVector ej(n, 0);
            ej[j] = 1;
            targets[j] = local_invariant(apply_gram(second, ej), sv2);
        }
    }
    std::vector<std::vector<Candidate>> candidates(n);
    for (const auto& v : sv1) {
        const IntVector image = apply_gram(first, v.coords);
        std::optional<LocalInvariant> inv;
        for (std::size_t j = 0; j < n; ++j) {
            if (second(j, j) != v.value) {
                continue;
            }
            if (refine) {
                if (!inv) {
                    inv = local_invariant(image, sv1);
                }
                if (*inv != targets[j]) {
                    continue;
                }
            }
            IntVector neg(n), neg_image(n);
            std::transform(v.coords.begin(), v.coords.end(), neg.begin(), [](std::int64_t x) { return -x; });
            std::transform(image.begin(), image.end(), neg_image.begin(), [](std::int64_t x) { return -x; });
            candidates[j].push_back({v.coords, image});
            candidates[j].push_back({std::move(neg), std::move(neg_image)});
        }
    }
    for (const auto& c : candidates) {
        if (c.empty()) {
            return std::nullopt;
        }
    }
    // Rarest column first, then prefer columns tied to those already placed.
    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        std::size_t best_links = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (placed[j]) {
                continue;
            }
            std::size_t links = 0;
            for (std::size_t k : order) {
                links += second(j, k) != 0 ? 1 : 0;
            }
            if (best == n || links > best_links ||
                (links == best_links && candidates[j].size() < candidates[best].size())) {
                best = j;
                best_links = links;
            }
        }
        placed[best] = true;
        order.push_back(best);
    }

    auto u = IsometrySearch(first, second, std::move(candidates), std::move(order)).run();
    if (u && !verify_isometry(first, second, *u)) {
        throw std::logic_error("isometry search produced an invalid transform");
    }
    return u;
}

bool verify_isometry(const GramLattice& first, const GramLattice& second, const IntMatrix& u)
{
    if (u.rows() != first.dim() || u.cols() != second.dim()) {
        return false;
    }
    if (u.transpose() * first.matrix() * u != second.matrix()) {
        return false;
    }
    return abs(determinant(u)) == 1;
}

} // namespace cuspcensus::qforms
