#include "cuspcensus/genus.hpp"

#include "cuspcensus/error.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace cuspcensus::genus {

Fingerprint fingerprint(const GramLattice& lattice)
{
    Fingerprint fp;
    fp.determinant = lattice.determinant();
    const auto& sv = lattice.cached_short_vectors(2 * lattice.min_diagonal());
    fp.minimum = lattice.min_diagonal();
    for (const auto& v : sv) {
        fp.minimum = std::min(fp.minimum, v.value);
    }
    for (const auto& v : sv) {
        if (v.value <= 2 * fp.minimum) {
            ++fp.histogram[v.value];
        }
    }
    return fp;
}

void check_admissible(const GramLattice& lattice, unsigned long p)
{
    if (lattice.dim() < 3) {
        throw InputError("neighbor method needs rank at least 3; binary forms go through class numbers");
    }
    if (p == 2 || !is_prime(p)) {
        throw InputError("neighbor prime must be an odd prime, got " + std::to_string(p));
    }
    if (mpz_divisible_ui_p(lattice.determinant().get_mpz_t(), p) != 0) {
        throw InputError("neighbor prime " + std::to_string(p) + " divides the determinant");
    }
    if (!lattice.positive_definite()) {
        throw InputError("neighbor method needs a positive definite lattice");
    }
}

unsigned long default_prime(const GramLattice& lattice)
{
    for (unsigned long p = 3;; p += 2) {
        if (is_prime(p) && mpz_divisible_ui_p(lattice.determinant().get_mpz_t(), p) == 0) {
            return p;
        }
    }
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p)
{
    // p prime: a^(p-2)
    std::int64_t result = 1;
    std::int64_t base = mod(a, p);
    for (std::int64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) {
            result = result * base % p;
        }
        base = base * base % p;
    }
    return result;
}

} // namespace

std::vector<IntVector> isotropic_lines(const GramLattice& lattice, unsigned long p)
{
    const std::size_t n = lattice.dim();
    const auto pp = static_cast<std::int64_t>(p);
    std::vector<IntVector> lines;
    for (std::size_t lead = 0; lead < n; ++lead) {
        IntVector v(n, 0);
        v[lead] = 1;
        for (;;) {
            if (mod(lattice.norm(v), pp) == 0) {
                lines.push_back(v);
            }
            // Odometer over the coordinates after `lead`, last one fastest.
            std::size_t i = n;
            while (i > lead + 1) {
                --i;
                if (++v[i] < pp) {
                    break;
                }
                v[i] = 0;
            }
            const bool wrapped = std::all_of(v.begin() + static_cast<std::ptrdiff_t>(lead) + 1, v.end(),
                                             [](std::int64_t x) { return x == 0; });
            if (wrapped) {
                break;
            }
        }
    }
    return lines;
}

NeighborStep neighbor(const GramLattice& lattice, unsigned long p, const IntVector& line)
{
    const std::size_t n = lattice.dim();
    const auto pp = static_cast<std::int64_t>(p);
    if (line.size() != n || mod(lattice.norm(line), pp) != 0) {
        throw InputError("neighbor seed is not an isotropic vector mod p");
    }
    IntVector gv(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            gv[i] = mod(gv[i] + mod(lattice(i, j), pp) * mod(line[j], pp), pp);
        }
    }
    std::size_t k = 0;
    while (k < n && gv[k] == 0) {
        ++k;
    }
    if (k == n) {
        throw InputError("isotropic seed lies in the radical mod p");
    }
    // Lift so that q(seed) = 0 mod p^2 by moving along e_k.
    IntVector seed = line;
    const std::int64_t q = lattice.norm(line);
    const std::int64_t t = mod(-(q / pp) % pp * inverse_mod(2 * gv[k], pp), pp);
    seed[k] += pp * t;
    if (mod(lattice.norm(seed), pp * pp) != 0) {
        throw std::logic_error("neighbor lift failed");
    }

    // Generators of p * N in base coordinates: p * (basis of L_v) and the seed.
    const std::int64_t ck_inv = inverse_mod(gv[k], pp);
    IntMatrix gens(n + 1, n);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == k) {
            continue;
        }
        gens(row, i) = Integer(pp);
        gens(row, k) = Integer(-pp * mod(gv[i] * ck_inv, pp));
        ++row;
    }
    gens(row++, k) = Integer(pp * pp);
    for (std::size_t j = 0; j < n; ++j) {
        gens(row, j) = Integer(static_cast<long>(seed[j]));
    }
    const IntMatrix basis = row_hermite_basis(gens);
    if (basis.rows() != n) {
        throw std::logic_error("neighbor basis has wrong rank");
    }
    IntMatrix scaled_gram = basis * lattice.matrix() * basis.transpose();
    const Integer p2 = Integer(pp) * pp;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (mpz_divisible_p(scaled_gram(i, j).get_mpz_t(), p2.get_mpz_t()) == 0) {
                throw std::logic_error("neighbor Gram matrix is not integral");
            }
            mpz_divexact(scaled_gram(i, j).get_mpz_t(), scaled_gram(i, j).get_mpz_t(), p2.get_mpz_t());
        }
    }
    auto reduced = qforms::lll_reduce(scaled_gram);
    return {lattice, p, seed, basis, std::move(reduced.lattice)};
}

std::vector<GramLattice> p_neighbors(const GramLattice& lattice, unsigned long p)
{
    check_admissible(lattice, p);
    const auto lines = isotropic_lines(lattice, p);
    if (lines.empty()) {
        throw InputError("no isotropic line mod " + std::to_string(p));
    }
    std::vector<GramLattice> out;
    out.reserve(lines.size());
    for (const auto& line : lines) {
        out.push_back(neighbor(lattice, p, line).result);
    }
    return out;
}

SpinorGenusCensus spinor_genus_classes(const GramLattice& lattice, unsigned long p, const CensusOptions& options)
{
    check_admissible(lattice, p);
    SpinorGenusCensus census;
    census.prime = p;

    std::vector<Fingerprint> fps;
    std::map<Fingerprint, std::vector<std::size_t>> by_fingerprint;
    std::map<std::vector<std::int64_t>, std::size_t> seen_grams;
    std::vector<std::set<std::size_t>> adjacency;
    auto gram_key = [](const GramLattice& g) {
        std::vector<std::int64_t> key;
        for (std::size_t i = 0; i < g.dim(); ++i) {
            for (std::size_t j = i; j < g.dim(); ++j) {
                key.push_back(g(i, j));
            }
        }
        return key;
    };
    auto add_rep = [&](GramLattice g) {
        const std::size_t idx = census.representatives.size();
        Fingerprint fp = fingerprint(g);
        by_fingerprint[fp].push_back(idx);
        fps.push_back(std::move(fp));
        seen_grams.emplace(gram_key(g), idx);
        census.representatives.push_back(std::move(g));
        adjacency.emplace_back();
        return idx;
    };
    auto classify = [&](const GramLattice& g) -> std::optional<std::size_t> {
        const auto key = gram_key(g);
        if (const auto it = seen_grams.find(key); it != seen_grams.end()) {
            return it->second;
        }
        const Fingerprint fp = fingerprint(g);
        if (const auto it = by_fingerprint.find(fp); it != by_fingerprint.end()) {
            for (const std::size_t idx : it->second) {
                ++census.isometry_tests;
                if (qforms::isometry_test(census.representatives[idx], g)) {
                    seen_grams.emplace(key, idx);
                    return idx;
                }
            }
        }
        return std::nullopt;
    };

    std::optional<std::mt19937_64> rng;
    if (options.shuffle_seed) {
        rng.emplace(*options.shuffle_seed);
    }

    add_rep(qforms::lll_reduce(lattice.matrix()).lattice);
    std::deque<std::size_t> queue{0};
    bool over_budget = false;
    while (!queue.empty() && !over_budget) {
        const std::size_t current = queue.front();
        queue.pop_front();
        const GramLattice base = census.representatives[current];
        auto lines = isotropic_lines(base, p);
        if (lines.empty()) {
            throw InputError("no isotropic line mod " + std::to_string(p));
        }
        if (rng) {
            std::shuffle(lines.begin(), lines.end(), *rng);
        }
        for (const auto& line : lines) {
            GramLattice nb = neighbor(base, p, line).result;
            ++census.neighbors_examined;
            if (nb.determinant() != base.determinant()) {
                throw std::logic_error("neighbor changed the determinant");
            }
            std::optional<std::size_t> idx = classify(nb);
            if (!idx) {
                if (census.representatives.size() >= options.budget) {
                    over_budget = true;
                    break;
                }
                idx = add_rep(std::move(nb));
                queue.push_back(*idx);
            }
            adjacency[current].insert(*idx);
            adjacency[*idx].insert(current);
        }
    }
    census.exhausted = !over_budget && queue.empty();
    for (const auto& adj : adjacency) {
        census.edges.emplace_back(adj.begin(), adj.end());
    }
    return census;
}

} // namespace cuspcensus::genus
