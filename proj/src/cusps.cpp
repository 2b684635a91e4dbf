#include "cuspcensus/cusps.hpp"

#include "cuspcensus/error.hpp"

#include <numeric>

namespace cuspcensus::cusps {

namespace {

using qforms::GramLattice;

// Smallest positive s with s * entries integral.
Rational primitive_scaling(const std::vector<Rational>& entries)
{
    Integer den_lcm = 1;
    for (const auto& e : entries) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), e.get_den_mpz_t());
    }
    Integer num_gcd = 0;
    for (const auto& e : entries) {
        const Integer scaled = e.get_num() * (den_lcm / e.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    if (num_gcd == 0) {
        throw InputError("zero form has no primitive scaling");
    }
    return make_rational(den_lcm, num_gcd);
}

// Depth-first search for y >= 0 with sum coeffs[i] y_i^2 == target.
bool represent(const std::vector<Integer>& coeffs, std::size_t i, const Integer& target, std::vector<Integer>& y)
{
    if (i + 1 == coeffs.size()) {
        if (mpz_divisible_p(target.get_mpz_t(), coeffs[i].get_mpz_t()) == 0) {
            return false;
        }
        const Integer q = target / coeffs[i];
        if (mpz_perfect_square_p(q.get_mpz_t()) == 0) {
            return false;
        }
        mpz_sqrt(y[i].get_mpz_t(), q.get_mpz_t());
        return true;
    }
    Integer limit;
    {
        const Integer q = target / coeffs[i];
        mpz_sqrt(limit.get_mpz_t(), q.get_mpz_t());
    }
    for (Integer v = 0; v <= limit; ++v) {
        y[i] = v;
        if (represent(coeffs, i + 1, target - coeffs[i] * v * v, y)) {
            return true;
        }
    }
    return false;
}

struct IsotropicVector {
    std::vector<Rational> coords;
    std::int64_t height = 0;
};

std::optional<IsotropicVector> find_isotropic(const RationalForm& q, std::int64_t max_height)
{
    const std::size_t n = q.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (q.gram()(i, i) == 0) {
            IsotropicVector v;
            v.coords.assign(n, Rational(0));
            v.coords[i] = 1;
            v.height = 1;
            return v;
        }
    }
    const auto& diag = q.diagonalization();
    const Rational s = primitive_scaling(diag.diagonal);
    std::vector<Integer> positive;
    std::vector<std::size_t> positive_index;
    Integer negative = 0;
    std::size_t negative_index = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Rational c = s * diag.diagonal[i];
        if (c > 0) {
            positive.push_back(c.get_num());
            positive_index.push_back(i);
        } else {
            negative = -c.get_num();
            negative_index = i;
        }
    }
    std::vector<Integer> y(positive.size());
    for (std::int64_t t = 1; t <= max_height; ++t) {
        if (!represent(positive, 0, negative * t * t, y)) {
            continue;
        }
        std::vector<Rational> diag_coords(n, Rational(0));
        for (std::size_t k = 0; k < positive.size(); ++k) {
            diag_coords[positive_index[k]] = Rational(y[k]);
        }
        diag_coords[negative_index] = t;
        IsotropicVector v;
        v.coords.assign(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                v.coords[i] += diag.basis(i, j) * diag_coords[j];
            }
        }
        // Primitive integral representative.
        const Rational scale = primitive_scaling(v.coords);
        for (auto& c : v.coords) {
            c *= scale;
        }
        v.height = t;
        return v;
    }
    return std::nullopt;
}

} // namespace

SplitForm split_hyperbolic(const RationalForm& q, std::int64_t search_height, std::int64_t max_height)
{
    const auto sig = q.signature();
    if (sig.negative != 1 || sig.positive < 2) {
        if (sig.negative == 0 || sig.positive == 0) {
            throw Error(Error::Kind::Cocompact, "no cusps (cocompact case): form is definite");
        }
        throw InputError("form must have signature (n, 1) with n >= 2");
    }
    if (search_height < 1 || max_height < search_height) {
        throw InputError("search height bounds must satisfy 1 <= height <= max");
    }
    if (!qforms::is_isotropic(q)) {
        throw Error(Error::Kind::Cocompact, "no cusps (cocompact case): form is anisotropic over Q");
    }
    std::optional<IsotropicVector> iso;
    for (std::int64_t h = search_height;; h = std::min(h * 10, max_height)) {
        iso = find_isotropic(q, h);
        if (iso || h >= max_height) {
            break;
        }
    }
    if (!iso) {
        throw Error(Error::Kind::SearchExhausted,
                    "isotropic form but no isotropic vector of height <= " + std::to_string(max_height));
    }

    const std::size_t n = q.dim();
    const RatMatrix& g = q.gram();
    const std::vector<Rational>& e = iso->coords;
    std::vector<Rational> ge(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ge[i] += g(i, j) * e[j];
        }
    }
    std::size_t k = 0;
    while (ge[k] == 0) {
        ++k;
    }
    // f = e_k / B(e, e_k) - q(e_k) / (2 B(e, e_k)^2) e, so B(e, f) = 1 and q(f) = 0.
    std::vector<Rational> f(n, Rational(0));
    const Rational b = ge[k];
    f[k] = 1 / b;
    const Rational shift = g(k, k) / (2 * b * b);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] -= shift * e[i];
    }

    RatMatrix constraints(2, n);
    for (std::size_t j = 0; j < n; ++j) {
        constraints(0, j) = ge[j];
        for (std::size_t i = 0; i < n; ++i) {
            constraints(1, j) += f[i] * g(i, j);
        }
    }
    const RatMatrix w = kernel(constraints);

    SplitForm out;
    out.original = g;
    out.search_height_used = iso->height;
    out.basis_change = RatMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.basis_change(i, 0) = e[i];
        out.basis_change(i, 1) = f[i];
        for (std::size_t j = 0; j < w.cols(); ++j) {
            out.basis_change(i, 2 + j) = w(i, j);
        }
    }
    out.q_prime_rational = w.transpose() * g * w;
    std::vector<Rational> entries;
    for (std::size_t i = 0; i < w.cols(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) {
            entries.push_back(out.q_prime_rational(i, j));
        }
    }
    out.scaling = primitive_scaling(entries);
    RatMatrix scaled = out.q_prime_rational;
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
        for (std::size_t j = 0; j < scaled.cols(); ++j) {
            scaled(i, j) *= out.scaling;
        }
    }
    out.q_prime = qforms::to_lattice(scaled);
    if (!out.q_prime.positive_definite()) {
        throw std::logic_error("complement of the hyperbolic plane is not definite");
    }
    return out;
}

int unit_group_constant(FieldKind kind)
{
    switch (kind) {
    case FieldKind::Rational:
        return 2;
    case FieldKind::ImaginaryQuadratic:
        return 6;
    case FieldKind::Quaternion:
        return 24;
    }
    return 0;
}

CuspCertificate principal_cusp_count(const SplitForm& split, const CountOptions& options)
{
    const GramLattice& lattice = split.q_prime;
    if (lattice.dim() < 2) {
        throw InputError("principal cusp count needs q' of rank at least 2");
    }
    CuspCertificate cert;
    cert.split = split;
    cert.c0 = unit_group_constant(FieldKind::Rational);
    cert.c = cert.c0 * cert.c0;
    cert.equality_claimed = options.assume_iwasawa;
    cert.hypothesis =
        options.assume_iwasawa
            ? "equality: K_f assumed maximal and special at every nonarchimedean place, giving an adelic "
              "Iwasawa decomposition (assumed, not verified)"
            : "lower bound: no Iwasawa hypothesis, principal cusps >= class count of q'";

    if (lattice.dim() == 2) {
        const std::int64_t a = lattice(0, 0);
        const std::int64_t b = 2 * lattice(0, 1);
        const std::int64_t c = lattice(1, 1);
        const std::int64_t content = std::gcd(std::gcd(a, b), c);
        const qforms::BinaryForm f{a / content, b / content, c / content};
        cert.route = CountRoute::BinaryClassNumber;
        cert.binary_form = qforms::reduce_binary(f);
        cert.binary_discriminant = f.discriminant();
        cert.principal_cusps = static_cast<std::size_t>(qforms::class_number(cert.binary_discriminant));
        return cert;
    }
    const unsigned long p = options.prime.value_or(genus::default_prime(lattice));
    genus::CensusOptions census_options;
    census_options.budget = options.budget;
    cert.route = CountRoute::NeighborCensus;
    cert.census = genus::spinor_genus_classes(lattice, p, census_options);
    cert.principal_cusps = cert.census->representatives.size();
    cert.complete = cert.census->exhausted;
    return cert;
}

CuspCertificate maximal_lower_bound(CuspCertificate cert, const Rational& galois_bound, const std::string& provenance)
{
    if (galois_bound < 1) {
        throw InputError("galois bound must be at least 1");
    }
    if (cert.principal_cusps < 1) {
        throw InputError("certificate has no principal cusp count");
    }
    cert.galois_bound = galois_bound;
    cert.galois_bound_provenance = provenance;
    const Rational bound = Rational(static_cast<unsigned long>(cert.principal_cusps)) / (cert.c * galois_bound);
    cert.maximal_lower_bound = bound;
    cert.maximal_cusps_at_least = std::max(Integer(1), ceil(bound));
    return cert;
}

} // namespace cuspcensus::cusps
