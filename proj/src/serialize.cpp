#include "cuspcensus/serialize.hpp"

#include "cuspcensus/error.hpp"

#include <sstream>

namespace cuspcensus {

Json to_json(const Rational& q)
{
    return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const Json& j)
{
    try {
        return make_rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
    } catch (const std::invalid_argument&) {
        throw InputError("malformed rational in JSON");
    } catch (const nlohmann::json::exception&) {
        throw InputError("malformed rational in JSON");
    }
}

Json to_json(const RationalInterval& x) { return Json{{"lo", to_json(x.lo())}, {"hi", to_json(x.hi())}}; }

Json to_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j).get_str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const RatMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(to_string(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const rootdata::GroupData& g)
{
    Json j{{"lie_type", rootdata::to_string(g.lie_type)},
           {"exponents", g.exponents},
           {"center_order_bound", g.center_order_bound},
           {"s_value", g.s_value ? to_json(*g.s_value) : Json(nullptr)},
           {"split_field_disc_min", to_json(g.split_field_disc_min)}};
    return j;
}

rootdata::GroupData group_data_from_json(const Json& j)
{
    try {
        rootdata::GroupData g;
        g.lie_type = rootdata::parse_lie_type(j.at("lie_type").get<std::string>());
        g.exponents = j.at("exponents").get<std::vector<unsigned>>();
        g.center_order_bound = j.at("center_order_bound").get<unsigned>();
        if (!j.at("s_value").is_null()) {
            g.s_value = rational_from_json(j.at("s_value"));
        }
        g.split_field_disc_min = rational_from_json(j.at("split_field_disc_min"));
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed group data: ") + e.what());
    }
}

Json to_json(const bounds::BoundReport& r)
{
    Json notes = Json::array();
    for (const auto& n : r.notes) {
        notes.push_back(n);
    }
    return Json{{"dimension", r.dimension},
                {"branch", r.branch},
                {"anisotropic_type", r.anisotropic_type},
                {"exponents", r.exponents},
                {"prasad_product", to_json(r.prasad_product)},
                {"discriminant_factor", to_json(r.discriminant_factor)},
                {"discriminant_exponent", to_json(r.discriminant_exponent)},
                {"class_number_factor", to_json(r.class_number_factor)},
                {"compared_value", to_json(r.compared_value)},
                {"delta0_used", to_json(r.delta0_used)},
                {"threshold", to_json(r.threshold)},
                {"comparison", to_string(r.comparison)},
                {"verdict", bounds::to_string(r.verdict)},
                {"precision_bits", r.precision_bits},
                {"notes", notes}};
}

namespace {

Json factor_json(const bounds::LocalFactor& f, bool with_prime)
{
    Json j;
    if (with_prime) {
        j["prime"] = f.prime;
    }
    j["rank"] = f.rank;
    j["value"] = to_json(f.value);
    return j;
}

} // namespace

Json to_json(const bounds::Delta0Derivation& d)
{
    Json factors = Json::array();
    for (const auto& f : d.factors) {
        factors.push_back(factor_json(f, true));
    }
    Json candidates = Json::array();
    for (const auto& f : d.candidates) {
        candidates.push_back(factor_json(f, true));
    }
    Json uniform = Json::array();
    for (const auto& f : d.uniform_rank_products) {
        uniform.push_back(factor_json(f, false));
    }
    return Json{{"delta0", to_json(d.value)},
                {"reading", d.reading},
                {"factors", factors},
                {"candidates_below_one", candidates},
                {"uniform_rank_products", uniform}};
}

Json to_json(const bounds::FinitenessResult& f)
{
    Json types = Json::array();
    for (const auto& t : f.types) {
        types.push_back(rootdata::to_string(t));
    }
    Json tails = Json::array();
    for (const auto& t : f.tails) {
        tails.push_back(Json{{"family", t.family == rootdata::Family::B ? "B" : "D"},
                             {"monotone_from_rank", t.monotone_from_rank},
                             {"tail_rank", t.tail_rank},
                             {"value_at_tail", to_json(t.value_at_tail)}});
    }
    return Json{{"x", to_json(f.x)},
                {"delta0", to_json(f.delta0)},
                {"threshold", to_json(f.threshold)},
                {"factor_exceeds_one_from", f.factor_exceeds_one_from},
                {"types", types},
                {"tails", tails},
                {"trace", f.trace}};
}

Json to_json(const genus::SpinorGenusCensus& c)
{
    Json reps = Json::array();
    for (const auto& r : c.representatives) {
        reps.push_back(to_json(r.matrix()));
    }
    return Json{{"prime", c.prime},
                {"exhausted", c.exhausted},
                {"class_count", c.representatives.size()},
                {"representatives", reps},
                {"edges", c.edges},
                {"neighbors_examined", c.neighbors_examined},
                {"isometry_tests", c.isometry_tests}};
}

Json to_json(const cusps::CuspCertificate& c)
{
    Json split{{"original", to_json(c.split.original)},
               {"basis_change", to_json(c.split.basis_change)},
               {"q_prime_rational", to_json(c.split.q_prime_rational)},
               {"scaling", to_json(c.split.scaling)},
               {"q_prime", to_json(c.split.q_prime.matrix())},
               {"search_height_used", c.split.search_height_used}};
    Json j{{"split", split}};
    if (c.route == cusps::CountRoute::BinaryClassNumber) {
        j["route"] = "binary_class_number";
        j["binary_form"] = Json{{"a", c.binary_form->a}, {"b", c.binary_form->b}, {"c", c.binary_form->c}};
        j["discriminant"] = c.binary_discriminant;
    } else {
        j["route"] = "neighbor_census";
        j["census"] = to_json(*c.census);
    }
    j["principal_cusps"] = c.principal_cusps;
    j["complete"] = c.complete;
    j["count_kind"] = c.equality_claimed ? "equality_under_hypothesis" : "lower_bound";
    j["hypothesis"] = c.hypothesis;
    j["constants_used"] = Json{{"c0", c.c0},
                               {"c", c.c},
                               {"galois_bound", c.galois_bound ? to_json(*c.galois_bound) : Json(nullptr)},
                               {"galois_bound_provenance", c.galois_bound_provenance}};
    j["maximal_lower_bound"] = c.maximal_lower_bound ? to_json(*c.maximal_lower_bound) : Json(nullptr);
    j["maximal_cusps_at_least"] =
        c.maximal_cusps_at_least ? Json(c.maximal_cusps_at_least->get_str()) : Json(nullptr);
    return j;
}

std::string approx(const Rational& q, int digits)
{
    // Scientific notation from exact integer arithmetic.
    if (q == 0) {
        return "0";
    }
    const bool neg = q < 0;
    const Rational a = neg ? Rational(-q) : q;
    auto pow10 = [](long e) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
        return e >= 0 ? Rational(p) : Rational(1, 1) / Rational(p);
    };
    long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
    while (pow10(e) > a) {
        --e;
    }
    while (pow10(e + 1) <= a) {
        ++e;
    }
    Integer mant = floor(a / pow10(e - digits + 1) + Rational(1, 2));
    std::string s = mant.get_str();
    if (s.size() > static_cast<std::size_t>(digits)) {
        s.pop_back();
        ++e;
    }
    std::ostringstream out;
    out << (neg ? "-" : "") << s[0];
    if (s.size() > 1) {
        out << '.' << s.substr(1);
    }
    out << "e" << (e >= 0 ? "+" : "") << e;
    return out.str();
}

std::string render_text(const bounds::BoundReport& r)
{
    std::ostringstream out;
    out << "one-cusp bound for n = " << r.dimension << '\n'
        << "  branch:            " << r.branch << '\n'
        << "  definite part:     " << r.anisotropic_type << '\n'
        << "  prasad product in  [" << approx(r.prasad_product.lo()) << ", " << approx(r.prasad_product.hi())
        << "]\n";
    if (r.class_number_factor.lo() != 1 || r.class_number_factor.hi() != 1) {
        out << "  6/(5 pi^2) in      [" << approx(r.class_number_factor.lo()) << ", "
            << approx(r.class_number_factor.hi()) << "]\n";
    }
    if (r.discriminant_exponent != 0) {
        out << "  3^(" << to_string(r.discriminant_exponent) << ") in [" << approx(r.discriminant_factor.lo())
            << ", " << approx(r.discriminant_factor.hi()) << "]\n";
    }
    out << "  compared value in  [" << approx(r.compared_value.lo()) << ", " << approx(r.compared_value.hi())
        << "]\n"
        << "  threshold:         " << to_string(r.threshold) << '\n'
        << "  verdict:           " << bounds::to_string(r.verdict) << " (" << to_string(r.comparison) << ", "
        << r.precision_bits << " bits)\n";
    return out.str();
}

std::string render_text(const bounds::Delta0Derivation& d)
{
    std::ostringstream out;
    out << "delta0 = " << to_string(d.value) << " ~ " << approx(d.value) << '\n' << "  reading: " << d.reading << '\n';
    for (const auto& f : d.factors) {
        out << "  p = " << f.prime << ", r = " << f.rank << ": " << to_string(f.value) << " ~ " << approx(f.value)
            << '\n';
    }
    out << "  products at a single fixed rank:\n";
    for (const auto& f : d.uniform_rank_products) {
        out << "    r = " << f.rank << ": " << to_string(f.value) << " ~ " << approx(f.value) << '\n';
    }
    return out.str();
}

std::string render_text(const bounds::FinitenessResult& f)
{
    std::ostringstream out;
    out << "types with (1/(2 n^2)) prod m_i!/(2pi)^(m_i+1) <= x/delta0 = " << to_string(f.threshold) << ":\n  ";
    for (std::size_t i = 0; i < f.types.size(); ++i) {
        out << (i ? " " : "") << rootdata::to_string(f.types[i]);
    }
    out << '\n';
    for (const auto& line : f.trace) {
        out << "  " << line << '\n';
    }
    return out.str();
}

std::string render_text(const genus::SpinorGenusCensus& c)
{
    std::ostringstream out;
    out << "neighbor census at p = " << c.prime << ": " << c.representatives.size() << " class(es)"
        << (c.exhausted ? "" : " (budget exhausted, incomplete)") << '\n'
        << "  neighbors examined: " << c.neighbors_examined << ", isometry tests: " << c.isometry_tests << '\n';
    for (std::size_t i = 0; i < c.representatives.size(); ++i) {
        const auto& r = c.representatives[i];
        out << "  [" << i << "] diag(";
        for (std::size_t k = 0; k < r.dim(); ++k) {
            out << (k ? "," : "") << r(k, k);
        }
        out << ") det " << r.determinant().get_str() << '\n';
    }
    return out.str();
}

std::string render_text(const cusps::CuspCertificate& c)
{
    std::ostringstream out;
    out << "principal cusps: " << c.principal_cusps << (c.complete ? "" : " (incomplete census)") << '\n'
        << "  route: "
        << (c.route == cusps::CountRoute::BinaryClassNumber ? "binary class number, disc " +
                                                                  std::to_string(c.binary_discriminant)
                                                            : "neighbor census")
        << '\n'
        << "  q' rank " << c.split.q_prime.dim() << ", det " << c.split.q_prime.determinant().get_str()
        << ", scaling " << to_string(c.split.scaling) << '\n'
        << "  " << c.hypothesis << '\n';
    if (c.maximal_lower_bound) {
        out << "  maximal lattice: e >= " << to_string(*c.maximal_lower_bound) << " (c = " << c.c
            << ", galois bound " << to_string(*c.galois_bound) << "), so at least "
            << c.maximal_cusps_at_least->get_str() << " cusp(s)\n";
    }
    return out.str();
}

} // namespace cuspcensus
