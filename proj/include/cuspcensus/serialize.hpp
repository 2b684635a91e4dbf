#pragma once

#include "cuspcensus/bounds.hpp"
#include "cuspcensus/cusps.hpp"
#include "cuspcensus/exactnum.hpp"
#include "cuspcensus/genus.hpp"
#include "cuspcensus/rootdata.hpp"

#include <json.hpp>

#include <string>

namespace cuspcensus {

using Json = nlohmann::ordered_json;

// Exact rationals travel as {"num": "...", "den": "..."}; no floats anywhere.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const RationalInterval& x);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);

Json to_json(const rootdata::GroupData& g);
rootdata::GroupData group_data_from_json(const Json& j);

Json to_json(const bounds::BoundReport& r);
Json to_json(const bounds::Delta0Derivation& d);
Json to_json(const bounds::FinitenessResult& f);
Json to_json(const genus::SpinorGenusCensus& c);
Json to_json(const cusps::CuspCertificate& c);

std::string render_text(const bounds::BoundReport& r);
std::string render_text(const bounds::Delta0Derivation& d);
std::string render_text(const bounds::FinitenessResult& f);
std::string render_text(const genus::SpinorGenusCensus& c);
std::string render_text(const cusps::CuspCertificate& c);

/// Decimal approximation for human-readable output only.
std::string approx(const Rational& q, int digits = 6);

} // namespace cuspcensus
