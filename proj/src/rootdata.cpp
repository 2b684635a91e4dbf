#include "cuspcensus/rootdata.hpp"

#include "cuspcensus/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace cuspcensus::rootdata {

void LieType::validate() const
{
    switch (family) {
    case Family::A:
    case Family::B:
        if (rank < 1) {
            throw InputError("Lie type rank must be at least 1");
        }
        return;
    case Family::D:
        if (rank < 3) {
            throw InputError("type D needs rank at least 3");
        }
        return;
    case Family::C:
        break;
    }
    throw InputError("only families A, B and D are supported");
}

LieType type_B(unsigned rank) { return {Family::B, rank, true}; }
LieType type_D(unsigned rank, bool inner_form) { return {Family::D, rank, inner_form}; }
LieType type_A(unsigned rank) { return {Family::A, rank, true}; }

std::string to_string(const LieType& t)
{
    switch (t.family) {
    case Family::A:
        return "A" + std::to_string(t.rank);
    case Family::B:
        return "B" + std::to_string(t.rank);
    case Family::C:
        return "C" + std::to_string(t.rank);
    case Family::D:
        return std::string(t.inner_form ? "1D" : "2D") + std::to_string(t.rank);
    }
    return "?";
}

LieType parse_lie_type(const std::string& text)
{
    std::string s = text;
    bool inner = true;
    if (s.size() > 1 && (s[0] == '1' || s[0] == '2') && s[1] == 'D') {
        inner = s[0] == '1';
        s = s.substr(1);
    }
    if (s.size() < 2 || !std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw InputError("malformed Lie type '" + text + "'");
    }
    LieType t;
    switch (s[0]) {
    case 'A': t.family = Family::A; break;
    case 'B': t.family = Family::B; break;
    case 'C': t.family = Family::C; break;
    case 'D': t.family = Family::D; break;
    default: throw InputError("unknown Lie family in '" + text + "'");
    }
    t.rank = static_cast<unsigned>(std::stoul(s.substr(1)));
    t.inner_form = inner;
    t.validate();
    return t;
}

std::vector<unsigned> exponents(const LieType& t)
{
    t.validate();
    std::vector<unsigned> m;
    switch (t.family) {
    case Family::A:
        for (unsigned i = 1; i <= t.rank; ++i) {
            m.push_back(i);
        }
        break;
    case Family::B:
        for (unsigned i = 1; i <= t.rank; ++i) {
            m.push_back(2 * i - 1);
        }
        break;
    case Family::D:
        for (unsigned i = 1; i < t.rank; ++i) {
            m.push_back(2 * i - 1);
        }
        m.push_back(t.rank - 1);
        std::sort(m.begin(), m.end());
        break;
    case Family::C:
        break;
    }
    return m;
}

std::vector<unsigned> orthogonal_exponents(unsigned dim)
{
    if (dim < 3) {
        throw InputError("orthogonal exponents need at least 3 variables");
    }
    if (dim % 2 == 1) {
        return exponents(type_B((dim - 1) / 2));
    }
    const unsigned r = dim / 2;
    if (r >= 3) {
        return exponents(type_D(r));
    }
    return {1, 1};
}

SValueTable SValueTable::parse(const std::string& text)
{
    SValueTable table;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) {
            continue;
        }
        if (eq == std::string::npos) {
            throw InputError("s-value table line " + std::to_string(lineno) + ": expected key = value");
        }
        table.set(parse_lie_type(trim(line.substr(0, eq))), parse_rational(trim(line.substr(eq + 1))));
    }
    return table;
}

SValueTable SValueTable::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open s-value table '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void SValueTable::set(const LieType& t, const Rational& s)
{
    t.validate();
    overrides_[to_string(t)] = s;
}

std::optional<Rational> SValueTable::lookup(const LieType& t) const
{
    if (const auto it = overrides_.find(to_string(t)); it != overrides_.end()) {
        return it->second;
    }
    if (t.family == Family::D && !t.inner_form) {
        return Rational(2 * t.rank - 1);
    }
    return std::nullopt;
}

GroupData group_data(const LieType& t, const SValueTable& table)
{
    t.validate();
    GroupData g;
    g.lie_type = t;
    g.exponents = exponents(t);
    switch (t.family) {
    case Family::A: g.center_order_bound = t.rank + 1; break;
    case Family::B: g.center_order_bound = 2; break;
    default: g.center_order_bound = 4; break;
    }
    const bool split = !(t.family == Family::D && !t.inner_form);
    g.split_field_disc_min = split ? 1 : 3;
    g.s_value = table.lookup(t);
    if (!split && (!g.s_value || *g.s_value < 5)) {
        throw InputError("non-split type " + to_string(t) + " needs an s-value of at least 5");
    }
    return g;
}

} // namespace cuspcensus::rootdata
