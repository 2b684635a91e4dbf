#pragma once

#include "cuspcensus/exactnum.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cuspcensus::rootdata {

enum class Family { A, B, C, D };

/// Absolute Lie type. `inner_form` separates 1D (true) from 2D (false) and is
/// ignored for other families.
struct LieType {
    Family family = Family::B;
    unsigned rank = 1;
    bool inner_form = true;

    /// Throws InputError unless rank >= 1 (rank >= 3 for D) and the family
    /// is one of A, B, D.
    void validate() const;

    friend bool operator==(const LieType&, const LieType&) = default;
    friend auto operator<=>(const LieType&, const LieType&) = default;
};

LieType type_B(unsigned rank);
LieType type_D(unsigned rank, bool inner_form = true);
LieType type_A(unsigned rank);

/// "B14", "1D16", "2D15", "A2".
std::string to_string(const LieType& t);
/// Inverse of to_string; a bare "D15" means 1D15.
LieType parse_lie_type(const std::string& text);

struct GroupData {
    LieType lie_type;
    std::vector<unsigned> exponents;
    unsigned center_order_bound = 1;
    std::optional<Rational> s_value;
    Rational split_field_disc_min{1};

    [[nodiscard]] bool split() const { return split_field_disc_min == 1; }
};

std::vector<unsigned> exponents(const LieType& t);

/// Exponents of Spin of a nondegenerate form in `dim` >= 3 variables:
/// B_r for dim = 2r + 1, the D_r pattern for dim = 2r (dim = 4 gives the
/// A1 x A1 multiset {1, 1}).
std::vector<unsigned> orthogonal_exponents(unsigned dim);

/// Overrides for the s-invariant keyed by to_string(LieType).
class SValueTable {
public:
    /// Defaults: s(2D_r) = 2r - 1; split types carry no s-value.
    SValueTable() = default;

    /// Key-value text: `2D15 = 29`, '#' comments, blank lines ignored.
    static SValueTable parse(const std::string& text);
    static SValueTable load(const std::string& path);

    void set(const LieType& t, const Rational& s);
    [[nodiscard]] std::optional<Rational> lookup(const LieType& t) const;

private:
    std::map<std::string, Rational> overrides_;
};

/// Throws InputError if a non-split type ends up with s < 5.
GroupData group_data(const LieType& t, const SValueTable& table = {});

} // namespace cuspcensus::rootdata
