#include "cuspcensus/error.hpp"
#include "cuspcensus/rootdata.hpp"
#include "cuspcensus/serialize.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace cuspcensus;
using namespace cuspcensus::rootdata;

TEST_SUITE("rootdata")
{
    TEST_CASE("exponents of small types")
    {
        CHECK(exponents(type_B(3)) == std::vector<unsigned>{1, 3, 5});
        CHECK(exponents(type_D(4)) == std::vector<unsigned>{1, 3, 3, 5});
        CHECK(exponents(type_A(1)) == std::vector<unsigned>{1});
        CHECK(exponents(type_A(3)) == std::vector<unsigned>{1, 2, 3});
        CHECK(exponents(type_D(5, false)) == std::vector<unsigned>{1, 3, 4, 5, 7});
    }

    TEST_CASE("exponents of B_r sum to r^2")
    {
        for (unsigned r = 1; r <= 30; ++r) {
            const auto e = exponents(type_B(r));
            CHECK(e.size() == r);
            CHECK(std::accumulate(e.begin(), e.end(), 0u) == r * r);
        }
    }

    TEST_CASE("exponents of D_r: odd numbers up to 2r-3 plus r-1")
    {
        for (unsigned r = 3; r <= 30; ++r) {
            const auto e = exponents(type_D(r));
            std::vector<unsigned> expected;
            for (unsigned m = 1; m <= 2 * r - 3; m += 2) {
                expected.push_back(m);
            }
            expected.push_back(r - 1);
            std::sort(expected.begin(), expected.end());
            CHECK(e == expected);
            std::size_t repeats = 0;
            for (std::size_t i = 1; i < e.size(); ++i) {
                repeats += e[i] == e[i - 1] ? 1 : 0;
            }
            CHECK(repeats == (r % 2 == 0 ? 1u : 0u));
            // Sum of exponents is the number of positive roots, r(r-1).
            CHECK(std::accumulate(e.begin(), e.end(), 0u) == r * (r - 1));
        }
    }

    TEST_CASE("orthogonal exponents by number of variables")
    {
        CHECK(orthogonal_exponents(3) == exponents(type_B(1)));
        CHECK(orthogonal_exponents(4) == std::vector<unsigned>{1, 1});
        CHECK(orthogonal_exponents(29) == exponents(type_B(14)));
        CHECK(orthogonal_exponents(30) == exponents(type_D(15)));
    }

    TEST_CASE("group data")
    {
        const auto b14 = group_data(type_B(14));
        CHECK(b14.center_order_bound == 2);
        CHECK(b14.split());
        CHECK_FALSE(b14.s_value.has_value());

        const auto d15 = group_data(type_D(15, false));
        CHECK(d15.split_field_disc_min == 3);
        CHECK(d15.center_order_bound == 4);
        REQUIRE(d15.s_value.has_value());
        CHECK(*d15.s_value >= 5);

        CHECK(group_data(type_A(2)).center_order_bound == 3);
        CHECK(group_data(type_D(16)).split());
    }

    TEST_CASE("invalid types are rejected")
    {
        CHECK_THROWS_AS(group_data(LieType{Family::C, 3, true}), InputError);
        CHECK_THROWS_AS(group_data(type_D(2)), InputError);
        CHECK_THROWS_AS(group_data(type_B(0)), InputError);
        CHECK_THROWS_AS(parse_lie_type("E8"), InputError);
        CHECK_THROWS_AS(parse_lie_type("B"), InputError);
    }

    TEST_CASE("names round trip")
    {
        for (const auto& t : {type_B(14), type_D(16), type_D(15, false), type_A(2)}) {
            CHECK(parse_lie_type(to_string(t)) == t);
        }
        CHECK(to_string(type_D(16)) == "1D16");
        CHECK(to_string(type_D(15, false)) == "2D15");
        CHECK(parse_lie_type("D7") == type_D(7));
    }

    TEST_CASE("s-value table overrides")
    {
        const auto table = SValueTable::parse("# comment\n2D15 = 31\n\n2D7=13/1\n");
        CHECK(*table.lookup(type_D(15, false)) == 31);
        CHECK(*table.lookup(type_D(7, false)) == 13);
        CHECK(*table.lookup(type_D(9, false)) == 17);
        CHECK_FALSE(table.lookup(type_B(4)).has_value());
        CHECK_THROWS_AS(SValueTable::parse("2D15 31\n"), InputError);
        CHECK_THROWS_AS(group_data(type_D(3, false), SValueTable::parse("2D3 = 4")), InputError);
    }

    TEST_CASE("group data round trips through JSON")
    {
        for (const auto& t : {type_B(14), type_D(16), type_D(15, false), type_A(2)}) {
            const auto g = group_data(t);
            const auto back = group_data_from_json(Json::parse(to_json(g).dump()));
            CHECK(back.lie_type == g.lie_type);
            CHECK(back.exponents == g.exponents);
            CHECK(back.center_order_bound == g.center_order_bound);
            CHECK(back.s_value == g.s_value);
            CHECK(back.split_field_disc_min == g.split_field_disc_min);
        }
    }
}
