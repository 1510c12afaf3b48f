#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dsslp/model.hpp>

#include "test_util.hpp"

#include <stdexcept>
#include <vector>

using namespace dsslp;
using testutil::make_params;

TEST_CASE("node sets round-trip between masks and lists") {
    NodeSet s = node_set({1, 3, 4});
    CHECK(s == 0b1101u);
    CHECK(node_count(s) == 3);
    CHECK(node_list(s) == std::vector<int>{1, 3, 4});
    CHECK(node_set_string(s) == "{1,3,4}");
    CHECK(node_set({}) == 0u);
    CHECK(node_set_string(0) == "{}");
    CHECK_THROWS_AS(node_set({0}), std::invalid_argument);
    CHECK_THROWS_AS(node_set({33}), std::invalid_argument);
}

TEST_CASE("parameter validation enforces the shape chain") {
    CHECK_NOTHROW(make_params(3, 2, 2).validate());
    CHECK_NOTHROW(make_params(4, 3, 3).validate());
    CHECK_NOTHROW(make_params(2, 1, 1).validate());
    // k > d
    CHECK_THROWS_AS(make_params(4, 3, 2).validate_shape(), std::invalid_argument);
    // d > n-1
    CHECK_THROWS_AS(make_params(3, 2, 3).validate_shape(), std::invalid_argument);
    // k < 1
    CHECK_THROWS_AS(make_params(3, 0, 2).validate_shape(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(3, 2, 2, -1, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_params(3, 2, 2, 1, Rational(-1, 2)).validate(), std::invalid_argument);
    // zero capacities are shapes worth posing (they make the LP trivial, not invalid)
    CHECK_NOTHROW(make_params(3, 2, 2, 0, 0).validate());
}

TEST_CASE("the (3,2,2) universe comes out in the canonical order") {
    Universe u = enumerate_universe(make_params(3, 2, 2));
    REQUIRE(u.size() == 10);
    std::vector<std::string> names;
    for (const VarId& v : u.vars) names.push_back(var_name(v, u.params));
    CHECK(names == std::vector<std::string>{"S", "Y1", "Y2", "Y3", "U2[1]", "U3[1]", "U1[2]",
                                            "U3[2]", "U1[3]", "U2[3]"});
}

TEST_CASE("universe sizes match the closed form") {
    CHECK(universe_size(make_params(3, 2, 2)) == 10);
    CHECK(universe_size(make_params(4, 3, 3)) == 17);
    CHECK(universe_size(make_params(4, 2, 2)) == 29);
    CHECK(universe_size(make_params(2, 1, 1)) == 5);
    for (auto [n, k, d] : {std::tuple{3, 2, 2}, {4, 3, 3}, {4, 2, 2}, {5, 3, 4}, {2, 1, 1}}) {
        Universe u = enumerate_universe(make_params(n, k, d));
        CHECK(u.size() == universe_size(make_params(n, k, d)));
    }
}

TEST_CASE("index_of inverts the universe order") {
    Universe u = enumerate_universe(make_params(4, 2, 2));
    for (int i = 0; i < u.size(); ++i) CHECK(u.index_of(u.var(i)) == i);
    CHECK_THROWS_AS(u.index_of(VarId::storage_var(9)), std::out_of_range);
    // repair var with a helper set that does not occur
    CHECK_THROWS_AS(u.index_of(VarId::repair_var(1, 2, node_set({1, 3, 4}))),
                    std::out_of_range);
}

TEST_CASE("variable names spell out helper sets only when they vary") {
    DssParams forced = make_params(3, 2, 2);
    Universe uf = enumerate_universe(forced);
    CHECK(var_name(uf.var(0), forced) == "S");
    CHECK(var_name(uf.var(2), forced) == "Y2");
    CHECK(var_name(VarId::repair_var(1, 2, node_set({1, 3})), forced) == "U1[2]");

    DssParams open = make_params(4, 2, 2);
    CHECK(var_name(VarId::repair_var(1, 2, node_set({1, 3})), open) == "U1[2,{1,3}]");
    CHECK(var_name(VarId::repair_var(3, 2, node_set({3, 4})), open) == "U3[2,{3,4}]");
}

TEST_CASE("repair variables group by failure pattern in order") {
    Universe u = enumerate_universe(make_params(4, 2, 2));
    // after S and Y1..Y4, repairs sort by (failed, helper set, sender)
    const VarId& first = u.var(5);
    CHECK(first.kind == VarId::Kind::repair);
    CHECK(first.failed == 1);
    CHECK(first.helpers == node_set({2, 3}));
    CHECK(first.node == 2);
    const VarId& second = u.var(6);
    CHECK(second.failed == 1);
    CHECK(second.helpers == node_set({2, 3}));
    CHECK(second.node == 3);
}

TEST_CASE("max-flow bound sums the per-stage cut minima") {
    CHECK(max_flow_bound(make_params(3, 2, 2, 2, 1)) == Rational(3));
    CHECK(max_flow_bound(make_params(3, 2, 2, 1, 1)) == Rational(2));
    CHECK(max_flow_bound(make_params(3, 2, 2, 3, 1)) == Rational(3));
    CHECK(max_flow_bound(make_params(3, 2, 2, 1, 2)) == Rational(2));
    CHECK(max_flow_bound(make_params(3, 2, 2, 2, 3)) == Rational(4));
    // alpha dominates every stage once large enough
    CHECK(max_flow_bound(make_params(4, 3, 3, 100, 1)) == Rational(6));
    // beta = 0 kills every stage
    CHECK(max_flow_bound(make_params(4, 3, 3, 5, 0)) == Rational(0));
    // rational capacities stay exact
    CHECK(max_flow_bound(make_params(3, 2, 2, Rational(3, 2), Rational(5, 4))) ==
          Rational(3, 2) + Rational(5, 4));
    // scaling both capacities scales the bound
    CHECK(max_flow_bound(make_params(4, 3, 3, 3, 2)) * 2 ==
          max_flow_bound(make_params(4, 3, 3, 6, 4)));
}
