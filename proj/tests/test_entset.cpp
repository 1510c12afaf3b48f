#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dsslp/entset.hpp>

#include "test_util.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

using namespace dsslp;
using testutil::make_params;

TEST_CASE("VarSet bit operations") {
    VarSet s = VarSet::single(2).with(5);
    CHECK(s.count() == 2);
    CHECK(s.contains(2));
    CHECK(s.contains(5));
    CHECK_FALSE(s.contains(3));
    CHECK(s.without(2) == VarSet::single(5));
    CHECK(s.subset_of(s.with(9)));
    CHECK_FALSE(s.with(9).subset_of(s));
    CHECK((s | VarSet::single(0)).count() == 3);
    CHECK((s & VarSet::single(5)) == VarSet::single(5));
    CHECK((s - VarSet::single(5)) == VarSet::single(2));
    CHECK(VarSet::full(3).bits == 0b111u);
    CHECK(set_positions(s) == std::vector<int>{2, 5});
    CHECK(VarSet().empty());
}

TEST_CASE("subset lattice is every nonempty mask in ascending order") {
    std::vector<VarSet> subsets = subset_lattice(3);
    REQUIRE(subsets.size() == 7);
    for (std::size_t i = 0; i < subsets.size(); ++i)
        CHECK(subsets[i].bits == static_cast<std::uint64_t>(i + 1));
    CHECK_THROWS_AS(subset_lattice(0), std::invalid_argument);
    CHECK_THROWS_AS(subset_lattice(23), std::length_error);
}

TEST_CASE("set display follows universe order") {
    Universe u = enumerate_universe(make_params(3, 2, 2));
    VarSet s = testutil::named_set(u, {"U1[2]", "Y3", "S"});
    CHECK(set_display(s, u) == "{S,Y3,U1[2]}");
    CHECK(set_display(VarSet(), u) == "{}");
}

TEST_CASE("constraint terms merge and drop zeros") {
    LinearConstraint row;
    row.add_term(5, Rational(1, 2));
    row.add_term(3, 1);
    row.add_term(5, Rational(1, 2));
    REQUIRE(row.terms.size() == 2);
    CHECK(row.terms[0].first == 3);
    CHECK(row.terms[1].first == 5);
    CHECK(*row.coeff(5) == Rational(1));
    CHECK(row.coeff(4) == nullptr);
    row.add_term(3, -1);
    CHECK(row.terms.size() == 1);
    row.add_term(7, 0);
    CHECK(row.terms.size() == 1);
}

TEST_CASE("canonicalize scales to coprime integers") {
    LinearConstraint row;
    row.add_term(1, Rational(1, 2));
    row.add_term(2, Rational(-1, 3));
    row.rhs = Rational(1, 6);
    row.canonicalize();
    CHECK(*row.coeff(1) == Rational(3));
    CHECK(*row.coeff(2) == Rational(-2));
    CHECK(row.rhs == Rational(1));

    LinearConstraint scaled;
    scaled.add_term(1, 4);
    scaled.add_term(2, 6);
    scaled.rhs = 10;
    scaled.canonicalize();
    CHECK(*scaled.coeff(1) == Rational(2));
    CHECK(*scaled.coeff(2) == Rational(3));
    CHECK(scaled.rhs == Rational(5));
}

TEST_CASE("canonical equalities lead with a positive coefficient") {
    LinearConstraint row;
    row.rel = Relation::eq;
    row.add_term(1, -2);
    row.add_term(4, 2);
    row.rhs = -4;
    row.canonicalize();
    CHECK(*row.coeff(1) == Rational(1));
    CHECK(*row.coeff(4) == Rational(-1));
    CHECK(row.rhs == Rational(2));
}

TEST_CASE("dedup key identifies a le row with its ge mirror") {
    LinearConstraint le;
    le.rel = Relation::le;
    le.add_term(1, 1);
    le.add_term(2, 1);
    le.rhs = 2;
    le.canonicalize();

    LinearConstraint ge;
    ge.rel = Relation::ge;
    ge.add_term(1, -1);
    ge.add_term(2, -1);
    ge.rhs = -2;
    ge.canonicalize();

    CHECK(le.dedup_key() == ge.dedup_key());

    LinearConstraint other = le;
    other.rhs = 3;
    CHECK(le.dedup_key() != other.dedup_key());
}

TEST_CASE("two-variable elemental family written out by hand") {
    std::vector<LinearConstraint> rows = elemental_inequalities(2);
    REQUIRE(rows.size() == 3);

    std::set<std::string> keys;
    for (const LinearConstraint& r : rows) keys.insert(r.dedup_key());

    auto key_of = [](std::vector<std::pair<ColKey, Rational>> terms) {
        LinearConstraint row;
        for (const auto& [k, c] : terms) row.add_term(k, c);
        row.canonicalize();
        return row.dedup_key();
    };
    // H(12) - H(2) >= 0, H(12) - H(1) >= 0, H(1) + H(2) - H(12) >= 0
    std::set<std::string> expected = {
        key_of({{3, 1}, {2, -1}}),
        key_of({{3, 1}, {1, -1}}),
        key_of({{1, 1}, {2, 1}, {3, -1}}),
    };
    CHECK(keys == expected);
}

TEST_CASE("elemental counts follow the closed form") {
    CHECK(elemental_count(2) == 3);
    CHECK(elemental_count(3) == 9);
    CHECK(elemental_count(4) == 28);
    CHECK(elemental_count(5) == 75);
    CHECK(elemental_count(6) == 186);
    CHECK(elemental_count(10) == 11530);
    for (int n = 2; n <= 6; ++n) CHECK(elemental_inequalities(n).size() == elemental_count(n));
}

namespace {

// Independent enumeration of the two elemental forms, assembled with plain
// loops over masks instead of the library's generators.
std::set<std::string> brute_force_elemental(int nvars) {
    std::set<std::string> keys;
    std::uint64_t full = (std::uint64_t{1} << nvars) - 1;
    for (int i = 0; i < nvars; ++i) {
        LinearConstraint row;
        row.rel = Relation::ge;
        row.add_term(static_cast<ColKey>(full), 1);
        std::uint64_t rest = full & ~(std::uint64_t{1} << i);
        if (rest != 0) row.add_term(static_cast<ColKey>(rest), -1);
        row.canonicalize();
        keys.insert(row.dedup_key());
    }
    for (int a = 0; a < nvars; ++a)
        for (int b = 0; b < nvars; ++b) {
            if (a == b) continue;
            std::uint64_t pair = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
            // every C avoiding both, found by filtering all masks
            for (std::uint64_t c = 0; c <= full; ++c) {
                if (c & pair) continue;
                LinearConstraint row;
                row.rel = Relation::ge;
                row.add_term(static_cast<ColKey>(c | (std::uint64_t{1} << a)), 1);
                row.add_term(static_cast<ColKey>(c | (std::uint64_t{1} << b)), 1);
                row.add_term(static_cast<ColKey>(c | pair), -1);
                if (c != 0) row.add_term(static_cast<ColKey>(c), -1);
                row.canonicalize();
                keys.insert(row.dedup_key());
            }
        }
    return keys;
}

}  // namespace

TEST_CASE("elemental family equals a brute-force enumeration for small N") {
    for (int n = 2; n <= 4; ++n) {
        std::set<std::string> keys;
        for (const LinearConstraint& r : elemental_inequalities(n)) keys.insert(r.dedup_key());
        // generated rows are already distinct
        CHECK(keys.size() == elemental_count(n));
        CHECK(keys == brute_force_elemental(n));
    }
}

TEST_CASE("reserved parameter columns stay clear of entropy masks") {
    CHECK(alpha_col < 0);
    CHECK(beta_col < 0);
    CHECK(alpha_col != beta_col);
    CHECK(entropy_col(VarSet::single(0)) == 1);
    CHECK(entropy_col(VarSet::full(10)) == 1023);
}
