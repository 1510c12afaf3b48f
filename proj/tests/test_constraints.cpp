#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dsslp/constraints.hpp>

#include "test_util.hpp"

#include <algorithm>
#include <vector>

using namespace dsslp;
using testutil::make_params;
using testutil::named_set;

namespace {

std::vector<LinearConstraint> tagged(const std::vector<LinearConstraint>& rows, RowTag tag) {
    std::vector<LinearConstraint> out;
    for (const LinearConstraint& r : rows)
        if (r.tag == tag) out.push_back(r);
    return out;
}

}  // namespace

TEST_CASE("encoding constraints pin storage to the source and repairs to their sender") {
    Universe u = enumerate_universe(make_params(3, 2, 2));
    std::vector<LinearConstraint> rows = encoding_constraints(u);
    REQUIRE(rows.size() == 9);  // 3 storage + 6 repair
    CHECK(tagged(rows, RowTag::storage_enc).size() == 3);
    CHECK(tagged(rows, RowTag::repair_enc).size() == 6);

    // H(S,Y1) - H(S) = 0
    const LinearConstraint& y1 = rows[0];
    CHECK(y1.rel == Relation::eq);
    CHECK(y1.rhs == 0);
    REQUIRE(y1.terms.size() == 2);
    CHECK(*y1.coeff(entropy_col(named_set(u, {"S", "Y1"}))) == Rational(1));
    CHECK(*y1.coeff(entropy_col(named_set(u, {"S"}))) == Rational(-1));

    // every repair row conditions the transmission on its sender's storage
    for (const LinearConstraint& r : tagged(rows, RowTag::repair_enc)) {
        REQUIRE(r.terms.size() == 2);
        VarSet joint(static_cast<std::uint64_t>(r.terms[1].first));
        VarSet given(static_cast<std::uint64_t>(r.terms[0].first));
        CHECK(given.subset_of(joint));
        CHECK(given.count() == 1);
        CHECK(joint.count() == 2);
        int sender_pos = set_positions(given)[0];
        CHECK(u.var(sender_pos).kind == VarId::Kind::storage);
    }
}

TEST_CASE("capacity constraints bound each variable by its budget") {
    Universe u = enumerate_universe(make_params(3, 2, 2));
    std::vector<LinearConstraint> rows =
        capacity_constraints(u, ParamSpec::fixed(2), ParamSpec::fixed(Rational(1, 3)));
    REQUIRE(rows.size() == 9);
    for (const LinearConstraint& r : rows) {
        CHECK(r.rel == Relation::le);
        REQUIRE(r.terms.size() == 1);
    }
    // canonicalize clears denominators: 3 H(U2[1]) <= 1
    const LinearConstraint& beta_row = tagged(rows, RowTag::repair_cap).front();
    CHECK(*beta_row.coeff(entropy_col(named_set(u, {"U2[1]"}))) == Rational(3));
    CHECK(beta_row.rhs == Rational(1));
    const LinearConstraint& alpha_row = tagged(rows, RowTag::storage_cap).front();
    CHECK(alpha_row.rhs == Rational(2));
}

TEST_CASE("parameter-column capacities move the budget into the row") {
    Universe u = enumerate_universe(make_params(3, 2, 2));
    std::vector<LinearConstraint> rows =
        capacity_constraints(u, ParamSpec::column(alpha_col), ParamSpec::fixed(1));
    const LinearConstraint& storage = tagged(rows, RowTag::storage_cap).front();
    REQUIRE(storage.terms.size() == 2);
    CHECK(*storage.coeff(alpha_col) == Rational(-1));
    CHECK(storage.rhs == 0);
    // alpha_col sorts before every entropy mask
    CHECK(storage.terms.front().first == alpha_col);
}

TEST_CASE("decoding constraints cover every failure pattern and k-subset") {
    Universe u = enumerate_universe(make_params(3, 2, 2));
    std::vector<LinearConstraint> rows = decoding_constraints(u);
    REQUIRE(rows.size() == 6);  // 3 failure patterns + C(3,2) reconstructions
    CHECK(tagged(rows, RowTag::repair_dec).size() == 3);
    CHECK(tagged(rows, RowTag::reconstruct).size() == 3);

    // H(Y1, U2[1], U3[1]) - H(U2[1], U3[1]) = 0
    const LinearConstraint& rebuild1 = tagged(rows, RowTag::repair_dec).front();
    CHECK(*rebuild1.coeff(entropy_col(named_set(u, {"Y1", "U2[1]", "U3[1]"}))) == Rational(1));
    CHECK(*rebuild1.coeff(entropy_col(named_set(u, {"U2[1]", "U3[1]"}))) == Rational(-1));

    // H(S, Y1, Y2) - H(Y1, Y2) = 0
    const LinearConstraint& recon12 = tagged(rows, RowTag::reconstruct).front();
    CHECK(*recon12.coeff(entropy_col(named_set(u, {"S", "Y1", "Y2"}))) == Rational(1));
    CHECK(*recon12.coeff(entropy_col(named_set(u, {"Y1", "Y2"}))) == Rational(-1));
}

TEST_CASE("larger helper choices multiply the failure patterns") {
    Universe u = enumerate_universe(make_params(4, 2, 2));
    // 4 failed nodes x C(3,2) helper sets, plus C(4,2) reconstructions
    std::vector<LinearConstraint> rows = decoding_constraints(u);
    CHECK(tagged(rows, RowTag::repair_dec).size() == 12);
    CHECK(tagged(rows, RowTag::reconstruct).size() == 6);
}

TEST_CASE("functional-dependence rules mirror the constraint families") {
    Universe u = enumerate_universe(make_params(3, 2, 2));
    std::vector<FdRule> rules = fd_rules(u);
    // source->storage, per-node sends, per-pattern rebuilds, per-k-subset sources
    REQUIRE(rules.size() == 1 + 3 + 3 + 3);

    CHECK(rules[0].given == named_set(u, {"S"}));
    CHECK(rules[0].implied == named_set(u, {"Y1", "Y2", "Y3"}));

    CHECK(rules[1].given == named_set(u, {"Y1"}));
    CHECK(rules[1].implied == named_set(u, {"U1[2]", "U1[3]"}));

    bool found_rebuild = false;
    for (const FdRule& r : rules)
        if (r.given == named_set(u, {"U2[1]", "U3[1]"})) {
            CHECK(r.implied == named_set(u, {"Y1"}));
            found_rebuild = true;
        }
    CHECK(found_rebuild);

    bool found_recon = false;
    for (const FdRule& r : rules)
        if (r.given == named_set(u, {"Y2", "Y3"})) {
            CHECK(r.implied == named_set(u, {"S"}));
            found_recon = true;
        }
    CHECK(found_recon);
}

TEST_CASE("every constraint row is canonical on arrival") {
    Universe u = enumerate_universe(make_params(3, 2, 2));
    std::vector<LinearConstraint> all = encoding_constraints(u);
    std::vector<LinearConstraint> caps =
        capacity_constraints(u, ParamSpec::fixed(2), ParamSpec::fixed(1));
    std::vector<LinearConstraint> dec = decoding_constraints(u);
    all.insert(all.end(), caps.begin(), caps.end());
    all.insert(all.end(), dec.begin(), dec.end());
    for (const LinearConstraint& r : all) {
        LinearConstraint copy = r;
        copy.canonicalize();
        CHECK(copy.dedup_key() == r.dedup_key());
        for (const auto& [key, c] : r.terms) CHECK(c != 0);
        CHECK(std::is_sorted(r.terms.begin(), r.terms.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; }));
    }
}
