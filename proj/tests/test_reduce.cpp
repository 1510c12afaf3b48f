#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dsslp/reduce.hpp>

#include "test_util.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace dsslp;
using testutil::make_params;
using testutil::named_family;
using testutil::named_set;

namespace {

// Frozen (3,2,2) reduction results. The maximal sets are the closure-complete
// generators; the dimension list is one maximal set plus every other
// irreducible set; the representatives are the canonical closed forms of the
// orbit classes over all subsets.
const std::vector<std::vector<const char*>> maximal_322 = {
    {"S"},
    {"Y1", "Y2"},
    {"Y1", "Y3"},
    {"Y2", "Y3"},
    {"Y1", "U2[3]"},
    {"Y1", "U3[2]"},
    {"Y2", "U1[3]"},
    {"Y2", "U3[1]"},
    {"Y3", "U1[2]"},
    {"Y3", "U2[1]"},
    {"U2[1]", "U3[1]", "U2[3]"},
    {"U2[1]", "U3[1]", "U3[2]"},
    {"U1[2]", "U3[2]", "U1[3]"},
    {"U1[2]", "U3[2]", "U3[1]"},
    {"U1[3]", "U2[3]", "U1[2]"},
    {"U1[3]", "U2[3]", "U2[1]"},
};

const std::vector<std::vector<const char*>> dimensions_322 = {
    {"S"},
    {"Y1"},
    {"Y2"},
    {"Y3"},
    {"U2[1]"},
    {"Y1", "U2[1]"},
    {"U3[1]"},
    {"Y1", "U3[1]"},
    {"U2[1]", "U3[1]"},
    {"U1[2]"},
    {"Y2", "U1[2]"},
    {"U2[1]", "U1[2]"},
    {"U3[1]", "U1[2]"},
    {"U3[2]"},
    {"Y2", "U3[2]"},
    {"U2[1]", "U3[2]"},
    {"U3[1]", "U3[2]"},
    {"U1[2]", "U3[2]"},
    {"U1[3]"},
    {"Y3", "U1[3]"},
    {"U2[1]", "U1[3]"},
    {"U3[1]", "U1[3]"},
    {"U1[2]", "U1[3]"},
    {"U2[1]", "U1[2]", "U1[3]"},
    {"U3[1]", "U1[2]", "U1[3]"},
    {"U3[2]", "U1[3]"},
    {"U2[1]", "U3[2]", "U1[3]"},
    {"U3[1]", "U3[2]", "U1[3]"},
    {"U2[3]"},
    {"Y3", "U2[3]"},
    {"U2[1]", "U2[3]"},
    {"U3[1]", "U2[3]"},
    {"U1[2]", "U2[3]"},
    {"U2[1]", "U1[2]", "U2[3]"},
    {"U3[1]", "U1[2]", "U2[3]"},
    {"U3[2]", "U2[3]"},
    {"U2[1]", "U3[2]", "U2[3]"},
    {"U3[1]", "U3[2]", "U2[3]"},
    {"U1[3]", "U2[3]"},
};

const std::vector<std::vector<const char*>> representatives_322 = {
    {"U2[1]"},
    {"U2[1]", "U1[2]"},
    {"U3[1]", "U1[2]"},
    {"U3[1]", "U3[2]"},
    {"Y3", "U3[1]", "U3[2]"},
    {"U2[1]", "U1[2]", "U1[3]"},
    {"Y1", "U2[1]", "U1[2]", "U1[3]"},
    {"Y1", "U2[1]", "U3[1]", "U1[2]", "U1[3]"},
    {"U2[1]", "U3[2]", "U1[3]"},
    {"S", "Y1", "Y2", "Y3", "U2[1]", "U3[1]", "U1[2]", "U3[2]", "U1[3]", "U2[3]"},
};

Universe universe_322() {
    return enumerate_universe(make_params(3, 2, 2));
}

}  // namespace

TEST_CASE("closure is extensive, monotone, and idempotent") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    CHECK(oracle.has_table());
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        VarSet s(rng() & 1023);
        VarSet c = oracle.closure(s);
        CHECK(s.subset_of(c));
        CHECK(oracle.closure(c) == c);
        VarSet larger = s.with(static_cast<int>(rng() % 10));
        CHECK(c.subset_of(oracle.closure(larger)));
    }
}

TEST_CASE("closures of the basic generating sets") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    VarSet full = VarSet::full(u.size());
    CHECK(oracle.closure(named_set(u, {"S"})) == full);
    CHECK(oracle.closure(named_set(u, {"Y1", "Y2"})) == full);
    CHECK(oracle.closure(named_set(u, {"U1[2]"})) == named_set(u, {"U1[2]"}));
    // both helpers of node 2 rebuild it, which then determines its sends
    CHECK(oracle.closure(named_set(u, {"U1[2]", "U3[2]"})) ==
          named_set(u, {"Y2", "U2[1]", "U1[2]", "U3[2]", "U2[3]"}));
    CHECK(oracle.closure(named_set(u, {"Y1"})) == named_set(u, {"Y1", "U1[2]", "U1[3]"}));
    CHECK(oracle.closure(VarSet()) == VarSet());
}

TEST_CASE("closure matches a plain fixpoint recomputation") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    std::vector<FdRule> rules = fd_rules(u);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        VarSet s(rng() & 1023);
        VarSet fix = s;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const FdRule& r : rules)
                if (r.given.subset_of(fix) && !r.implied.subset_of(fix)) {
                    fix = fix | r.implied;
                    changed = true;
                }
        }
        CHECK(oracle.closure(s) == fix);
    }
}

TEST_CASE("node permutations compose and invert") {
    NodePermutation swap12({2, 1, 3});
    NodePermutation cycle({2, 3, 1});
    CHECK(swap12.of(1) == 2);
    CHECK(swap12.map(node_set({1, 3})) == node_set({2, 3}));
    CHECK(swap12.compose(swap12) == NodePermutation::identity(3));
    CHECK(cycle.compose(cycle.inverse()) == NodePermutation::identity(3));
    // compose applies left first
    CHECK(swap12.compose(cycle).of(1) == cycle.of(swap12.of(1)));
    CHECK(symmetric_group(1).size() == 1);
    CHECK(symmetric_group(2).size() == 2);
    CHECK(symmetric_group(3).size() == 6);
    CHECK(symmetric_group(4).size() == 24);
    CHECK(symmetric_group(3).front() == NodePermutation::identity(3));
}

TEST_CASE("the induced action permutes universe positions consistently") {
    Universe u = universe_322();
    for (const NodePermutation& sigma : symmetric_group(3)) {
        std::vector<int> action = induced_action(sigma, u);
        // a bijection fixing the source
        std::vector<int> seen(static_cast<size_t>(u.size()), 0);
        for (int img : action) ++seen[static_cast<size_t>(img)];
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
        CHECK(action[static_cast<size_t>(u.index_of(VarId::source_var()))] ==
              u.index_of(VarId::source_var()));
        // Y_i lands on Y_sigma(i)
        for (int i = 1; i <= 3; ++i)
            CHECK(action[static_cast<size_t>(u.index_of(VarId::storage_var(i)))] ==
                  u.index_of(VarId::storage_var(sigma.of(i))));
    }
}

TEST_CASE("closure commutes with the induced action") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    std::mt19937_64 rng(13);
    for (const NodePermutation& sigma : symmetric_group(3)) {
        std::vector<int> action = induced_action(sigma, u);
        for (int t = 0; t < 100; ++t) {
            VarSet s(rng() & 1023);
            CHECK(apply_action(action, oracle.closure(s)) ==
                  oracle.closure(apply_action(action, s)));
        }
    }
}

TEST_CASE("irreducible sets split into the frozen maximal list and the rest") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    IrreducibleSets irr = irreducible_sets(oracle);
    CHECK(named_family(u, maximal_322) ==
          std::set<VarSet>(irr.maximal.begin(), irr.maximal.end()));
    CHECK(irr.other.size() == 38);
    // maximal sets close to the full universe, the others do not
    for (VarSet s : irr.maximal) CHECK(oracle.closure(s) == VarSet::full(u.size()));
    for (VarSet s : irr.other) CHECK(oracle.closure(s) != VarSet::full(u.size()));
}

TEST_CASE("dimension sets match the frozen list") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    std::vector<VarSet> dims = dimension_sets(oracle);
    CHECK(dims.size() == 39);
    CHECK(named_family(u, dimensions_322) == std::set<VarSet>(dims.begin(), dims.end()));
    CHECK(std::is_sorted(dims.begin(), dims.end()));
}

TEST_CASE("orbit canon is constant on orbits and idempotent") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    OrbitTable orbits(oracle, symmetric_group(3));
    std::vector<std::vector<int>> actions;
    for (const NodePermutation& sigma : symmetric_group(3))
        actions.push_back(induced_action(sigma, u));
    for (std::uint64_t m = 1; m <= 1023; ++m) {
        VarSet s(m);
        VarSet c = orbits.canon(s);
        CHECK(orbits.canon(c) == c);
        CHECK(oracle.closure(c) == c);
        for (const auto& action : actions) CHECK(orbits.canon(apply_action(action, s)) == c);
    }
}

TEST_CASE("orbit representatives match the frozen list") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    OrbitTable orbits(oracle, symmetric_group(3));
    const std::vector<VarSet>& reps = orbits.representatives();
    CHECK(reps.size() == 10);
    CHECK(named_family(u, representatives_322) == std::set<VarSet>(reps.begin(), reps.end()));
    CHECK(std::is_sorted(reps.begin(), reps.end()));

    // the storage singletons form one orbit of size three
    CHECK(orbits.canon(named_set(u, {"Y1"})) == orbits.canon(named_set(u, {"Y2"})));
    CHECK(orbits.canon(named_set(u, {"Y2"})) == orbits.canon(named_set(u, {"Y3"})));
    // the source is fixed by every relabeling and closes to everything
    CHECK(orbits.canon(named_set(u, {"S"})) == VarSet::full(u.size()));
}

TEST_CASE("orbit representatives of a domain are its distinct canon images") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    OrbitTable orbits(oracle, symmetric_group(3));
    std::vector<VarSet> dims = dimension_sets(oracle);
    std::vector<VarSet> reps = orbit_representatives(orbits, dims);
    std::set<VarSet> expect;
    for (VarSet s : dims) expect.insert(orbits.canon(s));
    CHECK(std::set<VarSet>(reps.begin(), reps.end()) == expect);
    CHECK(std::is_sorted(reps.begin(), reps.end()));
    // the dimension list already reaches every orbit class
    CHECK(reps.size() == orbits.representatives().size());
}

TEST_CASE("rewriting a row replaces columns by canon and merges duplicates") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    OrbitTable orbits(oracle, symmetric_group(3));

    LinearConstraint cap;
    cap.rel = Relation::le;
    cap.tag = RowTag::storage_cap;
    cap.add_term(entropy_col(named_set(u, {"Y2"})), 1);
    cap.rhs = 1;
    std::vector<LinearConstraint> out = rewrite_constraints({cap}, orbits);
    REQUIRE(out.size() == 1);
    REQUIRE(out[0].terms.size() == 1);
    CHECK(out[0].terms[0].first == entropy_col(orbits.canon(named_set(u, {"Y1"}))));

    // a row relating a set to its own closure becomes vacuous
    LinearConstraint vac;
    vac.rel = Relation::eq;
    vac.add_term(entropy_col(named_set(u, {"Y1"})), 1);
    vac.add_term(entropy_col(oracle.closure(named_set(u, {"Y1"}))), -1);
    CHECK(rewrite_constraints({vac}, orbits).empty());

    // permutation twins collapse to one row
    LinearConstraint twin = cap;
    twin.terms.clear();
    twin.add_term(entropy_col(named_set(u, {"Y3"})), 1);
    CHECK(rewrite_constraints({cap, twin}, orbits).size() == 1);
}

TEST_CASE("streamed reduced elemental rows equal rewriting the materialized family") {
    Universe u = universe_322();
    ClosureOracle oracle(u);
    OrbitTable orbits(oracle, symmetric_group(3));
    std::vector<LinearConstraint> streamed = reduced_elemental(oracle, orbits);
    std::vector<LinearConstraint> rewritten =
        rewrite_constraints(elemental_inequalities(u), orbits);
    std::set<std::string> a, b;
    for (const LinearConstraint& r : streamed) a.insert(r.dedup_key());
    for (const LinearConstraint& r : rewritten) b.insert(r.dedup_key());
    CHECK(a == b);
    CHECK(streamed.size() == rewritten.size());
}
