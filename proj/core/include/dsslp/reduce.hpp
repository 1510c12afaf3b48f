#pragma once

#include <dsslp/constraints.hpp>

#include <vector>

namespace dsslp {

// Functional-dependence closure for one universe. Construction precomputes a
// full closure table when the universe fits max_scan_positions, making
// closure() a pure table read (safe for concurrent use); larger universes
// fall back to computing each closure on the fly.
class ClosureOracle {
public:
    explicit ClosureOracle(const Universe& u);

    const Universe& universe() const { return universe_; }
    const std::vector<FdRule>& rules() const { return rules_; }

    // cl(s): extensive, monotone, idempotent fixpoint of the rules.
    VarSet closure(VarSet s) const;

    bool has_table() const { return !table_.empty(); }

private:
    VarSet close_once(VarSet s) const;

    Universe universe_;
    std::vector<FdRule> rules_;
    std::vector<std::uint64_t> table_;
};

// A permutation of the storage nodes 1..n.
class NodePermutation {
public:
    explicit NodePermutation(std::vector<int> image);
    static NodePermutation identity(int n);

    int degree() const { return static_cast<int>(image_.size()); }
    int of(int node) const { return image_.at(static_cast<size_t>(node - 1)); }
    NodeSet map(NodeSet s) const;

    NodePermutation compose(const NodePermutation& then) const;  // x -> then(this(x))
    NodePermutation inverse() const;

    friend bool operator==(const NodePermutation&, const NodePermutation&) = default;

private:
    std::vector<int> image_;
};

// All n! node permutations, lexicographic by image vector.
std::vector<NodePermutation> symmetric_group(int n);

// Position map induced on universe variables: S is fixed, Y_i goes to
// Y_sigma(i), U_{i[j,D]} goes to U_{sigma(i)[sigma(j),sigma(D)]}.
std::vector<int> induced_action(const NodePermutation& sigma, const Universe& u);
VarSet apply_action(const std::vector<int>& action, VarSet s);

// Exhaustive scan over all nonempty subsets. A set is irreducible when no
// proper subset reaches it under closure; `maximal` collects those whose
// closure is the whole universe.
struct IrreducibleSets {
    std::vector<VarSet> maximal;
    std::vector<VarSet> other;
};
IrreducibleSets irreducible_sets(const ClosureOracle& oracle);

// One maximal irreducible set (the least one) plus every other irreducible
// set: the subsets whose entropies remain distinct LP unknowns after the
// closure identification H(s) = H(cl(s)).
std::vector<VarSet> dimension_sets(const ClosureOracle& oracle);

// Canonical orbit representatives under the node symmetries composed with
// closure: canon(s) = min over sigma of cl(sigma . s).
class OrbitTable {
public:
    OrbitTable(const ClosureOracle& oracle, const std::vector<NodePermutation>& group);

    VarSet canon(VarSet s) const;
    // Distinct canonical sets over all nonempty subsets, ascending.
    const std::vector<VarSet>& representatives() const { return reps_; }

private:
    std::vector<std::uint64_t> table_;
    std::vector<VarSet> reps_;
};

// Distinct canon images of the given sets, ascending.
std::vector<VarSet> orbit_representatives(const OrbitTable& table, const std::vector<VarSet>& domain);

// Rewrites rows into the quotient space: every entropy column is replaced by
// its canonical representative, coefficients on merged columns are summed,
// vacuous rows are dropped, and duplicates (after canonicalization) removed.
std::vector<LinearConstraint> rewrite_constraints(const std::vector<LinearConstraint>& rows,
                                                  const OrbitTable& table);

// The full elemental family rewritten into the quotient space, generated
// streamingly (identical result to rewrite_constraints over
// elemental_inequalities, but without materializing the input).
std::vector<LinearConstraint> reduced_elemental(const ClosureOracle& oracle, const OrbitTable& table);

}  // namespace dsslp
