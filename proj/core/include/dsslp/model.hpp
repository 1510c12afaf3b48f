#pragma once

#include <dsslp/rational.hpp>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace dsslp {

// Subset of storage nodes 1..n, bit i-1 standing for node i.
using NodeSet = std::uint32_t;

NodeSet node_set(std::initializer_list<int> nodes);
std::vector<int> node_list(NodeSet s);
int node_count(NodeSet s);
std::string node_set_string(NodeSet s);  // "{1,3,4}"

// System shape: n nodes, any k of them recover the source, failed nodes are
// rebuilt from d helpers; alpha bounds per-node storage, beta per-helper
// repair traffic (both in bits).
struct DssParams {
    int n = 0;
    int k = 0;
    int d = 0;
    Rational alpha;
    Rational beta;

    // Requires 1 <= k <= d <= n-1 and nonnegative alpha, beta.
    void validate() const;
    // Shape checks only; alpha and beta may be unset (used when a capacity is
    // an LP unknown rather than a given).
    void validate_shape() const;
};

// A random variable of the system: the source S, a stored content Y_i, or a
// repair transmission U_{i[j,D]} sent by helper i to rebuild node j from the
// helper set D (i in D, j not in D, |D| = d).
struct VarId {
    enum class Kind : std::uint8_t { source = 0, storage = 1, repair = 2 };

    Kind kind = Kind::source;
    int node = 0;         // storage: the node; repair: the sending helper i
    int failed = 0;       // repair: the rebuilt node j
    NodeSet helpers = 0;  // repair: the helper set D

    static VarId source_var();
    static VarId storage_var(int i);
    static VarId repair_var(int i, int j, NodeSet helpers);

    // Total order behind the canonical universe layout: S, then Y_i by node,
    // then repairs by (failed node, helper set, sending helper).
    friend std::strong_ordering operator<=>(const VarId& a, const VarId& b);
    friend bool operator==(const VarId& a, const VarId& b);
};

// "S", "Y2", "U1[2]" when d = n-1 (the helper set is forced), otherwise
// "U1[2,{1,3,4}]".
std::string var_name(const VarId& v, const DssParams& params);

// All system variables in the canonical order.
struct Universe {
    DssParams params;
    std::vector<VarId> vars;

    int size() const { return static_cast<int>(vars.size()); }
    const VarId& var(int idx) const { return vars.at(static_cast<size_t>(idx)); }
    // Position in the canonical order; throws std::out_of_range if absent.
    int index_of(const VarId& v) const;
};

Universe enumerate_universe(const DssParams& params);

// 1 + n + n * C(n-1, d) * d, without enumerating.
long universe_size(const DssParams& params);

// Cut-set bound sum_{i=0}^{k-1} min(alpha, (d-i) beta).
Rational max_flow_bound(const DssParams& params);

}  // namespace dsslp
