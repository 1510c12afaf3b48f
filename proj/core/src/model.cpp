#include <dsslp/model.hpp>

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace dsslp {

NodeSet node_set(std::initializer_list<int> nodes) {
    NodeSet s = 0;
    for (int i : nodes) {
        if (i < 1 || i > 32) throw std::invalid_argument("node out of range");
        s |= NodeSet{1} << (i - 1);
    }
    return s;
}

std::vector<int> node_list(NodeSet s) {
    std::vector<int> out;
    for (int i = 1; s != 0; ++i, s >>= 1)
        if (s & 1) out.push_back(i);
    return out;
}

int node_count(NodeSet s) {
    return __builtin_popcount(s);
}

std::string node_set_string(NodeSet s) {
    std::string out = "{";
    bool first = true;
    for (int i : node_list(s)) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

void DssParams::validate_shape() const {
    if (k < 1 || k > d || d > n - 1)
        throw std::invalid_argument("invalid system shape: need 1 <= k <= d <= n-1");
    if (n > 32) throw std::invalid_argument("too many nodes");
}

void DssParams::validate() const {
    validate_shape();
    if (alpha < 0) throw std::invalid_argument("alpha must be nonnegative");
    if (beta < 0) throw std::invalid_argument("beta must be nonnegative");
}

VarId VarId::source_var() {
    return VarId{};
}

VarId VarId::storage_var(int i) {
    VarId v;
    v.kind = Kind::storage;
    v.node = i;
    return v;
}

VarId VarId::repair_var(int i, int j, NodeSet helpers) {
    VarId v;
    v.kind = Kind::repair;
    v.node = i;
    v.failed = j;
    v.helpers = helpers;
    return v;
}

std::strong_ordering operator<=>(const VarId& a, const VarId& b) {
    return std::tie(a.kind, a.failed, a.helpers, a.node) <=>
           std::tie(b.kind, b.failed, b.helpers, b.node);
}

bool operator==(const VarId& a, const VarId& b) {
    return (a <=> b) == std::strong_ordering::equal;
}

std::string var_name(const VarId& v, const DssParams& params) {
    switch (v.kind) {
        case VarId::Kind::source:
            return "S";
        case VarId::Kind::storage:
            return "Y" + std::to_string(v.node);
        case VarId::Kind::repair: {
            std::string out = "U" + std::to_string(v.node) + "[" + std::to_string(v.failed);
            if (params.d != params.n - 1) out += "," + node_set_string(v.helpers);
            return out + "]";
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

// Helper sets D of size d inside candidates, ascending as bitmasks.
std::vector<NodeSet> helper_sets(NodeSet candidates, int d) {
    std::vector<NodeSet> out;
    std::vector<int> nodes = node_list(candidates);
    int m = static_cast<int>(nodes.size());
    std::vector<int> idx(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        NodeSet s = 0;
        for (int i : idx) s |= NodeSet{1} << (nodes[static_cast<size_t>(i)] - 1);
        out.push_back(s);
        int t = d - 1;
        while (t >= 0 && idx[static_cast<size_t>(t)] == m - d + t) --t;
        if (t < 0) break;
        ++idx[static_cast<size_t>(t)];
        for (int u = t + 1; u < d; ++u) idx[static_cast<size_t>(u)] = idx[static_cast<size_t>(u - 1)] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Universe enumerate_universe(const DssParams& params) {
    params.validate_shape();
    Universe u;
    u.params = params;
    u.vars.push_back(VarId::source_var());
    for (int i = 1; i <= params.n; ++i) u.vars.push_back(VarId::storage_var(i));
    NodeSet all = (NodeSet{1} << params.n) - 1;
    for (int j = 1; j <= params.n; ++j) {
        NodeSet others = all & ~(NodeSet{1} << (j - 1));
        for (NodeSet helpers : helper_sets(others, params.d))
            for (int i : node_list(helpers))
                u.vars.push_back(VarId::repair_var(i, j, helpers));
    }
    if (u.vars.size() > 64) throw std::length_error("universe exceeds 64 variables");
    return u;
}

long universe_size(const DssParams& params) {
    params.validate_shape();
    long choose = 1;
    for (int i = 1; i <= params.d; ++i)
        choose = choose * (params.n - 1 - params.d + i) / i;
    return 1 + params.n + static_cast<long>(params.n) * choose * params.d;
}

int Universe::index_of(const VarId& v) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), v,
                               [](const VarId& a, const VarId& b) { return a < b; });
    if (it == vars.end() || !(*it == v)) throw std::out_of_range("variable not in universe");
    return static_cast<int>(it - vars.begin());
}

Rational max_flow_bound(const DssParams& params) {
    params.validate();
    Rational total = 0;
    for (int i = 0; i < params.k; ++i) {
        Rational repair = Rational(params.d - i) * params.beta;
        total += std::min(params.alpha, repair);
    }
    return total;
}

}  // namespace dsslp
