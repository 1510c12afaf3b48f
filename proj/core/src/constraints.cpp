#include <dsslp/constraints.hpp>

#include <map>
#include <utility>

namespace dsslp {

namespace {

// Repair variables grouped by failure pattern (failed node, helper set),
// in universe order within and across groups.
std::map<std::pair<int, NodeSet>, VarSet> failure_patterns(const Universe& u) {
    std::map<std::pair<int, NodeSet>, VarSet> groups;
    for (int p = 0; p < u.size(); ++p) {
        const VarId& v = u.var(p);
        if (v.kind == VarId::Kind::repair)
            groups[{v.failed, v.helpers}] = groups[{v.failed, v.helpers}].with(p);
    }
    return groups;
}

LinearConstraint determination_row(VarSet given, int determined_pos, RowTag tag) {
    LinearConstraint row;
    row.tag = tag;
    row.rel = Relation::eq;
    row.add_term(entropy_col(given | VarSet::single(determined_pos)), 1);
    row.add_term(entropy_col(given), -1);
    row.canonicalize();
    return row;
}

}  // namespace

std::vector<LinearConstraint> encoding_constraints(const Universe& u) {
    std::vector<LinearConstraint> rows;
    int source = u.index_of(VarId::source_var());
    for (int p = 0; p < u.size(); ++p) {
        const VarId& v = u.var(p);
        if (v.kind == VarId::Kind::storage)
            rows.push_back(determination_row(VarSet::single(source), p, RowTag::storage_enc));
    }
    for (int p = 0; p < u.size(); ++p) {
        const VarId& v = u.var(p);
        if (v.kind == VarId::Kind::repair) {
            int sender = u.index_of(VarId::storage_var(v.node));
            rows.push_back(determination_row(VarSet::single(sender), p, RowTag::repair_enc));
        }
    }
    return rows;
}

std::vector<LinearConstraint> capacity_constraints(const Universe& u, const ParamSpec& alpha,
                                                   const ParamSpec& beta) {
    std::vector<LinearConstraint> rows;
    auto bound_row = [](VarSet subject, const ParamSpec& cap, RowTag tag) {
        LinearConstraint row;
        row.tag = tag;
        row.rel = Relation::le;
        row.add_term(entropy_col(subject), 1);
        if (cap.is_fixed)
            row.rhs = cap.value;
        else
            row.add_term(cap.key, -1);
        row.canonicalize();
        return row;
    };
    for (int p = 0; p < u.size(); ++p)
        if (u.var(p).kind == VarId::Kind::storage)
            rows.push_back(bound_row(VarSet::single(p), alpha, RowTag::storage_cap));
    for (int p = 0; p < u.size(); ++p)
        if (u.var(p).kind == VarId::Kind::repair)
            rows.push_back(bound_row(VarSet::single(p), beta, RowTag::repair_cap));
    return rows;
}

std::vector<LinearConstraint> decoding_constraints(const Universe& u) {
    std::vector<LinearConstraint> rows;
    for (const auto& [pattern, incoming] : failure_patterns(u)) {
        int rebuilt = u.index_of(VarId::storage_var(pattern.first));
        rows.push_back(determination_row(incoming, rebuilt, RowTag::repair_dec));
    }
    int n = u.params.n;
    int source = u.index_of(VarId::source_var());
    for (NodeSet nodes = 1; nodes < (NodeSet{1} << n); ++nodes) {
        if (node_count(nodes) != u.params.k) continue;
        VarSet stored;
        for (int i : node_list(nodes)) stored = stored.with(u.index_of(VarId::storage_var(i)));
        rows.push_back(determination_row(stored, source, RowTag::reconstruct));
    }
    return rows;
}

std::vector<FdRule> fd_rules(const Universe& u) {
    std::vector<FdRule> rules;
    int source = u.index_of(VarId::source_var());
    VarSet all_storage;
    for (int p = 0; p < u.size(); ++p)
        if (u.var(p).kind == VarId::Kind::storage) all_storage = all_storage.with(p);
    rules.push_back({VarSet::single(source), all_storage});

    for (int i = 1; i <= u.params.n; ++i) {
        VarSet sent;
        for (int p = 0; p < u.size(); ++p) {
            const VarId& v = u.var(p);
            if (v.kind == VarId::Kind::repair && v.node == i) sent = sent.with(p);
        }
        if (!sent.empty())
            rules.push_back({VarSet::single(u.index_of(VarId::storage_var(i))), sent});
    }

    for (const auto& [pattern, incoming] : failure_patterns(u)) {
        int rebuilt = u.index_of(VarId::storage_var(pattern.first));
        rules.push_back({incoming, VarSet::single(rebuilt)});
    }

    int n = u.params.n;
    for (NodeSet nodes = 1; nodes < (NodeSet{1} << n); ++nodes) {
        if (node_count(nodes) != u.params.k) continue;
        VarSet stored;
        for (int i : node_list(nodes)) stored = stored.with(u.index_of(VarId::storage_var(i)));
        rules.push_back({stored, VarSet::single(source)});
    }
    return rules;
}

}  // namespace dsslp
