#include <dsslp/reduce.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace dsslp {

ClosureOracle::ClosureOracle(const Universe& u) : universe_(u), rules_(fd_rules(u)) {
    int n = universe_.size();
    if (n > max_scan_positions) return;
    std::uint64_t total = std::uint64_t{1} << n;
    table_.resize(total);
    for (std::uint64_t m = 0; m < total; ++m) {
        VarSet s(m);
        VarSet grown = close_once(s);
        while (grown != s) {
            s = grown;
            grown = close_once(s);
        }
        table_[m] = s.bits;
    }
}

VarSet ClosureOracle::close_once(VarSet s) const {
    for (const FdRule& rule : rules_)
        if (rule.given.subset_of(s)) s = s | rule.implied;
    return s;
}

VarSet ClosureOracle::closure(VarSet s) const {
    if (!table_.empty()) return VarSet(table_[s.bits]);
    VarSet grown = close_once(s);
    while (grown != s) {
        s = grown;
        grown = close_once(s);
    }
    return s;
}

NodePermutation::NodePermutation(std::vector<int> image) : image_(std::move(image)) {
    int n = static_cast<int>(image_.size());
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int v : image_) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v - 1)])
            throw std::invalid_argument("not a permutation");
        seen[static_cast<size_t>(v - 1)] = true;
    }
}

NodePermutation NodePermutation::identity(int n) {
    std::vector<int> image(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) image[static_cast<size_t>(i)] = i + 1;
    return NodePermutation(std::move(image));
}

NodeSet NodePermutation::map(NodeSet s) const {
    NodeSet out = 0;
    for (int i : node_list(s)) out |= NodeSet{1} << (of(i) - 1);
    return out;
}

NodePermutation NodePermutation::compose(const NodePermutation& then) const {
    std::vector<int> image(image_.size());
    for (size_t i = 0; i < image_.size(); ++i) image[i] = then.of(image_[i]);
    return NodePermutation(std::move(image));
}

NodePermutation NodePermutation::inverse() const {
    std::vector<int> image(image_.size());
    for (size_t i = 0; i < image_.size(); ++i)
        image[static_cast<size_t>(image_[i] - 1)] = static_cast<int>(i) + 1;
    return NodePermutation(std::move(image));
}

std::vector<NodePermutation> symmetric_group(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("group enumeration supports 1..8 nodes");
    std::vector<int> image(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) image[static_cast<size_t>(i)] = i + 1;
    std::vector<NodePermutation> group;
    do {
        group.push_back(NodePermutation(image));
    } while (std::next_permutation(image.begin(), image.end()));
    return group;
}

std::vector<int> induced_action(const NodePermutation& sigma, const Universe& u) {
    if (sigma.degree() != u.params.n) throw std::invalid_argument("permutation degree mismatch");
    std::vector<int> action(static_cast<size_t>(u.size()));
    for (int p = 0; p < u.size(); ++p) {
        const VarId& v = u.var(p);
        VarId image;
        switch (v.kind) {
            case VarId::Kind::source:
                image = v;
                break;
            case VarId::Kind::storage:
                image = VarId::storage_var(sigma.of(v.node));
                break;
            case VarId::Kind::repair:
                image = VarId::repair_var(sigma.of(v.node), sigma.of(v.failed), sigma.map(v.helpers));
                break;
        }
        action[static_cast<size_t>(p)] = u.index_of(image);
    }
    return action;
}

VarSet apply_action(const std::vector<int>& action, VarSet s) {
    VarSet out;
    for (int p : set_positions(s)) out = out.with(action.at(static_cast<size_t>(p)));
    return out;
}

IrreducibleSets irreducible_sets(const ClosureOracle& oracle) {
    if (!oracle.has_table()) throw std::length_error("universe too large for exhaustive scan");
    int n = oracle.universe().size();
    VarSet full = VarSet::full(n);
    IrreducibleSets out;
    std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t m = 1; m < total; ++m) {
        VarSet s(m);
        bool irreducible = true;
        for (int v : set_positions(s)) {
            if (s.subset_of(oracle.closure(s.without(v)))) {
                irreducible = false;
                break;
            }
        }
        if (!irreducible) continue;
        if (oracle.closure(s) == full)
            out.maximal.push_back(s);
        else
            out.other.push_back(s);
    }
    return out;
}

std::vector<VarSet> dimension_sets(const ClosureOracle& oracle) {
    IrreducibleSets irr = irreducible_sets(oracle);
    if (irr.maximal.empty()) throw std::logic_error("no maximal irreducible set");
    std::vector<VarSet> dims = irr.other;
    dims.push_back(irr.maximal.front());
    std::sort(dims.begin(), dims.end());
    return dims;
}

OrbitTable::OrbitTable(const ClosureOracle& oracle, const std::vector<NodePermutation>& group) {
    if (!oracle.has_table()) throw std::length_error("universe too large for exhaustive scan");
    if (group.empty()) throw std::invalid_argument("empty permutation group");
    const Universe& u = oracle.universe();
    std::vector<std::vector<int>> actions;
    actions.reserve(group.size());
    for (const NodePermutation& sigma : group) actions.push_back(induced_action(sigma, u));

    int n = u.size();
    std::uint64_t total = std::uint64_t{1} << n;
    table_.resize(total);
    table_[0] = 0;
    for (std::uint64_t m = 1; m < total; ++m) {
        VarSet closed = oracle.closure(VarSet(m));
        std::uint64_t best = ~std::uint64_t{0};
        for (const auto& action : actions) {
            std::uint64_t img = 0;
            std::uint64_t rest = closed.bits;
            while (rest != 0) {
                int p = __builtin_ctzll(rest);
                rest &= rest - 1;
                img |= std::uint64_t{1} << action[static_cast<size_t>(p)];
            }
            best = std::min(best, img);
        }
        table_[m] = best;
    }
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t m = 1; m < total; ++m)
        if (seen.insert(table_[m]).second) reps_.push_back(VarSet(table_[m]));
    std::sort(reps_.begin(), reps_.end());
}

VarSet OrbitTable::canon(VarSet s) const {
    return VarSet(table_.at(s.bits));
}

std::vector<VarSet> orbit_representatives(const OrbitTable& table, const std::vector<VarSet>& domain) {
    std::vector<VarSet> out;
    std::unordered_set<std::uint64_t> seen;
    for (VarSet s : domain)
        if (seen.insert(table.canon(s).bits).second) out.push_back(table.canon(s));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Vacuous after rewriting: no columns left and the constant comparison holds.
bool trivially_true(const LinearConstraint& row) {
    if (!row.terms.empty()) return false;
    switch (row.rel) {
        case Relation::eq: return row.rhs == 0;
        case Relation::ge: return row.rhs <= 0;
        case Relation::le: return row.rhs >= 0;
    }
    return false;
}

}  // namespace

std::vector<LinearConstraint> rewrite_constraints(const std::vector<LinearConstraint>& rows,
                                                  const OrbitTable& table) {
    std::vector<LinearConstraint> out;
    std::unordered_set<std::string> seen;
    for (const LinearConstraint& row : rows) {
        LinearConstraint mapped;
        mapped.rel = row.rel;
        mapped.rhs = row.rhs;
        mapped.tag = row.tag;
        for (const auto& [key, c] : row.terms) {
            if (key < 0)
                mapped.add_term(key, c);
            else
                mapped.add_term(entropy_col(table.canon(VarSet(static_cast<std::uint64_t>(key)))), c);
        }
        mapped.canonicalize();
        if (trivially_true(mapped)) continue;
        if (seen.insert(mapped.dedup_key()).second) out.push_back(std::move(mapped));
    }
    return out;
}

std::vector<LinearConstraint> reduced_elemental(const ClosureOracle& oracle, const OrbitTable& table) {
    int nvars = oracle.universe().size();
    std::vector<LinearConstraint> out;
    std::unordered_set<std::string> seen;
    auto emit = [&](LinearConstraint&& row) {
        row.canonicalize();
        if (trivially_true(row)) return;
        if (seen.insert(row.dedup_key()).second) out.push_back(std::move(row));
    };

    VarSet full = VarSet::full(nvars);
    for (int i = 0; i < nvars; ++i) {
        LinearConstraint row;
        row.tag = RowTag::elemental_h;
        row.rel = Relation::ge;
        row.add_term(entropy_col(table.canon(full)), 1);
        if (nvars > 1) row.add_term(entropy_col(table.canon(full.without(i))), -1);
        emit(std::move(row));
    }
    for (int a = 0; a < nvars; ++a) {
        for (int b = a + 1; b < nvars; ++b) {
            std::uint64_t patterns = std::uint64_t{1} << (nvars - 2);
            for (std::uint64_t m = 0; m < patterns; ++m) {
                std::uint64_t below_a = (std::uint64_t{1} << a) - 1;
                std::uint64_t spread = ((m & ~below_a) << 1) | (m & below_a);
                std::uint64_t below_b = (std::uint64_t{1} << b) - 1;
                VarSet c(((spread & ~below_b) << 1) | (spread & below_b));
                VarSet ac = c.with(a);
                VarSet bc = c.with(b);
                VarSet abc = ac.with(b);
                LinearConstraint row;
                row.tag = RowTag::elemental_i;
                row.rel = Relation::ge;
                row.add_term(entropy_col(table.canon(ac)), 1);
                row.add_term(entropy_col(table.canon(bc)), 1);
                row.add_term(entropy_col(table.canon(abc)), -1);
                if (!c.empty()) row.add_term(entropy_col(table.canon(c)), -1);
                emit(std::move(row));
            }
        }
    }
    return out;
}

}  // namespace dsslp
