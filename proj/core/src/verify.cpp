#include <dsslp/verify.hpp>

#include <json.hpp>

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace dsslp {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t max_pmf_atoms = std::size_t{1} << 24;

[[noreturn]] void bad_code(const std::string& what) {
    throw std::invalid_argument("code table: " + what);
}

NodeSet node_set_from_list(const std::vector<int>& nodes) {
    NodeSet s = 0;
    for (int v : nodes) {
        if (v < 1 || v > 32) throw std::invalid_argument("node out of range: " + std::to_string(v));
        s |= NodeSet{1} << (v - 1);
    }
    return s;
}

// Failure patterns (rebuilt node, helper set) in universe order, each with the
// indices of its channels (senders ascending, matching the universe layout).
struct Pattern {
    int rebuilt = 0;
    NodeSet helpers = 0;
    std::vector<int> channels;
};

std::vector<Pattern> group_patterns(const std::vector<RepairChannel>& channels) {
    std::vector<Pattern> out;
    for (int c = 0; c < static_cast<int>(channels.size()); ++c) {
        const RepairChannel& ch = channels[static_cast<size_t>(c)];
        if (out.empty() || out.back().rebuilt != ch.rebuilt || out.back().helpers != ch.helpers)
            out.push_back({ch.rebuilt, ch.helpers, {}});
        out.back().channels.push_back(c);
    }
    return out;
}

// All cardinality-k subsets of {1..n} as masks, ascending.
std::vector<NodeSet> k_subsets(int n, int k) {
    std::vector<NodeSet> out;
    for (NodeSet m = 0; m < (NodeSet{1} << n); ++m)
        if (node_count(m) == k) out.push_back(m);
    return out;
}

}  // namespace

JointPmf::JointPmf(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw std::invalid_argument("pmf needs at least one variable");
    if (sizes_.size() > 63) throw std::length_error("too many pmf variables");
    std::size_t atoms = 1;
    strides_.reserve(sizes_.size());
    for (int s : sizes_) {
        if (s < 1) throw std::invalid_argument("pmf alphabet sizes must be positive");
        strides_.push_back(atoms);
        if (atoms > max_pmf_atoms / static_cast<std::size_t>(s))
            throw std::length_error("pmf table too large");
        atoms *= static_cast<std::size_t>(s);
    }
    table_.assign(atoms, Rational(0));
}

static std::size_t flat_index(const std::vector<int>& sizes, const std::vector<std::size_t>& strides,
                              const std::vector<int>& point) {
    if (point.size() != sizes.size()) throw std::invalid_argument("pmf point has wrong arity");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (point[i] < 0 || point[i] >= sizes[i]) throw std::out_of_range("pmf point out of range");
        flat += static_cast<std::size_t>(point[i]) * strides[i];
    }
    return flat;
}

Rational& JointPmf::at(const std::vector<int>& point) {
    return table_[flat_index(sizes_, strides_, point)];
}

const Rational& JointPmf::at(const std::vector<int>& point) const {
    return table_[flat_index(sizes_, strides_, point)];
}

std::vector<int> JointPmf::point_of(std::size_t flat) const {
    if (flat >= table_.size()) throw std::out_of_range("pmf atom out of range");
    std::vector<int> point(sizes_.size());
    for (std::size_t i = 0; i < sizes_.size(); ++i)
        point[i] = static_cast<int>((flat / strides_[i]) % static_cast<std::size_t>(sizes_[i]));
    return point;
}

void JointPmf::normalize() {
    Rational total(0);
    for (const Rational& p : table_) {
        if (p < 0) throw std::invalid_argument("pmf has a negative entry");
        total += p;
    }
    if (total == 0) throw std::invalid_argument("pmf has zero total mass");
    for (Rational& p : table_) p /= total;
}

void JointPmf::validate() const {
    Rational total(0);
    for (const Rational& p : table_) {
        if (p < 0) throw std::invalid_argument("pmf has a negative entry");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("pmf mass is not 1");
}

double JointPmf::entropy(VarSet positions) const {
    if (positions.bits >> sizes_.size())
        throw std::out_of_range("entropy position beyond pmf arity");
    if (positions.empty()) return 0;
    const std::vector<int> pos = set_positions(positions);

    // Exact marginal over the selected coordinates, then -sum p log2 p.
    std::map<std::size_t, Rational> marginal;
    std::vector<std::size_t> sub(pos.size());
    std::size_t stride = 1;
    for (std::size_t t = 0; t < pos.size(); ++t) {
        sub[t] = stride;
        stride *= static_cast<std::size_t>(sizes_[static_cast<size_t>(pos[t])]);
    }
    for (std::size_t flat = 0; flat < table_.size(); ++flat) {
        const Rational& p = table_[flat];
        if (p == 0) continue;
        std::size_t key = 0;
        for (std::size_t t = 0; t < pos.size(); ++t) {
            auto i = static_cast<std::size_t>(pos[t]);
            key += ((flat / strides_[i]) % static_cast<std::size_t>(sizes_[i])) * sub[t];
        }
        marginal[key] += p;
    }
    double h = 0;
    for (const auto& [key, mass] : marginal) {
        (void)key;
        double p = to_double(mass);
        if (p > 0) h -= p * std::log2(p);
    }
    return h;
}

JointPmf random_pmf(const std::vector<int>& sizes, std::mt19937_64& rng, int max_weight) {
    if (max_weight < 1) throw std::invalid_argument("max_weight must be positive");
    JointPmf pmf(sizes);
    std::uniform_int_distribution<int> weight(0, max_weight);
    bool any = false;
    for (std::size_t flat = 0; flat < pmf.atom_count(); ++flat) {
        int w = weight(rng);
        pmf.atom(flat) = w;
        any = any || w > 0;
    }
    while (!any) {
        pmf.atom(rng() % pmf.atom_count()) = 1;
        any = true;
    }
    pmf.normalize();
    return pmf;
}

double joint_entropy(const JointPmf& pmf, VarSet positions) { return pmf.entropy(positions); }

double concatenation_entropy(const JointPmf& pmf, const std::vector<VarSet>& sets,
                             const std::vector<std::vector<int>>& actions) {
    VarSet all;
    for (VarSet s : sets) all = all | s;
    double sum = 0;
    for (const std::vector<int>& action : actions) sum += pmf.entropy(apply_action(action, all));
    return sum;
}

double concatenation_entropy(const JointPmf& pmf, const std::vector<VarSet>& sets) {
    std::vector<std::vector<int>> actions;
    for (const NodePermutation& sigma : symmetric_group(pmf.var_count())) {
        std::vector<int> action(static_cast<size_t>(pmf.var_count()));
        for (int p = 0; p < pmf.var_count(); ++p)
            action[static_cast<size_t>(p)] = sigma.of(p + 1) - 1;
        actions.push_back(std::move(action));
    }
    return concatenation_entropy(pmf, sets, actions);
}

ConcatSymmetryReport check_concat_symmetry(const JointPmf& pmf, const std::vector<VarSet>& sets,
                                           const NodePermutation& sigma, double tol) {
    if (sigma.degree() != pmf.var_count())
        throw std::invalid_argument("permutation degree does not match pmf arity");
    std::vector<VarSet> mapped;
    mapped.reserve(sets.size());
    for (VarSet s : sets) {
        VarSet image;
        for (int p : set_positions(s)) image = image.with(sigma.of(p + 1) - 1);
        mapped.push_back(image);
    }
    ConcatSymmetryReport report;
    report.lhs = concatenation_entropy(pmf, sets);
    report.rhs = concatenation_entropy(pmf, mapped);
    report.ok = std::abs(report.lhs - report.rhs) <= tol;
    return report;
}

void CodeTable::validate() const {
    params.validate();
    if (source_size < 1) bad_code("source_size must be positive");
    const auto n = static_cast<std::size_t>(params.n);
    if (storage_sizes.size() != n) bad_code("need one storage size per node");
    for (int s : storage_sizes)
        if (s < 1) bad_code("storage sizes must be positive");
    if (storage_encoders.size() != n) bad_code("need one storage encoder per node");
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<int>& enc = storage_encoders[i];
        if (enc.size() != static_cast<std::size_t>(source_size))
            bad_code("storage encoder " + std::to_string(i + 1) + " has wrong domain");
        for (int v : enc)
            if (v < 0 || v >= storage_sizes[i])
                bad_code("storage encoder " + std::to_string(i + 1) + " value out of range");
    }

    const Universe u = enumerate_universe(params);
    std::vector<VarId> repair_vars;
    for (const VarId& v : u.vars)
        if (v.kind == VarId::Kind::repair) repair_vars.push_back(v);
    if (repair_channels.size() != repair_vars.size())
        bad_code("need one repair channel per transmission, in universe order");
    for (std::size_t t = 0; t < repair_vars.size(); ++t) {
        const RepairChannel& ch = repair_channels[t];
        const VarId& v = repair_vars[t];
        if (ch.sender != v.node || ch.rebuilt != v.failed || ch.helpers != v.helpers)
            bad_code("repair channel " + std::to_string(t) + " is out of order; expected " +
                     var_name(v, params));
        if (ch.size < 1) bad_code("repair channel sizes must be positive");
        if (ch.table.size() != static_cast<std::size_t>(storage_sizes[static_cast<size_t>(ch.sender - 1)]))
            bad_code("repair channel for " + var_name(v, params) + " has wrong domain");
        for (int val : ch.table)
            if (val < 0 || val >= ch.size)
                bad_code("repair channel for " + var_name(v, params) + " value out of range");
    }

    const std::vector<Pattern> patterns = group_patterns(repair_channels);
    if (repair_decoders.size() != patterns.size())
        bad_code("need one repair decoder per failure pattern, in universe order");
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        const RepairDecoder& dec = repair_decoders[p];
        const Pattern& pat = patterns[p];
        if (dec.rebuilt != pat.rebuilt || dec.helpers != pat.helpers)
            bad_code("repair decoder " + std::to_string(p) + " is out of order");
        std::size_t domain = 1;
        for (int c : pat.channels)
            domain *= static_cast<std::size_t>(repair_channels[static_cast<size_t>(c)].size);
        if (dec.table.size() != domain)
            bad_code("repair decoder for Y" + std::to_string(dec.rebuilt) + " has wrong domain");
        for (int val : dec.table)
            if (val < 0 || val >= storage_sizes[static_cast<size_t>(dec.rebuilt - 1)])
                bad_code("repair decoder for Y" + std::to_string(dec.rebuilt) + " value out of range");
    }

    const std::vector<NodeSet> groups = k_subsets(params.n, params.k);
    if (recon_decoders.size() != groups.size())
        bad_code("need one reconstruction decoder per k-subset, masks ascending");
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const ReconDecoder& dec = recon_decoders[g];
        if (dec.nodes != groups[g]) bad_code("reconstruction decoder " + std::to_string(g) + " is out of order");
        std::size_t domain = 1;
        for (int node : node_list(dec.nodes))
            domain *= static_cast<std::size_t>(storage_sizes[static_cast<size_t>(node - 1)]);
        if (dec.table.size() != domain)
            bad_code("reconstruction decoder for " + node_set_string(dec.nodes) + " has wrong domain");
        for (int val : dec.table)
            if (val < 0 || val >= source_size)
                bad_code("reconstruction decoder for " + node_set_string(dec.nodes) + " value out of range");
    }
}

namespace {

Rational capacity_from_json(const nlohmann::json& j, const char* name) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw std::invalid_argument(std::string(name) + " must be a string or integer");
}

}  // namespace

CodeTable load_code_table(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("code table is not valid JSON: ") + e.what());
    }
    CodeTable code;
    try {
        const nlohmann::json& p = j.at("params");
        code.params.n = p.at("n").get<int>();
        code.params.k = p.at("k").get<int>();
        code.params.d = p.at("d").get<int>();
        code.params.alpha = capacity_from_json(p.at("alpha"), "alpha");
        code.params.beta = capacity_from_json(p.at("beta"), "beta");
        code.source_size = j.at("source_size").get<int>();
        code.storage_sizes = j.at("storage_sizes").get<std::vector<int>>();
        code.storage_encoders = j.at("storage_encoders").get<std::vector<std::vector<int>>>();
        for (const nlohmann::json& c : j.at("repair_channels")) {
            RepairChannel ch;
            ch.sender = c.at("sender").get<int>();
            ch.rebuilt = c.at("rebuilt").get<int>();
            ch.helpers = node_set_from_list(c.at("helpers").get<std::vector<int>>());
            ch.size = c.at("size").get<int>();
            ch.table = c.at("table").get<std::vector<int>>();
            code.repair_channels.push_back(std::move(ch));
        }
        for (const nlohmann::json& c : j.at("repair_decoders")) {
            RepairDecoder dec;
            dec.rebuilt = c.at("rebuilt").get<int>();
            dec.helpers = node_set_from_list(c.at("helpers").get<std::vector<int>>());
            dec.table = c.at("table").get<std::vector<int>>();
            code.repair_decoders.push_back(std::move(dec));
        }
        for (const nlohmann::json& c : j.at("reconstruction_decoders")) {
            ReconDecoder dec;
            dec.nodes = node_set_from_list(c.at("nodes").get<std::vector<int>>());
            dec.table = c.at("table").get<std::vector<int>>();
            code.recon_decoders.push_back(std::move(dec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("code table is malformed: ") + e.what());
    }
    code.validate();
    return code;
}

void save_code_table(const CodeTable& code, std::ostream& out) {
    ordered_json j;
    j["params"] = {{"n", code.params.n},
                   {"k", code.params.k},
                   {"d", code.params.d},
                   {"alpha", fraction_string(code.params.alpha)},
                   {"beta", fraction_string(code.params.beta)}};
    j["source_size"] = code.source_size;
    j["storage_sizes"] = code.storage_sizes;
    j["storage_encoders"] = code.storage_encoders;
    j["repair_channels"] = ordered_json::array();
    for (const RepairChannel& ch : code.repair_channels)
        j["repair_channels"].push_back({{"sender", ch.sender},
                                        {"rebuilt", ch.rebuilt},
                                        {"helpers", node_list(ch.helpers)},
                                        {"size", ch.size},
                                        {"table", ch.table}});
    j["repair_decoders"] = ordered_json::array();
    for (const RepairDecoder& dec : code.repair_decoders)
        j["repair_decoders"].push_back(
            {{"rebuilt", dec.rebuilt}, {"helpers", node_list(dec.helpers)}, {"table", dec.table}});
    j["reconstruction_decoders"] = ordered_json::array();
    for (const ReconDecoder& dec : code.recon_decoders)
        j["reconstruction_decoders"].push_back({{"nodes", node_list(dec.nodes)}, {"table", dec.table}});
    out << j.dump(2) << '\n';
}

CodeTable parity_code() {
    CodeTable code;
    code.params = {3, 2, 2, Rational(1), Rational(1)};
    code.source_size = 4;  // source symbol s = s1 + 2 s2
    code.storage_sizes = {2, 2, 2};
    code.storage_encoders = {{0, 1, 0, 1},   // Y1 = s1
                             {0, 0, 1, 1},   // Y2 = s2
                             {0, 1, 1, 0}};  // Y3 = s1 xor s2
    const std::vector<int> identity = {0, 1};
    const Universe u = enumerate_universe(code.params);
    for (const VarId& v : u.vars)
        if (v.kind == VarId::Kind::repair)
            code.repair_channels.push_back({v.node, v.failed, v.helpers, 2, identity});
    // Every stored bit is the xor of the other two.
    const std::vector<int> from_xor = {0, 1, 1, 0};
    code.repair_decoders = {{1, node_set({2, 3}), from_xor},
                            {2, node_set({1, 3}), from_xor},
                            {3, node_set({1, 2}), from_xor}};
    code.recon_decoders = {{node_set({1, 2}), {0, 1, 2, 3}},
                           {node_set({1, 3}), {0, 3, 2, 1}},
                           {node_set({2, 3}), {0, 3, 1, 2}}};
    return code;
}

CodeTable repetition_code(const DssParams& params, int source_size) {
    params.validate();
    if (source_size < 1) throw std::invalid_argument("source_size must be positive");
    CodeTable code;
    code.params = params;
    code.source_size = source_size;
    std::vector<int> identity(static_cast<size_t>(source_size));
    for (int s = 0; s < source_size; ++s) identity[static_cast<size_t>(s)] = s;
    code.storage_sizes.assign(static_cast<size_t>(params.n), source_size);
    code.storage_encoders.assign(static_cast<size_t>(params.n), identity);
    const Universe u = enumerate_universe(params);
    for (const VarId& v : u.vars)
        if (v.kind == VarId::Kind::repair)
            code.repair_channels.push_back({v.node, v.failed, v.helpers, source_size, identity});
    // Every helper sends the full source, so the first digit already decides.
    for (const Pattern& pat : group_patterns(code.repair_channels)) {
        RepairDecoder dec{pat.rebuilt, pat.helpers, {}};
        std::size_t domain = 1;
        for (std::size_t t = 0; t < pat.channels.size(); ++t)
            domain *= static_cast<std::size_t>(source_size);
        dec.table.resize(domain);
        for (std::size_t i = 0; i < domain; ++i)
            dec.table[i] = static_cast<int>(i % static_cast<std::size_t>(source_size));
        code.repair_decoders.push_back(std::move(dec));
    }
    for (NodeSet group : k_subsets(params.n, params.k)) {
        ReconDecoder dec{group, {}};
        std::size_t domain = 1;
        for (int t = 0; t < params.k; ++t) domain *= static_cast<std::size_t>(source_size);
        dec.table.resize(domain);
        for (std::size_t i = 0; i < domain; ++i)
            dec.table[i] = static_cast<int>(i % static_cast<std::size_t>(source_size));
        code.recon_decoders.push_back(std::move(dec));
    }
    return code;
}

CodeReport check_code(const CodeTable& code) {
    code.validate();
    const DssParams& params = code.params;
    const std::vector<Pattern> patterns = group_patterns(code.repair_channels);

    CodeReport report;
    report.rate_bits = std::log2(static_cast<double>(code.source_size));
    for (int s : code.storage_sizes) report.storage_bits.push_back(std::log2(static_cast<double>(s)));
    for (const RepairChannel& ch : code.repair_channels)
        report.repair_bits.push_back(std::log2(static_cast<double>(ch.size)));

    report.functional = true;
    std::vector<int> y(static_cast<size_t>(params.n));
    std::vector<int> sent(code.repair_channels.size());
    for (int s = 0; s < code.source_size; ++s) {
        for (int i = 0; i < params.n; ++i)
            y[static_cast<size_t>(i)] = code.storage_encoders[static_cast<size_t>(i)][static_cast<size_t>(s)];
        for (std::size_t c = 0; c < code.repair_channels.size(); ++c) {
            const RepairChannel& ch = code.repair_channels[c];
            sent[c] = ch.table[static_cast<size_t>(y[static_cast<size_t>(ch.sender - 1)])];
        }
        for (std::size_t p = 0; p < patterns.size(); ++p) {
            const Pattern& pat = patterns[p];
            std::size_t idx = 0;
            std::size_t stride = 1;
            for (int c : pat.channels) {
                idx += static_cast<std::size_t>(sent[static_cast<size_t>(c)]) * stride;
                stride *= static_cast<std::size_t>(code.repair_channels[static_cast<size_t>(c)].size);
            }
            if (code.repair_decoders[p].table[idx] != y[static_cast<size_t>(pat.rebuilt - 1)]) {
                report.functional = false;
                report.violations.push_back({row_tag_name(RowTag::repair_dec),
                                             "Y" + std::to_string(pat.rebuilt) + " from " +
                                                 node_set_string(pat.helpers),
                                             s});
            }
        }
        for (const ReconDecoder& dec : code.recon_decoders) {
            std::size_t idx = 0;
            std::size_t stride = 1;
            for (int node : node_list(dec.nodes)) {
                idx += static_cast<std::size_t>(y[static_cast<size_t>(node - 1)]) * stride;
                stride *= static_cast<std::size_t>(code.storage_sizes[static_cast<size_t>(node - 1)]);
            }
            if (dec.table[idx] != s) {
                report.functional = false;
                report.violations.push_back(
                    {row_tag_name(RowTag::reconstruct), "S from " + node_set_string(dec.nodes), s});
            }
        }
    }

    const double cap_tol = 1e-9;
    report.within_alpha = true;
    const double alpha = to_double(params.alpha);
    for (int i = 0; i < params.n; ++i)
        if (report.storage_bits[static_cast<size_t>(i)] > alpha + cap_tol) {
            report.within_alpha = false;
            report.violations.push_back({row_tag_name(RowTag::storage_cap), "Y" + std::to_string(i + 1), -1});
        }
    report.within_beta = true;
    const double beta = to_double(params.beta);
    for (std::size_t c = 0; c < code.repair_channels.size(); ++c)
        if (report.repair_bits[c] > beta + cap_tol) {
            const RepairChannel& ch = code.repair_channels[c];
            report.within_beta = false;
            report.violations.push_back(
                {row_tag_name(RowTag::repair_cap),
                 var_name(VarId::repair_var(ch.sender, ch.rebuilt, ch.helpers), params), -1});
        }

    report.admissible = report.functional && report.within_alpha && report.within_beta;
    return report;
}

CodeSymmetryReport check_code_symmetry(const CodeTable& code, NodeSet gamma,
                                       const std::vector<RepairId>& delta,
                                       const NodePermutation& sigma, double tol) {
    const CodeReport base = check_code(code);
    if (!base.admissible) throw std::invalid_argument("code is not admissible");
    const DssParams& params = code.params;
    if (sigma.degree() != params.n)
        throw std::invalid_argument("permutation degree does not match the code");
    if (gamma >> params.n) throw std::invalid_argument("gamma mentions a node beyond n");

    const Universe u = enumerate_universe(params);

    // Joint pmf of every system variable under a uniform source.
    std::vector<int> sizes;
    sizes.reserve(static_cast<size_t>(u.size()));
    sizes.push_back(code.source_size);
    for (int s : code.storage_sizes) sizes.push_back(s);
    for (const RepairChannel& ch : code.repair_channels) sizes.push_back(ch.size);
    JointPmf pmf(std::move(sizes));
    std::vector<int> point(static_cast<size_t>(u.size()));
    const Rational weight = Rational(1) / code.source_size;
    for (int s = 0; s < code.source_size; ++s) {
        point[0] = s;
        for (int i = 0; i < params.n; ++i)
            point[static_cast<size_t>(1 + i)] =
                code.storage_encoders[static_cast<size_t>(i)][static_cast<size_t>(s)];
        for (std::size_t c = 0; c < code.repair_channels.size(); ++c) {
            const RepairChannel& ch = code.repair_channels[c];
            point[static_cast<size_t>(1 + params.n) + c] =
                ch.table[static_cast<size_t>(point[static_cast<size_t>(ch.sender)])];
        }
        pmf.at(point) = weight;
    }

    auto family_set = [&](NodeSet nodes, const std::vector<RepairId>& repairs) {
        VarSet s;
        for (int node : node_list(nodes)) s = s.with(u.index_of(VarId::storage_var(node)));
        for (const RepairId& r : repairs) {
            try {
                s = s.with(u.index_of(VarId::repair_var(r.sender, r.rebuilt, r.helpers)));
            } catch (const std::out_of_range&) {
                throw std::invalid_argument("delta names an unknown repair transmission");
            }
        }
        return s;
    };

    std::vector<RepairId> mapped;
    mapped.reserve(delta.size());
    for (const RepairId& r : delta)
        mapped.push_back({sigma.of(r.sender), sigma.of(r.rebuilt), sigma.map(r.helpers)});

    std::vector<std::vector<int>> actions;
    for (const NodePermutation& tau : symmetric_group(params.n))
        actions.push_back(induced_action(tau, u));

    CodeSymmetryReport report;
    report.lhs = concatenation_entropy(pmf, {family_set(gamma, delta)}, actions);
    report.rhs = concatenation_entropy(pmf, {family_set(sigma.map(gamma), mapped)}, actions);
    report.ok = std::abs(report.lhs - report.rhs) <= tol;
    report.group_size = static_cast<long>(actions.size());
    report.concat_rate_bits = static_cast<double>(report.group_size) * base.rate_bits;
    report.concat_alpha = Rational(report.group_size) * params.alpha;
    report.concat_beta = Rational(report.group_size) * params.beta;
    return report;
}

}  // namespace dsslp
