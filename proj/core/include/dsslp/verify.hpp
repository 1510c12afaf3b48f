#pragma once

#include <dsslp/entset.hpp>
#include <dsslp/model.hpp>
#include <dsslp/reduce.hpp>

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace dsslp {

// Finite joint distribution with exact probabilities. Entropies marginalize
// exactly and only go through floating point for the final -sum p log2 p.
class JointPmf {
public:
    explicit JointPmf(std::vector<int> sizes);

    int var_count() const { return static_cast<int>(sizes_.size()); }
    const std::vector<int>& sizes() const { return sizes_; }
    std::size_t atom_count() const { return table_.size(); }

    Rational& at(const std::vector<int>& point);
    const Rational& at(const std::vector<int>& point) const;
    Rational& atom(std::size_t flat) { return table_.at(flat); }
    const Rational& atom(std::size_t flat) const { return table_.at(flat); }
    std::vector<int> point_of(std::size_t flat) const;

    // Scales so the total mass is 1; throws on zero total.
    void normalize();
    // Nonnegative entries summing to exactly 1.
    void validate() const;

    // Entropy in bits of the variables listed in `positions` (bit p stands
    // for variable p); the empty set has entropy 0.
    double entropy(VarSet positions) const;

private:
    std::vector<int> sizes_;
    std::vector<std::size_t> strides_;
    std::vector<Rational> table_;
};

// Random pmf with small integer weights, normalized. Deterministic for a
// given generator state.
JointPmf random_pmf(const std::vector<int>& sizes, std::mt19937_64& rng, int max_weight = 16);

double joint_entropy(const JointPmf& pmf, VarSet positions);

// Entropy of one concatenated variable family: the sum over every position
// map in `actions` of the joint entropy of the image of the union of `sets`.
double concatenation_entropy(const JointPmf& pmf, const std::vector<VarSet>& sets,
                             const std::vector<std::vector<int>>& actions);
// Convenience for a pmf whose variables are the n storage nodes: the actions
// are all node permutations.
double concatenation_entropy(const JointPmf& pmf, const std::vector<VarSet>& sets);

struct ConcatSymmetryReport {
    double lhs = 0;
    double rhs = 0;
    bool ok = false;
};

// Concatenated families are symmetric: relabeling the members by sigma does
// not change the concatenation entropy.
ConcatSymmetryReport check_concat_symmetry(const JointPmf& pmf, const std::vector<VarSet>& sets,
                                           const NodePermutation& sigma, double tol = 1e-9);

// One repair transmission U_{sender[rebuilt,helpers]}.
struct RepairId {
    int sender = 0;
    int rebuilt = 0;
    NodeSet helpers = 0;
};

struct RepairChannel {
    int sender = 0;
    int rebuilt = 0;
    NodeSet helpers = 0;
    int size = 0;            // alphabet of the transmission
    std::vector<int> table;  // indexed by the sender's stored symbol
};

struct RepairDecoder {
    int rebuilt = 0;
    NodeSet helpers = 0;
    // Indexed mixed-radix over the helpers' transmissions, helpers ascending,
    // first helper fastest.
    std::vector<int> table;
};

struct ReconDecoder {
    NodeSet nodes = 0;
    // Indexed mixed-radix over the stored symbols, nodes ascending, first
    // node fastest.
    std::vector<int> table;
};

// A complete code given by lookup tables, verified by exhaustive evaluation.
struct CodeTable {
    DssParams params;
    int source_size = 0;
    std::vector<int> storage_sizes;                  // per node
    std::vector<std::vector<int>> storage_encoders;  // per node, indexed by source symbol
    std::vector<RepairChannel> repair_channels;      // universe repair order
    std::vector<RepairDecoder> repair_decoders;      // one per failure pattern
    std::vector<ReconDecoder> recon_decoders;        // one per k-subset of nodes

    // Shape, range, and completeness checks; throws std::invalid_argument.
    void validate() const;
};

CodeTable load_code_table(std::istream& in);
void save_code_table(const CodeTable& code, std::ostream& out);

// Built-in (3,2,2) example storing two source bits as Y1 = s1, Y2 = s2,
// Y3 = s1 xor s2, with every transmission equal to the stored symbol.
CodeTable parity_code();
// Every node stores the full source; any single node rebuilds or decodes.
CodeTable repetition_code(const DssParams& params, int source_size);

struct CodeViolation {
    std::string kind;   // row-tag style name of the broken requirement
    std::string where;  // which decoder or variable
    int source_symbol = -1;
};

struct CodeReport {
    bool functional = false;    // every decoder reproduces its target
    bool within_alpha = false;  // log2 |Y_i| <= alpha for every node
    bool within_beta = false;   // log2 |U| <= beta for every transmission
    bool admissible = false;    // all of the above
    double rate_bits = 0;       // log2 |S|
    std::vector<double> storage_bits;
    std::vector<double> repair_bits;
    std::vector<CodeViolation> violations;
};

CodeReport check_code(const CodeTable& code);

struct CodeSymmetryReport {
    double lhs = 0;
    double rhs = 0;
    bool ok = false;
    // Parameters of the concatenated code the identity speaks about.
    long group_size = 0;
    double concat_rate_bits = 0;
    Rational concat_alpha;
    Rational concat_beta;
};

// For an admissible code, the concatenation entropy of chosen storage
// variables (gamma) and transmissions (delta) is invariant under relabeling
// both by sigma. Throws std::invalid_argument for inadmissible codes.
CodeSymmetryReport check_code_symmetry(const CodeTable& code, NodeSet gamma,
                                       const std::vector<RepairId>& delta,
                                       const NodePermutation& sigma, double tol = 1e-9);

}  // namespace dsslp
