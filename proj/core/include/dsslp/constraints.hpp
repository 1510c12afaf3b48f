#pragma once

#include <dsslp/entset.hpp>
#include <dsslp/model.hpp>

#include <vector>

namespace dsslp {

// A capacity is either a fixed rational or one of the reserved parameter
// columns (so the same bound can be the unknown of a trade-off LP).
struct ParamSpec {
    bool is_fixed = true;
    Rational value;
    ColKey key = 0;

    static ParamSpec fixed(const Rational& v) {
        ParamSpec p;
        p.is_fixed = true;
        p.value = v;
        return p;
    }
    static ParamSpec column(ColKey k) {
        ParamSpec p;
        p.is_fixed = false;
        p.key = k;
        return p;
    }
};

// H(Y_i | S) = 0 and H(U_{i[j,D]} | Y_i) = 0, written as joint-entropy
// equalities H(A,B) - H(A) = 0.
std::vector<LinearConstraint> encoding_constraints(const Universe& u);

// H(Y_i) <= alpha and H(U_{i[j,D]}) <= beta, either with a fixed right side
// or against a parameter column.
std::vector<LinearConstraint> capacity_constraints(const Universe& u, const ParamSpec& alpha,
                                                   const ParamSpec& beta);

// H(Y_j | U_{D[j,D]}) = 0 for every failure pattern and H(S | Y_K) = 0 for
// every K of size exactly k (larger K follow from these).
std::vector<LinearConstraint> decoding_constraints(const Universe& u);

// The functional-dependence reading of the equalities above: `given`
// determines `implied`.
struct FdRule {
    VarSet given;
    VarSet implied;
};
std::vector<FdRule> fd_rules(const Universe& u);

}  // namespace dsslp
