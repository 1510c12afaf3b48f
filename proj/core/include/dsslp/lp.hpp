#pragma once

#include <dsslp/reduce.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace dsslp {

enum class LpMode { reduced, unreduced };
enum class Arithmetic { exact, floating };
enum class FreeParam { alpha, beta };

struct ColumnDesc {
    ColKey key = 0;
    std::string name;   // identifier-safe, used in exports
    std::string label;  // display form, e.g. "H({S,Y1})" or "alpha"
};

// Assembled LP with dense column indices. Every column is nonnegative; that
// bound is part of the program, not an implicit convention of the solver.
struct LinProgram {
    enum class Sense { maximize, minimize };

    struct Row {
        std::vector<std::pair<int, Rational>> terms;  // dense column index -> coeff
        Relation rel = Relation::ge;
        Rational rhs;
        RowTag tag = RowTag::elemental_h;
    };

    Sense sense = Sense::maximize;
    std::vector<ColumnDesc> columns;
    std::vector<std::pair<int, Rational>> objective;
    std::vector<Row> rows;

    // Dense index of a column key; -1 when absent.
    int col_index(ColKey key) const;
};

// Shannon outer-bound LP for the rate: maximize H(S) under the elemental,
// encoding, capacity, and decoding families. In reduced mode the columns are
// the closure-orbit representatives; unreduced keeps all 2^N - 1 subsets.
LinProgram build_rate_lp(const DssParams& params, LpMode mode);

// Minimize one capacity parameter subject to rate >= rate_floor, the other
// parameter fixed from `params`.
LinProgram build_tradeoff_lp(const DssParams& params, FreeParam free_param,
                             const Rational& rate_floor, LpMode mode);

enum class LpStatus { optimal, infeasible, unbounded };
std::string lp_status_name(LpStatus status);

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    Arithmetic arithmetic = Arithmetic::exact;
    Rational value;
    std::vector<Rational> primal;  // per column
    std::vector<Rational> dual;    // per row
    long pivots = 0;
};

struct SolveOptions {
    Arithmetic arithmetic = Arithmetic::exact;
    // Normally the solver works on whichever of the program or its dual has
    // fewer rows; these pins are for tests.
    bool force_primal_form = false;
    bool force_dual_form = false;
};

LpSolution solve(const LinProgram& lp, Arithmetic arithmetic);
LpSolution solve(const LinProgram& lp, const SolveOptions& options);

// Checks a claimed optimum end to end: primal feasibility, dual sign
// feasibility, reduced-cost feasibility, and matching objective values, all
// within `tol` (use 0 for exact certificates).
bool verify_certificate(const LinProgram& lp, const LpSolution& sol, const Rational& tol = 0);

// Writes the program in LP text format (all coefficients are integers, so
// the file is exact). Deterministic for a given program.
void export_lp(const LinProgram& lp, std::ostream& out);
std::string export_lp_string(const LinProgram& lp);

}  // namespace dsslp
