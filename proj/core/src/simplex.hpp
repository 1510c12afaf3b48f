#pragma once

// Revised simplex over an exact or floating scalar. Internal to the lp
// module; the public entry point is dsslp::solve.
//
// The engine maximizes c.x subject to sparse rows (=, >=, <=) and x >= 0.
// Rows are brought to equality form with slack columns, right sides are made
// nonnegative, and rows whose slack cannot seed the basis get an artificial
// column. A feasibility phase runs only when some artificial starts positive.
// Pivoting is Dantzig's rule with a lexicographic ratio test (ties resolved
// through the rows of the basis inverse), which terminates on the heavily
// degenerate entropy programs; Bland's rule remains as an emergency brake.
//
// Rows can be appended to a solved engine (add_rows) and the solution
// re-optimized in place (resume): the old basis extends with the new slacks,
// the inverse grows by a block update, and a dual simplex pass drives out
// the infeasibilities the new rows introduced. The same dual pass repairs
// drift uncovered by the periodic floating-point refactorizations.

#include <dsslp/entset.hpp>

#include <gmpxx.h>

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dsslp::detail {

struct ExactTraits {
    using Scalar = mpq_class;
    static constexpr bool exact = true;
    static int sign(const Scalar& x) { return sgn(x); }
    // Argument is the feasibility-phase objective value (minus the total
    // artificial mass).
    static bool phase1_feasible(const Scalar& v) { return v == 0; }
};

struct FloatTraits {
    using Scalar = double;
    static constexpr bool exact = false;
    static constexpr double tol = 1e-9;
    // Dividing the inverse by a pivot element this small amplifies round-off
    // beyond repair, so such rows are only used when nothing better blocks.
    static constexpr double pivot_floor = 1e-7;
    static int sign(double x) { return x > tol ? 1 : (x < -tol ? -1 : 0); }
    static bool phase1_feasible(double v) { return v > -1e-7; }
};

enum class EngineStatus { optimal, infeasible, unbounded };

template <class Traits>
class SimplexEngine {
public:
    using T = typename Traits::Scalar;

    struct Input {
        int ncols = 0;
        std::vector<std::vector<std::pair<int, T>>> row_terms;
        std::vector<Relation> row_rel;
        std::vector<T> row_rhs;
        std::vector<T> objective;  // dense, length ncols
    };

    struct Result {
        EngineStatus status = EngineStatus::optimal;
        T value{};
        std::vector<T> x;  // structural columns
        std::vector<T> y;  // row multipliers for the original row orientations
        std::vector<int> basis;
        long pivots = 0;
    };

    explicit SimplexEngine(const Input& in) {
        nstruct_ = in.ncols;
        cols_.resize(static_cast<size_t>(nstruct_));
        kind_.assign(static_cast<size_t>(nstruct_), Kind::structural);
        for (size_t i = 0; i < in.row_terms.size(); ++i)
            append_row(in.row_terms[i], in.row_rel[i], in.row_rhs[i]);
        cost2_.assign(cols_.size(), T(0));
        for (int j = 0; j < nstruct_; ++j) cost2_[static_cast<size_t>(j)] = in.objective[static_cast<size_t>(j)];
        ncols_ = static_cast<int>(cols_.size());
    }

    Result run(const std::vector<int>* warm = nullptr) {
        init_state(warm);
        // A warm basis is loaded even when it is primal infeasible (for
        // example one carried over from a perturbed or floating run); a dual
        // pass makes it feasible, falling back to a cold start if it cannot.
        for (int i = 0; i < m_; ++i)
            if (Traits::sign(xb_[static_cast<size_t>(i)]) < 0) {
                try {
                    if (dual_iterate(cost2_) == EngineStatus::infeasible) {
                        Result res;
                        res.status = EngineStatus::infeasible;
                        res.pivots = pivots_;
                        return res;
                    }
                } catch (const std::runtime_error&) {
                    init_state(nullptr);
                }
                break;
            }
        bool need_phase1 = false;
        for (int i = 0; i < m_; ++i)
            if (is_artificial(basis_[static_cast<size_t>(i)]) && Traits::sign(xb_[static_cast<size_t>(i)]) > 0)
                need_phase1 = true;
        if (need_phase1) {
            std::vector<T> cost1(static_cast<size_t>(ncols_), T(0));
            for (int j = 0; j < ncols_; ++j)
                if (is_artificial(j)) cost1[static_cast<size_t>(j)] = T(-1);
            EngineStatus st = iterate(cost1, /*phase2=*/false);
            if (st == EngineStatus::unbounded) throw std::logic_error("feasibility phase unbounded");
            T infeas{};
            for (int i = 0; i < m_; ++i)
                if (is_artificial(basis_[static_cast<size_t>(i)])) infeas += xb_[static_cast<size_t>(i)];
            if (!Traits::phase1_feasible(T(-infeas))) {
                Result res;
                res.status = EngineStatus::infeasible;
                res.pivots = pivots_;
                return res;
            }
        }
        return finish(iterate(cost2_, /*phase2=*/true));
    }

    // Appends rows to a solved program. New rows may only reference
    // structural columns; each gets its own slack or artificial column, which
    // also extends the basis, so the inverse grows by a block update instead
    // of a fresh factorization.
    void add_rows(const std::vector<std::vector<std::pair<int, T>>>& terms,
                  const std::vector<Relation>& rel, const std::vector<T>& rhs) {
        int m_old = m_;
        for (size_t i = 0; i < terms.size(); ++i) {
            for (const auto& [col, coeff] : terms[i])
                if (col < 0 || col >= nstruct_)
                    throw std::logic_error("added row touches a non-structural column");
            append_row(terms[i], rel[i], rhs[i]);
        }
        cost2_.resize(cols_.size(), T(0));
        ncols_ = static_cast<int>(cols_.size());
        in_basis_.resize(cols_.size(), 0);

        std::vector<T> grown(static_cast<size_t>(m_) * static_cast<size_t>(m_), T(0));
        for (int i = 0; i < m_old; ++i)
            for (int j = 0; j < m_old; ++j)
                grown[static_cast<size_t>(i) * static_cast<size_t>(m_) + static_cast<size_t>(j)] =
                    std::move(binv_[static_cast<size_t>(i) * static_cast<size_t>(m_old) +
                                    static_cast<size_t>(j)]);
        binv_ = std::move(grown);
        xb_.resize(static_cast<size_t>(m_), T(0));
        basis_.resize(static_cast<size_t>(m_), -1);

        for (int r = m_old; r < m_; ++r) {
            // Basic column for the new row: its seeding slack, else its
            // artificial; both carry +1 in the row, so the new inverse row is
            // the negated combination of old rows weighted by the new row's
            // coefficients on old basic columns.
            int bc = slack_seeds(r) ? slack_col_[static_cast<size_t>(r)]
                                    : art_col_[static_cast<size_t>(r)];
            basis_[static_cast<size_t>(r)] = bc;
            in_basis_[static_cast<size_t>(bc)] = 1;
            T* row = &binv_[idx(r, 0)];
            T value = b_[static_cast<size_t>(r)];
            for (int p = 0; p < m_old; ++p) {
                int c = basis_[static_cast<size_t>(p)];
                if (c >= nstruct_) continue;  // old slacks never touch new rows
                const T* coeff = row_coeff(c, r);
                if (coeff == nullptr) continue;
                for (int k = 0; k < m_old; ++k) row[k] -= *coeff * binv_[idx(p, k)];
                value -= *coeff * xb_[static_cast<size_t>(p)];
            }
            row[r] = T(1);
            xb_[static_cast<size_t>(r)] = std::move(value);
        }
    }

    // Re-optimizes after add_rows. The extended basis keeps every reduced
    // cost, so it is dual feasible; the dual pass restores xb >= 0 and the
    // primal pass then confirms optimality.
    Result resume() {
        EngineStatus st = EngineStatus::optimal;
        bool infeasible = false;
        for (int i = 0; i < m_; ++i)
            if (Traits::sign(xb_[static_cast<size_t>(i)]) < 0) infeasible = true;
        if (infeasible) st = dual_iterate(cost2_);
        if (st == EngineStatus::optimal) st = iterate(cost2_, /*phase2=*/true);
        if (st == EngineStatus::optimal)
            for (int i = 0; i < m_; ++i)
                if (is_artificial(basis_[static_cast<size_t>(i)]) &&
                    Traits::sign(xb_[static_cast<size_t>(i)]) != 0)
                    throw std::runtime_error("re-optimization stranded an artificial");
        return finish(st);
    }

    int rows() const { return m_; }
    long pivots() const { return pivots_; }

private:
    enum class Kind : char { structural, slack, artificial };

    bool is_artificial(int col) const { return kind_[static_cast<size_t>(col)] == Kind::artificial; }

    bool slack_seeds(int row) const {
        int sc = slack_col_[static_cast<size_t>(row)];
        return sc >= 0 && Traits::sign(cols_[static_cast<size_t>(sc)][0].second) > 0;
    }

    // Pointer to the (flip-adjusted) coefficient of a structural column in a
    // row, or null when absent. Column lists stay sorted by row because rows
    // only ever append.
    const T* row_coeff(int col, int row) const {
        const auto& list = cols_[static_cast<size_t>(col)];
        size_t lo = 0, hi = list.size();
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (list[mid].first < row)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < list.size() && list[lo].first == row) return &list[lo].second;
        return nullptr;
    }

    void append_row(const std::vector<std::pair<int, T>>& terms, Relation rel, const T& rhs) {
        int i = m_++;
        bool flip = Traits::sign(rhs) < 0 || (rel == Relation::ge && Traits::sign(rhs) == 0);
        flip_.push_back(flip ? -1 : 1);
        b_.push_back(flip ? T(-rhs) : rhs);
        for (const auto& [col, coeff] : terms)
            cols_[static_cast<size_t>(col)].push_back({i, flip ? T(-coeff) : coeff});
        slack_col_.push_back(-1);
        art_col_.push_back(-1);
        if (rel != Relation::eq) {
            T coeff = rel == Relation::le ? T(1) : T(-1);
            if (flip) coeff = -coeff;
            slack_col_[static_cast<size_t>(i)] = static_cast<int>(cols_.size());
            cols_.push_back({{i, coeff}});
            kind_.push_back(Kind::slack);
        }
        if (!slack_seeds(i)) {
            art_col_[static_cast<size_t>(i)] = static_cast<int>(cols_.size());
            cols_.push_back({{i, T(1)}});
            kind_.push_back(Kind::artificial);
        }
    }

    void init_state(const std::vector<int>* warm) {
        pivots_ = 0;
        if (warm != nullptr && static_cast<int>(warm->size()) == m_ &&
            load_warm_basis(*warm, /*allow_infeasible=*/true))
            return;
        basis_.assign(static_cast<size_t>(m_), -1);
        for (int i = 0; i < m_; ++i)
            basis_[static_cast<size_t>(i)] =
                slack_seeds(i) ? slack_col_[static_cast<size_t>(i)] : art_col_[static_cast<size_t>(i)];
        binv_.assign(static_cast<size_t>(m_) * static_cast<size_t>(m_), T(0));
        for (int i = 0; i < m_; ++i) binv_[idx(i, i)] = T(1);
        xb_ = b_;
        rebuild_in_basis();
    }

    // Assembles the warm basis matrix and inverts it; false when the basis is
    // singular, or (unless allowed) when it is infeasible. The rebuilt state
    // is installed in both non-singular cases.
    bool load_warm_basis(const std::vector<int>& warm, bool allow_infeasible) {
        for (int col : warm)
            if (col < 0 || col >= ncols_) return false;
        std::vector<T> mat(static_cast<size_t>(m_) * static_cast<size_t>(m_), T(0));
        for (int i = 0; i < m_; ++i)
            for (const auto& [row, coeff] : cols_[static_cast<size_t>(warm[static_cast<size_t>(i)])])
                mat[idx(row, i)] = coeff;
        std::vector<T> inv(static_cast<size_t>(m_) * static_cast<size_t>(m_), T(0));
        for (int i = 0; i < m_; ++i) inv[idx(i, i)] = T(1);
        for (int c = 0; c < m_; ++c) {
            int pivot = -1;
            if constexpr (Traits::exact) {
                for (int r = c; r < m_; ++r)
                    if (sgn(mat[idx(r, c)]) != 0) {
                        pivot = r;
                        break;
                    }
            } else {
                double best = 0;
                for (int r = c; r < m_; ++r) {
                    double mag = mat[idx(r, c)] < 0 ? -mat[idx(r, c)] : mat[idx(r, c)];
                    if (mag > best) {
                        pivot = r;
                        best = mag;
                    }
                }
                if (pivot >= 0 && best < 1e-11) pivot = -1;
            }
            if (pivot < 0) return false;
            if (pivot != c)
                for (int j = 0; j < m_; ++j) {
                    std::swap(mat[idx(pivot, j)], mat[idx(c, j)]);
                    std::swap(inv[idx(pivot, j)], inv[idx(c, j)]);
                }
            T p = mat[idx(c, c)];
            for (int j = 0; j < m_; ++j) {
                mat[idx(c, j)] /= p;
                inv[idx(c, j)] /= p;
            }
            for (int r = 0; r < m_; ++r) {
                if (r == c) continue;
                T f = mat[idx(r, c)];
                if (f == T(0)) continue;
                for (int j = 0; j < m_; ++j) {
                    mat[idx(r, j)] -= f * mat[idx(c, j)];
                    inv[idx(r, j)] -= f * inv[idx(c, j)];
                }
            }
        }
        basis_ = warm;
        binv_ = std::move(inv);
        xb_ = apply_binv(b_);
        rebuild_in_basis();
        if (!allow_infeasible)
            for (int i = 0; i < m_; ++i)
                if (Traits::sign(xb_[static_cast<size_t>(i)]) < 0) return false;
        return true;
    }

    void rebuild_in_basis() {
        in_basis_.assign(static_cast<size_t>(ncols_), 0);
        for (int col : basis_) in_basis_[static_cast<size_t>(col)] = 1;
    }

    size_t idx(int r, int c) const {
        return static_cast<size_t>(r) * static_cast<size_t>(m_) + static_cast<size_t>(c);
    }

    std::vector<T> btran(const std::vector<T>& cost) const {
        std::vector<T> y(static_cast<size_t>(m_), T(0));
        for (int i = 0; i < m_; ++i) {
            const T& cb = cost[static_cast<size_t>(basis_[static_cast<size_t>(i)])];
            if (cb == T(0)) continue;
            const T* row = &binv_[idx(i, 0)];
            for (int j = 0; j < m_; ++j) y[static_cast<size_t>(j)] += cb * row[j];
        }
        return y;
    }

    // w = Binv * (column of the constraint matrix).
    std::vector<T> column_update(int col) const {
        std::vector<T> w(static_cast<size_t>(m_), T(0));
        for (const auto& [row, coeff] : cols_[static_cast<size_t>(col)])
            for (int r = 0; r < m_; ++r) w[static_cast<size_t>(r)] += coeff * binv_[idx(r, row)];
        return w;
    }

    std::vector<T> apply_binv(const std::vector<T>& v) const {
        std::vector<T> w(static_cast<size_t>(m_), T(0));
        for (int i = 0; i < m_; ++i) {
            if (v[static_cast<size_t>(i)] == T(0)) continue;
            for (int r = 0; r < m_; ++r)
                w[static_cast<size_t>(r)] += v[static_cast<size_t>(i)] * binv_[idx(r, i)];
        }
        return w;
    }

    T reduced_cost(int col, const std::vector<T>& y, const std::vector<T>& cost) const {
        T d = cost[static_cast<size_t>(col)];
        for (const auto& [row, coeff] : cols_[static_cast<size_t>(col)]) d -= y[static_cast<size_t>(row)] * coeff;
        return d;
    }

    Result finish(EngineStatus st) {
        Result res;
        res.status = st;
        res.pivots = pivots_;
        res.basis = basis_;
        if (st != EngineStatus::optimal) return res;

        res.x.assign(static_cast<size_t>(nstruct_), T(0));
        for (int i = 0; i < m_; ++i) {
            int col = basis_[static_cast<size_t>(i)];
            if (col < nstruct_) res.x[static_cast<size_t>(col)] = xb_[static_cast<size_t>(i)];
        }
        res.value = T(0);
        for (int j = 0; j < nstruct_; ++j) res.value += cost2_[static_cast<size_t>(j)] * res.x[static_cast<size_t>(j)];

        std::vector<T> y = btran(cost2_);
        res.y.resize(static_cast<size_t>(m_));
        for (int i = 0; i < m_; ++i)
            res.y[static_cast<size_t>(i)] =
                flip_[static_cast<size_t>(i)] < 0 ? T(-y[static_cast<size_t>(i)]) : y[static_cast<size_t>(i)];
        return res;
    }

    // Rebuilding the dense inverse is cubic, so on big working sets it is
    // spaced out proportionally to the row count.
    long refactor_cadence() const {
        return m_ > refactor_interval ? static_cast<long>(m_) : refactor_interval;
    }

    void refactor(const std::vector<T>& cost) {
        last_refactor_ = pivots_;
        std::vector<int> current = basis_;
        if (!load_warm_basis(current, /*allow_infeasible=*/true)) return;
        // The accurate inverse can reveal that drift walked the basis out of
        // feasibility; the dual pass repairs it before iteration continues.
        for (int i = 0; i < m_; ++i)
            if (Traits::sign(xb_[static_cast<size_t>(i)]) < 0) {
                EngineStatus st = dual_iterate(cost);
                if (st != EngineStatus::optimal)
                    throw std::runtime_error("feasibility repair failed");
                return;
            }
    }

    // Primal simplex with Devex pricing. The entropy programs make Dantzig's
    // rule wander degenerate plateaus for tens of thousands of pivots;
    // scoring candidates by squared reduced cost over a reference weight
    // (Harris's approximate steepest edge) takes drastically shorter paths.
    // The weights only steer the choice of entering column, so they are kept
    // in plain doubles even for the exact engine.
    EngineStatus iterate(const std::vector<T>& cost, bool phase2) {
        int stall = 0;
        bool bland = false;
        std::vector<double> devex(static_cast<size_t>(ncols_), 1.0);
        while (true) {
            if (pivots_ > iteration_limit) throw std::runtime_error("simplex iteration limit exceeded");
            if (!Traits::exact && pivots_ > 0 && pivots_ % refactor_cadence() == 0 &&
                pivots_ != last_refactor_)
                refactor(cost);
            std::vector<T> y = btran(cost);
            int enter = -1;
            double best_score = 0;
            for (int j = 0; j < ncols_; ++j) {
                if (in_basis_[static_cast<size_t>(j)] || is_artificial(j)) continue;
                T d = reduced_cost(j, y, cost);
                if (Traits::sign(d) <= 0) continue;
                if (bland) {
                    enter = j;
                    break;
                }
                double dd = dbl(d);
                double score = dd * dd / devex[static_cast<size_t>(j)];
                if (enter < 0 || score > best_score) {
                    enter = j;
                    best_score = score;
                }
            }
            if (enter < 0) {
                // Never accept a terminal claim from a stale inverse: drift
                // can fake optimality. Rebuild, repair, and price once more.
                if (!Traits::exact && pivots_ != last_refactor_) {
                    refactor(cost);
                    continue;
                }
                return EngineStatus::optimal;
            }

            std::vector<T> w = column_update(enter);
            int leave = -1;
            if (phase2) {
                // Basic artificials resting at zero leave as soon as the
                // entering column touches their row (a zero-length step); the
                // largest pivot element among them keeps the update stable.
                for (int i = 0; i < m_; ++i) {
                    if (!is_artificial(basis_[static_cast<size_t>(i)])) continue;
                    if (Traits::sign(xb_[static_cast<size_t>(i)]) != 0) continue;
                    if (Traits::sign(w[static_cast<size_t>(i)]) == 0) continue;
                    if (leave < 0 || abs_value(w[static_cast<size_t>(i)]) >
                                         abs_value(w[static_cast<size_t>(leave)]))
                        leave = i;
                }
            }
            if (leave < 0) {
                leave = ratio_test(w);
                if (leave < 0) {
                    if (!Traits::exact && pivots_ != last_refactor_) {
                        refactor(cost);
                        continue;
                    }
                    return EngineStatus::unbounded;
                }
            }

            bool degenerate = Traits::sign(xb_[static_cast<size_t>(leave)]) == 0;
            update_devex(devex, enter, leave, w);
            pivot(enter, leave, w);
            ++pivots_;
            trace_step(phase2 ? "primal2" : "primal1", cost);
            if (degenerate) {
                if (++stall > stall_limit) bland = true;
            } else {
                stall = 0;
                bland = false;
            }
        }
    }

    // Dual simplex: drives negative basic values out of a basis whose
    // reduced costs are already (weakly) feasible, as after add_rows or a
    // refactorization that uncovered drift. Positive reduced costs are
    // clamped to zero in the ratio test, so the pass is safe mid-optimization
    // too; the primal pass that follows restores optimality either way.
    EngineStatus dual_iterate(const std::vector<T>& cost) {
        int stall = 0;
        bool bland = false;
        while (true) {
            if (pivots_ > iteration_limit) throw std::runtime_error("simplex iteration limit exceeded");
            if (!Traits::exact && pivots_ > 0 && pivots_ % refactor_cadence() == 0 &&
                pivots_ != last_refactor_) {
                last_refactor_ = pivots_;
                std::vector<int> current = basis_;
                load_warm_basis(current, /*allow_infeasible=*/true);
            }
            int leave = -1;
            for (int i = 0; i < m_; ++i) {
                if (Traits::sign(xb_[static_cast<size_t>(i)]) >= 0) continue;
                if (bland) {
                    if (leave < 0 || basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])
                        leave = i;
                } else if (leave < 0 || xb_[static_cast<size_t>(i)] < xb_[static_cast<size_t>(leave)]) {
                    leave = i;
                }
            }
            if (leave < 0) return EngineStatus::optimal;

            std::vector<T> y = btran(cost);
            int enter = -1;
            T best_d{}, best_alpha{};
            for (int j = 0; j < ncols_; ++j) {
                if (in_basis_[static_cast<size_t>(j)] || is_artificial(j)) continue;
                T alpha = row_dot_col(leave, j);
                if (Traits::sign(alpha) >= 0) continue;
                if (bland) {
                    enter = j;
                    best_alpha = std::move(alpha);
                    break;
                }
                T d = reduced_cost(j, y, cost);
                if (Traits::sign(d) > 0) d = T(0);
                if (enter < 0) {
                    enter = j;
                    best_d = std::move(d);
                    best_alpha = std::move(alpha);
                    continue;
                }
                // Minimize d/alpha (both nonpositive/negative, so the ratio
                // is nonnegative); cross-multiplied, alpha products positive.
                int cmp = Traits::sign(d * best_alpha - best_d * alpha);
                if (cmp < 0 || (cmp == 0 && abs_value(alpha) > abs_value(best_alpha))) {
                    enter = j;
                    best_d = std::move(d);
                    best_alpha = std::move(alpha);
                }
            }
            if (enter < 0) {
                if (!Traits::exact && pivots_ != last_refactor_) {
                    last_refactor_ = pivots_;
                    std::vector<int> current = basis_;
                    load_warm_basis(current, /*allow_infeasible=*/true);
                    continue;
                }
                return EngineStatus::infeasible;
            }

            std::vector<T> w = column_update(enter);
            if (Traits::sign(w[static_cast<size_t>(leave)]) >= 0)
                throw std::runtime_error("dual step lost its pivot");
            bool degenerate = Traits::sign(best_d) == 0;
            pivot(enter, leave, w);
            ++pivots_;
            trace_step("dual", cost);
            if (degenerate) {
                if (++stall > stall_limit) bland = true;
            } else {
                stall = 0;
                bland = false;
            }
        }
    }

    static bool trace_enabled() {
        static const bool on = std::getenv("DSSLP_ENGINE_TRACE") != nullptr;
        return on;
    }

    static double dbl(const T& v) {
        if constexpr (Traits::exact)
            return v.get_d();
        else
            return v;
    }

    void trace_step(const char* phase, const std::vector<T>& cost) const {
        if (!trace_enabled() || pivots_ % 5000 != 0) return;
        T obj{};
        for (int i = 0; i < m_; ++i)
            obj += cost[static_cast<size_t>(basis_[static_cast<size_t>(i)])] * xb_[static_cast<size_t>(i)];
        std::fprintf(stderr, "engine m=%d %s pivots=%ld obj=%.9g\n", m_, phase, pivots_, dbl(obj));
    }

    // Devex reference-weight update, run just before the basis change: every
    // nonbasic weight absorbs the entering column's weight scaled by its
    // pivot-row footprint, and the leaving variable starts from the entering
    // weight deflated by the pivot element. Blown-up weights mean the
    // reference framework has decayed; everyone restarts at one.
    void update_devex(std::vector<double>& devex, int enter, int leave,
                      const std::vector<T>& w) const {
        double alpha_q = dbl(w[static_cast<size_t>(leave)]);
        if (alpha_q == 0) return;
        double wq = devex[static_cast<size_t>(enter)];
        double inv2 = 1.0 / (alpha_q * alpha_q);
        bool overflow = false;
        for (int j = 0; j < ncols_; ++j) {
            if (in_basis_[static_cast<size_t>(j)] || j == enter) continue;
            double aj = dbl(row_dot_col(leave, j));
            if (aj == 0) continue;
            double cand = aj * aj * inv2 * wq;
            if (cand > devex[static_cast<size_t>(j)]) devex[static_cast<size_t>(j)] = cand;
            if (cand > 1e12) overflow = true;
        }
        double wl = wq * inv2;
        devex[static_cast<size_t>(basis_[static_cast<size_t>(leave)])] = wl > 1.0 ? wl : 1.0;
        if (overflow) devex.assign(devex.size(), 1.0);
    }

    // Entry (row, col) of Binv * A without forming the whole column.
    T row_dot_col(int row, int col) const {
        T v{};
        for (const auto& [r, coeff] : cols_[static_cast<size_t>(col)])
            v += coeff * binv_[idx(row, r)];
        return v;
    }

    static T abs_value(const T& v) { return v < T{} ? T(-v) : v; }

    // Chooses the leaving row among rows with a positive pivot element.
    // Floating point prefers pivots above pivot_floor — dividing the inverse
    // by a near-tolerance element destroys it — and only settles for a tiny
    // pivot when no sturdier row blocks the step.
    int ratio_test(const std::vector<T>& w) const {
        int leave = -1;
        if constexpr (!Traits::exact) {
            for (int i = 0; i < m_; ++i) {
                if (!(w[static_cast<size_t>(i)] > Traits::pivot_floor)) continue;
                if (leave < 0 || ratio_less(i, leave, w)) leave = i;
            }
            if (leave >= 0) return leave;
        }
        for (int i = 0; i < m_; ++i) {
            if (Traits::sign(w[static_cast<size_t>(i)]) <= 0) continue;
            if (leave < 0 || ratio_less(i, leave, w)) leave = i;
        }
        return leave;
    }

    // Strictly orders candidate leaving rows: smaller xb/w ratio first, ties
    // resolved lexicographically through the basis-inverse rows (all
    // comparisons cross-multiplied, so no division). The lexicographic order
    // is strict on distinct rows, which rules out cycling.
    bool ratio_less(int i, int l, const std::vector<T>& w) const {
        const T& wi = w[static_cast<size_t>(i)];
        const T& wl = w[static_cast<size_t>(l)];
        int cmp = Traits::sign(xb_[static_cast<size_t>(i)] * wl - xb_[static_cast<size_t>(l)] * wi);
        if (cmp != 0) return cmp < 0;
        for (int k = 0; k < m_; ++k) {
            cmp = Traits::sign(binv_[idx(i, k)] * wl - binv_[idx(l, k)] * wi);
            if (cmp != 0) return cmp < 0;
        }
        return basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(l)];
    }

    void pivot(int enter, int leave, const std::vector<T>& w) {
        T p = w[static_cast<size_t>(leave)];
        T* lrow = &binv_[idx(leave, 0)];
        for (int j = 0; j < m_; ++j) lrow[j] /= p;
        T theta = xb_[static_cast<size_t>(leave)] / p;
        xb_[static_cast<size_t>(leave)] = theta;
        for (int i = 0; i < m_; ++i) {
            if (i == leave) continue;
            const T& f = w[static_cast<size_t>(i)];
            if (f == T(0)) continue;
            T* row = &binv_[idx(i, 0)];
            for (int j = 0; j < m_; ++j) row[j] -= f * lrow[j];
            xb_[static_cast<size_t>(i)] -= f * theta;
        }
        in_basis_[static_cast<size_t>(basis_[static_cast<size_t>(leave)])] = 0;
        in_basis_[static_cast<size_t>(enter)] = 1;
        basis_[static_cast<size_t>(leave)] = enter;
    }

    static constexpr long iteration_limit = 2000000;
    static constexpr int stall_limit = 10000;
    static constexpr long refactor_interval = 1024;
    long last_refactor_ = 0;

    int m_ = 0, nstruct_ = 0, ncols_ = 0;
    std::vector<std::vector<std::pair<int, T>>> cols_;
    std::vector<Kind> kind_;
    std::vector<T> b_;
    std::vector<int> flip_;
    std::vector<int> slack_col_;
    std::vector<int> art_col_;
    std::vector<T> cost2_;

    std::vector<int> basis_;
    std::vector<char> in_basis_;
    std::vector<T> binv_;
    std::vector<T> xb_;
    long pivots_ = 0;
};

}  // namespace dsslp::detail
