#include <dsslp/lp.hpp>

#include "simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dsslp {

namespace {

std::string column_token(const VarId& v, const DssParams& params) {
    switch (v.kind) {
        case VarId::Kind::source:
            return "S";
        case VarId::Kind::storage:
            return "Y" + std::to_string(v.node);
        case VarId::Kind::repair: {
            std::string out = "U" + std::to_string(v.node) + "r" + std::to_string(v.failed);
            if (params.d != params.n - 1) {
                out += "h";
                for (int i : node_list(v.helpers)) out += std::to_string(i);
            }
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

ColumnDesc describe_column(ColKey key, const Universe& u) {
    ColumnDesc col;
    col.key = key;
    if (key == alpha_col) {
        col.name = "alpha";
        col.label = "alpha";
    } else if (key == beta_col) {
        col.name = "beta";
        col.label = "beta";
    } else {
        VarSet s(static_cast<std::uint64_t>(key));
        col.name = "h";
        for (int p : set_positions(s)) col.name += "_" + column_token(u.var(p), u.params);
        col.label = "H(" + set_display(s, u) + ")";
    }
    return col;
}

LinProgram assemble(const Universe& u, LinProgram::Sense sense,
                    const std::vector<std::pair<ColKey, Rational>>& objective,
                    std::vector<LinearConstraint> rows) {
    LinProgram lp;
    lp.sense = sense;
    std::vector<ColKey> entropy_keys;
    bool uses_alpha = false, uses_beta = false;
    auto note = [&](ColKey key) {
        if (key == alpha_col)
            uses_alpha = true;
        else if (key == beta_col)
            uses_beta = true;
        else
            entropy_keys.push_back(key);
    };
    for (const LinearConstraint& row : rows)
        for (const auto& [key, c] : row.terms) note(key);
    for (const auto& [key, c] : objective) note(key);
    std::sort(entropy_keys.begin(), entropy_keys.end());
    entropy_keys.erase(std::unique(entropy_keys.begin(), entropy_keys.end()), entropy_keys.end());

    std::unordered_map<ColKey, int> index;
    for (ColKey key : entropy_keys) {
        index[key] = static_cast<int>(lp.columns.size());
        lp.columns.push_back(describe_column(key, u));
    }
    if (uses_alpha) {
        index[alpha_col] = static_cast<int>(lp.columns.size());
        lp.columns.push_back(describe_column(alpha_col, u));
    }
    if (uses_beta) {
        index[beta_col] = static_cast<int>(lp.columns.size());
        lp.columns.push_back(describe_column(beta_col, u));
    }

    for (const auto& [key, c] : objective) lp.objective.push_back({index.at(key), c});
    lp.rows.reserve(rows.size());
    for (LinearConstraint& row : rows) {
        LinProgram::Row out;
        out.rel = row.rel;
        out.rhs = std::move(row.rhs);
        out.tag = row.tag;
        out.terms.reserve(row.terms.size());
        for (const auto& [key, c] : row.terms) out.terms.push_back({index.at(key), c});
        lp.rows.push_back(std::move(out));
    }
    return lp;
}

void append(std::vector<LinearConstraint>& into, std::vector<LinearConstraint>&& more) {
    for (LinearConstraint& row : more) into.push_back(std::move(row));
}

// All constraint families for one system, in the unreduced subset space.
std::vector<LinearConstraint> unreduced_rows(const Universe& u, const ParamSpec& alpha,
                                             const ParamSpec& beta) {
    std::vector<LinearConstraint> rows = elemental_inequalities(u);
    append(rows, encoding_constraints(u));
    append(rows, capacity_constraints(u, alpha, beta));
    append(rows, decoding_constraints(u));
    return rows;
}

// Same families rewritten into the closure-orbit quotient. The elemental
// family is generated directly in reduced form; the determination equalities
// are passed through the rewriter (they all collapse there).
std::vector<LinearConstraint> reduced_rows(const Universe& u, const ClosureOracle& oracle,
                                           const OrbitTable& orbits, const ParamSpec& alpha,
                                           const ParamSpec& beta) {
    std::vector<LinearConstraint> rows = reduced_elemental(oracle, orbits);
    append(rows, rewrite_constraints(encoding_constraints(u), orbits));
    append(rows, rewrite_constraints(capacity_constraints(u, alpha, beta), orbits));
    append(rows, rewrite_constraints(decoding_constraints(u), orbits));
    return rows;
}

constexpr int max_unreduced_positions = 12;

}  // namespace

int LinProgram::col_index(ColKey key) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i].key == key) return static_cast<int>(i);
    return -1;
}

std::string lp_status_name(LpStatus status) {
    switch (status) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
    }
    throw std::logic_error("unreachable");
}

LinProgram build_rate_lp(const DssParams& params, LpMode mode) {
    params.validate();
    Universe u = enumerate_universe(params);
    ParamSpec alpha = ParamSpec::fixed(params.alpha);
    ParamSpec beta = ParamSpec::fixed(params.beta);
    int source = u.index_of(VarId::source_var());
    if (mode == LpMode::unreduced) {
        if (u.size() > max_unreduced_positions)
            throw std::length_error("universe too large for the unreduced LP");
        std::vector<std::pair<ColKey, Rational>> objective = {
            {entropy_col(VarSet::single(source)), 1}};
        return assemble(u, LinProgram::Sense::maximize, objective, unreduced_rows(u, alpha, beta));
    }
    ClosureOracle oracle(u);
    OrbitTable orbits(oracle, symmetric_group(params.n));
    std::vector<std::pair<ColKey, Rational>> objective = {
        {entropy_col(orbits.canon(VarSet::single(source))), 1}};
    return assemble(u, LinProgram::Sense::maximize, objective,
                    reduced_rows(u, oracle, orbits, alpha, beta));
}

LinProgram build_tradeoff_lp(const DssParams& params, FreeParam free_param,
                             const Rational& rate_floor, LpMode mode) {
    params.validate_shape();
    if (rate_floor < 0) throw std::invalid_argument("rate floor must be nonnegative");
    ParamSpec alpha = free_param == FreeParam::alpha ? ParamSpec::column(alpha_col)
                                                    : ParamSpec::fixed(params.alpha);
    ParamSpec beta = free_param == FreeParam::beta ? ParamSpec::column(beta_col)
                                                  : ParamSpec::fixed(params.beta);
    if (free_param == FreeParam::alpha && params.beta < 0)
        throw std::invalid_argument("fixed beta must be nonnegative");
    if (free_param == FreeParam::beta && params.alpha < 0)
        throw std::invalid_argument("fixed alpha must be nonnegative");

    Universe u = enumerate_universe(params);
    int source = u.index_of(VarId::source_var());
    ColKey goal = free_param == FreeParam::alpha ? alpha_col : beta_col;
    std::vector<std::pair<ColKey, Rational>> objective = {{goal, 1}};

    std::vector<LinearConstraint> rows;
    ColKey rate_key;
    if (mode == LpMode::unreduced) {
        if (u.size() > max_unreduced_positions)
            throw std::length_error("universe too large for the unreduced LP");
        rows = unreduced_rows(u, alpha, beta);
        rate_key = entropy_col(VarSet::single(source));
    } else {
        ClosureOracle oracle(u);
        OrbitTable orbits(oracle, symmetric_group(params.n));
        rows = reduced_rows(u, oracle, orbits, alpha, beta);
        rate_key = entropy_col(orbits.canon(VarSet::single(source)));
    }
    LinearConstraint rate;
    rate.tag = RowTag::rate;
    rate.rel = Relation::ge;
    rate.add_term(rate_key, 1);
    rate.rhs = rate_floor;
    rate.canonicalize();
    rows.push_back(std::move(rate));
    return assemble(u, LinProgram::Sense::minimize, objective, std::move(rows));
}

namespace {

template <class Traits>
typename detail::SimplexEngine<Traits>::Input convert_input(
    const detail::SimplexEngine<detail::ExactTraits>::Input& in) {
    if constexpr (Traits::exact) {
        return in;
    } else {
        typename detail::SimplexEngine<Traits>::Input out;
        out.ncols = in.ncols;
        out.row_rel = in.row_rel;
        out.row_terms.resize(in.row_terms.size());
        for (size_t i = 0; i < in.row_terms.size(); ++i)
            for (const auto& [col, coeff] : in.row_terms[i])
                out.row_terms[i].push_back({col, to_double(coeff)});
        out.row_rhs.reserve(in.row_rhs.size());
        for (const Rational& v : in.row_rhs) out.row_rhs.push_back(to_double(v));
        out.objective.reserve(in.objective.size());
        for (const Rational& v : in.objective) out.objective.push_back(to_double(v));
        return out;
    }
}

struct EngineRun {
    detail::EngineStatus status = detail::EngineStatus::optimal;
    Rational value;
    std::vector<Rational> x;
    std::vector<Rational> y;
    long pivots = 0;
};

constexpr int warm_start_rows = 400;
constexpr size_t jitter_rows = 500;

// Deterministic full-precision uniform in [1, 2) from an index (splitmix64
// finisher); quantized jitter leaves residual ties that stall the solver.
double jitter_u(size_t i) {
    uint64_t z = static_cast<uint64_t>(i) + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return 1.0 + static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Floating runs on big inputs first solve a perturbed copy: inequality right
// sides are relaxed and objective entries lowered, each by a distinct tiny
// amount. The entropy programs are so degenerate that an unperturbed run
// crawls across huge optimal plateaus on both the primal and the dual side;
// the perturbation splits those plateaus into ordinary vertices. The clean
// input then re-solves warm from the perturbed basis, a short repair away.
detail::SimplexEngine<detail::FloatTraits>::Result run_float(
    const detail::SimplexEngine<detail::FloatTraits>::Input& fin) {
    detail::SimplexEngine<detail::FloatTraits> engine(fin);
    if (fin.row_terms.size() < jitter_rows) return engine.run();
    auto jin = fin;
    for (size_t i = 0; i < jin.row_rhs.size(); ++i) {
        if (jin.row_rel[i] == Relation::eq) continue;
        double eps = 1e-5 * jitter_u(i);
        jin.row_rhs[i] += jin.row_rel[i] == Relation::le ? eps : -eps;
    }
    for (size_t j = 0; j < jin.objective.size(); ++j)
        jin.objective[j] -= 1e-5 * (jitter_u(j ^ 0x5bf03635) - 1.0);
    detail::SimplexEngine<detail::FloatTraits> jengine(jin);
    auto jres = jengine.run();
    if (jres.status != detail::EngineStatus::optimal) return engine.run();
    auto res = engine.run(&jres.basis);
    res.pivots += jres.pivots;
    return res;
}

// Runs the requested arithmetic on an exact engine input. Large exact runs
// first solve in floating point and hand the final basis to the exact engine.
EngineRun run_engine(const detail::SimplexEngine<detail::ExactTraits>::Input& input,
                     Arithmetic arithmetic) {
    EngineRun out;
    if (arithmetic == Arithmetic::floating) {
        auto fin = convert_input<detail::FloatTraits>(input);
        auto res = run_float(fin);
        auto finite = [](double v) {
            if (!std::isfinite(v)) throw std::runtime_error("floating-point solve diverged");
            return v;
        };
        out.status = res.status;
        out.pivots = res.pivots;
        out.value = Rational(finite(res.value));
        out.x.reserve(res.x.size());
        for (double v : res.x) out.x.emplace_back(finite(v));
        out.y.reserve(res.y.size());
        for (double v : res.y) out.y.emplace_back(finite(v));
        return out;
    }
    detail::SimplexEngine<detail::ExactTraits> engine(input);
    std::vector<int> warm;
    if (static_cast<int>(input.row_terms.size()) >= warm_start_rows) {
        auto fin = convert_input<detail::FloatTraits>(input);
        auto res = run_float(fin);
        if (res.status == detail::EngineStatus::optimal) warm = res.basis;
    }
    auto res = engine.run(warm.empty() ? nullptr : &warm);
    out.status = res.status;
    out.pivots = res.pivots;
    out.value = res.value;
    out.x = res.x;
    out.y = res.y;
    return out;
}

using ExactInput = detail::SimplexEngine<detail::ExactTraits>::Input;

// Input for the program itself, objective oriented for maximization.
ExactInput primal_input(const LinProgram& lp, const std::vector<Rational>& cmax) {
    ExactInput in;
    in.ncols = static_cast<int>(lp.columns.size());
    in.objective = cmax;
    in.row_terms.resize(lp.rows.size());
    in.row_rel.reserve(lp.rows.size());
    in.row_rhs.reserve(lp.rows.size());
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        for (const auto& [col, coeff] : lp.rows[i].terms) in.row_terms[i].push_back({col, coeff});
        in.row_rel.push_back(lp.rows[i].rel);
        in.row_rhs.push_back(lp.rows[i].rhs);
    }
    return in;
}

// Input for the dual: one engine variable per primal row (two for
// equalities), one >= row per primal column; the engine objective is the
// negated dual objective so maximizing solves the dual minimization.
struct DualLayout {
    std::vector<int> pos_var;  // engine column carrying +y_i, or -1
    std::vector<int> neg_var;  // engine column carrying -y_i, or -1
};

ExactInput dual_input(const LinProgram& lp, const std::vector<Rational>& cmax, DualLayout& layout) {
    ExactInput in;
    size_t nrows = lp.rows.size();
    layout.pos_var.assign(nrows, -1);
    layout.neg_var.assign(nrows, -1);
    int next = 0;
    for (size_t i = 0; i < nrows; ++i) {
        switch (lp.rows[i].rel) {
            case Relation::le:
                layout.pos_var[i] = next++;
                break;
            case Relation::ge:
                layout.neg_var[i] = next++;
                break;
            case Relation::eq:
                layout.pos_var[i] = next++;
                layout.neg_var[i] = next++;
                break;
        }
    }
    in.ncols = next;
    in.objective.assign(static_cast<size_t>(next), Rational(0));
    for (size_t i = 0; i < nrows; ++i) {
        const Rational& b = lp.rows[i].rhs;
        if (layout.pos_var[i] >= 0) in.objective[static_cast<size_t>(layout.pos_var[i])] = -b;
        if (layout.neg_var[i] >= 0) in.objective[static_cast<size_t>(layout.neg_var[i])] = b;
    }
    size_t ncols = lp.columns.size();
    in.row_terms.resize(ncols);
    in.row_rel.assign(ncols, Relation::ge);
    in.row_rhs = cmax;
    for (size_t i = 0; i < nrows; ++i)
        for (const auto& [col, coeff] : lp.rows[i].terms) {
            if (layout.pos_var[i] >= 0)
                in.row_terms[static_cast<size_t>(col)].push_back({layout.pos_var[i], coeff});
            if (layout.neg_var[i] >= 0)
                in.row_terms[static_cast<size_t>(col)].push_back({layout.neg_var[i], -coeff});
        }
    return in;
}

// Solves the full program in one engine run, on whichever of the program or
// its dual has fewer rows.
LpSolution solve_direct(const LinProgram& lp, const SolveOptions& options) {
    bool minimize = lp.sense == LinProgram::Sense::minimize;
    std::vector<Rational> cmax(lp.columns.size(), Rational(0));
    for (const auto& [col, coeff] : lp.objective)
        cmax[static_cast<size_t>(col)] += minimize ? Rational(-coeff) : coeff;

    size_t nrows = lp.rows.size();
    size_t ncols = lp.columns.size();
    bool use_dual = options.force_dual_form ||
                    (!options.force_primal_form && nrows > 2 * ncols && nrows > 64);

    LpSolution sol;
    sol.arithmetic = options.arithmetic;
    if (!use_dual) {
        EngineRun run = run_engine(primal_input(lp, cmax), options.arithmetic);
        sol.pivots = run.pivots;
        switch (run.status) {
            case detail::EngineStatus::optimal: {
                sol.status = LpStatus::optimal;
                sol.value = minimize ? Rational(-run.value) : run.value;
                sol.primal = std::move(run.x);
                sol.dual = std::move(run.y);
                if (minimize)
                    for (Rational& v : sol.dual) v = -v;
                break;
            }
            case detail::EngineStatus::infeasible:
                sol.status = LpStatus::infeasible;
                break;
            case detail::EngineStatus::unbounded:
                sol.status = LpStatus::unbounded;
                break;
        }
        return sol;
    }

    DualLayout layout;
    EngineRun run = run_engine(dual_input(lp, cmax, layout), options.arithmetic);
    sol.pivots = run.pivots;
    switch (run.status) {
        case detail::EngineStatus::optimal: {
            sol.status = LpStatus::optimal;
            Rational zmax = -run.value;
            sol.value = minimize ? Rational(-zmax) : zmax;
            sol.primal.assign(ncols, Rational(0));
            for (size_t j = 0; j < ncols; ++j) sol.primal[j] = -run.y[j];
            sol.dual.assign(nrows, Rational(0));
            for (size_t i = 0; i < nrows; ++i) {
                Rational y = 0;
                if (layout.pos_var[i] >= 0) y += run.x[static_cast<size_t>(layout.pos_var[i])];
                if (layout.neg_var[i] >= 0) y -= run.x[static_cast<size_t>(layout.neg_var[i])];
                sol.dual[i] = minimize ? Rational(-y) : y;
            }
            break;
        }
        case detail::EngineStatus::unbounded:
            sol.status = LpStatus::infeasible;
            break;
        case detail::EngineStatus::infeasible: {
            // Dual infeasible: the program is unbounded if feasible at all.
            std::vector<Rational> zero(lp.columns.size(), Rational(0));
            DualLayout l0;
            EngineRun probe = run_engine(dual_input(lp, zero, l0), options.arithmetic);
            sol.pivots += probe.pivots;
            if (probe.status == detail::EngineStatus::optimal)
                sol.status = LpStatus::unbounded;
            else if (probe.status == detail::EngineStatus::unbounded)
                sol.status = LpStatus::infeasible;
            else
                throw std::logic_error("feasibility probe failed");
            break;
        }
    }
    return sol;
}

constexpr size_t row_gen_threshold = 3000;
constexpr size_t row_gen_batch = 512;
constexpr size_t row_gen_col_cap = 16;
constexpr int row_gen_rounds = 200;
constexpr size_t guard_mark = static_cast<size_t>(-1);

// Working-set solver state for one arithmetic. All rows go through a single
// engine instance whose basis survives across batches, so adding a batch
// costs one dual-simplex repair instead of a fresh solve.
template <class Traits>
struct LazyDriver {
    using Engine = detail::SimplexEngine<Traits>;
    using S = typename Traits::Scalar;

    const LinProgram& lp;
    const std::vector<Rational>& cmax;
    Rational guard_bound = 1000000;
    std::vector<size_t> order;  // engine row -> lp row; guard_mark for the cap
    std::unique_ptr<Engine> engine;
    typename Engine::Result res;

    LazyDriver(const LinProgram& lp_, const std::vector<Rational>& cmax_)
        : lp(lp_), cmax(cmax_) {}

    static S conv(const Rational& v) {
        if constexpr (Traits::exact)
            return v;
        else
            return to_double(v);
    }

    void convert_rows(const std::vector<size_t>& rows,
                      std::vector<std::vector<std::pair<int, S>>>& terms,
                      std::vector<Relation>& rel, std::vector<S>& rhs) const {
        for (size_t r : rows) {
            std::vector<std::pair<int, S>> t;
            if (r == guard_mark) {
                for (size_t j = 0; j < cmax.size(); ++j)
                    if (cmax[j] != 0) t.push_back({static_cast<int>(j), conv(cmax[j])});
                rel.push_back(Relation::le);
                rhs.push_back(conv(guard_bound));
            } else {
                const auto& row = lp.rows[r];
                for (const auto& [col, coeff] : row.terms) t.push_back({col, conv(coeff)});
                rel.push_back(row.rel);
                rhs.push_back(conv(row.rhs));
            }
            terms.push_back(std::move(t));
        }
    }

    // Two drivers started on the same row list lay out identical column ids,
    // so one can warm-start from the other's basis.
    void start(const std::vector<size_t>& rows, const std::vector<int>* warm = nullptr) {
        order = rows;
        // A throwaway cap on the (engine-oriented) objective: the thin
        // working set on its own usually leaves the objective unbounded.
        order.push_back(guard_mark);
        typename Engine::Input in;
        in.ncols = static_cast<int>(lp.columns.size());
        in.objective.reserve(cmax.size());
        for (const Rational& v : cmax) in.objective.push_back(conv(v));
        convert_rows(order, in.row_terms, in.row_rel, in.row_rhs);
        engine = std::make_unique<Engine>(in);
        res = engine->run(warm);
    }

    void add(const std::vector<size_t>& rows) {
        std::vector<std::vector<std::pair<int, S>>> terms;
        std::vector<Relation> rel;
        std::vector<S> rhs;
        convert_rows(rows, terms, rel, rhs);
        order.insert(order.end(), rows.begin(), rows.end());
        engine->add_rows(terms, rel, rhs);
        res = engine->resume();
    }

    // Rows outside the working set that the current optimum violates, worst
    // first; the floating threshold keeps solver noise from masquerading as
    // a violation.
    std::vector<std::pair<S, size_t>> scan(const std::vector<char>& active) const {
        S thresh{};
        if constexpr (!Traits::exact) thresh = 1e-7;
        std::vector<std::pair<S, size_t>> found;
        for (size_t i = 0; i < lp.rows.size(); ++i) {
            if (active[i]) continue;
            const auto& row = lp.rows[i];
            S lhs{};
            for (const auto& [col, coeff] : row.terms)
                lhs += conv(coeff) * res.x[static_cast<size_t>(col)];
            S rhs = conv(row.rhs);
            S v{};
            switch (row.rel) {
                case Relation::le:
                    v = lhs - rhs;
                    break;
                case Relation::ge:
                    v = rhs - lhs;
                    break;
                case Relation::eq:
                    v = lhs > rhs ? S(lhs - rhs) : S(rhs - lhs);
                    break;
            }
            if (v > thresh) found.emplace_back(std::move(v), i);
        }
        std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        return found;
    }

    // With a clean scan the cap must be strictly slack, otherwise the cap is
    // the answer and the program's own rows never bounded the objective.
    void check_guard() const {
        if (!(res.value < conv(guard_bound - 1)))
            throw std::runtime_error("working set failed to bound the objective");
    }

    Rational back(const S& v) const {
        if constexpr (Traits::exact) {
            return v;
        } else {
            if (!std::isfinite(v)) throw std::runtime_error("floating-point solve diverged");
            return Rational(v);
        }
    }
};

// A badly violated row usually has permutation twins violated just as badly;
// stacking twins into one batch wastes the round, so a per-column usage cap
// spreads each batch across different supports.
template <class S>
std::vector<size_t> pick_batch(const LinProgram& lp,
                               const std::vector<std::pair<S, size_t>>& found) {
    std::unordered_map<int, size_t> usage;
    std::vector<size_t> batch;
    for (const auto& [v, r] : found) {
        if (batch.size() >= row_gen_batch) break;
        bool capped = false;
        for (const auto& [col, coeff] : lp.rows[r].terms)
            if (usage[col] >= row_gen_col_cap) {
                capped = true;
                break;
            }
        if (capped) continue;
        for (const auto& [col, coeff] : lp.rows[r].terms) ++usage[col];
        batch.push_back(r);
    }
    if (batch.empty())
        for (size_t t = 0; t < found.size() && t < row_gen_batch; ++t)
            batch.push_back(found[t].second);
    std::sort(batch.begin(), batch.end());
    return batch;
}

template <class Traits>
LpSolution assemble_lazy(const LazyDriver<Traits>& d, bool minimize, size_t nrows, long pivots,
                         Arithmetic arithmetic) {
    LpSolution out;
    out.status = LpStatus::optimal;
    out.arithmetic = arithmetic;
    Rational value = d.back(d.res.value);
    out.value = minimize ? Rational(-value) : value;
    out.primal.reserve(d.res.x.size());
    for (const auto& v : d.res.x) out.primal.push_back(d.back(v));
    out.dual.assign(nrows, Rational(0));
    for (size_t k = 0; k < d.order.size(); ++k) {
        if (d.order[k] == guard_mark) continue;
        Rational y = d.back(d.res.y[k]);
        out.dual[d.order[k]] = minimize ? Rational(-y) : y;
    }
    out.pivots = pivots;
    return out;
}

// Exact solve of a large program. Almost all rows are elemental
// inequalities that are slack at the optimum, and an exact engine over the
// full row set would be hopeless, so the relevant rows are located first by
// a floating solve of the whole program (solve_direct, which runs it in
// dual form). The exact engine then works over just the structural rows
// plus the float-supported ones, scans the full row list exactly for
// anything the candidate optimum violates, adds the offenders, and repeats
// until an exact scan comes back clean; rows never brought in are slack, so
// they carry dual value zero and the assembled certificate covers the whole
// program.
LpSolution solve_lazy(const LinProgram& lp, const SolveOptions& options) {
    bool minimize = lp.sense == LinProgram::Sense::minimize;
    std::vector<Rational> cmax(lp.columns.size(), Rational(0));
    for (const auto& [col, coeff] : lp.objective)
        cmax[static_cast<size_t>(col)] += minimize ? Rational(-coeff) : coeff;

    std::vector<size_t> base;
    for (size_t i = 0; i < lp.rows.size(); ++i)
        if (lp.rows[i].tag != RowTag::elemental_i) base.push_back(i);

    auto rows_of = [](const std::vector<char>& act) {
        std::vector<size_t> rows;
        for (size_t i = 0; i < act.size(); ++i)
            if (act[i]) rows.push_back(i);
        return rows;
    };

    int rounds = 0;
    // Runs scan-and-add to quiescence; false means the working set (hence
    // the program) is infeasible. One cold rebuild is allowed in case a
    // floating-point repair breaks down.
    auto drive = [&](auto& d, std::vector<char>& act) {
        bool restarted = false;
        for (;;) {
            if (++rounds > row_gen_rounds)
                throw std::runtime_error("row generation did not converge");
            if (d.res.status == detail::EngineStatus::infeasible) return false;
            if (d.res.status == detail::EngineStatus::unbounded)
                throw std::logic_error("capped working set cannot be unbounded");
            auto found = d.scan(act);
            if (std::getenv("DSSLP_ROWGEN_TRACE"))
                std::fprintf(stderr, "rowgen round=%d rows=%zu value=%.9g violations=%zu pivots=%ld\n",
                             rounds, d.order.size(), to_double(d.back(d.res.value)), found.size(),
                             d.engine->pivots());
            if (found.empty()) {
                d.check_guard();
                return true;
            }
            auto batch = pick_batch(lp, found);
            for (size_t r : batch) act[r] = 1;
            try {
                d.add(batch);
            } catch (const std::runtime_error&) {
                if (restarted) throw;
                restarted = true;
                d.start(rows_of(act));
            }
        }
    };

    auto infeasible_out = [&](long pivots) {
        LpSolution out;
        out.status = LpStatus::infeasible;
        out.arithmetic = options.arithmetic;
        out.pivots = pivots;
        return out;
    };

    SolveOptions fopt = options;
    fopt.arithmetic = Arithmetic::floating;
    LpSolution fsol = solve_direct(lp, fopt);
    long pivots = fsol.pivots;

    // The exact working set: the structural rows plus every row the float
    // run gave dual weight. A float re-solve of just those rows maps out a
    // basis the exact engine can start from; if the float stage failed the
    // exact engine simply grows the set from the structural rows alone.
    std::vector<char> eactive(lp.rows.size(), 0);
    for (size_t r : base) eactive[r] = 1;
    if (fsol.status == LpStatus::optimal)
        for (size_t i = 0; i < lp.rows.size(); ++i) {
            double y = to_double(fsol.dual[i]);
            if (y > 1e-9 || y < -1e-9) eactive[i] = 1;
        }
    std::vector<size_t> erows = rows_of(eactive);

    const std::vector<int>* warm = nullptr;
    LazyDriver<detail::FloatTraits> fw(lp, cmax);
    if (fsol.status == LpStatus::optimal) {
        fw.start(erows);
        pivots += fw.engine->pivots();
        if (fw.res.status == detail::EngineStatus::optimal) warm = &fw.res.basis;
    }

    LazyDriver<detail::ExactTraits> ed(lp, cmax);
    ed.start(erows, warm);
    if (!drive(ed, eactive)) return infeasible_out(pivots + ed.engine->pivots());
    return assemble_lazy(ed, minimize, lp.rows.size(), pivots + ed.engine->pivots(),
                         Arithmetic::exact);
}

}  // namespace

LpSolution solve(const LinProgram& lp, Arithmetic arithmetic) {
    SolveOptions options;
    options.arithmetic = arithmetic;
    return solve(lp, options);
}

LpSolution solve(const LinProgram& lp, const SolveOptions& options) {
    if (options.force_primal_form && options.force_dual_form)
        throw std::invalid_argument("cannot force both forms");
    bool forced = options.force_primal_form || options.force_dual_form;
    if (!forced && options.arithmetic == Arithmetic::exact &&
        lp.rows.size() > row_gen_threshold)
        return solve_lazy(lp, options);
    return solve_direct(lp, options);
}

bool verify_certificate(const LinProgram& lp, const LpSolution& sol, const Rational& tol) {
    if (sol.status != LpStatus::optimal) return true;
    if (sol.primal.size() != lp.columns.size() || sol.dual.size() != lp.rows.size()) return false;
    bool minimize = lp.sense == LinProgram::Sense::minimize;
    // Orient as maximization: duals and objective negate for minimization.
    auto dual_at = [&](size_t i) { return minimize ? Rational(-sol.dual[i]) : sol.dual[i]; };
    Rational value = minimize ? Rational(-sol.value) : sol.value;

    for (const Rational& v : sol.primal)
        if (v < -tol) return false;
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        Rational lhs = 0;
        for (const auto& [col, coeff] : lp.rows[i].terms)
            lhs += coeff * sol.primal[static_cast<size_t>(col)];
        const Rational& rhs = lp.rows[i].rhs;
        switch (lp.rows[i].rel) {
            case Relation::eq:
                if (lhs - rhs > tol || rhs - lhs > tol) return false;
                break;
            case Relation::ge:
                if (lhs < rhs - tol) return false;
                break;
            case Relation::le:
                if (lhs > rhs + tol) return false;
                break;
        }
    }

    std::vector<Rational> cmax(lp.columns.size(), Rational(0));
    for (const auto& [col, coeff] : lp.objective)
        cmax[static_cast<size_t>(col)] += minimize ? Rational(-coeff) : coeff;
    Rational primal_obj = 0;
    for (size_t j = 0; j < lp.columns.size(); ++j) primal_obj += cmax[j] * sol.primal[j];
    if (primal_obj - value > tol || value - primal_obj > tol) return false;

    Rational dual_obj = 0;
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        Rational y = dual_at(i);
        switch (lp.rows[i].rel) {
            case Relation::le:
                if (y < -tol) return false;
                break;
            case Relation::ge:
                if (y > tol) return false;
                break;
            case Relation::eq:
                break;
        }
        dual_obj += y * lp.rows[i].rhs;
    }
    if (dual_obj - value > tol || value - dual_obj > tol) return false;

    // Reduced costs: c_j - sum_i y_i A_ij <= 0 for every column.
    std::vector<Rational> yta(lp.columns.size(), Rational(0));
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        Rational y = dual_at(i);
        if (y == 0) continue;
        for (const auto& [col, coeff] : lp.rows[i].terms) yta[static_cast<size_t>(col)] += y * coeff;
    }
    for (size_t j = 0; j < lp.columns.size(); ++j)
        if (cmax[j] - yta[j] > tol) return false;
    return true;
}

void export_lp(const LinProgram& lp, std::ostream& out) {
    out << "\\ entropy LP export\n";
    for (const ColumnDesc& col : lp.columns)
        if (col.label != col.name) out << "\\ " << col.name << " = " << col.label << "\n";
    out << (lp.sense == LinProgram::Sense::maximize ? "Maximize" : "Minimize") << "\n obj:";
    if (lp.objective.empty() && !lp.columns.empty()) out << " 0 " << lp.columns.front().name;
    for (const auto& [col, coeff] : lp.objective) {
        const Rational& c = coeff;
        out << (c < 0 ? " - " : " + ") << fraction_string(abs(c)) << " "
            << lp.columns[static_cast<size_t>(col)].name;
    }
    out << "\nSubject To\n";
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        std::string tag = row_tag_name(lp.rows[i].tag);
        for (char& ch : tag)
            if (ch == '-') ch = '_';
        out << " c" << i << "_" << tag << ":";
        for (const auto& [col, coeff] : lp.rows[i].terms)
            out << (coeff < 0 ? " - " : " + ") << fraction_string(abs(coeff)) << " "
                << lp.columns[static_cast<size_t>(col)].name;
        switch (lp.rows[i].rel) {
            case Relation::eq: out << " = "; break;
            case Relation::ge: out << " >= "; break;
            case Relation::le: out << " <= "; break;
        }
        out << fraction_string(lp.rows[i].rhs) << "\n";
    }
    out << "\\ every column is nonnegative (the LP-format default bounds)\nEnd\n";
}

std::string export_lp_string(const LinProgram& lp) {
    std::ostringstream out;
    export_lp(lp, out);
    return out.str();
}

}  // namespace dsslp
