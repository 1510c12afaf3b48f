#include <dsslp/cli.hpp>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dsslp {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ordered_json rational_json(const Rational& q) {
    return {{"fraction", fraction_string(q)}, {"decimal", decimal_string(q)}};
}

std::string mode_name(LpMode mode) {
    return mode == LpMode::reduced ? "reduced" : "unreduced";
}

std::string arithmetic_name(Arithmetic a) {
    return a == Arithmetic::exact ? "exact" : "float";
}

std::string free_param_name(FreeParam p) {
    return p == FreeParam::alpha ? "alpha" : "beta";
}

Rational require_rational(const std::string& text, const char* flag) {
    if (text.empty()) throw std::invalid_argument(std::string("missing required ") + flag);
    return parse_rational(text);
}

DssParams shape_of(const RunConfig& config) {
    DssParams params;
    params.n = config.n;
    params.k = config.k;
    params.d = config.d;
    params.validate_shape();
    return params;
}

// Relative output paths land in $DSSLP_OUTPUT_DIR when it is set.
std::string resolve_output(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("DSSLP_OUTPUT_DIR");
    if (dir == nullptr || *dir == '\0') return path;
    std::string out = dir;
    if (out.back() != '/') out += '/';
    return out + path;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file << text;
    if (!file) throw std::runtime_error("cannot write output file: " + path);
}

// Stdout carries the timing; the --output file never does, so reruns of the
// same config are byte-identical.
int emit_json(const RunConfig& config, ordered_json body, std::ostream& out,
              Clock::time_point start) {
    if (!config.output_path.empty())
        write_file(resolve_output(config.output_path), body.dump(2) + "\n");
    body["wall_time_ms"] = elapsed_ms(start);
    out << body.dump(2) << "\n";
    return exit_ok;
}

long unreduced_columns(long universe_vars) {
    if (universe_vars >= 62) throw std::length_error("universe too large to count columns");
    return (long{1} << universe_vars) - 1;
}

int entropy_columns(const LinProgram& lp) {
    int count = 0;
    for (const ColumnDesc& c : lp.columns)
        if (c.key > 0) ++count;
    return count;
}

}  // namespace

int run_bound(const RunConfig& config, std::ostream& out, std::ostream& err) {
    (void)err;
    const Clock::time_point start = Clock::now();
    DssParams params = shape_of(config);
    params.alpha = require_rational(config.alpha, "--alpha");
    params.beta = require_rational(config.beta, "--beta");
    if (config.format != OutputFormat::json)
        throw std::invalid_argument("bound reports are JSON only");

    const LinProgram lp = build_rate_lp(params, config.mode);
    const LpSolution sol = solve(lp, config.arithmetic);
    const Rational maxflow = max_flow_bound(params);

    ordered_json body;
    body["subcommand"] = "bound";
    body["params"] = {{"n", params.n},
                      {"k", params.k},
                      {"d", params.d},
                      {"alpha", rational_json(params.alpha)},
                      {"beta", rational_json(params.beta)}};
    body["mode"] = mode_name(config.mode);
    body["arithmetic"] = arithmetic_name(config.arithmetic);
    body["columns"] = {{"unreduced", unreduced_columns(universe_size(params))},
                       {"entropy", entropy_columns(lp)}};
    body["rows"] = lp.rows.size();
    body["status"] = lp_status_name(sol.status);
    if (sol.status == LpStatus::optimal) {
        body["rate"] = rational_json(sol.value);
        body["max_flow"] = rational_json(maxflow);
        body["gap"] = rational_json(maxflow - sol.value);
    } else {
        body["rate"] = nullptr;
        body["max_flow"] = rational_json(maxflow);
        body["gap"] = nullptr;
    }
    body["pivots"] = sol.pivots;
    return emit_json(config, std::move(body), out, start);
}

int run_tradeoff(const RunConfig& config, std::ostream& out, std::ostream& err) {
    (void)err;
    const Clock::time_point start = Clock::now();
    const DssParams shape = shape_of(config);
    if (!config.free_param) throw std::invalid_argument("tradeoff needs --free alpha|beta");
    const FreeParam free_param = *config.free_param;
    if (config.grid.empty()) throw std::invalid_argument("tradeoff needs a --grid of fixed values");
    const Rational rate_floor = parse_rational(config.rate);

    std::vector<Rational> grid;
    grid.reserve(config.grid.size());
    for (const std::string& text : config.grid) grid.push_back(parse_rational(text));

    // Independent solves fan out; assembly below keeps grid order.
    std::vector<std::future<LpSolution>> jobs;
    jobs.reserve(grid.size());
    for (const Rational& fixed : grid) {
        DssParams params = shape;
        if (free_param == FreeParam::alpha)
            params.beta = fixed;
        else
            params.alpha = fixed;
        jobs.push_back(std::async(std::launch::async, [params, free_param, rate_floor, config]() {
            const LinProgram lp = build_tradeoff_lp(params, free_param, rate_floor, config.mode);
            return solve(lp, config.arithmetic);
        }));
    }

    const std::string free_name = free_param_name(free_param);
    const std::string fixed_name = free_param == FreeParam::alpha ? "beta" : "alpha";
    std::vector<LpSolution> solutions;
    solutions.reserve(jobs.size());
    for (std::future<LpSolution>& job : jobs) solutions.push_back(job.get());

    if (config.format == OutputFormat::csv) {
        std::ostringstream csv;
        csv << fixed_name << ",status," << free_name << "_fraction," << free_name << "_decimal\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            csv << fraction_string(grid[i]) << "," << lp_status_name(solutions[i].status) << ",";
            if (solutions[i].status == LpStatus::optimal)
                csv << fraction_string(solutions[i].value) << ","
                    << decimal_string(solutions[i].value);
            else
                csv << ",";
            csv << "\n";
        }
        if (!config.output_path.empty()) write_file(resolve_output(config.output_path), csv.str());
        out << csv.str();
        return exit_ok;
    }

    ordered_json body;
    body["subcommand"] = "tradeoff";
    body["params"] = {{"n", shape.n}, {"k", shape.k}, {"d", shape.d}};
    body["free"] = free_name;
    body["fixed"] = fixed_name;
    body["rate"] = rational_json(rate_floor);
    body["mode"] = mode_name(config.mode);
    body["arithmetic"] = arithmetic_name(config.arithmetic);
    body["points"] = ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ordered_json point;
        point["fixed"] = rational_json(grid[i]);
        point["status"] = lp_status_name(solutions[i].status);
        point["value"] = solutions[i].status == LpStatus::optimal
                             ? rational_json(solutions[i].value)
                             : ordered_json(nullptr);
        body["points"].push_back(std::move(point));
    }
    return emit_json(config, std::move(body), out, start);
}

int run_dims(const RunConfig& config, std::ostream& out, std::ostream& err) {
    (void)err;
    const Clock::time_point start = Clock::now();
    DssParams params = shape_of(config);
    params.alpha = 1;
    params.beta = 1;
    if (config.format != OutputFormat::json)
        throw std::invalid_argument("dims reports are JSON only");

    const Universe u = enumerate_universe(params);
    const ClosureOracle oracle(u);
    const OrbitTable orbits(oracle, symmetric_group(params.n));
    const std::vector<VarSet> dims = dimension_sets(oracle);
    const std::vector<VarSet>& reps = orbits.representatives();

    ordered_json body;
    body["subcommand"] = "dims";
    body["params"] = {{"n", params.n}, {"k", params.k}, {"d", params.d}};
    ordered_json names = ordered_json::array();
    for (const VarId& v : u.vars) names.push_back(var_name(v, params));
    body["universe"] = {{"size", u.size()}, {"variables", std::move(names)}};
    body["unreduced_columns"] = unreduced_columns(u.size());
    ordered_json dim_sets = ordered_json::array();
    for (VarSet s : dims) dim_sets.push_back(set_display(s, u));
    body["dimensions"] = {{"count", dims.size()}, {"sets", std::move(dim_sets)}};
    ordered_json rep_sets = ordered_json::array();
    for (VarSet s : reps) rep_sets.push_back(set_display(s, u));
    body["orbits"] = {{"count", reps.size()}, {"representatives", std::move(rep_sets)}};
    return emit_json(config, std::move(body), out, start);
}

namespace {

// Deterministic small draws; plain modulo keeps the stream identical across
// library implementations.
int draw(std::mt19937_64& rng, int bound) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

struct ConcatSuite {
    long failures = 0;
    double max_abs_diff = 0;
};

ConcatSuite run_concat_suite(long trials, std::uint64_t seed) {
    ConcatSuite suite;
    std::mt19937_64 rng(seed);
    const std::vector<NodePermutation> group = symmetric_group(3);
    for (long t = 0; t < trials; ++t) {
        std::vector<int> sizes = {2 + draw(rng, 2), 2 + draw(rng, 2), 2 + draw(rng, 2)};
        const JointPmf pmf = random_pmf(sizes, rng);
        std::vector<VarSet> family(static_cast<size_t>(1 + draw(rng, 3)));
        for (VarSet& s : family) s = VarSet(static_cast<std::uint64_t>(1 + draw(rng, 7)));
        const NodePermutation& sigma = group[static_cast<size_t>(draw(rng, 6))];
        const ConcatSymmetryReport report = check_concat_symmetry(pmf, family, sigma);
        suite.max_abs_diff = std::max(suite.max_abs_diff, std::abs(report.lhs - report.rhs));
        if (!report.ok) ++suite.failures;
    }
    return suite;
}

std::vector<RepairId> first_repairs(const Universe& u, std::size_t count) {
    std::vector<RepairId> out;
    for (const VarId& v : u.vars) {
        if (v.kind != VarId::Kind::repair) continue;
        out.push_back({v.node, v.failed, v.helpers});
        if (out.size() == count) break;
    }
    return out;
}

}  // namespace

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    (void)err;
    const Clock::time_point start = Clock::now();
    if (config.trials < 0) throw std::invalid_argument("--trials must be nonnegative");
    if (config.format != OutputFormat::json)
        throw std::invalid_argument("verify reports are JSON only");

    ordered_json body;
    body["subcommand"] = "verify";
    body["seed"] = config.seed;
    body["trials"] = config.trials;
    ordered_json warnings = ordered_json::array();
    if (config.trials == 0) warnings.push_back("no randomized trials requested; concat suite is vacuous");

    const ConcatSuite concat = run_concat_suite(config.trials, config.seed);
    body["concat_symmetry"] = {{"trials", config.trials},
                               {"failures", concat.failures},
                               {"max_abs_diff", concat.max_abs_diff}};

    CodeTable code;
    std::string source = "built-in parity";
    if (!config.code_path.empty()) {
        std::ifstream file(config.code_path);
        if (!file) throw std::runtime_error("cannot open code table: " + config.code_path);
        code = load_code_table(file);
        source = config.code_path;
    } else {
        code = parity_code();
    }
    const CodeReport report = check_code(code);
    ordered_json violations = ordered_json::array();
    for (const CodeViolation& v : report.violations)
        violations.push_back(
            {{"kind", v.kind}, {"where", v.where}, {"source_symbol", v.source_symbol}});
    body["code"] = {{"source", source},
                    {"admissible", report.admissible},
                    {"functional", report.functional},
                    {"within_alpha", report.within_alpha},
                    {"within_beta", report.within_beta},
                    {"rate_bits", report.rate_bits},
                    {"violations", std::move(violations)}};

    long sym_checks = 0;
    long sym_failures = 0;
    double sym_max_diff = 0;
    if (report.admissible) {
        const Universe u = enumerate_universe(code.params);
        std::vector<NodeSet> gammas = {0, node_set({1})};
        if (code.params.n >= 2) gammas.push_back(node_set({1, 2}));
        const std::vector<RepairId> repairs = first_repairs(u, 2);
        std::vector<std::vector<RepairId>> deltas = {{}};
        if (!repairs.empty()) deltas.push_back({repairs.front()});
        if (repairs.size() >= 2) deltas.push_back(repairs);
        std::vector<NodePermutation> sigmas;
        if (code.params.n <= 3) {
            sigmas = symmetric_group(code.params.n);
        } else {
            sigmas.push_back(NodePermutation::identity(code.params.n));
            std::vector<int> reversed(static_cast<size_t>(code.params.n));
            for (int i = 0; i < code.params.n; ++i)
                reversed[static_cast<size_t>(i)] = code.params.n - i;
            sigmas.push_back(NodePermutation(std::move(reversed)));
        }
        long group_size = 0;
        Rational concat_alpha, concat_beta;
        double concat_rate_bits = 0;
        for (NodeSet gamma : gammas)
            for (const std::vector<RepairId>& delta : deltas)
                for (const NodePermutation& sigma : sigmas) {
                    const CodeSymmetryReport sym = check_code_symmetry(code, gamma, delta, sigma);
                    ++sym_checks;
                    sym_max_diff = std::max(sym_max_diff, std::abs(sym.lhs - sym.rhs));
                    if (!sym.ok) ++sym_failures;
                    group_size = sym.group_size;
                    concat_alpha = sym.concat_alpha;
                    concat_beta = sym.concat_beta;
                    concat_rate_bits = sym.concat_rate_bits;
                }
        body["code_symmetry"] = {{"checks", sym_checks},
                                 {"failures", sym_failures},
                                 {"max_abs_diff", sym_max_diff},
                                 {"concatenation",
                                  {{"group_size", group_size},
                                   {"rate_bits", concat_rate_bits},
                                   {"alpha", rational_json(concat_alpha)},
                                   {"beta", rational_json(concat_beta)}}}};
    } else {
        body["code_symmetry"] = nullptr;
        warnings.push_back("code inadmissible; symmetry checks skipped");
    }

    const bool ok = concat.failures == 0 && report.admissible && sym_failures == 0;
    body["warnings"] = std::move(warnings);
    body["ok"] = ok;
    const int status = emit_json(config, std::move(body), out, start);
    return ok ? status : exit_check_failed;
}

int run_export(const RunConfig& config, std::ostream& out, std::ostream& err) {
    (void)err;
    const Clock::time_point start = Clock::now();
    DssParams params = shape_of(config);

    LinProgram lp;
    if (config.free_param) {
        if (*config.free_param == FreeParam::alpha)
            params.beta = require_rational(config.beta, "--beta");
        else
            params.alpha = require_rational(config.alpha, "--alpha");
        lp = build_tradeoff_lp(params, *config.free_param, parse_rational(config.rate), config.mode);
    } else {
        params.alpha = require_rational(config.alpha, "--alpha");
        params.beta = require_rational(config.beta, "--beta");
        lp = build_rate_lp(params, config.mode);
    }
    const std::string text = export_lp_string(lp);

    if (config.output_path.empty()) {
        out << text;
        return exit_ok;
    }
    write_file(resolve_output(config.output_path), text);
    ordered_json body;
    body["subcommand"] = "export";
    body["params"] = {{"n", params.n}, {"k", params.k}, {"d", params.d}};
    body["mode"] = mode_name(config.mode);
    body["columns"] = lp.columns.size();
    body["rows"] = lp.rows.size();
    body["output"] = resolve_output(config.output_path);
    body["wall_time_ms"] = elapsed_ms(start);
    out << body.dump(2) << "\n";
    return exit_ok;
}

int run_cli(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.subcommand) {
            case Subcommand::bound: return run_bound(config, out, err);
            case Subcommand::tradeoff: return run_tradeoff(config, out, err);
            case Subcommand::dims: return run_dims(config, out, err);
            case Subcommand::verify: return run_verify(config, out, err);
            case Subcommand::export_file: return run_export(config, out, err);
        }
        throw std::logic_error("unreachable");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace dsslp
