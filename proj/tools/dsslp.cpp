#include <dsslp/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

struct FlagText {
    std::string mode = "reduced";
    std::string arithmetic = "exact";
    std::string format = "json";
    std::string free_param;
};

void add_shape(CLI::App* cmd, dsslp::RunConfig& config) {
    cmd->add_option("--n", config.n, "number of storage nodes")->required();
    cmd->add_option("--k", config.k, "nodes needed to reconstruct")->required();
    cmd->add_option("--d", config.d, "helpers contacted for repair")->required();
}

void add_mode(CLI::App* cmd, FlagText& text) {
    cmd->add_option("--mode", text.mode, "column space: reduced or unreduced")
        ->check(CLI::IsMember({"reduced", "unreduced"}));
}

void add_arithmetic(CLI::App* cmd, FlagText& text) {
    cmd->add_option("--arithmetic", text.arithmetic, "solver arithmetic: exact or float")
        ->check(CLI::IsMember({"exact", "float"}));
}

void add_output(CLI::App* cmd, dsslp::RunConfig& config) {
    cmd->add_option("--output", config.output_path,
                    "write the report here as well (relative paths honor DSSLP_OUTPUT_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
    dsslp::RunConfig config;
    FlagText text;

    CLI::App app{"Shannon LP outer bounds for exact-repair distributed storage"};
    app.require_subcommand(1);

    CLI::App* bound = app.add_subcommand("bound", "maximize the rate at fixed capacities");
    add_shape(bound, config);
    bound->add_option("--alpha", config.alpha, "per-node storage capacity (rational)")->required();
    bound->add_option("--beta", config.beta, "per-helper repair capacity (rational)")->required();
    add_mode(bound, text);
    add_arithmetic(bound, text);
    add_output(bound, config);
    bound->callback([&] { config.subcommand = dsslp::Subcommand::bound; });

    CLI::App* tradeoff = app.add_subcommand("tradeoff", "minimize one capacity over a grid of the other");
    add_shape(tradeoff, config);
    tradeoff->add_option("--free", text.free_param, "capacity to minimize: alpha or beta")
        ->check(CLI::IsMember({"alpha", "beta"}))
        ->required();
    tradeoff->add_option("--grid", config.grid, "comma-separated fixed-capacity values")
        ->delimiter(',')
        ->required();
    tradeoff->add_option("--rate", config.rate, "rate floor (rational, default 1)");
    add_mode(tradeoff, text);
    add_arithmetic(tradeoff, text);
    tradeoff->add_option("--format", text.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    add_output(tradeoff, config);
    tradeoff->callback([&] { config.subcommand = dsslp::Subcommand::tradeoff; });

    CLI::App* dims = app.add_subcommand("dims", "report LP dimensions before and after reduction");
    add_shape(dims, config);
    add_output(dims, config);
    dims->callback([&] { config.subcommand = dsslp::Subcommand::dims; });

    CLI::App* verify = app.add_subcommand("verify", "run the symmetry and code-admissibility checks");
    verify->add_option("--code", config.code_path, "code table JSON to check instead of the built-in");
    verify->add_option("--seed", config.seed, "random seed for the concatenation trials");
    verify->add_option("--trials", config.trials, "number of randomized trials");
    add_output(verify, config);
    verify->callback([&] { config.subcommand = dsslp::Subcommand::verify; });

    CLI::App* exp = app.add_subcommand("export", "write the LP in solver-readable text form");
    add_shape(exp, config);
    exp->add_option("--alpha", config.alpha, "storage capacity (rational; required unless free)");
    exp->add_option("--beta", config.beta, "repair capacity (rational; required unless free)");
    exp->add_option("--free", text.free_param, "export the tradeoff LP minimizing this capacity")
        ->check(CLI::IsMember({"alpha", "beta"}));
    exp->add_option("--rate", config.rate, "rate floor for the tradeoff form");
    add_mode(exp, text);
    add_output(exp, config);
    exp->callback([&] { config.subcommand = dsslp::Subcommand::export_file; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? dsslp::exit_ok : dsslp::exit_usage;
    }

    config.mode = text.mode == "unreduced" ? dsslp::LpMode::unreduced : dsslp::LpMode::reduced;
    config.arithmetic =
        text.arithmetic == "float" ? dsslp::Arithmetic::floating : dsslp::Arithmetic::exact;
    config.format = text.format == "csv" ? dsslp::OutputFormat::csv : dsslp::OutputFormat::json;
    if (!text.free_param.empty())
        config.free_param =
            text.free_param == "alpha" ? dsslp::FreeParam::alpha : dsslp::FreeParam::beta;

    return dsslp::run_cli(config, std::cout, std::cerr);
}
