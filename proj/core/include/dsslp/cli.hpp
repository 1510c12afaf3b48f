#pragma once

#include <dsslp/lp.hpp>
#include <dsslp/verify.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dsslp {

enum class Subcommand { bound, tradeoff, dims, verify, export_file };
enum class OutputFormat { json, csv };

// Parsed command line, independent of the flag parser so runs can be driven
// programmatically. Rationals stay as strings until a run needs them.
struct RunConfig {
    Subcommand subcommand = Subcommand::bound;

    int n = 0;
    int k = 0;
    int d = 0;
    std::string alpha;  // rational string; empty when not given
    std::string beta;
    std::string rate = "1";

    LpMode mode = LpMode::reduced;
    Arithmetic arithmetic = Arithmetic::exact;

    std::optional<FreeParam> free_param;  // tradeoff/export: the minimized capacity
    std::vector<std::string> grid;        // tradeoff: values of the fixed capacity

    std::uint64_t seed = 42;
    long trials = 1000;
    std::string code_path;  // verify: code table to check instead of the built-in

    std::string output_path;  // empty: stdout only
    OutputFormat format = OutputFormat::json;
};

// Exit codes shared by every run: success / failed check / bad usage.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

int run_bound(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_tradeoff(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_dims(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_export(const RunConfig& config, std::ostream& out, std::ostream& err);

// Dispatches on the subcommand and maps exceptions to exit_usage. Reports are
// written to `out`; identical configs produce byte-identical --output files
// (timing lives only on stdout).
int run_cli(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dsslp
