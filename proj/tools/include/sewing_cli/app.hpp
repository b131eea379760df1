#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace sewing::cli {

enum class Command {
    eisenstein,
    period_eps,
    period_rho,
    necklace,
    invert,
    equivariance,
    catalan,
    appendix_series,
    map_rho_to_eps,
    sweep,
};

enum class Format { json, csv, text };

// Exit codes
inline constexpr int exit_ok = 0;
inline constexpr int exit_parse = 1;
inline constexpr int exit_domain = 2;
inline constexpr int exit_convergence = 3;
inline constexpr int exit_internal = 4;

struct RunConfig {
    Command command = Command::period_eps;
    // complex-valued flags as given on the command line, keyed by flag name
    std::map<std::string, std::string> values;
    std::string formalism;  // eps | rho | chi
    int order = 16;
    int max_order = 8;
    int k = 2;
    int steps = 11;
    double tol = 1e-14;
    double newton_tol = 1e-12;
    long long branch = 0;
    std::string vary;    // sweep parameter
    std::string output;  // empty: stdout
    Format format = Format::json;
    int threads = 0;     // sweep workers; 0 uses the hardware count
};

struct RunResult {
    int exit_code = exit_ok;
    std::string output;
    std::string error;
};

RunResult run(const RunConfig& config);

// Parses argv, runs, writes output (to the configured file or out) and errors to err.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sewing::cli
