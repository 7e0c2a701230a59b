#pragma once

#include <optional>
#include <string>
#include <vector>

namespace srp::cli {

enum class Command {
    dispersion,
    population,
    darkstate,
    dressed_darkstate,
    scatter,
    scan_n,
    scan_ratio,
    verify,
};

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

struct RunConfig {
    Command command = Command::verify;
    std::string preset;              // fig2 | fig3 | rb87, optional
    std::string config_path;         // JSON config file, optional
    std::vector<std::string> sets;   // key.path=value overrides
    std::string output_dir = "out";
    std::optional<GridSpec> grid;
    bool no_impurity = false;
};

/// Executes one command, writing CSV/JSON artifacts plus a self-contained
/// plotting script into output_dir. Exit codes: 0 ok, 2 config error,
/// 3 computation error, 4 verification failure. Failures also emit a
/// machine-readable {"error","message"} record on stderr.
int run(const RunConfig& cfg);

}  // namespace srp::cli
