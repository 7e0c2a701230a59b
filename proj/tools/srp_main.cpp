#include <CLI11.hpp>

#include <string>

#include "srp/cli.hpp"

namespace {

srp::cli::GridSpec parse_grid(const std::string& s) {
    srp::cli::GridSpec g;
    const auto a = s.find(':');
    const auto b = s.rfind(':');
    if (a == std::string::npos || b == a)
        throw CLI::ValidationError("--grid expects start:stop:count");
    try {
        g.start = std::stod(s.substr(0, a));
        g.stop = std::stod(s.substr(a + 1, b - a - 1));
        g.count = std::stoi(s.substr(b + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid expects start:stop:count");
    }
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "srp: stationary-polariton spectra and impurity scattering in a "
        "dual-V Rydberg medium"};
    app.require_subcommand(1);

    srp::cli::RunConfig cfg;
    std::string grid_str;

    const std::pair<const char*, srp::cli::Command> commands[] = {
        {"dispersion", srp::cli::Command::dispersion},
        {"population", srp::cli::Command::population},
        {"darkstate", srp::cli::Command::darkstate},
        {"dressed-darkstate", srp::cli::Command::dressed_darkstate},
        {"scatter", srp::cli::Command::scatter},
        {"scan-n", srp::cli::Command::scan_n},
        {"scan-ratio", srp::cli::Command::scan_ratio},
        {"verify", srp::cli::Command::verify},
    };
    for (const auto& [name, cmd] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->parse_complete_callback([&cfg, cmd = cmd] { cfg.command = cmd; });
        sub->add_option("--config", cfg.config_path, "JSON config file");
        sub->add_option("--preset", cfg.preset, "fig2 | fig3 | rb87");
        sub->add_option("--set", cfg.sets,
                        "key.path=value override (repeatable)");
        sub->add_option("--output", cfg.output_dir, "output directory");
        sub->add_option("--grid", grid_str, "start:stop:count");
        sub->add_flag("--no-impurity", cfg.no_impurity,
                      "drop the impurity from the medium");
    }

    try {
        app.parse(argc, argv);
        if (!grid_str.empty()) cfg.grid = parse_grid(grid_str);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return srp::cli::run(cfg);
}
