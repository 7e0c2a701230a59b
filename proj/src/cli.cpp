#include "srp/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "srp/config.hpp"
#include "srp/io.hpp"
#include "srp/kernels.hpp"
#include "srp/oracle.hpp"
#include "srp/scattering.hpp"
#include "srp/spectrum.hpp"
#include "srp/verify.hpp"

namespace srp::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const char* command_name(Command c) {
    switch (c) {
        case Command::dispersion: return "dispersion";
        case Command::population: return "population";
        case Command::darkstate: return "darkstate";
        case Command::dressed_darkstate: return "dressed-darkstate";
        case Command::scatter: return "scatter";
        case Command::scan_n: return "scan-n";
        case Command::scan_ratio: return "scan-ratio";
        case Command::verify: return "verify";
    }
    return "?";
}

std::vector<double> grid_values(const GridSpec& g) {
    if (g.count < 2 || !(g.stop > g.start))
        throw ConfigError("--grid expects start:stop:count with count >= 2");
    std::vector<double> v(g.count);
    for (int i = 0; i < g.count; ++i)
        v[i] = g.start + (g.stop - g.start) * i / (g.count - 1);
    return v;
}

std::string provenance_line(const RunConfig& cfg, const config::Resolved& r) {
    ordered_json o;
    o["command"] = command_name(cfg.command);
    o["resolved"] = r.provenance;
    if (cfg.grid)
        o["grid"] = {cfg.grid->start, cfg.grid->stop, cfg.grid->count};
    o["kernels"] = kernels::active().name;
    return o.dump();
}

constexpr const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Renders the CSV artifacts sitting next to this script."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def load(name):
    path = os.path.join(HERE, name)
    if not os.path.exists(path):
        return None
    with open(path) as f:
        rows = [r for r in csv.reader(f) if r and not r[0].startswith("#")]
    head, data = rows[0], rows[1:]
    return {h: [float(r[i]) for r in data] for i, h in enumerate(head)}


def panel_dispersion():
    d = load("fig2a.csv")
    if not d:
        return
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(d["k_labs"], d["im_omega_over_gammabar"], "k-", label="numeric")
    ax.plot(d["k_labs"], d["im_omega_analytic_over_gammabar"], "--",
            color="gray", label="small-k law")
    ax.set_xlabel(r"$k\,l_{abs}$")
    ax.set_ylabel(r"Im$[\omega]/\bar\gamma$")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, "fig2a.png"), dpi=160)


def panel_population():
    d = load("fig2b.csv")
    if not d:
        return
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(d["delta_over_omega_s"], d["pop_e_plus_minus"], "k-")
    ax.set_xlabel(r"$\delta/\Omega_s$")
    ax.set_ylabel(r"$|P_+|^2 + |P_-|^2$")
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, "fig2b.png"), dpi=160)


def panel_scan(name, xlabel, sentinel):
    d = load(name)
    if not d:
        return
    base = None
    xs, t, r, a = [], [], [], []
    for i, x in enumerate(d["scan_variable"]):
        row = (d["T"][i], d["R"][i], d["A"][i])
        if x == sentinel:
            base = row
        else:
            xs.append(x)
            t.append(row[0])
            r.append(row[1])
            a.append(row[2])
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(xs, t, "o-", label="T")
    ax.plot(xs, r, "s-", label="R")
    ax.plot(xs, a, "^-", label="A")
    if base:
        for v in base:
            ax.axhline(v, ls=":", color="gray", lw=1)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("coefficient")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, name.replace(".csv", ".png")), dpi=160)


panel_dispersion()
panel_population()
panel_scan("fig3-upper.csv", "Rydberg quantum number n", 0.0)
panel_scan("fig3-lower.csv", r"$\Omega_c/\Omega_s$", -1.0)
print("wrote figure PNGs to", HERE)
)PY";

std::vector<double> scan_csv_row(double x, const ScatterResult& s) {
    return {x,
            s.T,
            s.R,
            s.A,
            s.T * s.T,
            s.R * s.R,
            1.0 - s.T * s.T - s.R * s.R,
            s.converged ? 1.0 : 0.0};
}

const std::vector<std::string> kScanHeader = {
    "scan_variable", "T", "R", "A",
    "T_intensity",   "R_intensity", "A_intensity", "converged_flag"};

void state_to_json(ordered_json& o, const PolaritonState& s) {
    o["eigenvalue"] = {{"re", s.eigenvalue.real()}, {"im", s.eigenvalue.imag()}};
    auto arr = ordered_json::array();
    for (int i = 0; i < 6; ++i)
        arr.push_back({{"re", s.amplitudes[i].real()},
                       {"im", s.amplitudes[i].imag()}});
    o["amplitudes"] = arr;
    o["basis"] = {"E+", "E-", "D", "S", "P+", "P-"};
    o["dark_overlap"] = s.dark_overlap;
}

MediumSpec require_medium(const config::Resolved& r) {
    if (!r.medium)
        throw ConfigError("this command needs a medium (use a config file, "
                          "--preset fig3/rb87 or --set medium...)");
    return *r.medium;
}

int run_resolved(const RunConfig& cfg, const config::Resolved& res) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const auto path = [&](const char* name) {
        return (fs::path(cfg.output_dir) / name).string();
    };
    const ModelParams& p = res.params;
    const double gb = p.gamma_bar();
    const double labs = p.l_abs();
    const std::string prov = provenance_line(cfg, res);
    bool wrote_csv = false;

    switch (cfg.command) {
        case Command::dispersion: {
            const GridSpec g = cfg.grid.value_or(GridSpec{-1.0, 1.0, 401});
            std::vector<double> ks = grid_values(g);  // kappa = k * l_abs
            for (auto& k : ks) k /= labs;
            const DispersionBranch b = dispersion_scan(p, ks);
            io::CsvWriter csv(path("fig2a.csv"));
            csv.comment(prov);
            csv.header({"k_labs", "re_omega_over_gammabar",
                        "im_omega_over_gammabar", "pop_e_plus_minus",
                        "dark_overlap", "im_omega_analytic_over_gammabar"});
            for (std::size_t i = 0; i < b.k.size(); ++i) {
                const auto& st = b.states[i];
                const double pop = std::norm(st.amplitudes[4]) +
                                   std::norm(st.amplitudes[5]);
                csv.row({b.k[i] * labs, b.omega[i].real() / gb,
                         b.omega[i].imag() / gb, pop, st.dark_overlap,
                         analytic_dispersion(p, b.k[i]).imag() / gb});
            }
            wrote_csv = true;
            break;
        }
        case Command::population: {
            const GridSpec g = cfg.grid.value_or(GridSpec{-3.0, 3.0, 601});
            const auto samples = population_scan(p, grid_values(g));
            io::CsvWriter csv(path("fig2b.csv"));
            csv.comment(prov);
            csv.header({"delta_over_omega_s", "re_omega_over_gammabar",
                        "im_omega_over_gammabar", "pop_e_plus_minus",
                        "dark_overlap"});
            for (const auto& s : samples) {
                const double pop = std::norm(s.state.amplitudes[4]) +
                                   std::norm(s.state.amplitudes[5]);
                csv.row({s.ratio, s.state.eigenvalue.real() / gb,
                         s.state.eigenvalue.imag() / gb, pop,
                         s.state.dark_overlap});
            }
            wrote_csv = true;
            break;
        }
        case Command::darkstate: {
            const PolaritonState s = dark_state(p, 0.0);
            ordered_json o;
            o["provenance"] = json::parse(prov);
            state_to_json(o, s);
            io::write_text_file(path("darkstate.json"), o.dump(2) + "\n");
            break;
        }
        case Command::dressed_darkstate: {
            const DressedDarkState d = dressed_dark_state(p);
            ordered_json o;
            o["provenance"] = json::parse(prov);
            state_to_json(o, d.state);
            o["overlap_deficit"] = d.overlap_deficit;
            io::write_text_file(path("dressed-darkstate.json"),
                                o.dump(2) + "\n");
            break;
        }
        case Command::scatter: {
            const MediumSpec med = require_medium(res);
            const ScatterResult s = scatter(p, med);
            io::CsvWriter csv(path("scatter.csv"));
            csv.comment(prov);
            csv.header(kScanHeader);
            csv.row(scan_csv_row(0.0, s));
            std::cout << "T=" << io::format_g(s.T) << " R=" << io::format_g(s.R)
                      << " A=" << io::format_g(s.A) << "\n";
            wrote_csv = true;
            break;
        }
        case Command::scan_n: {
            const MediumSpec med = require_medium(res);
            const GridSpec g = cfg.grid.value_or(GridSpec{40.0, 100.0, 7});
            std::vector<int> ns;
            for (double x : grid_values(g))
                ns.push_back(static_cast<int>(std::lround(x)));
            const auto scan = scan_quantum_number(p, med, ns);
            MediumSpec bare = med;
            bare.impurity.reset();
            const ScatterResult baseline = scatter(p, bare);
            io::CsvWriter csv(path("fig3-upper.csv"));
            csv.comment(prov);
            csv.comment("row with scan_variable=0 is the no-impurity baseline");
            csv.header(kScanHeader);
            csv.row(scan_csv_row(0.0, baseline));
            for (const auto& row : scan.rows)
                csv.row(scan_csv_row(row.x, row.result));
            wrote_csv = true;
            break;
        }
        case Command::scan_ratio: {
            const MediumSpec med = require_medium(res);
            const GridSpec g = cfg.grid.value_or(GridSpec{0.0, 4.0, 41});
            const int n = (med.impurity && med.impurity->interaction.kind ==
                                               InteractionModel::Kind::
                                                   quantum_number)
                              ? med.impurity->interaction.n
                              : 60;
            const auto rows = scan_ratio(p, med, grid_values(g), n);
            MediumSpec bare = med;
            bare.impurity.reset();
            ModelParams pinned = p;
            pinned.delta = p.omega_s;
            const ScatterResult baseline = scatter(validate(pinned), bare);
            io::CsvWriter csv(path("fig3-lower.csv"));
            csv.comment(prov);
            csv.comment(
                "row with scan_variable=-1 is the no-impurity baseline");
            csv.header(kScanHeader);
            csv.row(scan_csv_row(-1.0, baseline));
            for (const auto& row : rows)
                csv.row(scan_csv_row(row.x, row.result));
            wrote_csv = true;
            break;
        }
        case Command::verify: {
            const verify::Report rep = verify::run();
            io::write_text_file(path("report.json"), verify::to_json(rep));
            for (const auto& c : rep.checks)
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.test_name
                          << " observed=" << io::format_g(c.observed) << "\n";
            std::cout << (rep.overall ? "verification OK" : "verification FAILED")
                      << " (" << rep.checks.size() << " checks)\n";
            if (!rep.overall) return 4;
            break;
        }
    }
    if (wrote_csv) io::write_text_file(path("plot_figs.py"), kPlotScript);
    return 0;
}

}  // namespace

int run(const RunConfig& cfg) {
    try {
        json root = json::object();
        if (!cfg.preset.empty()) root = config::preset_config(cfg.preset);
        if (!cfg.config_path.empty()) {
            std::ifstream f(cfg.config_path);
            if (!f) throw ConfigError("cannot read config " + cfg.config_path);
            json user;
            try {
                f >> user;
            } catch (const json::parse_error& e) {
                throw ConfigError(std::string("config parse: ") + e.what());
            }
            root.merge_patch(user);
        }
        for (const auto& kv : cfg.sets) config::apply_set(root, kv);

        config::Resolved res;
        try {
            res = config::resolve(root);
        } catch (const ValidationError& e) {
            throw ConfigError(e.what());
        }
        if (cfg.no_impurity && res.medium) {
            res.medium->impurity.reset();
            res.provenance["medium"].erase("z0");
            res.provenance["medium"].erase("interaction");
        }
        try {
            return run_resolved(cfg, res);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ComputationError(e.what());
        }
    } catch (const ConfigError& e) {
        std::cerr << json{{"error", "ConfigError"}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << json{{"error", "ComputationError"}, {"message", e.what()}}
                         .dump()
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump()
                  << "\n";
        return 3;
    }
}

}  // namespace srp::cli
