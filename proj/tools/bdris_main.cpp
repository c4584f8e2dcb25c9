// SPDX-License-Identifier: Apache-2.0
//
// bdris - simulation and optimization toolkit for hybrid
// transmitting/reflecting beyond-diagonal reconfigurable surfaces
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Command-line front end over the bdris C API. Subcommands:
//   gen-dataset    synthesize an electromagnetic dataset
//   splitter-sweep capacitance/frequency sweep of the power splitter
//   simulate       reflected/transmitted fields for a configuration
//   optimize       genetic beam search, report + reusable config
//   metrics        beam metrics of a stored pattern CSV
//
// Exit codes: 0 success, 2 usage error, 3 I/O failure, 4 numerical
// failure inside the engine.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bdris/bdris.h"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_io = 3;
constexpr int exit_numeric = 4;

struct CliFailure {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string &message) {
    throw CliFailure{code, message};
}

int exit_code_for(bdris_status status) {
    switch (status) {
    case BDRIS_OK:
        return 0;
    case BDRIS_E_INVALID_ARGUMENT:
    case BDRIS_E_INVALID_LAYOUT:
    case BDRIS_E_WRONG_SIDE:
    case BDRIS_E_TOO_LARGE:
        return exit_usage;
    case BDRIS_E_IO:
    case BDRIS_E_SCHEMA:
    case BDRIS_E_RECIPROCITY:
    case BDRIS_E_GRID_MISMATCH:
        return exit_io;
    default:
        return exit_numeric;
    }
}

void check(bdris_status status, const std::string &context) {
    if (status != BDRIS_OK)
        fail(exit_code_for(status), context + ": " + bdris_last_error());
}

// Signed cut-plane angle: sign selects phi = 90 (positive) or 270.
void split_signed(double signed_deg, double &theta, double &phi) {
    theta = std::abs(signed_deg);
    phi = signed_deg >= 0.0 ? 90.0 : 270.0;
}

unsigned thread_count(unsigned flag_value) {
    if (flag_value > 0)
        return flag_value;
    if (const char *env = std::getenv("BDRIS_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return 1;
}

void ensure_parent_dir(const std::string &path) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        if (ec)
            fail(exit_io, "cannot create directory " + parent.string());
    }
}

// Every run records its resolved parameters next to its outputs.
void write_manifest(const std::string &out_dir, const std::string &command,
                    const nlohmann::json &params) {
    nlohmann::json manifest;
    manifest["tool"] = "bdris";
    manifest["version"] = bdris_version();
    manifest["command"] = command;
    manifest["parameters"] = params;
    const std::string path = out_dir + "/manifest.json";
    ensure_parent_dir(path);
    std::ofstream out(path);
    if (!out)
        fail(exit_io, "cannot write " + path);
    out << manifest.dump(2) << '\n';
}

struct DatasetHandle {
    bdris_dataset *ptr = nullptr;
    ~DatasetHandle() { bdris_dataset_free(ptr); }
};

struct ConfigHandle {
    bdris_config *ptr = nullptr;
    ~ConfigHandle() { bdris_config_free(ptr); }
};

struct ResultHandle {
    bdris_result *ptr = nullptr;
    ~ResultHandle() { bdris_result_free(ptr); }
};

bdris_mode parse_mode(const std::string &name) {
    if (name == "reflection")
        return BDRIS_MODE_REFLECTION;
    if (name == "hybrid")
        return BDRIS_MODE_HYBRID;
    if (name == "transmission")
        return BDRIS_MODE_TRANSMISSION;
    fail(exit_usage, "unknown mode '" + name + "' (reflection|hybrid|transmission)");
}

void print_metrics(const char *label, const bdris_beam_metrics &m) {
    std::cout << label << ": peak (" << m.peak_theta_deg << ", " << m.peak_phi_deg
              << ") deg, level " << m.peak_level_db << " dB, HPBW " << m.hpbw_deg
              << " deg, max sidelobe " << m.max_sidelobe_db << " dB\n";
}

nlohmann::json metrics_json(const bdris_beam_metrics &m) {
    return {{"peak_theta_deg", m.peak_theta_deg},
            {"peak_phi_deg", m.peak_phi_deg},
            {"peak_level_db", m.peak_level_db},
            {"hpbw_deg", m.hpbw_deg},
            {"max_sidelobe_db", m.max_sidelobe_db}};
}

// ------------------------------------------------------------------
// gen-dataset

struct GenDatasetArgs {
    std::size_t mx = 4, my = 4;
    double spacing_mm = 62.5;
    double freq_ghz = 2.4;
    double element_exponent = 1.0;
    bool internal_ports = false;
    bool mutual_coupling = false;
    bool full_sphere = false;
    std::string output = "dataset.json";
    std::string out_dir = ".";
};

void run_gen_dataset(const GenDatasetArgs &a) {
    bdris_synthetic_spec spec{};
    spec.m_x = a.mx;
    spec.m_y = a.my;
    spec.spacing_m = a.spacing_mm * 1e-3;
    spec.freq_hz = a.freq_ghz * 1e9;
    spec.element_exponent = a.element_exponent;
    spec.internal_ports = a.internal_ports ? 1 : 0;
    spec.mutual_coupling = a.mutual_coupling ? 1 : 0;
    spec.full_sphere_grid = a.full_sphere ? 1 : 0;

    DatasetHandle ds;
    check(bdris_dataset_generate(&spec, &ds.ptr), "gen-dataset");
    ensure_parent_dir(a.output);
    check(bdris_dataset_save(ds.ptr, a.output.c_str()), "gen-dataset: save");

    bdris_dataset_info info{};
    check(bdris_dataset_info_get(ds.ptr, &info), "gen-dataset: info");
    std::cout << "dataset: " << info.cells << " cells, " << info.internal_ports
              << " internal ports, " << info.freq_hz / 1e9 << " GHz, spacing "
              << info.spacing_m * 1e3 << " mm, grid " << info.grid_theta << "x" << info.grid_phi
              << " -> " << a.output << "\n";

    write_manifest(a.out_dir, "gen-dataset",
                   {{"mx", a.mx},
                    {"my", a.my},
                    {"spacing_mm", a.spacing_mm},
                    {"freq_ghz", a.freq_ghz},
                    {"element_exponent", a.element_exponent},
                    {"internal_ports", a.internal_ports},
                    {"mutual_coupling", a.mutual_coupling},
                    {"full_sphere", a.full_sphere},
                    {"output", a.output}});
}

// ------------------------------------------------------------------
// splitter-sweep

struct SweepArgs {
    double c_start_pf = 0.35, c_stop_pf = 3.2;
    std::size_t c_steps = 286;
    double freq_ghz = 2.4;
    double freq_stop_ghz = 0.0;  // 0: single frequency
    std::size_t f_steps = 1;
    std::string output = "splitter_sweep.csv";
    std::string out_dir = ".";
};

void run_splitter_sweep(const SweepArgs &a) {
    if (a.c_steps < 1 || (a.c_stop_pf < a.c_start_pf))
        fail(exit_usage, "splitter-sweep: empty capacitance range");
    const double f0 = a.freq_ghz * 1e9;
    const double f1 = a.freq_stop_ghz > 0.0 ? a.freq_stop_ghz * 1e9 : f0;
    ensure_parent_dir(a.output);
    check(bdris_splitter_sweep_csv(a.output.c_str(), a.c_start_pf, a.c_stop_pf, a.c_steps, f0, f1,
                                   a.f_steps),
          "splitter-sweep");
    std::cout << "sweep: " << a.c_steps << " capacitance points x " << a.f_steps
              << " frequencies -> " << a.output << "\n";
    write_manifest(a.out_dir, "splitter-sweep",
                   {{"c_start_pf", a.c_start_pf},
                    {"c_stop_pf", a.c_stop_pf},
                    {"c_steps", a.c_steps},
                    {"freq_ghz", a.freq_ghz},
                    {"freq_stop_ghz", a.freq_stop_ghz},
                    {"f_steps", a.f_steps},
                    {"output", a.output}});
}

// ------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string dataset;
    std::string config;
    double theta_inc = 0.0, phi_inc = 0.0;
    double amplitude = 1.0;
    bool structural_subtract = false;
    std::string out_dir = "sim_out";
};

void run_simulate(const SimulateArgs &a) {
    DatasetHandle ds;
    check(bdris_dataset_load(a.dataset.c_str(), &ds.ptr), "simulate: dataset");
    ConfigHandle cfg;
    check(bdris_config_load(a.config.c_str(), &cfg.ptr), "simulate: config");

    ResultHandle res;
    check(bdris_simulate(ds.ptr, cfg.ptr, a.theta_inc, a.phi_inc, a.amplitude, &res.ptr),
          "simulate");

    std::filesystem::create_directories(a.out_dir);
    check(bdris_result_write_pattern_csv(res.ptr, BDRIS_FIELD_REFLECTED,
                                         (a.out_dir + "/reflected.csv").c_str()),
          "simulate: reflected pattern");
    check(bdris_result_write_pattern_csv(res.ptr, BDRIS_FIELD_TRANSMITTED,
                                         (a.out_dir + "/transmitted.csv").c_str()),
          "simulate: transmitted pattern");

    nlohmann::json metrics;
    bdris_beam_metrics m{};
    if (bdris_result_metrics(res.ptr, BDRIS_FIELD_REFLECTED, &m) == BDRIS_OK) {
        print_metrics("reflected", m);
        metrics["reflected"] = metrics_json(m);
    }
    if (bdris_result_metrics(res.ptr, BDRIS_FIELD_TRANSMITTED, &m) == BDRIS_OK) {
        print_metrics("transmitted", m);
        metrics["transmitted"] = metrics_json(m);
    }

    if (a.structural_subtract) {
        // Measurement emulation: the structural reference for the
        // reflected field is the all-transmission surface, for the
        // transmitted field the all-reflection surface.
        bdris_dataset_info info{};
        check(bdris_dataset_info_get(ds.ptr, &info), "simulate: info");
        for (const bool reflected : {true, false}) {
            ConfigHandle base;
            check(bdris_config_create(info.cells,
                                      reflected ? BDRIS_MODE_TRANSMISSION : BDRIS_MODE_REFLECTION,
                                      &base.ptr),
                  "simulate: baseline config");
            ResultHandle base_res;
            check(bdris_simulate(ds.ptr, base.ptr, a.theta_inc, a.phi_inc, a.amplitude,
                                 &base_res.ptr),
                  "simulate: baseline");
            ResultHandle diff;
            check(bdris_result_subtract(res.ptr, base_res.ptr, &diff.ptr),
                  "simulate: subtraction");
            const std::string name = reflected ? "reflected_subtracted.csv"
                                               : "transmitted_subtracted.csv";
            check(bdris_result_write_pattern_csv(diff.ptr,
                                                 reflected ? BDRIS_FIELD_REFLECTED
                                                           : BDRIS_FIELD_TRANSMITTED,
                                                 (a.out_dir + "/" + name).c_str()),
                  "simulate: subtracted pattern");
        }
    }

    std::ofstream mj(a.out_dir + "/metrics.json");
    if (!mj)
        fail(exit_io, "cannot write metrics.json");
    mj << metrics.dump(2) << '\n';

    write_manifest(a.out_dir, "simulate",
                   {{"dataset", a.dataset},
                    {"config", a.config},
                    {"theta_inc_deg", a.theta_inc},
                    {"phi_inc_deg", a.phi_inc},
                    {"amplitude", a.amplitude},
                    {"structural_subtract", a.structural_subtract}});
}

// ------------------------------------------------------------------
// optimize

struct OptimizeArgs {
    std::string dataset;
    std::string mode = "hybrid";
    double theta_r = 0.0;    // signed cut angle
    double theta_t = 180.0;  // signed cut angle, |theta| in (90, 180]
    std::size_t population = 0, generations = 0;
    double crossover = 0.0, mutation = 0.0;
    std::size_t elitism = 2, tournament = 0;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out_dir = "opt_out";
};

void run_optimize(const OptimizeArgs &a) {
    const bdris_mode mode = parse_mode(a.mode);
    bdris_optimize_spec spec{};
    spec.mode = mode;
    split_signed(a.theta_r, spec.theta_r_deg, spec.phi_r_deg);
    double theta_t_mag = 0.0, phi_t = 90.0;
    split_signed(a.theta_t, theta_t_mag, phi_t);
    spec.theta_t_deg = theta_t_mag;
    spec.phi_t_deg = phi_t;
    if (mode != BDRIS_MODE_TRANSMISSION && !(spec.theta_r_deg >= 0.0 && spec.theta_r_deg < 90.0))
        fail(exit_usage, "optimize: reflection target must satisfy |theta| < 90");
    if (mode != BDRIS_MODE_REFLECTION && !(theta_t_mag > 90.0 && theta_t_mag <= 180.0))
        fail(exit_usage, "optimize: transmission target must satisfy 90 < |theta| <= 180");

    spec.population = a.population;
    spec.generations = a.generations;
    spec.crossover_rate = a.crossover;
    spec.mutation_rate = a.mutation;
    spec.elitism = a.elitism;
    spec.tournament = a.tournament;
    spec.seed = a.seed;
    spec.threads = thread_count(a.threads);

    DatasetHandle ds;
    check(bdris_dataset_load(a.dataset.c_str(), &ds.ptr), "optimize: dataset");

    std::filesystem::create_directories(a.out_dir);
    const std::string report = a.out_dir + "/report.json";
    double fitness = 0.0;
    ConfigHandle best;
    check(bdris_optimize(ds.ptr, &spec, nullptr, 0, &fitness, report.c_str(), &best.ptr),
          "optimize");
    const std::string best_path = a.out_dir + "/best_config.json";
    check(bdris_config_save(best.ptr, best_path.c_str()), "optimize: best config");

    std::cout << "optimize: best fitness " << fitness << " -> " << report << ", " << best_path
              << "\n";
    ResultHandle res;
    check(bdris_simulate(ds.ptr, best.ptr, 0.0, 0.0, 1.0, &res.ptr), "optimize: verify");
    bdris_beam_metrics m{};
    if (mode != BDRIS_MODE_TRANSMISSION &&
        bdris_result_metrics(res.ptr, BDRIS_FIELD_REFLECTED, &m) == BDRIS_OK)
        print_metrics("reflected", m);
    if (mode != BDRIS_MODE_REFLECTION &&
        bdris_result_metrics(res.ptr, BDRIS_FIELD_TRANSMITTED, &m) == BDRIS_OK)
        print_metrics("transmitted", m);

    write_manifest(a.out_dir, "optimize",
                   {{"dataset", a.dataset},
                    {"mode", a.mode},
                    {"theta_r", a.theta_r},
                    {"theta_t", a.theta_t},
                    {"population", spec.population},
                    {"generations", spec.generations},
                    {"crossover", spec.crossover_rate},
                    {"mutation", spec.mutation_rate},
                    {"elitism", spec.elitism},
                    {"tournament", spec.tournament},
                    {"seed", spec.seed},
                    {"threads", spec.threads}});
}

// ------------------------------------------------------------------
// metrics

struct MetricsArgs {
    std::string pattern;
    std::string sector = "reflection";
    std::string output;
};

void run_metrics(const MetricsArgs &a) {
    const bool reflection = a.sector == "reflection";
    if (!reflection && a.sector != "transmission")
        fail(exit_usage, "metrics: sector must be reflection or transmission");

    bdris_beam_metrics m{};
    check(bdris_metrics_from_csv(a.pattern.c_str(),
                                 reflection ? BDRIS_FIELD_REFLECTED : BDRIS_FIELD_TRANSMITTED,
                                 &m),
          "metrics");

    nlohmann::json j = metrics_json(m);
    j["sector"] = a.sector;
    std::cout << j.dump(2) << "\n";
    if (!a.output.empty()) {
        ensure_parent_dir(a.output);
        std::ofstream out(a.output);
        if (!out)
            fail(exit_io, "metrics: cannot write " + a.output);
        out << j.dump(2) << '\n';
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid transmitting/reflecting surface simulation and optimization"};
    app.require_subcommand(1);
    app.set_config("--config-file", "",
                   "TOML file with [subcommand] sections mirroring the flags; "
                   "flags take precedence");

    GenDatasetArgs gen;
    auto *gen_cmd = app.add_subcommand("gen-dataset", "Synthesize an electromagnetic dataset");
    gen_cmd->add_option("--mx", gen.mx, "Cells along x")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--my", gen.my, "Cells along y")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--spacing-mm", gen.spacing_mm, "Cell spacing in millimeters");
    gen_cmd->add_option("--freq-ghz", gen.freq_ghz, "Frequency in GHz");
    gen_cmd->add_option("--element-exponent", gen.element_exponent, "cos^q element exponent");
    gen_cmd->add_flag("--internal-ports", gen.internal_ports,
                      "Model the six switch ports of every antenna");
    gen_cmd->add_flag("--coupling", gen.mutual_coupling,
                      "Pattern-overlap mutual resistance (full-sphere grid)");
    gen_cmd->add_flag("--full-sphere", gen.full_sphere, "Sample the full sphere");
    gen_cmd->add_option("-o,--output", gen.output, "Dataset JSON path");
    gen_cmd->add_option("--out-dir", gen.out_dir, "Manifest directory");

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("splitter-sweep", "Power splitter tuning sweep");
    sweep_cmd->add_option("--c-start-pf", sweep.c_start_pf, "Capacitance start, pF");
    sweep_cmd->add_option("--c-stop-pf", sweep.c_stop_pf, "Capacitance stop, pF");
    sweep_cmd->add_option("--c-steps", sweep.c_steps, "Capacitance steps");
    sweep_cmd->add_option("--freq-ghz", sweep.freq_ghz, "Frequency (or sweep start), GHz");
    sweep_cmd->add_option("--freq-stop-ghz", sweep.freq_stop_ghz, "Frequency sweep stop, GHz");
    sweep_cmd->add_option("--f-steps", sweep.f_steps, "Frequency steps");
    sweep_cmd->add_option("-o,--output", sweep.output, "CSV path");
    sweep_cmd->add_option("--out-dir", sweep.out_dir, "Manifest directory");

    SimulateArgs sim;
    auto *sim_cmd = app.add_subcommand("simulate", "Reflected/transmitted field computation");
    sim_cmd->add_option("--dataset", sim.dataset, "Dataset JSON")->required();
    sim_cmd->add_option("--surface-config", sim.config, "Surface configuration JSON")->required();
    sim_cmd->add_option("--theta-inc", sim.theta_inc, "Incidence theta, deg (< 90)");
    sim_cmd->add_option("--phi-inc", sim.phi_inc, "Incidence phi, deg");
    sim_cmd->add_option("--amplitude", sim.amplitude, "Excitation amplitude");
    sim_cmd->add_flag("--structural-subtract", sim.structural_subtract,
                      "Also write measurement-emulation subtracted patterns");
    sim_cmd->add_option("--out-dir", sim.out_dir, "Output directory");

    OptimizeArgs opt;
    auto *opt_cmd = app.add_subcommand("optimize", "Genetic beamforming search");
    opt_cmd->add_option("--dataset", opt.dataset, "Dataset JSON")->required();
    opt_cmd->add_option("--mode", opt.mode, "reflection|hybrid|transmission");
    opt_cmd->add_option("--theta-r", opt.theta_r, "Signed reflection target, deg");
    opt_cmd->add_option("--theta-t", opt.theta_t, "Signed transmission target, deg");
    opt_cmd->add_option("--population", opt.population, "GA population (default 64)");
    opt_cmd->add_option("--generations", opt.generations, "GA generations (default 200)");
    opt_cmd->add_option("--crossover", opt.crossover, "Crossover rate (default 0.9)");
    opt_cmd->add_option("--mutation", opt.mutation, "Per-gene mutation rate (default 1/(2M))");
    opt_cmd->add_option("--elitism", opt.elitism, "Elite count (default 2)");
    opt_cmd->add_option("--tournament", opt.tournament, "Tournament size (default 3)");
    opt_cmd->add_option("--seed", opt.seed, "Random seed");
    opt_cmd->add_option("--threads", opt.threads, "Worker threads (or BDRIS_THREADS)");
    opt_cmd->add_option("--out-dir", opt.out_dir, "Output directory");

    MetricsArgs met;
    auto *met_cmd = app.add_subcommand("metrics", "Beam metrics of a pattern CSV");
    met_cmd->add_option("--pattern", met.pattern, "Pattern CSV path")->required();
    met_cmd->add_option("--sector", met.sector, "reflection|transmission");
    met_cmd->add_option("-o,--output", met.output, "Metrics JSON path");

    for (CLI::App *sub : {gen_cmd, sweep_cmd, sim_cmd, opt_cmd, met_cmd})
        sub->configurable();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (gen_cmd->parsed())
            run_gen_dataset(gen);
        else if (sweep_cmd->parsed())
            run_splitter_sweep(sweep);
        else if (sim_cmd->parsed())
            run_simulate(sim);
        else if (opt_cmd->parsed())
            run_optimize(opt);
        else if (met_cmd->parsed())
            run_metrics(met);
    } catch (const CliFailure &f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
    return 0;
}
