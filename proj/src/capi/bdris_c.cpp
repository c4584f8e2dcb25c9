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

#include "bdris/bdris.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "core/optimize.hpp"
#include "core/thevenin.hpp"

using namespace bdris;

namespace {

thread_local std::string g_last_error;

bdris_status set_error(ErrorCode code, const char *what) {
    g_last_error = what;
    return static_cast<bdris_status>(static_cast<int>(code));
}

template <typename Fn>
bdris_status wrap(Fn &&fn) {
    try {
        fn();
        return BDRIS_OK;
    } catch (const Error &e) {
        return set_error(e.code(), e.what());
    } catch (const std::exception &e) {
        return set_error(ErrorCode::internal, e.what());
    } catch (...) {
        return set_error(ErrorCode::internal, "unknown failure");
    }
}

splitter::SplitterMode to_mode(bdris_mode mode) {
    switch (mode) {
    case BDRIS_MODE_REFLECTION: return splitter::SplitterMode::reflection;
    case BDRIS_MODE_HYBRID: return splitter::SplitterMode::hybrid;
    case BDRIS_MODE_TRANSMISSION: return splitter::SplitterMode::transmission;
    }
    throw InvalidArgument("unknown splitter mode");
}

void fill_point(const splitter::SplitterState &st, bdris_splitter_point *out, double freq_hz) {
    out->freq_hz = freq_hz;
    out->c_pf = st.c_j0 * 1e12;
    out->re_z = st.z.real();
    out->im_z = st.z.imag();
    out->s11_db = 20.0 * std::log10(std::abs(st.s.s11()));
    out->s21_db = 20.0 * std::log10(std::abs(st.s.s21()));
    out->ratio_db = out->s11_db - out->s21_db;
    out->bias_v = st.c_j0 > 0.0 ? splitter::bias_voltage_estimate(st.c_j0) : 0.0;
}

void require(bool ok, const char *what) {
    if (!ok)
        throw InvalidArgument(what);
}

} // namespace

// One cell of a declarative surface configuration; splitter operating
// points are resolved against the dataset frequency at simulation time.
struct bdris_config {
    struct Cell {
        splitter::SplitterMode mode = splitter::SplitterMode::hybrid;
        double c_pf = 0.0;  // > 0 overrides the mode preset
        std::uint8_t r_state = 0;
        std::uint8_t t_state = 0;
    };
    std::vector<Cell> cells;

    thevenin::SurfaceConfig resolve(double freq_hz) const {
        thevenin::SurfaceConfig cfg;
        for (const Cell &c : cells) {
            cfg.splitters.push_back(c.c_pf > 0.0
                                        ? splitter::state_from_capacitance(c.c_pf * 1e-12, freq_hz)
                                        : splitter::mode_preset(c.mode, freq_hz));
            cfg.r_states.push_back(antenna::phase_state(c.r_state));
            cfg.t_states.push_back(antenna::phase_state(c.t_state));
        }
        return cfg;
    }
};

struct bdris_dataset {
    emdata::EmDataset ds;
};

struct bdris_result {
    thevenin::SolveResult res;
};

extern "C" {

const char *bdris_last_error(void) { return g_last_error.c_str(); }

const char *bdris_version(void) { return "0.1.0"; }

bdris_status bdris_varactor_impedance(double c_pf, double freq_hz, double *re_z, double *im_z) {
    return wrap([&] {
        require(re_z && im_z, "output pointers required");
        splitter::VaractorCircuit vc;
        vc.c_j0 = c_pf * 1e-12;
        const auto z = splitter::varactor_impedance(vc, freq_hz);
        *re_z = z.real();
        *im_z = z.imag();
    });
}

bdris_status bdris_splitter_eval(double c_pf, double freq_hz, bdris_splitter_point *out) {
    return wrap([&] {
        require(out != nullptr, "output pointer required");
        fill_point(splitter::state_from_capacitance(c_pf * 1e-12, freq_hz), out, freq_hz);
    });
}

bdris_status bdris_splitter_mode_preset(bdris_mode mode, double freq_hz,
                                        bdris_splitter_point *out) {
    return wrap([&] {
        require(out != nullptr, "output pointer required");
        fill_point(splitter::mode_preset(to_mode(mode), freq_hz), out, freq_hz);
    });
}

bdris_status bdris_splitter_sweep_csv(const char *path, double c_pf_start, double c_pf_stop,
                                      size_t c_steps, double freq_start_hz, double freq_stop_hz,
                                      size_t f_steps) {
    return wrap([&] {
        require(path != nullptr, "path required");
        require(c_steps >= 1 && f_steps >= 1, "sweep needs at least one point per axis");
        require(c_pf_stop >= c_pf_start && freq_stop_hz >= freq_start_hz,
                "sweep bounds must be ordered");
        std::vector<splitter::SweepPoint> rows;
        for (size_t fi = 0; fi < f_steps; ++fi) {
            const double f = f_steps == 1 ? freq_start_hz
                                          : freq_start_hz + (freq_stop_hz - freq_start_hz) *
                                                                static_cast<double>(fi) /
                                                                static_cast<double>(f_steps - 1);
            for (size_t ci = 0; ci < c_steps; ++ci) {
                const double c = c_steps == 1 ? c_pf_start
                                              : c_pf_start + (c_pf_stop - c_pf_start) *
                                                                 static_cast<double>(ci) /
                                                                 static_cast<double>(c_steps - 1);
                rows.push_back(splitter::evaluate_point(c * 1e-12, f));
            }
        }
        splitter::write_sweep_csv(path, rows);
    });
}

bdris_status bdris_dataset_generate(const bdris_synthetic_spec *spec, bdris_dataset **out) {
    return wrap([&] {
        require(spec && out, "spec and output pointer required");
        emdata::SyntheticSpec s;
        s.m_x = spec->m_x;
        s.m_y = spec->m_y;
        s.spacing_m = spec->spacing_m;
        s.freq_hz = spec->freq_hz;
        s.element_exponent = spec->element_exponent > 0.0 ? spec->element_exponent : 1.0;
        s.tier = spec->internal_ports ? emdata::Tier::internal_ports : emdata::Tier::behavioral;
        s.mutual_coupling = spec->mutual_coupling != 0;
        s.full_sphere_grid = spec->full_sphere_grid != 0;
        *out = new bdris_dataset{emdata::generate_synthetic(s)};
    });
}

bdris_status bdris_dataset_load(const char *path, bdris_dataset **out) {
    return wrap([&] {
        require(path && out, "path and output pointer required");
        *out = new bdris_dataset{emdata::load_dataset(path)};
    });
}

bdris_status bdris_dataset_save(const bdris_dataset *ds, const char *path) {
    return wrap([&] {
        require(ds && path, "dataset and path required");
        emdata::save_dataset(ds->ds, path);
    });
}

bdris_status bdris_dataset_info_get(const bdris_dataset *ds, bdris_dataset_info *out) {
    return wrap([&] {
        require(ds && out, "dataset and output pointer required");
        out->freq_hz = ds->ds.freq_hz;
        out->cells = ds->ds.m;
        out->internal_ports = ds->ds.q;
        out->spacing_m = ds->ds.spacing_m;
        out->has_internal_ports = ds->ds.q > 0 ? 1 : 0;
        out->grid_theta = ds->ds.grid.theta_deg.size();
        out->grid_phi = ds->ds.grid.phi_deg.size();
    });
}

void bdris_dataset_free(bdris_dataset *ds) { delete ds; }

bdris_status bdris_config_create(size_t cells, bdris_mode mode, bdris_config **out) {
    return wrap([&] {
        require(out != nullptr, "output pointer required");
        require(cells >= 1, "at least one cell required");
        auto *cfg = new bdris_config;
        cfg->cells.assign(cells, bdris_config::Cell{to_mode(mode), 0.0, 0, 0});
        *out = cfg;
    });
}

bdris_status bdris_config_set_cell(bdris_config *cfg, size_t cell, uint8_t r_state,
                                   uint8_t t_state) {
    return wrap([&] {
        require(cfg != nullptr, "config required");
        require(cell < cfg->cells.size(), "cell index out of range");
        require(r_state < 4 && t_state < 4, "state codes are 0..3");
        cfg->cells[cell].r_state = r_state;
        cfg->cells[cell].t_state = t_state;
    });
}

bdris_status bdris_config_set_splitter_capacitance(bdris_config *cfg, size_t cell, double c_pf) {
    return wrap([&] {
        require(cfg != nullptr, "config required");
        require(cell < cfg->cells.size(), "cell index out of range");
        require(c_pf > 0.0, "capacitance must be positive");
        cfg->cells[cell].c_pf = c_pf;
    });
}

bdris_status bdris_config_save(const bdris_config *cfg, const char *path) {
    return wrap([&] {
        require(cfg && path, "config and path required");
        nlohmann::json cells = nlohmann::json::array();
        for (const auto &c : cfg->cells) {
            nlohmann::json jc;
            jc["splitter"] = splitter::mode_name(c.mode);
            if (c.c_pf > 0.0)
                jc["c_pf"] = c.c_pf;
            jc["r"] = c.r_state;
            jc["t"] = c.t_state;
            cells.push_back(std::move(jc));
        }
        nlohmann::json j;
        j["cells"] = std::move(cells);
        std::ofstream out(path);
        if (!out)
            throw IoError(std::string("cannot open ") + path);
        out << j.dump(2) << '\n';
        if (!out)
            throw IoError(std::string("write failed for ") + path);
    });
}

bdris_status bdris_config_load(const char *path, bdris_config **out) {
    return wrap([&] {
        require(path && out, "path and output pointer required");
        std::ifstream in(path);
        if (!in)
            throw IoError(std::string("cannot open ") + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception &e) {
            throw SchemaError(std::string("config: invalid JSON: ") + e.what());
        }
        auto *cfg = new bdris_config;
        try {
            for (const auto &jc : j.at("cells")) {
                bdris_config::Cell c;
                const std::string mode = jc.at("splitter").get<std::string>();
                if (mode == "reflection")
                    c.mode = splitter::SplitterMode::reflection;
                else if (mode == "hybrid")
                    c.mode = splitter::SplitterMode::hybrid;
                else if (mode == "transmission")
                    c.mode = splitter::SplitterMode::transmission;
                else
                    throw SchemaError("config: unknown splitter mode " + mode);
                if (jc.contains("c_pf"))
                    c.c_pf = jc.at("c_pf").get<double>();
                c.r_state = jc.at("r").get<std::uint8_t>();
                c.t_state = jc.at("t").get<std::uint8_t>();
                if (c.r_state > 3 || c.t_state > 3)
                    throw SchemaError("config: state codes are 0..3");
                cfg->cells.push_back(c);
            }
            if (cfg->cells.empty())
                throw SchemaError("config: no cells");
        } catch (const nlohmann::json::exception &e) {
            delete cfg;
            throw SchemaError(std::string("config: ") + e.what());
        } catch (...) {
            delete cfg;
            throw;
        }
        *out = cfg;
    });
}

void bdris_config_free(bdris_config *cfg) { delete cfg; }

bdris_status bdris_simulate(const bdris_dataset *ds, const bdris_config *cfg,
                            double theta_inc_deg, double phi_inc_deg, double amplitude,
                            bdris_result **out) {
    return wrap([&] {
        require(ds && cfg && out, "dataset, config and output pointer required");
        require(cfg->cells.size() == ds->ds.m, "config cell count must match the dataset");
        const thevenin::SurfaceConfig resolved = cfg->resolve(ds->ds.freq_hz);
        thevenin::Incidence inc{theta_inc_deg, phi_inc_deg, amplitude};
        *out = new bdris_result{thevenin::simulate(ds->ds, resolved, inc)};
    });
}

bdris_status bdris_result_subtract(const bdris_result *total, const bdris_result *baseline,
                                   bdris_result **out) {
    return wrap([&] {
        require(total && baseline && out, "results and output pointer required");
        auto *r = new bdris_result{total->res};
        try {
            r->res.e_r = pattern::structural_subtract(total->res.e_r, baseline->res.e_r);
            r->res.e_t = pattern::structural_subtract(total->res.e_t, baseline->res.e_t);
        } catch (...) {
            delete r;
            throw;
        }
        *out = r;
    });
}

bdris_status bdris_result_metrics(const bdris_result *res, bdris_field field,
                                  bdris_beam_metrics *out) {
    return wrap([&] {
        require(res && out, "result and output pointer required");
        const bool reflected = field == BDRIS_FIELD_REFLECTED;
        const pattern::BeamMetrics m = pattern::beam_metrics(
            reflected ? res->res.e_r : res->res.e_t,
            reflected ? pattern::Sector::reflection : pattern::Sector::transmission);
        out->peak_theta_deg = m.peak_theta_deg;
        out->peak_phi_deg = m.peak_phi_deg;
        out->peak_level_db = m.peak_level_db;
        out->hpbw_deg = m.hpbw_deg;
        out->max_sidelobe_db = m.max_sidelobe_db;
    });
}

bdris_status bdris_result_write_pattern_csv(const bdris_result *res, bdris_field field,
                                            const char *path) {
    return wrap([&] {
        require(res && path, "result and path required");
        pattern::write_pattern_csv(path, field == BDRIS_FIELD_REFLECTED ? res->res.e_r
                                                                        : res->res.e_t);
    });
}

bdris_status bdris_result_currents(const bdris_result *res, double *re_im, size_t *count) {
    return wrap([&] {
        require(res && count, "result and count pointer required");
        const auto n = static_cast<size_t>(res->res.i_r.size());
        if (re_im) {
            const size_t fill = std::min(n, *count);
            for (size_t i = 0; i < fill; ++i) {
                re_im[2 * i] = res->res.i_r(static_cast<Eigen::Index>(i)).real();
                re_im[2 * i + 1] = res->res.i_r(static_cast<Eigen::Index>(i)).imag();
            }
        }
        *count = n;
    });
}

void bdris_result_free(bdris_result *res) { delete res; }

bdris_status bdris_metrics_from_csv(const char *path, bdris_field sector,
                                    bdris_beam_metrics *out) {
    return wrap([&] {
        require(path && out, "path and output pointer required");
        const pattern::FieldPattern p = pattern::read_pattern_csv(path);
        const pattern::BeamMetrics m = pattern::beam_metrics(
            p, sector == BDRIS_FIELD_REFLECTED ? pattern::Sector::reflection
                                               : pattern::Sector::transmission);
        out->peak_theta_deg = m.peak_theta_deg;
        out->peak_phi_deg = m.peak_phi_deg;
        out->peak_level_db = m.peak_level_db;
        out->hpbw_deg = m.hpbw_deg;
        out->max_sidelobe_db = m.max_sidelobe_db;
    });
}

} // extern "C"

namespace {

optimize::BeamTarget to_target(const bdris_optimize_spec *spec) {
    optimize::BeamTarget t;
    t.mode = to_mode(spec->mode);
    t.theta_r_deg = spec->theta_r_deg;
    t.phi_r_deg = spec->phi_r_deg;
    t.theta_t_deg = spec->theta_t_deg;
    t.phi_t_deg = spec->phi_t_deg;
    return t;
}

optimize::GaParams to_params(const bdris_optimize_spec *spec) {
    optimize::GaParams p;
    if (spec->population)
        p.population = spec->population;
    if (spec->generations)
        p.generations = spec->generations;
    if (spec->crossover_rate > 0.0)
        p.crossover_rate = spec->crossover_rate;
    if (spec->mutation_rate > 0.0)
        p.mutation_rate = spec->mutation_rate;
    p.elitism = spec->elitism ? spec->elitism : 2;
    if (spec->tournament)
        p.tournament = spec->tournament;
    p.seed = spec->seed;
    if (spec->threads)
        p.threads = spec->threads;
    return p;
}

void copy_genes(const optimize::Chromosome &best, uint8_t *genes_out, size_t capacity) {
    if (!genes_out)
        return;
    if (capacity < best.size())
        throw InvalidArgument("genes_out capacity below 2M");
    std::memcpy(genes_out, best.data(), best.size());
}

} // namespace

extern "C" {

bdris_status bdris_optimize(const bdris_dataset *ds, const bdris_optimize_spec *spec,
                            uint8_t *genes_out, size_t genes_capacity, double *fitness_out,
                            const char *report_path, bdris_config **best_config_out) {
    return wrap([&] {
        require(ds && spec, "dataset and spec required");
        const optimize::BeamTarget target = to_target(spec);
        const optimize::GaParams params = to_params(spec);
        const optimize::OptimizeResult result = optimize::ga_optimize(ds->ds, target, params);

        copy_genes(result.best, genes_out, genes_capacity);
        if (fitness_out)
            *fitness_out = result.best_fitness;
        if (report_path) {
            std::ofstream out(report_path);
            if (!out)
                throw IoError(std::string("cannot open ") + report_path);
            out << optimize::report_json(result, ds->ds, target, params) << '\n';
            if (!out)
                throw IoError(std::string("write failed for ") + report_path);
        }
        if (best_config_out) {
            auto *cfg = new bdris_config;
            const std::size_t m = ds->ds.m;
            cfg->cells.assign(m, bdris_config::Cell{target.mode, 0.0, 0, 0});
            for (std::size_t i = 0; i < m; ++i) {
                cfg->cells[i].r_state = result.best[i];
                cfg->cells[i].t_state = result.best[m + i];
            }
            *best_config_out = cfg;
        }
    });
}

bdris_status bdris_exhaustive(const bdris_dataset *ds, const bdris_optimize_spec *spec,
                              uint8_t *genes_out, size_t genes_capacity, double *fitness_out) {
    return wrap([&] {
        require(ds && spec, "dataset and spec required");
        const optimize::OptimizeResult result =
            optimize::exhaustive_search(ds->ds, to_target(spec));
        copy_genes(result.best, genes_out, genes_capacity);
        if (fitness_out)
            *fitness_out = result.best_fitness;
    });
}

} // extern "C"
