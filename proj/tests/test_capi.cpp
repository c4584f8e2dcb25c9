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
// Smoke suite over the shared-library C surface: every exported entry
// point is exercised through the public header only.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "bdris/bdris.h"

static int failures = 0;

#define CHECK(cond)                                                                              \
    do {                                                                                         \
        if (!(cond)) {                                                                           \
            std::fprintf(stderr, "FAIL %s:%d: %s (last error: %s)\n", __FILE__, __LINE__, #cond, \
                         bdris_last_error());                                                    \
            ++failures;                                                                          \
        }                                                                                        \
    } while (0)

int main() {
    CHECK(std::strcmp(bdris_version(), "") != 0);

    // Splitter scalar surface.
    double re = 0.0, im = 0.0;
    CHECK(bdris_varactor_impedance(3.2, 2.4e9, &re, &im) == BDRIS_OK);
    CHECK(std::abs(std::hypot(re, im) - 12.64) < 0.2);

    bdris_splitter_point pt{};
    CHECK(bdris_splitter_eval(3.2, 2.4e9, &pt) == BDRIS_OK);
    CHECK(std::abs(pt.ratio_db + 18.0) < 0.2);
    CHECK(bdris_splitter_mode_preset(BDRIS_MODE_HYBRID, 2.4e9, &pt) == BDRIS_OK);
    CHECK(std::abs(pt.ratio_db) < 0.05);
    CHECK(bdris_splitter_mode_preset(BDRIS_MODE_REFLECTION, 2.4e9, &pt) == BDRIS_OK);
    CHECK(pt.ratio_db >= 19.9);
    CHECK(pt.bias_v < 0.0);

    // Error path: invalid capacitance reports through the status/message
    // channel.
    CHECK(bdris_splitter_eval(-1.0, 2.4e9, &pt) == BDRIS_E_INVALID_ARGUMENT);
    CHECK(std::strlen(bdris_last_error()) > 0);

    const char *sweep_path = "capi_sweep.csv";
    CHECK(bdris_splitter_sweep_csv(sweep_path, 0.35, 3.2, 64, 2.4e9, 2.4e9, 1) == BDRIS_OK);
    std::remove(sweep_path);

    // Dataset lifecycle.
    bdris_synthetic_spec spec{};
    spec.m_x = 2;
    spec.m_y = 2;
    spec.spacing_m = 0.0625;
    spec.freq_hz = 2.4e9;
    bdris_dataset *ds = nullptr;
    CHECK(bdris_dataset_generate(&spec, &ds) == BDRIS_OK);

    bdris_dataset_info info{};
    CHECK(bdris_dataset_info_get(ds, &info) == BDRIS_OK);
    CHECK(info.cells == 4);
    CHECK(info.internal_ports == 0);

    const char *ds_path = "capi_dataset.json";
    CHECK(bdris_dataset_save(ds, ds_path) == BDRIS_OK);
    bdris_dataset *ds2 = nullptr;
    CHECK(bdris_dataset_load(ds_path, &ds2) == BDRIS_OK);
    bdris_dataset_free(ds2);
    std::remove(ds_path);
    CHECK(bdris_dataset_load("missing_dataset.json", &ds2) == BDRIS_E_IO);

    // Configuration lifecycle.
    bdris_config *cfg = nullptr;
    CHECK(bdris_config_create(4, BDRIS_MODE_HYBRID, &cfg) == BDRIS_OK);
    CHECK(bdris_config_set_cell(cfg, 0, 1, 2) == BDRIS_OK);
    CHECK(bdris_config_set_cell(cfg, 9, 0, 0) == BDRIS_E_INVALID_ARGUMENT);
    CHECK(bdris_config_set_splitter_capacitance(cfg, 1, 1.4) == BDRIS_OK);
    const char *cfg_path = "capi_config.json";
    CHECK(bdris_config_save(cfg, cfg_path) == BDRIS_OK);
    bdris_config *cfg2 = nullptr;
    CHECK(bdris_config_load(cfg_path, &cfg2) == BDRIS_OK);
    std::remove(cfg_path);

    // Simulation and derived outputs.
    bdris_result *res = nullptr;
    CHECK(bdris_simulate(ds, cfg2, 0.0, 0.0, 1.0, &res) == BDRIS_OK);
    bdris_beam_metrics bm{};
    CHECK(bdris_result_metrics(res, BDRIS_FIELD_TRANSMITTED, &bm) == BDRIS_OK);
    CHECK(bm.peak_theta_deg > 90.0);
    const char *csv_path = "capi_pattern.csv";
    CHECK(bdris_result_write_pattern_csv(res, BDRIS_FIELD_REFLECTED, csv_path) == BDRIS_OK);
    bdris_beam_metrics from_csv{};
    CHECK(bdris_metrics_from_csv(csv_path, BDRIS_FIELD_REFLECTED, &from_csv) == BDRIS_OK);
    bdris_beam_metrics direct{};
    CHECK(bdris_result_metrics(res, BDRIS_FIELD_REFLECTED, &direct) == BDRIS_OK);
    CHECK(std::abs(from_csv.peak_theta_deg - direct.peak_theta_deg) < 1e-9);
    std::remove(csv_path);

    size_t count = 0;
    CHECK(bdris_result_currents(res, nullptr, &count) == BDRIS_OK);
    CHECK(count == 4);
    double buf[8] = {0};
    count = 4;
    CHECK(bdris_result_currents(res, buf, &count) == BDRIS_OK);
    CHECK(std::hypot(buf[0], buf[1]) > 0.0);

    // Subtraction identity: subtracting a run from itself nulls the field.
    bdris_result *diff = nullptr;
    CHECK(bdris_result_subtract(res, res, &diff) == BDRIS_OK);
    bdris_beam_metrics bm_zero{};
    CHECK(bdris_result_metrics(diff, BDRIS_FIELD_REFLECTED, &bm_zero) == BDRIS_E_NO_BEAM);
    bdris_result_free(diff);

    // Wrong-side incidence propagates the typed error.
    bdris_result *bad = nullptr;
    CHECK(bdris_simulate(ds, cfg2, 135.0, 0.0, 1.0, &bad) == BDRIS_E_WRONG_SIDE);

    // Optimization round trip (tiny budget to stay fast).
    bdris_optimize_spec ospec{};
    ospec.mode = BDRIS_MODE_HYBRID;
    ospec.theta_r_deg = 15.0;
    ospec.phi_r_deg = 90.0;
    ospec.theta_t_deg = 165.0;
    ospec.phi_t_deg = 90.0;
    ospec.population = 16;
    ospec.generations = 12;
    ospec.seed = 5;
    uint8_t genes[8] = {0};
    double fitness = 0.0;
    bdris_config *best = nullptr;
    const char *report_path = "capi_report.json";
    CHECK(bdris_optimize(ds, &ospec, genes, sizeof genes, &fitness, report_path, &best) ==
          BDRIS_OK);
    CHECK(fitness < 0.0);
    std::remove(report_path);

    double ex_fitness = 0.0;
    CHECK(bdris_exhaustive(ds, &ospec, nullptr, 0, &ex_fitness) == BDRIS_OK);
    CHECK(ex_fitness <= fitness + 1e-12);

    bdris_config_free(best);
    bdris_result_free(res);
    bdris_config_free(cfg2);
    bdris_config_free(cfg);
    bdris_dataset_free(ds);

    if (failures == 0)
        std::printf("capi_tests: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
