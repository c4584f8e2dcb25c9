/* SPDX-License-Identifier: Apache-2.0
 *
 * bdris - simulation and optimization toolkit for hybrid
 * transmitting/reflecting beyond-diagonal reconfigurable surfaces
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the bdris shared library. All entry points return a
 * bdris_status; every non-OK status leaves a human-readable message
 * retrievable with bdris_last_error(). Handles are opaque and must be
 * released with their matching *_free function; they are safe to share
 * across threads for concurrent reads only.
 */

#ifndef BDRIS_H
#define BDRIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BDRIS_API __declspec(dllexport)
#else
#define BDRIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bdris_status {
    BDRIS_OK = 0,
    BDRIS_E_INVALID_ARGUMENT = 1,
    BDRIS_E_SINGULAR_CONVERSION = 2,
    BDRIS_E_MISMATCHED_REFERENCE = 3,
    BDRIS_E_NON_CASCADABLE = 4,
    BDRIS_E_SINGULAR_SYSTEM = 5,
    BDRIS_E_DEGENERATE_CIRCUIT = 6,
    BDRIS_E_NON_PASSIVE = 7,
    BDRIS_E_INFINITE_RATIO = 8,
    BDRIS_E_UNACHIEVABLE = 9,
    BDRIS_E_PHASE_UNDEFINED = 10,
    BDRIS_E_DEGENERATE_LOAD = 11,
    BDRIS_E_INVALID_LAYOUT = 12,
    BDRIS_E_SCHEMA = 13,
    BDRIS_E_RECIPROCITY = 14,
    BDRIS_E_GRID_MISMATCH = 15,
    BDRIS_E_WRONG_SIDE = 16,
    BDRIS_E_ZERO_PATTERN = 17,
    BDRIS_E_NO_BEAM = 18,
    BDRIS_E_TOO_LARGE = 19,
    BDRIS_E_IO = 20,
    BDRIS_E_INTERNAL = 21
} bdris_status;

/* Message describing the most recent failure on this thread. */
BDRIS_API const char *bdris_last_error(void);

BDRIS_API const char *bdris_version(void);

/* ---------------------------------------------------------------- */
/* Splitter circuit model                                            */

typedef enum bdris_mode {
    BDRIS_MODE_REFLECTION = 0,
    BDRIS_MODE_HYBRID = 1,
    BDRIS_MODE_TRANSMISSION = 2
} bdris_mode;

typedef struct bdris_splitter_point {
    double freq_hz;
    double c_pf;
    double re_z, im_z;
    double s11_db, s21_db;
    double ratio_db;
    double bias_v; /* display-only estimate from the datasheet range */
} bdris_splitter_point;

/* Tunable impedance of the varactor branch at (c_pf, freq). */
BDRIS_API bdris_status bdris_varactor_impedance(double c_pf, double freq_hz, double *re_z,
                                                double *im_z);

/* Full operating point at an explicit capacitance. */
BDRIS_API bdris_status bdris_splitter_eval(double c_pf, double freq_hz,
                                           bdris_splitter_point *out);

/* Operating point of one of the three mode presets. */
BDRIS_API bdris_status bdris_splitter_mode_preset(bdris_mode mode, double freq_hz,
                                                  bdris_splitter_point *out);

/* Capacitance/frequency sweep written as CSV with the header
 * freq_hz,c_pf,re_z,im_z,s11_db,s21_db,ratio_db. */
BDRIS_API bdris_status bdris_splitter_sweep_csv(const char *path, double c_pf_start,
                                                double c_pf_stop, size_t c_steps,
                                                double freq_start_hz, double freq_stop_hz,
                                                size_t f_steps);

/* ---------------------------------------------------------------- */
/* Datasets                                                          */

typedef struct bdris_dataset bdris_dataset;

typedef struct bdris_dataset_info {
    double freq_hz;
    size_t cells;
    size_t internal_ports;
    double spacing_m;
    int has_internal_ports; /* tier flag */
    size_t grid_theta;
    size_t grid_phi;
} bdris_dataset_info;

typedef struct bdris_synthetic_spec {
    size_t m_x, m_y;
    double spacing_m;
    double freq_hz;
    double element_exponent; /* cos^q element shape; <= 0 selects 1 */
    int internal_ports;      /* 0 behavioral, 1 six switch ports per antenna */
    int mutual_coupling;     /* pattern-overlap resistance matrix */
    int full_sphere_grid;    /* default is the theta x {90,270} cut */
} bdris_synthetic_spec;

BDRIS_API bdris_status bdris_dataset_generate(const bdris_synthetic_spec *spec,
                                              bdris_dataset **out);
BDRIS_API bdris_status bdris_dataset_load(const char *path, bdris_dataset **out);
BDRIS_API bdris_status bdris_dataset_save(const bdris_dataset *ds, const char *path);
BDRIS_API bdris_status bdris_dataset_info_get(const bdris_dataset *ds, bdris_dataset_info *out);
BDRIS_API void bdris_dataset_free(bdris_dataset *ds);

/* ---------------------------------------------------------------- */
/* Surface configurations                                            */

typedef struct bdris_config bdris_config;

/* All cells on one splitter mode with antenna state codes 0. */
BDRIS_API bdris_status bdris_config_create(size_t cells, bdris_mode mode, bdris_config **out);
BDRIS_API bdris_status bdris_config_set_cell(bdris_config *cfg, size_t cell, uint8_t r_state,
                                             uint8_t t_state);
BDRIS_API bdris_status bdris_config_set_splitter_capacitance(bdris_config *cfg, size_t cell,
                                                             double c_pf);
BDRIS_API bdris_status bdris_config_save(const bdris_config *cfg, const char *path);
BDRIS_API bdris_status bdris_config_load(const char *path, bdris_config **out);
BDRIS_API void bdris_config_free(bdris_config *cfg);

/* ---------------------------------------------------------------- */
/* Field simulation                                                  */

typedef struct bdris_result bdris_result;

typedef enum bdris_field {
    BDRIS_FIELD_REFLECTED = 0,
    BDRIS_FIELD_TRANSMITTED = 1
} bdris_field;

typedef struct bdris_beam_metrics {
    double peak_theta_deg;
    double peak_phi_deg;
    double peak_level_db;
    double hpbw_deg;
    double max_sidelobe_db;
} bdris_beam_metrics;

/* Run the field engine at the given plane-wave incidence (degrees,
 * reflecting side: theta < 90). The frequency is the dataset's. */
BDRIS_API bdris_status bdris_simulate(const bdris_dataset *ds, const bdris_config *cfg,
                                      double theta_inc_deg, double phi_inc_deg, double amplitude,
                                      bdris_result **out);

/* Pointwise per-field difference total - baseline in a fresh handle
 * (measurement-emulation subtraction). */
BDRIS_API bdris_status bdris_result_subtract(const bdris_result *total,
                                             const bdris_result *baseline, bdris_result **out);

BDRIS_API bdris_status bdris_result_metrics(const bdris_result *res, bdris_field field,
                                            bdris_beam_metrics *out);
BDRIS_API bdris_status bdris_result_write_pattern_csv(const bdris_result *res, bdris_field field,
                                                      const char *path);
/* Port currents of the reflecting array as interleaved re/im pairs.
 * Fills up to *count complex entries and stores the total available
 * count back into *count. */
BDRIS_API bdris_status bdris_result_currents(const bdris_result *res, double *re_im,
                                             size_t *count);
BDRIS_API void bdris_result_free(bdris_result *res);

/* Beam metrics of a previously exported pattern CSV. The sector picks
 * the hemisphere: reflected (theta < 90) or transmitted (theta > 90). */
BDRIS_API bdris_status bdris_metrics_from_csv(const char *path, bdris_field sector,
                                              bdris_beam_metrics *out);

/* ---------------------------------------------------------------- */
/* Beamforming optimization                                          */

typedef struct bdris_optimize_spec {
    bdris_mode mode;
    double theta_r_deg, phi_r_deg; /* reflection target, theta in [0, 90) */
    double theta_t_deg, phi_t_deg; /* transmission target, theta in (90, 180] */
    size_t population;             /* 0 -> 64 */
    size_t generations;            /* 0 -> 200 */
    double crossover_rate;         /* <= 0 -> 0.9 */
    double mutation_rate;          /* <= 0 -> 1/(2M) */
    size_t elitism;                /* default 2 */
    size_t tournament;             /* 0 -> 3 */
    uint64_t seed;
    size_t threads;                /* 0 -> 1 */
} bdris_optimize_spec;

/* Genetic search. Writes the best gene codes (reflect genes then
 * transmit genes, length 2M) into genes_out when non-NULL, the best
 * objective value into fitness_out, and a JSON report (seed, parameters,
 * per-generation history, achieved metrics) to report_path when
 * non-NULL. best_config_out, when non-NULL, receives a ready-to-simulate
 * configuration. */
BDRIS_API bdris_status bdris_optimize(const bdris_dataset *ds, const bdris_optimize_spec *spec,
                                      uint8_t *genes_out, size_t genes_capacity,
                                      double *fitness_out, const char *report_path,
                                      bdris_config **best_config_out);

/* Enumerated global optimum; rejects spaces above 1e6 configurations. */
BDRIS_API bdris_status bdris_exhaustive(const bdris_dataset *ds, const bdris_optimize_spec *spec,
                                        uint8_t *genes_out, size_t genes_capacity,
                                        double *fitness_out);

#ifdef __cplusplus
}
#endif

#endif /* BDRIS_H */
