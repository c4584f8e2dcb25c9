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

#ifndef BDRIS_CORE_SPLITTER_HPP
#define BDRIS_CORE_SPLITTER_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/netalg.hpp"

namespace bdris::splitter {

using netalg::Complex;
using netalg::TwoPortNetwork;

// Varactor-plus-bias-inductor tuning element. Defaults are the SMV2020
// package parasitics with the 3.9 nH bias inductor.
struct VaractorCircuit {
    double c_j0 = 3.2e-12;  // junction capacitance, F
    double l_s = 0.7e-9;    // series parasitic inductance, H
    double r_s = 2.5;       // series parasitic resistance, Ohm
    double l_c = 3.9e-9;    // parallel bias inductance, H
};

inline constexpr double c_j0_min = 0.35e-12;
inline constexpr double c_j0_max = 3.2e-12;

enum class SplitterMode { reflection, hybrid, transmission, custom };

// Fully resolved splitter operating point: tuning impedance, two-port
// scattering matrix, and (when the conversion is non-singular) the
// impedance parameters used by the field engine's z-domain path.
struct SplitterState {
    SplitterMode mode = SplitterMode::custom;
    double c_j0 = 0.0;                       // F; 0 when built from a raw impedance
    Complex z{0.0, 0.0};                     // series tuning impedance, Ohm
    TwoPortNetwork s;                        // scattering matrix at z0
    std::optional<Eigen::Matrix2cd> z_params; // lazy; empty when (I-S) is singular
};

// Tunable impedance of the varactor branch in parallel with the bias
// inductor. Throws DegenerateCircuit at an exact lossless resonance.
Complex varactor_impedance(const VaractorCircuit &circuit, double f_hz);

// Two-port of a series impedance embedded between matched lines:
// S = [[Z, 2Z0], [2Z0, Z]] / (Z + 2Z0). Requires Re(Z) >= 0.
TwoPortNetwork series_impedance_network(Complex z, double z0 = netalg::default_z0);

// 20*log10(|s11| / |s21|); InfiniteRatio when |s21| = 0.
double power_ratio_db(const SplitterState &state);

// Build a state from an explicit series impedance (mode tag optional).
SplitterState state_from_impedance(Complex z, double z0 = netalg::default_z0,
                                   SplitterMode mode = SplitterMode::custom);

// Build a state from a capacitance value through the varactor model.
SplitterState state_from_capacitance(double c_j0, double f_hz,
                                     const VaractorCircuit &tmpl = VaractorCircuit{},
                                     SplitterMode mode = SplitterMode::custom);

// Capacitance values that hit a target reflect/transmit ratio. The
// forward ratio has one maximum at the bias-network resonance, so up to
// two roots exist; they are returned in increasing capacitance order.
// Throws Unachievable with the attainable span when out of range.
std::vector<double> solve_capacitance(double target_ratio_db, double f_hz,
                                      const VaractorCircuit &tmpl = VaractorCircuit{});

// Resolve one of the three operating modes at a given frequency.
// Transmission pins the maximum capacitance; reflection and hybrid are
// solved for +20 dB and 0 dB ratios on the upper-capacitance branch,
// matching the monotone capacitance-vs-bias ordering of the three modes.
SplitterState mode_preset(SplitterMode mode, double f_hz,
                          const VaractorCircuit &tmpl = VaractorCircuit{});

// Display-only bias estimate: piecewise-linear in log-capacitance with
// endpoints pinned to the datasheet range (0.35 pF at -20 V, 3.2 pF at 0 V).
double bias_voltage_estimate(double c_j0);

// One row of the sweep export.
struct SweepPoint {
    double freq_hz;
    double c_pf;
    double re_z;
    double im_z;
    double s11_db;
    double s21_db;
    double ratio_db;
};

SweepPoint evaluate_point(double c_j0, double f_hz,
                          const VaractorCircuit &tmpl = VaractorCircuit{});

// CSV with header freq_hz,c_pf,re_z,im_z,s11_db,s21_db,ratio_db.
void write_sweep_csv(const std::string &path, const std::vector<SweepPoint> &rows);

const char *mode_name(SplitterMode mode);

} // namespace bdris::splitter

#endif
