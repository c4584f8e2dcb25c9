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

#include "core/cell.hpp"

#include <cmath>

namespace bdris::cell {

namespace {

constexpr Complex j{0.0, 1.0};
constexpr double two_pi = 2.0 * std::numbers::pi;

bool quantized(double theta) {
    for (double q : quantized_phases)
        if (std::abs(theta - q) < 1e-12)
            return true;
    return false;
}

double wrap_2pi(double x) {
    double y = std::fmod(x, two_pi);
    if (y < 0.0)
        y += two_pi;
    // Collapse values a rounding error below 2 pi onto 0.
    if (two_pi - y < 1e-9)
        y = 0.0;
    return y;
}

} // namespace

CellConfig make_cell(const splitter::SplitterState &splitter, int theta1_code, int theta2_code) {
    if (theta1_code < 0 || theta1_code > 3 || theta2_code < 0 || theta2_code > 3)
        throw InvalidArgument("make_cell: shifter codes must be 0..3");
    CellConfig cfg;
    cfg.splitter = splitter;
    cfg.theta1 = quantized_phases[theta1_code];
    cfg.theta2 = quantized_phases[theta2_code];
    return cfg;
}

splitter::SplitterState ideal_splitter(double mag_r, double mag_t, double c1_rad, double c2_rad) {
    if (mag_r < 0.0 || mag_t < 0.0 || mag_r * mag_r + mag_t * mag_t > 1.0 + 1e-12)
        throw NonPassive("ideal_splitter: |phi_r|^2 + |phi_t|^2 must not exceed 1");
    splitter::SplitterState st;
    st.mode = splitter::SplitterMode::custom;
    st.s.z0 = netalg::default_z0;
    st.s.s(0, 0) = mag_r * std::exp(j * c1_rad);
    st.s.s(1, 1) = mag_r * std::exp(j * c1_rad);
    st.s.s(0, 1) = mag_t * std::exp(j * c2_rad);
    st.s.s(1, 0) = mag_t * std::exp(j * c2_rad);
    try {
        st.z_params = Eigen::Matrix2cd(netalg::s_to_z(st.s.s, st.s.z0));
    } catch (const SingularConversion &) {
        st.z_params.reset();
    }
    return st;
}

CellScattering cell_total_matrix(const CellConfig &cfg) {
    if (!quantized(cfg.theta1) || !quantized(cfg.theta2))
        throw InvalidArgument("cell_total_matrix: shifter phases must be quantized");
    const auto &s = cfg.splitter.s;
    CellScattering out;
    out.phi_r = s.s11() * std::exp(j * (2.0 * cfg.theta1));
    out.phi_t = s.s21() * std::exp(j * (cfg.theta1 + cfg.theta2));
    out.phi_r_back = s.s22() * std::exp(j * (2.0 * cfg.theta2));
    return out;
}

CellPhases cell_phases(const CellConfig &cfg) {
    const auto &s = cfg.splitter.s;
    if (std::abs(s.s11()) < 1e-12)
        throw PhaseUndefined("cell_phases: |s11| < 1e-12, reflected phase undefined");
    if (std::abs(s.s21()) < 1e-12)
        throw PhaseUndefined("cell_phases: |s21| < 1e-12, transmitted phase undefined");
    CellPhases ph;
    ph.theta_r = wrap_2pi(2.0 * cfg.theta1 + std::arg(s.s11()));
    ph.theta_t = wrap_2pi(cfg.theta1 + cfg.theta2 + std::arg(s.s21()));
    return ph;
}

double power_ratio(const CellConfig &cfg) {
    const auto &s = cfg.splitter.s;
    const double mag_t = std::abs(s.s21());
    if (mag_t == 0.0)
        throw InfiniteRatio("power_ratio: |phi_t| = 0");
    const double r = std::abs(s.s11()) / mag_t;
    return r * r;
}

SurfacePhi assemble_phi(const std::vector<CellScattering> &cells) {
    const std::size_t m = cells.size();
    if (m < 1)
        throw InvalidArgument("assemble_phi: at least one cell required");
    SurfacePhi phi;
    phi.m = m;
    phi.matrix = ComplexMatrix::Zero(2 * static_cast<Eigen::Index>(m),
                                     2 * static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        const auto km = k + static_cast<Eigen::Index>(m);
        phi.matrix(k, k) = cells[i].phi_r;
        phi.matrix(km, km) = cells[i].phi_r_back;
        phi.matrix(k, km) = cells[i].phi_t;
        phi.matrix(km, k) = cells[i].phi_t;
    }
    return phi;
}

} // namespace bdris::cell
