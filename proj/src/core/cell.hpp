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

#ifndef BDRIS_CORE_CELL_HPP
#define BDRIS_CORE_CELL_HPP

#include <numbers>
#include <vector>

#include "core/splitter.hpp"

namespace bdris::cell {

using netalg::Complex;
using netalg::ComplexMatrix;

// The four quantized shifter phases, radians.
inline constexpr double quantized_phases[4] = {0.0, std::numbers::pi / 2.0, std::numbers::pi,
                                               3.0 * std::numbers::pi / 2.0};

// One cell: a mode splitter between two quantized phase shifters.
// theta1 acts on the reflecting side, theta2 on the transmitting side.
struct CellConfig {
    splitter::SplitterState splitter;
    double theta1 = 0.0;  // rad, one of {0, pi/2, pi, 3pi/2}
    double theta2 = 0.0;
};

CellConfig make_cell(const splitter::SplitterState &splitter, int theta1_code, int theta2_code);

// Abstract splitter for circuit-free studies: magnitudes and phase
// constants of the reflect/transmit paths given directly.
splitter::SplitterState ideal_splitter(double mag_r, double mag_t, double c1_rad, double c2_rad);

// Reflection/transmission coefficients of the cascaded cell.
struct CellScattering {
    Complex phi_r;       // reflection seen from the reflecting side
    Complex phi_t;       // transmission between the two sides
    Complex phi_r_back;  // reflection seen from the transmitting side
};

// Cascaded cell coefficients: phi_r = s11 e^{j 2 theta1},
// phi_t = s21 e^{j(theta1 + theta2)}, phi_r_back = s22 e^{j 2 theta2}.
CellScattering cell_total_matrix(const CellConfig &cfg);

// Reflected/transmitted phase shifts of the cell, both in [0, 2 pi).
// PhaseUndefined when the corresponding magnitude is below 1e-12.
struct CellPhases {
    double theta_r;
    double theta_t;
};
CellPhases cell_phases(const CellConfig &cfg);

// |phi_r / phi_t|^2, independent of the shifter settings.
double power_ratio(const CellConfig &cfg);

// 2M x 2M surface scattering matrix: cell coefficients on the diagonal
// and the +/-M off-diagonals, zero elsewhere.
struct SurfacePhi {
    std::size_t m = 0;
    ComplexMatrix matrix;
};
SurfacePhi assemble_phi(const std::vector<CellScattering> &cells);

} // namespace bdris::cell

#endif
