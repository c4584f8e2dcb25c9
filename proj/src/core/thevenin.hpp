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

#ifndef BDRIS_CORE_THEVENIN_HPP
#define BDRIS_CORE_THEVENIN_HPP

#include <vector>

#include "core/antenna.hpp"
#include "core/cell.hpp"
#include "core/emdata.hpp"
#include "core/splitter.hpp"

namespace bdris::thevenin {

using netalg::Complex;
using netalg::ComplexMatrix;
using netalg::ComplexVector;

// Full surface configuration: one splitter state and two antenna states
// per cell.
struct SurfaceConfig {
    std::vector<splitter::SplitterState> splitters;
    std::vector<antenna::PhaseState> r_states;
    std::vector<antenna::PhaseState> t_states;

    std::size_t cells() const { return splitters.size(); }
    void validate(std::size_t m) const;

    static SurfaceConfig uniform(std::size_t m, const splitter::SplitterState &sp,
                                 std::uint8_t r_code = 0, std::uint8_t t_code = 0);
};

struct Incidence {
    double theta_deg = 0.0;
    double phi_deg = 0.0;
    double amplitude = 1.0;  // open-circuit voltage scale at broadside
};

// Load side of the reflecting array: antenna-port block plus the diagonal
// switch loads.
struct LoadMatrix {
    ComplexMatrix z_ar_l;   // M x M
    ComplexVector z_pr_l;   // Q diagonal entries

    ComplexMatrix block_diagonal() const;
};

struct SolveResult {
    ComplexVector v_oc;    // effective excitation used by the solve (M+Q)
    ComplexVector i_r;     // port currents of the reflecting array (M+Q)
    ComplexVector v_r;     // port voltages (M+Q)
    ComplexVector i_t;     // transmitting antenna-port currents (M)
    pattern::FieldPattern e_r;
    pattern::FieldPattern e_t;
    bool regularized_splitter = false;  // z-parameter fallback engaged
};

// Transmit-array impedance reduced over its loaded internal ports:
// Z_TA = Z_AT - Z_ATPT (Z_PT + Z_PT^L)^-1 Z_PTAT. Q = 0 passes Z_AT through.
ComplexMatrix transmit_array_impedance(const emdata::EmDataset &ds,
                                       const std::vector<antenna::PhaseState> &t_states);

// Antenna-port load presented to the reflecting array by the splitters
// terminated in the transmit array. Diagonal Z_TA reduces per cell in the
// S-domain; coupled Z_TA uses the z-parameter path (with a tiny shunt
// regularization when a splitter has no impedance parameters).
ComplexMatrix reflect_side_load(const emdata::EmDataset &ds,
                                const std::vector<splitter::SplitterState> &splitters,
                                const ComplexMatrix &z_ta, bool *regularized = nullptr);

// i_R = -(Z_R + Z_L)^-1 v_oc and v_R = -Z_L i_R.
void port_currents(const emdata::EmDataset &ds, const LoadMatrix &loads,
                   const ComplexVector &v_oc, ComplexVector &i_r, ComplexVector &v_r);

// Per-cell transmitted antenna-port currents from the reflect-side port
// state, through each splitter's wave relations.
ComplexVector transmitted_currents(const std::vector<splitter::SplitterState> &splitters,
                                   const ComplexVector &v_r, const ComplexVector &i_r);

// Superposed reflected field: port-current radiation plus the
// open-circuit/structural difference term reconstructed from v_oc.
pattern::FieldPattern reflected_field(const emdata::EmDataset &ds, const ComplexVector &i_r,
                                      const ComplexVector &v_oc,
                                      const std::vector<antenna::PhaseState> &r_states);

// Superposed transmitted field; behavioral datasets apply the ideal state
// phases, internal-port datasets reduce the port patterns over the loads.
pattern::FieldPattern transmitted_field(const emdata::EmDataset &ds, const ComplexVector &i_t,
                                        const std::vector<antenna::PhaseState> &t_states);

// Full pipeline: excitation, loads, currents, both fields.
SolveResult simulate(const emdata::EmDataset &ds, const SurfaceConfig &config,
                     const Incidence &incidence);

// Available power of the illuminated reflecting array,
// v_oc^H (Re Z_R)^-1 v_oc / 8. The effective v_oc of a solve result is
// the right argument for energy accounting.
double available_power(const emdata::EmDataset &ds, const ComplexVector &v_oc);

} // namespace bdris::thevenin

#endif
