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

#ifndef BDRIS_CORE_EMDATA_HPP
#define BDRIS_CORE_EMDATA_HPP

#include <array>
#include <string>
#include <vector>

#include "core/netalg.hpp"
#include "core/pattern.hpp"

namespace bdris::emdata {

using netalg::Complex;
using netalg::ComplexMatrix;
using netalg::ComplexVector;

enum class Tier { behavioral, internal_ports };

// Electromagnetic characterization of the two antenna arrays: impedance
// matrices, open-circuit voltages for a reference incidence, and
// unit-current far-field patterns for every port. Ports are ordered
// antenna ports 1..M first, then the Q internal (switch) ports grouped
// six per antenna.
struct EmDataset {
    double freq_hz = 2.4e9;
    std::size_t m = 0;            // cell count
    std::size_t q = 0;            // internal ports per side (multiple of m, or 0)
    Tier tier = Tier::behavioral;
    double spacing_m = 0.0;
    double element_exponent = 1.0;                 // q of the cos^q element shape
    std::vector<std::array<double, 2>> layout;     // per-cell (x, y), meters

    ComplexMatrix z_r;  // (M+Q)^2, reflecting array
    ComplexMatrix z_t;  // (M+Q)^2, transmitting array

    ComplexVector v_oc;          // length M+Q, reference (broadside) incidence
    ComplexVector voc_coupling;  // per-port receive weight; antenna ports 1

    pattern::AngleGrid grid;
    std::vector<pattern::FieldPattern> e_r_ports;  // M+Q reflecting-side patterns
    std::vector<pattern::FieldPattern> e_t_ports;  // M+Q transmitting-side patterns
    pattern::FieldPattern e_oc;     // all ports open-circuited
    pattern::FieldPattern e_r_str;  // all ports conjugate-matched (structural)

    std::size_t ports() const { return m + q; }
    std::size_t internal_per_antenna() const { return m == 0 ? 0 : q / m; }

    // Full invariant check: shapes, reciprocity, positive-real antenna
    // diagonals, shared grids, finite entries.
    void validate() const;

    // Same data with the two sides swapped; transmit-side patterns are
    // mirrored through the array plane so the swapped dataset describes
    // the surface illuminated from the opposite side.
    EmDataset mirrored() const;
};

struct SyntheticSpec {
    std::size_t m_x = 4;
    std::size_t m_y = 4;
    double spacing_m = 0.0625;
    double freq_hz = 2.4e9;
    double element_exponent = 1.0;
    Tier tier = Tier::behavioral;
    bool mutual_coupling = false;  // set Re(Z) to the pattern Gram matrix
    bool full_sphere_grid = false; // default is the YOZ cut
};

// Stand-in for one-shot solver extraction: an analytic dataset whose
// impedances, excitations and patterns are mutually consistent.
EmDataset generate_synthetic(const SyntheticSpec &spec);

// Open-circuit voltages for a plane wave arriving from (theta, phi) on
// the reflecting side (theta < 90). Internal-port entries follow the
// dataset's per-port coupling weights.
ComplexVector plane_wave_voc(const EmDataset &ds, double theta_inc_deg, double phi_inc_deg,
                             double amplitude);

// JSON schema round trip, full double precision.
void save_dataset(const EmDataset &ds, const std::string &path);
EmDataset load_dataset(const std::string &path);

} // namespace bdris::emdata

#endif
