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

#ifndef BDRIS_CORE_ANTENNA_HPP
#define BDRIS_CORE_ANTENNA_HPP

#include <array>
#include <cstdint>

#include "core/netalg.hpp"
#include "core/pattern.hpp"

namespace bdris::antenna {

using netalg::Complex;

inline constexpr int switches_per_antenna = 6;

// Two-bit phase state of one reconfigurable antenna. Codes 0..3 map to
// ideal radiated/scattered phases 0, 90, 180, 270 degrees.
struct PhaseState {
    std::uint8_t code = 0;

    double ideal_phase_deg() const { return 90.0 * static_cast<double>(code & 3u); }
    double ideal_phase_rad() const;
    Complex phase_factor() const;  // exp(j * ideal phase)
};

PhaseState phase_state(std::uint8_t code);

enum class SwitchState : std::uint8_t { off = 0, on = 1 };

// Diode switch equivalent loads. On: R_on + jwL. Off: (R_off || 1/jwC) + jwL.
struct SwitchLoad {
    double r_on = 1.5;       // Ohm
    double l = 0.7e-9;       // H
    double r_off = 2.5e3;    // Ohm
    double c = 0.12e-12;     // F
};

Complex diode_load(SwitchState state, double f_hz, const SwitchLoad &model = SwitchLoad{});

// Row of the six-switch drive table for a 2-bit state.
std::array<SwitchState, switches_per_antenna> switch_states(PhaseState state);

// Per-switch load impedances S1..S6 for a state at frequency f.
std::array<Complex, switches_per_antenna> state_load_vector(PhaseState state, double f_hz,
                                                            const SwitchLoad &model = SwitchLoad{});

// Single-antenna scattering decomposition: structural part plus a
// load-dependent remainder driven by the short-circuit induced current.
struct AntennaScatterModel {
    Complex z_a{50.0, 0.0};            // antenna input impedance, Re > 0
    Complex i_s{1.0, 0.0};             // short-circuit induced current, A
    pattern::FieldPattern e_structural; // scattering under conjugate match
    pattern::FieldPattern e_unit;       // radiation under unit port current
};

// Conjugate-match mismatch coefficient (zero at z_load = conj(z_a)).
Complex conjugate_mismatch(Complex z_load, Complex z_a);

// Scattered pattern for a given termination, evaluated pointwise on the
// model's grid. Throws DegenerateLoad when z_load + conj(z_a) vanishes.
pattern::FieldPattern scattered_field(const AntennaScatterModel &model, Complex z_load);

} // namespace bdris::antenna

#endif
