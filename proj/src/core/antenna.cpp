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

#include "core/antenna.hpp"

#include <cmath>
#include <numbers>

namespace bdris::antenna {

namespace {
constexpr Complex j{0.0, 1.0};
constexpr SwitchState ON = SwitchState::on;
constexpr SwitchState OFF = SwitchState::off;
} // namespace

double PhaseState::ideal_phase_rad() const {
    return ideal_phase_deg() * std::numbers::pi / 180.0;
}

Complex PhaseState::phase_factor() const {
    return std::exp(j * ideal_phase_rad());
}

PhaseState phase_state(std::uint8_t code) {
    if (code > 3)
        throw InvalidArgument("phase_state: 2-bit code required (0..3)");
    return PhaseState{code};
}

Complex diode_load(SwitchState state, double f_hz, const SwitchLoad &model) {
    if (!(f_hz > 0.0))
        throw InvalidArgument("diode_load: frequency must be positive");
    const double w = 2.0 * std::numbers::pi * f_hz;
    const Complex series_l = j * w * model.l;
    if (state == SwitchState::on)
        return model.r_on + series_l;
    const Complex zc = 1.0 / (j * w * model.c);
    return model.r_off * zc / (model.r_off + zc) + series_l;
}

std::array<SwitchState, switches_per_antenna> switch_states(PhaseState state) {
    switch (state.code & 3u) {
    case 0: return {ON, OFF, ON, OFF, OFF, OFF};   //   0 deg
    case 1: return {OFF, ON, OFF, OFF, OFF, ON};   //  90 deg
    case 2: return {ON, OFF, OFF, ON, OFF, OFF};   // 180 deg
    default: return {OFF, ON, OFF, OFF, ON, OFF};  // 270 deg
    }
}

std::array<Complex, switches_per_antenna> state_load_vector(PhaseState state, double f_hz,
                                                            const SwitchLoad &model) {
    const auto states = switch_states(state);
    std::array<Complex, switches_per_antenna> loads;
    for (int k = 0; k < switches_per_antenna; ++k)
        loads[static_cast<std::size_t>(k)] = diode_load(states[static_cast<std::size_t>(k)], f_hz, model);
    return loads;
}

Complex conjugate_mismatch(Complex z_load, Complex z_a) {
    const Complex za_conj = std::conj(z_a);
    const Complex den = z_load + za_conj;
    if (std::abs(den) < 1e-9)
        throw DegenerateLoad("conjugate_mismatch: z_load + conj(z_a) vanishes");
    return (z_load - za_conj) / den;
}

pattern::FieldPattern scattered_field(const AntennaScatterModel &model, Complex z_load) {
    if (!(model.z_a.real() > 0.0))
        throw InvalidArgument("scattered_field: Re(z_a) must be positive");
    if (!(model.e_structural.grid == model.e_unit.grid))
        throw GridMismatch("scattered_field: structural and unit patterns on different grids");

    const Complex gamma = conjugate_mismatch(z_load, model.z_a);
    const Complex scale = gamma * model.z_a * model.i_s / (2.0 * model.z_a.real());

    pattern::FieldPattern out = model.e_structural;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] -= scale * model.e_unit.values[i];
    out.normalized = false;
    return out;
}

} // namespace bdris::antenna
