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

#include "doctest.h"

#include <cmath>
#include <set>

#include "core/antenna.hpp"

using namespace bdris;
using antenna::PhaseState;
using antenna::SwitchState;
using netalg::Complex;

namespace {
constexpr double f_c = 2.4e9;
constexpr SwitchState ON = SwitchState::on;
constexpr SwitchState OFF = SwitchState::off;

pattern::FieldPattern constant_pattern(const pattern::AngleGrid &grid, Complex value) {
    pattern::FieldPattern p = pattern::FieldPattern::zeros(grid, f_c);
    for (auto &v : p.values)
        v = value;
    return p;
}
} // namespace

TEST_CASE("switch drive table") {
    const std::array<SwitchState, 6> row00 = {ON, OFF, ON, OFF, OFF, OFF};
    const std::array<SwitchState, 6> row01 = {OFF, ON, OFF, OFF, OFF, ON};
    const std::array<SwitchState, 6> row10 = {ON, OFF, OFF, ON, OFF, OFF};
    const std::array<SwitchState, 6> row11 = {OFF, ON, OFF, OFF, ON, OFF};
    CHECK(antenna::switch_states(antenna::phase_state(0)) == row00);
    CHECK(antenna::switch_states(antenna::phase_state(1)) == row01);
    CHECK(antenna::switch_states(antenna::phase_state(2)) == row10);
    CHECK(antenna::switch_states(antenna::phase_state(3)) == row11);

    SUBCASE("codes map one-to-one onto the four phases") {
        std::set<double> phases;
        for (std::uint8_t c = 0; c < 4; ++c)
            phases.insert(antenna::phase_state(c).ideal_phase_deg());
        CHECK(phases == std::set<double>{0.0, 90.0, 180.0, 270.0});
    }
    SUBCASE("every state drives exactly two switches on") {
        for (std::uint8_t c = 0; c < 4; ++c) {
            const auto row = antenna::switch_states(antenna::phase_state(c));
            int on_count = 0;
            for (auto s : row)
                on_count += s == ON ? 1 : 0;
            CHECK(on_count == 2);
        }
    }
    SUBCASE("invalid code rejected") {
        CHECK_THROWS_AS(antenna::phase_state(4), InvalidArgument);
    }
}

TEST_CASE("diode loads") {
    SUBCASE("on state at 2.4 GHz") {
        const Complex z = antenna::diode_load(ON, f_c);
        CHECK(z.real() == doctest::Approx(1.5));
        CHECK(z.imag() == doctest::Approx(10.56).epsilon(0.001));
    }
    SUBCASE("off state at 2.4 GHz") {
        const Complex z = antenna::diode_load(OFF, f_c);
        CHECK(z.real() == doctest::Approx(116.0).epsilon(0.01));
        CHECK(z.imag() == doctest::Approx(-516.0).epsilon(0.01));
    }
    SUBCASE("inductor vanishes toward DC") {
        const Complex z = antenna::diode_load(ON, 1.0);
        CHECK(z.real() == doctest::Approx(1.5));
        CHECK(std::abs(z.imag()) < 1e-6);
    }
    SUBCASE("continuous in frequency") {
        const Complex a = antenna::diode_load(OFF, f_c);
        const Complex b = antenna::diode_load(OFF, f_c * (1.0 + 1e-9));
        CHECK(std::abs(a - b) < 1e-3);
    }
}

TEST_CASE("state load vector") {
    const Complex z_on = antenna::diode_load(ON, f_c);
    const Complex z_off = antenna::diode_load(OFF, f_c);

    SUBCASE("state 00") {
        const auto loads = antenna::state_load_vector(antenna::phase_state(0), f_c);
        CHECK(loads[0] == z_on);
        CHECK(loads[1] == z_off);
        CHECK(loads[2] == z_on);
        CHECK(loads[3] == z_off);
        CHECK(loads[4] == z_off);
        CHECK(loads[5] == z_off);
    }
    SUBCASE("state 10") {
        const auto loads = antenna::state_load_vector(antenna::phase_state(2), f_c);
        CHECK(loads[0] == z_on);
        CHECK(loads[3] == z_on);
        CHECK(loads[1] == z_off);
        CHECK(loads[2] == z_off);
    }
    SUBCASE("every entry is one of the two diode loads") {
        for (std::uint8_t c = 0; c < 4; ++c)
            for (const Complex &z : antenna::state_load_vector(antenna::phase_state(c), f_c))
                CHECK((z == z_on || z == z_off));
    }
}

TEST_CASE("scattered field decomposition") {
    pattern::AngleGrid grid;
    grid.theta_deg = {0.0, 30.0, 60.0, 90.0};
    grid.phi_deg = {90.0};

    antenna::AntennaScatterModel model;
    model.z_a = Complex{50.0, 0.0};
    model.i_s = Complex{1.0, 0.0};
    model.e_structural = constant_pattern(grid, Complex{2.0, 0.0});
    model.e_unit = constant_pattern(grid, Complex{1.0, 0.0});

    SUBCASE("conjugate match leaves the structural part") {
        const auto p = antenna::scattered_field(model, Complex{50.0, 0.0});
        for (const auto &v : p.values)
            CHECK(std::abs(v - Complex{2.0, 0.0}) < 1e-14);
    }
    SUBCASE("short and open differ by Z_A I_s E_unit / R_A") {
        const auto p_short = antenna::scattered_field(model, Complex{0.0, 0.0});
        const auto p_open = antenna::scattered_field(model, Complex{1e12, 0.0});
        // gamma(short) = -1, gamma(open) -> +1, difference 2 * scale.
        const Complex expected = model.z_a * model.i_s / (2.0 * model.z_a.real()) * 2.0;
        for (std::size_t i = 0; i < p_short.values.size(); ++i)
            CHECK(std::abs((p_short.values[i] - p_open.values[i]) - expected) < 1e-9);
    }
    SUBCASE("mismatch coefficient properties") {
        CHECK(std::abs(antenna::conjugate_mismatch(std::conj(model.z_a), model.z_a)) < 1e-15);
        for (double re : {0.0, 10.0, 300.0})
            for (double im : {-200.0, 0.0, 75.0}) {
                const Complex gamma = antenna::conjugate_mismatch(Complex{re, im}, Complex{50.0, 0.0});
                CHECK(std::abs(gamma) <= 1.0 + 1e-12);
            }
    }
    SUBCASE("degenerate load rejected") {
        CHECK_THROWS_AS(antenna::conjugate_mismatch(Complex{-50.0, 0.0}, Complex{50.0, 0.0}),
                        DegenerateLoad);
    }
}
