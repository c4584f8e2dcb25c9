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
#include <filesystem>
#include <fstream>
#include <numbers>

#include "core/pattern.hpp"

using namespace bdris;
using pattern::AngleGrid;
using pattern::Complex;
using pattern::FieldPattern;
using pattern::Sector;

namespace {

constexpr double pi = std::numbers::pi;
constexpr Complex j{0.0, 1.0};

// Uniform linear array factor along y at half-wavelength spacing,
// steered to a signed cut angle; isotropic elements.
FieldPattern array_factor_cut(int n_elements, double steer_deg) {
    FieldPattern p = FieldPattern::zeros(AngleGrid::yoz_cut(), 2.4e9);
    const double beta = pi * std::sin(steer_deg * pi / 180.0);
    for (std::size_t it = 0; it < p.grid.theta_deg.size(); ++it)
        for (std::size_t ip = 0; ip < p.grid.phi_deg.size(); ++ip) {
            const double sign = p.grid.phi_deg[ip] < 180.0 ? 1.0 : -1.0;
            const double s = sign * std::sin(p.grid.theta_deg[it] * pi / 180.0);
            Complex acc{0.0, 0.0};
            for (int m = 0; m < n_elements; ++m)
                acc += std::exp(j * (static_cast<double>(m) * (pi * s - beta)));
            if (p.grid.theta_deg[it] <= 90.0)
                p.values[p.grid.index(it, ip)] = acc;
        }
    return p;
}

FieldPattern cos_element_cut() {
    FieldPattern p = FieldPattern::zeros(AngleGrid::yoz_cut(), 2.4e9);
    for (std::size_t it = 0; it < p.grid.theta_deg.size(); ++it) {
        const double c = std::cos(p.grid.theta_deg[it] * pi / 180.0);
        if (c <= 0.0)
            continue;
        for (std::size_t ip = 0; ip < p.grid.phi_deg.size(); ++ip)
            p.values[p.grid.index(it, ip)] = c;
    }
    return p;
}

} // namespace

TEST_CASE("grid validation") {
    CHECK_NOTHROW(AngleGrid::yoz_cut().validate());
    CHECK_NOTHROW(AngleGrid::full_sphere().validate());

    AngleGrid bad;
    bad.theta_deg = {0.0, 2.0, 3.0};  // non-uniform
    bad.phi_deg = {90.0};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);

    AngleGrid reversed;
    reversed.theta_deg = {10.0, 5.0};
    reversed.phi_deg = {90.0};
    CHECK_THROWS_AS(reversed.validate(), InvalidArgument);
}

TEST_CASE("normalize") {
    FieldPattern p = FieldPattern::zeros(AngleGrid::yoz_cut(), 2.4e9);
    SUBCASE("zero pattern rejected") {
        CHECK_THROWS_AS(pattern::normalize(p), ZeroPattern);
    }
    for (std::size_t i = 0; i < p.values.size(); ++i)
        p.values[i] = Complex{0.25, 0.0};
    SUBCASE("constant pattern normalizes to 0 dB everywhere") {
        const FieldPattern n = pattern::normalize(p);
        for (const auto &v : n.values)
            CHECK(std::abs(v - Complex{1.0, 0.0}) < 1e-15);
        CHECK(n.normalized);
    }
    SUBCASE("idempotent and scale invariant") {
        const FieldPattern once = pattern::normalize(p);
        const FieldPattern twice = pattern::normalize(once);
        FieldPattern scaled = p;
        for (auto &v : scaled.values)
            v *= 10.0;
        const FieldPattern from_scaled = pattern::normalize(scaled);
        for (std::size_t i = 0; i < once.values.size(); ++i) {
            CHECK(std::abs(once.values[i] - twice.values[i]) < 1e-15);
            CHECK(std::abs(once.values[i] - from_scaled.values[i]) < 1e-15);
        }
    }
}

TEST_CASE("structural subtraction") {
    FieldPattern total = FieldPattern::zeros(AngleGrid::yoz_cut(), 2.4e9);
    FieldPattern structural = total;
    for (std::size_t i = 0; i < total.values.size(); ++i) {
        total.values[i] = Complex{1.0 + static_cast<double>(i % 7), 0.5};
        structural.values[i] = Complex{0.5, -0.25 * static_cast<double>(i % 3)};
    }
    SUBCASE("identical inputs cancel") {
        const FieldPattern d = pattern::structural_subtract(total, total);
        for (const auto &v : d.values)
            CHECK(std::abs(v) == 0.0);
    }
    SUBCASE("linear and antisymmetric") {
        const FieldPattern d1 = pattern::structural_subtract(total, structural);
        const FieldPattern d2 = pattern::structural_subtract(structural, total);
        for (std::size_t i = 0; i < d1.values.size(); ++i) {
            CHECK(std::abs(d1.values[i] + d2.values[i]) < 1e-15);
            CHECK(std::abs(d1.values[i] - (total.values[i] - structural.values[i])) < 1e-15);
        }
    }
    SUBCASE("grid mismatch rejected") {
        FieldPattern other = FieldPattern::zeros(AngleGrid::full_sphere(2.0, 5.0), 2.4e9);
        CHECK_THROWS_AS(pattern::structural_subtract(total, other), GridMismatch);
    }
}

TEST_CASE("beam metrics") {
    SUBCASE("four-element broadside array") {
        const FieldPattern p = array_factor_cut(4, 0.0);
        const auto m = pattern::beam_metrics(p, Sector::reflection);
        CHECK(m.peak_theta_deg == doctest::Approx(0.0));
        // First sidelobe of the N = 4 uniform array: 1/(4 sin(3 pi / 8)).
        const double expected_sll = 20.0 * std::log10(1.0 / (4.0 * std::sin(3.0 * pi / 8.0)));
        CHECK(m.max_sidelobe_db == doctest::Approx(expected_sll).epsilon(0.02));
    }
    SUBCASE("steered array peaks at the steering angle") {
        const FieldPattern p = array_factor_cut(4, 25.0);
        const auto m = pattern::beam_metrics(p, Sector::reflection);
        CHECK(m.peak_theta_deg == doctest::Approx(25.0).epsilon(0.05));
        CHECK(m.peak_phi_deg == doctest::Approx(90.0));
    }
    SUBCASE("cos element pattern has a 90 degree half-power width") {
        const auto m = pattern::beam_metrics(cos_element_cut(), Sector::reflection);
        CHECK(m.peak_theta_deg == doctest::Approx(0.0));
        CHECK(m.hpbw_deg == doctest::Approx(90.0).epsilon(0.01));
    }
    SUBCASE("empty sector raises NoBeam") {
        const FieldPattern p = cos_element_cut();  // reflection hemisphere only
        CHECK_THROWS_AS(pattern::beam_metrics(p, Sector::transmission), NoBeam);
    }
    SUBCASE("peak direction survives normalization and rotation") {
        FieldPattern p = array_factor_cut(4, -20.0);
        const auto base = pattern::beam_metrics(p, Sector::reflection);
        FieldPattern rotated = p;
        for (auto &v : rotated.values)
            v *= std::exp(j * 1.23);
        const auto after = pattern::beam_metrics(pattern::normalize(rotated), Sector::reflection);
        CHECK(after.peak_theta_deg == base.peak_theta_deg);
        CHECK(after.peak_phi_deg == base.peak_phi_deg);
        CHECK(after.hpbw_deg == doctest::Approx(base.hpbw_deg));
    }
    SUBCASE("negative-side peaks map to phi 270") {
        const FieldPattern p = array_factor_cut(4, -25.0);
        const auto m = pattern::beam_metrics(p, Sector::reflection);
        CHECK(m.peak_theta_deg == doctest::Approx(25.0).epsilon(0.05));
        CHECK(m.peak_phi_deg == doctest::Approx(270.0));
    }
}

TEST_CASE("radiated power quadrature") {
    // Isotropic unit pattern over the full sphere integrates to
    // 4 pi / (2 eta0).
    FieldPattern p = FieldPattern::zeros(AngleGrid::full_sphere(1.0, 5.0), 2.4e9);
    for (auto &v : p.values)
        v = 1.0;
    const double total = pattern::radiated_power(p, Sector::reflection) +
                         pattern::radiated_power(p, Sector::transmission);
    // The theta = 90 ring is shared by both sectors but carries zero
    // measure error at this resolution.
    CHECK(total == doctest::Approx(4.0 * pi / (2.0 * pattern::eta0)).epsilon(5e-4));
}

TEST_CASE("pattern csv export") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "bdris_pattern_test.csv";
    const FieldPattern p = array_factor_cut(4, 10.0);
    pattern::write_pattern_csv(path.string(), p);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "theta_deg,phi_deg,re,im,mag_db");
    std::size_t rows = 0;
    double min_db = 0.0;
    for (std::string line; std::getline(in, line);) {
        if (line.empty())
            continue;
        ++rows;
        const auto last_comma = line.rfind(',');
        min_db = std::min(min_db, std::stod(line.substr(last_comma + 1)));
    }
    CHECK(rows == p.grid.size());
    CHECK(min_db >= pattern::db_floor - 1e-9);  // clamp engaged

    SUBCASE("csv round trips through the reader") {
        const FieldPattern back = pattern::read_pattern_csv(path.string());
        REQUIRE(back.grid == p.grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < p.values.size(); ++i)
            worst = std::max(worst, std::abs(back.values[i] - p.values[i]));
        CHECK(worst < 1e-9);
        const auto m1 = pattern::beam_metrics(p, Sector::reflection);
        const auto m2 = pattern::beam_metrics(back, Sector::reflection);
        CHECK(m1.peak_theta_deg == m2.peak_theta_deg);
        CHECK(m1.hpbw_deg == doctest::Approx(m2.hpbw_deg));
    }
    fs::remove(path);
}
