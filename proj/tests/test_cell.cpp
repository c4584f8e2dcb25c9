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
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "core/cell.hpp"
#include "core/netalg.hpp"

using namespace bdris;
using netalg::Complex;

namespace {

constexpr Complex j{0.0, 1.0};
constexpr double pi = std::numbers::pi;
constexpr double f_c = 2.4e9;

splitter::SplitterState hybrid_ideal() {
    return splitter::state_from_impedance(Complex{0.0, 100.0});
}

// Distance between two angles on the circle.
double circ_dist(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * pi);
    return std::min(d, 2.0 * pi - d);
}

double wrap(double x) {
    double y = std::fmod(x, 2.0 * pi);
    if (y < 0.0)
        y += 2.0 * pi;
    return y;
}

// Key for counting distinct phases with a tolerance.
long phase_bucket(double rad) {
    return std::lround(wrap(rad) / (2.0 * pi) * 720.0) % 720;
}

} // namespace

TEST_CASE("cell total matrix") {
    SUBCASE("zero shifters reproduce the splitter") {
        const auto cfg = cell::make_cell(hybrid_ideal(), 0, 0);
        const auto cs = cell::cell_total_matrix(cfg);
        CHECK(std::abs(cs.phi_r - cfg.splitter.s.s11()) < 1e-15);
        CHECK(std::abs(cs.phi_t - cfg.splitter.s.s21()) < 1e-15);
    }
    SUBCASE("hybrid with theta1 = pi/2") {
        const auto cfg = cell::make_cell(hybrid_ideal(), 1, 0);
        const auto cs = cell::cell_total_matrix(cfg);
        // |s11| = 1/sqrt2 at 45 deg; theta_r = 180 + 45 deg.
        const Complex expected = (1.0 / std::numbers::sqrt2) * std::exp(j * (pi + pi / 4.0));
        CHECK(std::abs(cs.phi_r - expected) < 1e-12);
    }
    SUBCASE("transmission reciprocity") {
        for (int t1 = 0; t1 < 4; ++t1)
            for (int t2 = 0; t2 < 4; ++t2) {
                const auto cfg = cell::make_cell(hybrid_ideal(), t1, t2);
                const auto &s = cfg.splitter.s;
                const Complex fwd = s.s21() * std::exp(j * (cfg.theta1 + cfg.theta2));
                const Complex rev = s.s12() * std::exp(j * (cfg.theta2 + cfg.theta1));
                CHECK(std::abs(fwd - rev) < 1e-15);
                CHECK(std::abs(cell::cell_total_matrix(cfg).phi_t - fwd) < 1e-15);
            }
    }
    SUBCASE("matches the explicit transfer-domain cascade") {
        const auto sp = splitter::state_from_capacitance(1.4e-12, f_c);
        for (int t1 = 0; t1 < 4; ++t1)
            for (int t2 = 0; t2 < 4; ++t2) {
                const auto cfg = cell::make_cell(sp, t1, t2);
                const auto cs = cell::cell_total_matrix(cfg);
                netalg::TwoPortNetwork ps1, ps2;
                ps1.s.setZero();
                ps1.s(0, 1) = ps1.s(1, 0) = std::exp(j * cfg.theta1);
                ps2.s.setZero();
                ps2.s(0, 1) = ps2.s(1, 0) = std::exp(j * cfg.theta2);
                const auto total = netalg::cascade(ps1, netalg::cascade(sp.s, ps2));
                CHECK(std::abs(total.s(0, 0) - cs.phi_r) < 1e-10);
                CHECK(std::abs(total.s(1, 0) - cs.phi_t) < 1e-10);
                CHECK(std::abs(total.s(1, 1) - cs.phi_r_back) < 1e-10);
            }
    }
}

TEST_CASE("cell phases") {
    const auto sp = hybrid_ideal();
    const double c1 = std::arg(sp.s.s11());
    const double c2 = std::arg(sp.s.s21());

    SUBCASE("agrees with the total matrix arguments") {
        for (int t1 = 0; t1 < 4; ++t1)
            for (int t2 = 0; t2 < 4; ++t2) {
                const auto cfg = cell::make_cell(sp, t1, t2);
                const auto ph = cell::cell_phases(cfg);
                const auto cs = cell::cell_total_matrix(cfg);
                CHECK(circ_dist(ph.theta_r, std::arg(cs.phi_r)) < 1e-10);
                CHECK(circ_dist(ph.theta_t, std::arg(cs.phi_t)) < 1e-10);
            }
    }
    SUBCASE("reflection phase collapses to one bit") {
        std::set<long> seen;
        for (int t1 = 0; t1 < 4; ++t1) {
            const auto ph = cell::cell_phases(cell::make_cell(sp, t1, 0));
            seen.insert(phase_bucket(ph.theta_r - c1));
        }
        CHECK(seen.size() == 2);
        CHECK(seen == std::set<long>{phase_bucket(0.0), phase_bucket(pi)});
    }
    SUBCASE("transmission phase keeps two bits, four times each") {
        std::map<long, int> counts;
        for (int t1 = 0; t1 < 4; ++t1)
            for (int t2 = 0; t2 < 4; ++t2) {
                const auto ph = cell::cell_phases(cell::make_cell(sp, t1, t2));
                counts[phase_bucket(ph.theta_t - c2)]++;
            }
        CHECK(counts.size() == 4);
        for (const auto &[bucket, count] : counts)
            CHECK(count == 4);
    }
    SUBCASE("arithmetic example: theta1 = pi/2 with c1 = 45 deg") {
        const auto ph = cell::cell_phases(cell::make_cell(sp, 1, 0));
        CHECK(ph.theta_r == doctest::Approx(225.0 * pi / 180.0));
    }
    SUBCASE("phase undefined without a path") {
        const auto blocked = cell::ideal_splitter(1.0, 0.0, 0.3, 0.0);
        CHECK_THROWS_AS(cell::cell_phases(cell::make_cell(blocked, 0, 0)), PhaseUndefined);
    }
}

TEST_CASE("cell power ratio") {
    SUBCASE("hybrid is unity") {
        CHECK(cell::power_ratio(cell::make_cell(hybrid_ideal(), 2, 1)) == doctest::Approx(1.0));
    }
    SUBCASE("transmission preset stays under -20 dB") {
        const auto sp = splitter::mode_preset(splitter::SplitterMode::transmission, f_c);
        CHECK(cell::power_ratio(cell::make_cell(sp, 0, 0)) <= 0.017);
    }
    SUBCASE("invariant under the shifters") {
        const auto sp = splitter::state_from_capacitance(0.9e-12, f_c);
        const double base = cell::power_ratio(cell::make_cell(sp, 0, 0));
        for (int t1 = 0; t1 < 4; ++t1)
            for (int t2 = 0; t2 < 4; ++t2)
                CHECK(cell::power_ratio(cell::make_cell(sp, t1, t2)) == base);
    }
}

TEST_CASE("surface scattering assembly") {
    const auto sp = hybrid_ideal();
    SUBCASE("single cell embeds as a 2x2") {
        const auto cs = cell::cell_total_matrix(cell::make_cell(sp, 1, 2));
        const auto phi = cell::assemble_phi({cs});
        REQUIRE(phi.matrix.rows() == 2);
        CHECK(phi.matrix(0, 0) == cs.phi_r);
        CHECK(phi.matrix(0, 1) == cs.phi_t);
        CHECK(phi.matrix(1, 0) == cs.phi_t);
        CHECK(phi.matrix(1, 1) == cs.phi_r_back);
    }
    SUBCASE("two cells give the 4x4 sparsity pattern") {
        const auto c0 = cell::cell_total_matrix(cell::make_cell(sp, 0, 0));
        const auto c1 = cell::cell_total_matrix(cell::make_cell(sp, 3, 1));
        const auto phi = cell::assemble_phi({c0, c1});
        REQUIRE(phi.matrix.rows() == 4);
        int structural = 0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                const bool allowed = (r == c) || (c - r == 2) || (r - c == 2);
                if (allowed)
                    ++structural;
                else
                    CHECK(std::abs(phi.matrix(r, c)) == 0.0);
            }
        CHECK(structural == 8);
    }
    SUBCASE("symmetric for all inputs") {
        const auto c0 = cell::cell_total_matrix(cell::make_cell(sp, 2, 3));
        const auto c1 = cell::cell_total_matrix(cell::make_cell(sp, 1, 0));
        const auto c2 = cell::cell_total_matrix(cell::make_cell(sp, 0, 2));
        const auto phi = cell::assemble_phi({c0, c1, c2});
        CHECK((phi.matrix - phi.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("lossless cells give unit column norms") {
        std::vector<cell::CellScattering> cells;
        for (int t1 = 0; t1 < 4; ++t1)
            cells.push_back(cell::cell_total_matrix(cell::make_cell(sp, t1, (t1 + 1) % 4)));
        const auto phi = cell::assemble_phi(cells);
        for (Eigen::Index c = 0; c < phi.matrix.cols(); ++c)
            CHECK(std::abs(phi.matrix.col(c).norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("lossless energy identity per cell") {
    // 1000 random reactive series impedances: |phi_r|^2 + |phi_t|^2 = 1.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mag(-2000.0, 2000.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto sp = splitter::state_from_impedance(Complex{0.0, mag(rng)});
        CHECK(netalg::is_lossless(sp.s.s, 1e-10));
        const auto cs = cell::cell_total_matrix(
            cell::make_cell(sp, static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)));
        CHECK(std::abs(std::norm(cs.phi_r) + std::norm(cs.phi_t) - 1.0) < 1e-10);
    }
}
