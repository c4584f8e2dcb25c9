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

#include <random>

#include "core/netalg.hpp"
#include "core/splitter.hpp"

using namespace bdris;
using netalg::Complex;
using netalg::ComplexMatrix;
using netalg::TwoPortNetwork;

namespace {

constexpr Complex j{0.0, 1.0};

TwoPortNetwork phase_shifter(double theta) {
    TwoPortNetwork n;
    n.s.setZero();
    n.s(0, 1) = std::exp(j * theta);
    n.s(1, 0) = std::exp(j * theta);
    return n;
}

TwoPortNetwork matched_through() { return phase_shifter(0.0); }

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Random strictly passive scattering matrix (largest singular value < 1).
ComplexMatrix random_passive_s(std::mt19937_64 &rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix a(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            a(r, c) = Complex{g(rng), g(rng)};
    const double smax = a.jacobiSvd().singularValues()(0);
    return a / (smax * 1.25);
}

} // namespace

TEST_CASE("s_to_z basics") {
    SUBCASE("matched network") {
        const ComplexMatrix z = netalg::s_to_z(ComplexMatrix::Zero(2, 2), 50.0);
        CHECK(max_abs_diff(z, 50.0 * ComplexMatrix::Identity(2, 2)) < 1e-12);
    }
    SUBCASE("shunt-loaded series network round trips") {
        // A series element with small shunt admittances has impedance
        // parameters; the pure series element below does not.
        TwoPortNetwork net = splitter::series_impedance_network(Complex{100.0, 0.0});
        net.s(0, 0) *= 0.98;
        net.s(1, 1) *= 0.98;
        const ComplexMatrix z = netalg::s_to_z(net);
        const ComplexMatrix s_back = netalg::z_to_s(z, 50.0);
        CHECK(max_abs_diff(s_back, net.s) < 1e-10);
    }
    SUBCASE("identity S has no z parameters") {
        CHECK_THROWS_AS(netalg::s_to_z(ComplexMatrix::Identity(2, 2), 50.0), SingularConversion);
    }
    SUBCASE("floating series element has no z parameters") {
        // (I - S) of the series two-port is rank one: z11 and z12 diverge
        // together even though their difference stays finite.
        const TwoPortNetwork net = splitter::series_impedance_network(Complex{100.0, 0.0});
        CHECK_THROWS_AS(netalg::s_to_z(net), SingularConversion);
    }
}

TEST_CASE("z_to_s basics") {
    SUBCASE("matched diag") {
        const ComplexMatrix s = netalg::z_to_s(50.0 * ComplexMatrix::Identity(2, 2), 50.0);
        CHECK(max_abs_diff(s, ComplexMatrix::Zero(2, 2)) < 1e-12);
    }
    SUBCASE("short circuit") {
        const ComplexMatrix s = netalg::z_to_s(ComplexMatrix::Zero(2, 2), 50.0);
        CHECK(max_abs_diff(s, -ComplexMatrix::Identity(2, 2)) < 1e-12);
    }
    SUBCASE("series j100 gives s11 = 0.5 + 0.5j") {
        const TwoPortNetwork net = splitter::series_impedance_network(Complex{0.0, 100.0});
        CHECK(std::abs(net.s(0, 0) - Complex{0.5, 0.5}) < 1e-10);
        CHECK(std::abs(net.s(1, 0) - Complex{0.5, -0.5}) < 1e-10);
    }
}

TEST_CASE("cascade") {
    SUBCASE("phase addition") {
        const double t1 = 0.7, t2 = 1.9;
        const TwoPortNetwork c = netalg::cascade(phase_shifter(t1), phase_shifter(t2));
        CHECK(std::abs(c.s(0, 1) - std::exp(j * (t1 + t2))) < 1e-10);
        CHECK(std::abs(c.s(1, 0) - std::exp(j * (t1 + t2))) < 1e-10);
        CHECK(std::abs(c.s(0, 0)) < 1e-10);
        CHECK(std::abs(c.s(1, 1)) < 1e-10);
    }
    SUBCASE("matched through is the identity element") {
        const TwoPortNetwork a = splitter::series_impedance_network(Complex{30.0, 70.0});
        const TwoPortNetwork c = netalg::cascade(a, matched_through());
        CHECK(max_abs_diff(c.s, a.s) < 1e-10);
    }
    SUBCASE("shifter-splitter-shifter expansion") {
        const double t1 = 1.1, t2 = 2.3;
        const TwoPortNetwork mode = splitter::series_impedance_network(Complex{40.0, 90.0});
        const TwoPortNetwork total =
            netalg::cascade(phase_shifter(t1), netalg::cascade(mode, phase_shifter(t2)));
        CHECK(std::abs(total.s(0, 0) - mode.s(0, 0) * std::exp(j * (2.0 * t1))) < 1e-10);
        CHECK(std::abs(total.s(0, 1) - mode.s(0, 1) * std::exp(j * (t1 + t2))) < 1e-10);
        CHECK(std::abs(total.s(1, 0) - mode.s(1, 0) * std::exp(j * (t1 + t2))) < 1e-10);
        CHECK(std::abs(total.s(1, 1) - mode.s(1, 1) * std::exp(j * (2.0 * t2))) < 1e-10);
    }
    SUBCASE("mismatched references rejected") {
        TwoPortNetwork b = phase_shifter(0.3);
        b.z0 = 75.0;
        CHECK_THROWS_AS(netalg::cascade(phase_shifter(0.1), b), MismatchedReference);
    }
    SUBCASE("no through path rejected") {
        TwoPortNetwork blocked;
        blocked.s.setZero();
        blocked.s(0, 0) = 1.0;
        blocked.s(1, 1) = 1.0;
        CHECK_THROWS_AS(netalg::cascade(blocked, matched_through()), NonCascadable);
    }
}

TEST_CASE("is_lossless") {
    CHECK(netalg::is_lossless(splitter::series_impedance_network(Complex{0.0, 100.0}).s, 1e-10));
    CHECK_FALSE(netalg::is_lossless(splitter::series_impedance_network(Complex{100.0, 0.0}).s, 1e-10));
    CHECK(netalg::is_lossless(phase_shifter(0.42).s, 1e-12));
}

TEST_CASE("solve") {
    SUBCASE("identity") {
        netalg::ComplexVector b(3);
        b << Complex{1, 2}, Complex{-3, 0.5}, Complex{0, -1};
        const netalg::ComplexVector x = netalg::solve(ComplexMatrix::Identity(3, 3), b);
        CHECK((x - b).norm() < 1e-14);
    }
    SUBCASE("diagonal") {
        ComplexMatrix a = 100.0 * ComplexMatrix::Identity(2, 2);
        netalg::ComplexVector b(2);
        b << 1.0, 1.0;
        const netalg::ComplexVector x = netalg::solve(a, b);
        CHECK(std::abs(x(0) - Complex{0.01, 0.0}) < 1e-14);
        CHECK(std::abs(x(1) - Complex{0.01, 0.0}) < 1e-14);
    }
    SUBCASE("random 10x10 residual") {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> g(0.0, 1.0);
        ComplexMatrix a(10, 10);
        for (int r = 0; r < 10; ++r)
            for (int c = 0; c < 10; ++c)
                a(r, c) = Complex{g(rng), g(rng)};
        a += 5.0 * ComplexMatrix::Identity(10, 10);  // keep it well-conditioned
        netalg::ComplexVector b(10);
        for (int r = 0; r < 10; ++r)
            b(r) = Complex{g(rng), g(rng)};
        const netalg::ComplexVector x = netalg::solve(a, b);
        CHECK((a * x - b).norm() <= 1e-9 * b.norm());
    }
    SUBCASE("singular system diagnosed") {
        ComplexMatrix a(2, 2);
        a << 1.0, 2.0, 2.0, 4.0;
        netalg::ComplexVector b(2);
        b << 1.0, 1.0;
        CHECK_THROWS_AS(netalg::solve(a, b), SingularSystem);
    }
}

TEST_CASE("netalg properties") {
    std::mt19937_64 rng(1234);
    SUBCASE("s/z round trip over random passive networks") {
        for (int trial = 0; trial < 200; ++trial) {
            const ComplexMatrix s = random_passive_s(rng, 2 + static_cast<int>(rng() % 3));
            const ComplexMatrix back = netalg::z_to_s(netalg::s_to_z(s, 50.0), 50.0);
            CHECK(max_abs_diff(back, s) < 1e-10);
        }
    }
    SUBCASE("cascade associativity") {
        std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
        for (int trial = 0; trial < 100; ++trial) {
            const TwoPortNetwork a = splitter::series_impedance_network(Complex{10.0 + trial, 40.0});
            const TwoPortNetwork b = phase_shifter(u(rng));
            const TwoPortNetwork c = splitter::series_impedance_network(Complex{5.0, -60.0 + trial});
            const TwoPortNetwork left = netalg::cascade(netalg::cascade(a, b), c);
            const TwoPortNetwork right = netalg::cascade(a, netalg::cascade(b, c));
            CHECK(max_abs_diff(left.s, right.s) < 1e-10);
        }
    }
    SUBCASE("cascade preserves reciprocity") {
        for (int trial = 0; trial < 100; ++trial) {
            const TwoPortNetwork a = splitter::series_impedance_network(
                Complex{1.0 + static_cast<double>(rng() % 100),
                        -80.0 + static_cast<double>(rng() % 160)});
            const TwoPortNetwork b = phase_shifter(0.01 * static_cast<double>(rng() % 628));
            const TwoPortNetwork c = netalg::cascade(a, b);
            CHECK(c.is_reciprocal(1e-12));
        }
    }
    SUBCASE("lossless implies unit column norms") {
        const ComplexMatrix s = phase_shifter(1.234).s;
        REQUIRE(netalg::is_lossless(s, 1e-12));
        for (int c = 0; c < 2; ++c)
            CHECK(std::abs(s.col(c).norm() - 1.0) < 1e-12);
    }
}
