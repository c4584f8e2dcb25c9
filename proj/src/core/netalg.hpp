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

#ifndef BDRIS_CORE_NETALG_HPP
#define BDRIS_CORE_NETALG_HPP

#include <Eigen/Dense>
#include <complex>

#include "core/errors.hpp"

namespace bdris::netalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double default_z0 = 50.0;              // Ohm
inline constexpr double singular_rcond_threshold = 1e-12;

// A two-port described by its scattering matrix and a single real
// reference impedance shared by both ports.
struct TwoPortNetwork {
    Eigen::Matrix2cd s;
    double z0 = default_z0;

    Complex s11() const { return s(0, 0); }
    Complex s12() const { return s(0, 1); }
    Complex s21() const { return s(1, 0); }
    Complex s22() const { return s(1, 1); }

    bool is_reciprocal(double tol = 1e-12) const;
};

// Z = z0 (I + S)(I - S)^-1. Throws SingularConversion when (I - S) is
// singular to working precision (e.g. an ideal through line).
ComplexMatrix s_to_z(const ComplexMatrix &s, double z0 = default_z0);
ComplexMatrix s_to_z(const TwoPortNetwork &net);

// S = (Z - z0 I)(Z + z0 I)^-1. Throws SingularConversion when (Z + z0 I)
// is singular.
ComplexMatrix z_to_s(const ComplexMatrix &z, double z0 = default_z0);

// Chain two two-ports (port 2 of a into port 1 of b) via transfer
// parameters. Networks with |s21| < 1e-12 have no chain representation
// and are rejected (NonCascadable); differing z0 raises MismatchedReference.
TwoPortNetwork cascade(const TwoPortNetwork &a, const TwoPortNetwork &b);

// True iff ||S^H S - I||_max <= tol.
bool is_lossless(const ComplexMatrix &s, double tol);

// Dense LU solve with a reciprocal-condition-number guard: rcond below
// 1e-12 raises SingularSystem carrying the estimate.
ComplexVector solve(const ComplexMatrix &a, const ComplexVector &b);
ComplexMatrix solve(const ComplexMatrix &a, const ComplexMatrix &b);

// Input reflection coefficient of a two-port terminated at port 2 with
// reflection coefficient gamma_load.
Complex input_reflection(const TwoPortNetwork &net, Complex gamma_load);

// Gamma <-> impedance against a real reference.
Complex reflection_to_impedance(Complex gamma, double z0 = default_z0);
Complex impedance_to_reflection(Complex z, double z0 = default_z0);

} // namespace bdris::netalg

#endif
