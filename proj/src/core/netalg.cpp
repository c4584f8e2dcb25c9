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

#include "core/netalg.hpp"

#include <cmath>
#include <sstream>

namespace bdris::netalg {

namespace {

void check_square(const ComplexMatrix &m, const char *name) {
    if (m.rows() < 1 || m.rows() != m.cols())
        throw InvalidArgument(std::string(name) + ": square matrix required");
    if (!m.allFinite())
        throw InvalidArgument(std::string(name) + ": non-finite entries");
}

// LU-based solve of a * x = rhs that raises SingularSystem when a is
// numerically singular (rcond < 1e-12).
ComplexMatrix guarded_solve(const ComplexMatrix &a, const ComplexMatrix &rhs, const char *what) {
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const double rc = lu.rcond();
    if (!(rc >= singular_rcond_threshold)) {
        std::ostringstream msg;
        msg << what << ": matrix numerically singular (rcond estimate " << rc << ")";
        throw SingularSystem(msg.str());
    }
    return lu.solve(rhs);
}

} // namespace

bool TwoPortNetwork::is_reciprocal(double tol) const {
    return std::abs(s(0, 1) - s(1, 0)) <= tol;
}

ComplexMatrix s_to_z(const ComplexMatrix &s, double z0) {
    check_square(s, "s_to_z");
    if (!(z0 > 0.0))
        throw InvalidArgument("s_to_z: reference impedance must be positive");
    const ComplexMatrix eye = ComplexMatrix::Identity(s.rows(), s.cols());
    Eigen::PartialPivLU<ComplexMatrix> lu(eye - s);
    const double rc = lu.rcond();
    if (!(rc >= singular_rcond_threshold)) {
        std::ostringstream msg;
        msg << "s_to_z: (I - S) singular to working precision (rcond " << rc
            << "); the network has no impedance-parameter representation";
        throw SingularConversion(msg.str());
    }
    // Z = z0 (I - S)^-1 (I + S); the two factor orders agree because
    // (I - S) and (I + S) commute.
    return z0 * lu.solve(eye + s);
}

ComplexMatrix s_to_z(const TwoPortNetwork &net) { return s_to_z(net.s, net.z0); }

ComplexMatrix z_to_s(const ComplexMatrix &z, double z0) {
    check_square(z, "z_to_s");
    if (!(z0 > 0.0))
        throw InvalidArgument("z_to_s: reference impedance must be positive");
    const ComplexMatrix eye = ComplexMatrix::Identity(z.rows(), z.cols());
    const ComplexMatrix zpz = z + z0 * eye;
    Eigen::PartialPivLU<ComplexMatrix> lu(zpz);
    const double rc = lu.rcond();
    if (!(rc >= singular_rcond_threshold)) {
        std::ostringstream msg;
        msg << "z_to_s: (Z + z0 I) singular to working precision (rcond " << rc << ")";
        throw SingularConversion(msg.str());
    }
    // S = (Z - z0 I)(Z + z0 I)^-1; the factors commute, so a left solve works.
    return lu.solve(z - z0 * eye);
}

TwoPortNetwork cascade(const TwoPortNetwork &a, const TwoPortNetwork &b) {
    if (std::abs(a.z0 - b.z0) > 1e-9 * std::abs(a.z0))
        throw MismatchedReference("cascade: reference impedances differ");
    const double z0 = a.z0;

    auto to_abcd = [z0](const TwoPortNetwork &n) {
        const Complex s11 = n.s11(), s12 = n.s12(), s21 = n.s21(), s22 = n.s22();
        if (std::abs(s21) < 1e-12)
            throw NonCascadable("cascade: |s21| < 1e-12, no chain representation");
        Eigen::Matrix2cd t;
        const Complex d = 2.0 * s21;
        t(0, 0) = ((1.0 + s11) * (1.0 - s22) + s12 * s21) / d;
        t(0, 1) = z0 * ((1.0 + s11) * (1.0 + s22) - s12 * s21) / d;
        t(1, 0) = ((1.0 - s11) * (1.0 - s22) - s12 * s21) / (d * z0);
        t(1, 1) = ((1.0 - s11) * (1.0 + s22) + s12 * s21) / d;
        return t;
    };

    const Eigen::Matrix2cd t = to_abcd(a) * to_abcd(b);
    const Complex A = t(0, 0), B = t(0, 1), C = t(1, 0), D = t(1, 1);
    const Complex den = A + B / z0 + C * z0 + D;
    if (std::abs(den) < 1e-300)
        throw NonCascadable("cascade: degenerate chain product");

    TwoPortNetwork out;
    out.z0 = z0;
    out.s(0, 0) = (A + B / z0 - C * z0 - D) / den;
    out.s(0, 1) = 2.0 * (A * D - B * C) / den;
    out.s(1, 0) = 2.0 / den;
    out.s(1, 1) = (-A + B / z0 - C * z0 + D) / den;
    return out;
}

bool is_lossless(const ComplexMatrix &s, double tol) {
    check_square(s, "is_lossless");
    const ComplexMatrix gram = s.adjoint() * s;
    const ComplexMatrix eye = ComplexMatrix::Identity(s.rows(), s.cols());
    return (gram - eye).cwiseAbs().maxCoeff() <= tol;
}

ComplexVector solve(const ComplexMatrix &a, const ComplexVector &b) {
    check_square(a, "solve");
    if (b.size() != a.rows())
        throw InvalidArgument("solve: right-hand side length mismatch");
    return guarded_solve(a, b, "solve");
}

ComplexMatrix solve(const ComplexMatrix &a, const ComplexMatrix &b) {
    check_square(a, "solve");
    if (b.rows() != a.rows())
        throw InvalidArgument("solve: right-hand side row mismatch");
    return guarded_solve(a, b, "solve");
}

Complex input_reflection(const TwoPortNetwork &net, Complex gamma_load) {
    const Complex den = 1.0 - net.s22() * gamma_load;
    if (std::abs(den) < 1e-300)
        throw SingularSystem("input_reflection: resonant termination, 1 - s22*gamma = 0");
    return net.s11() + net.s12() * net.s21() * gamma_load / den;
}

Complex reflection_to_impedance(Complex gamma, double z0) {
    const Complex den = 1.0 - gamma;
    if (std::abs(den) < 1e-15)
        throw SingularConversion("reflection_to_impedance: gamma = 1 (open circuit)");
    return z0 * (1.0 + gamma) / den;
}

Complex impedance_to_reflection(Complex z, double z0) {
    const Complex den = z + z0;
    if (std::abs(den) < 1e-300)
        throw SingularConversion("impedance_to_reflection: z = -z0");
    return (z - z0) / den;
}

} // namespace bdris::netalg
