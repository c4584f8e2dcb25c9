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

#include "core/thevenin.hpp"

#include <cmath>

namespace bdris::thevenin {

namespace {

constexpr Complex cj{0.0, 1.0};
constexpr double regularization_shunt = 1e-9;  // Siemens, z-parameter fallback

bool is_diagonal(const ComplexMatrix &m) {
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (r != c && std::abs(m(r, c)) > 1e-12 * scale)
                return false;
    return true;
}

// Impedance parameters of a splitter, falling back to an admittance-path
// construction with a tiny shunt conductance at both ports when the
// direct conversion is singular (ideal series elements).
Eigen::Matrix2cd splitter_z_params(const splitter::SplitterState &sp, bool *regularized) {
    if (sp.z_params)
        return *sp.z_params;
    const Eigen::Matrix2cd eye = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd ips = eye + sp.s.s;
    Eigen::PartialPivLU<Eigen::Matrix2cd> lu(ips);
    if (!(lu.rcond() >= netalg::singular_rcond_threshold))
        throw SingularSystem("splitter_z_params: network admits neither z nor y parameters");
    const Eigen::Matrix2cd y = (1.0 / sp.s.z0) * (lu.solve(eye - sp.s.s));
    const Eigen::Matrix2cd y_reg = y + regularization_shunt * eye;
    Eigen::PartialPivLU<Eigen::Matrix2cd> luy(y_reg);
    if (!(luy.rcond() >= netalg::singular_rcond_threshold))
        throw SingularSystem("splitter_z_params: regularized admittance still singular");
    if (regularized)
        *regularized = true;
    return luy.solve(eye);
}

template <typename Fn>
auto stage(const char *name, Fn &&fn) {
    try {
        return fn();
    } catch (const Error &e) {
        throw Error(e.code(), std::string("simulate[") + name + "]: " + e.what());
    }
}

} // namespace

void SurfaceConfig::validate(std::size_t m) const {
    if (splitters.size() != m || r_states.size() != m || t_states.size() != m)
        throw InvalidArgument("SurfaceConfig: per-cell lists must all have length M");
}

SurfaceConfig SurfaceConfig::uniform(std::size_t m, const splitter::SplitterState &sp,
                                     std::uint8_t r_code, std::uint8_t t_code) {
    SurfaceConfig cfg;
    cfg.splitters.assign(m, sp);
    cfg.r_states.assign(m, antenna::phase_state(r_code));
    cfg.t_states.assign(m, antenna::phase_state(t_code));
    return cfg;
}

ComplexMatrix LoadMatrix::block_diagonal() const {
    const Eigen::Index m = z_ar_l.rows();
    const Eigen::Index q = z_pr_l.size();
    ComplexMatrix z = ComplexMatrix::Zero(m + q, m + q);
    z.topLeftCorner(m, m) = z_ar_l;
    for (Eigen::Index k = 0; k < q; ++k)
        z(m + k, m + k) = z_pr_l(k);
    return z;
}

ComplexMatrix transmit_array_impedance(const emdata::EmDataset &ds,
                                       const std::vector<antenna::PhaseState> &t_states) {
    const auto m = static_cast<Eigen::Index>(ds.m);
    const auto q = static_cast<Eigen::Index>(ds.q);
    const ComplexMatrix z_at = ds.z_t.topLeftCorner(m, m);
    if (q == 0)
        return z_at;
    if (t_states.size() != ds.m)
        throw InvalidArgument("transmit_array_impedance: one state per cell required");

    ComplexMatrix z_pt = ds.z_t.bottomRightCorner(q, q);
    for (std::size_t cell = 0; cell < ds.m; ++cell) {
        const auto loads = antenna::state_load_vector(t_states[cell], ds.freq_hz);
        for (int k = 0; k < antenna::switches_per_antenna; ++k) {
            const auto idx = static_cast<Eigen::Index>(cell * antenna::switches_per_antenna +
                                                       static_cast<std::size_t>(k));
            z_pt(idx, idx) += loads[static_cast<std::size_t>(k)];
        }
    }
    const ComplexMatrix z_atpt = ds.z_t.topRightCorner(m, q);
    const ComplexMatrix z_ptat = ds.z_t.bottomLeftCorner(q, m);
    return z_at - z_atpt * netalg::solve(z_pt, z_ptat);
}

ComplexMatrix reflect_side_load(const emdata::EmDataset &ds,
                                const std::vector<splitter::SplitterState> &splitters,
                                const ComplexMatrix &z_ta, bool *regularized) {
    if (splitters.size() != ds.m)
        throw InvalidArgument("reflect_side_load: one splitter per cell required");
    const auto m = static_cast<Eigen::Index>(ds.m);
    if (z_ta.rows() != m || z_ta.cols() != m)
        throw InvalidArgument("reflect_side_load: Z_TA must be M x M");

    if (is_diagonal(z_ta)) {
        // Decoupled transmit antennas: each splitter reduces to a one-port
        // reflection coefficient in the S-domain, which stays finite even
        // for splitters without impedance parameters.
        ComplexMatrix z_l = ComplexMatrix::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto &sp = splitters[static_cast<std::size_t>(i)];
            const Complex gamma_load = netalg::impedance_to_reflection(z_ta(i, i), sp.s.z0);
            const Complex gamma_in = netalg::input_reflection(sp.s, gamma_load);
            z_l(i, i) = netalg::reflection_to_impedance(gamma_in, sp.s.z0);
        }
        return z_l;
    }

    // Coupled transmit antennas: eliminate the splitter bank through its
    // impedance parameters. With per-splitter entries a = -1/z12,
    // b = -z11/z12, c = -z22/z12, d = z11 z22 / z12 - z21, the port
    // relations i_t = A v_r + B i_r and v_t = -C v_r + D i_r combine with
    // v_t = Z_TA i_t into Z_AR^L = (C + Z_TA A)^-1 (Z_TA B - D).
    ComplexVector a(m), b(m), c(m), d(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Matrix2cd zp = splitter_z_params(splitters[static_cast<std::size_t>(i)],
                                                      regularized);
        const Complex z11 = zp(0, 0), z12 = zp(0, 1), z21 = zp(1, 0), z22 = zp(1, 1);
        if (std::abs(z12) < 1e-300)
            throw SingularSystem("reflect_side_load: splitter with z12 = 0 has no through path");
        a(i) = -1.0 / z12;
        b(i) = -z11 / z12;
        c(i) = -z22 / z12;
        d(i) = z11 * z22 / z12 - z21;
    }
    const ComplexMatrix lhs = ComplexMatrix(c.asDiagonal()) + z_ta * ComplexMatrix(a.asDiagonal());
    const ComplexMatrix rhs = z_ta * ComplexMatrix(b.asDiagonal()) - ComplexMatrix(d.asDiagonal());
    return netalg::solve(lhs, rhs);
}

void port_currents(const emdata::EmDataset &ds, const LoadMatrix &loads,
                   const ComplexVector &v_oc, ComplexVector &i_r, ComplexVector &v_r) {
    const auto n = static_cast<Eigen::Index>(ds.ports());
    if (v_oc.size() != n)
        throw InvalidArgument("port_currents: v_oc length mismatch");
    const ComplexMatrix z_l = loads.block_diagonal();
    if (z_l.rows() != n)
        throw InvalidArgument("port_currents: load matrix dimension mismatch");
    i_r = -netalg::solve(ds.z_r + z_l, v_oc);
    v_r = -(z_l * i_r);
}

ComplexVector transmitted_currents(const std::vector<splitter::SplitterState> &splitters,
                                   const ComplexVector &v_r, const ComplexVector &i_r) {
    const auto m = static_cast<Eigen::Index>(splitters.size());
    if (v_r.size() < m || i_r.size() < m)
        throw InvalidArgument("transmitted_currents: port vectors shorter than the cell count");
    ComplexVector i_t(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto &sp = splitters[static_cast<std::size_t>(k)];
        const double z0 = sp.s.z0;
        const double sq = std::sqrt(z0);
        // Incident/outgoing waves at the reflect-side splitter port; the
        // port current into the splitter is -i_r.
        const Complex a1 = (v_r(k) - z0 * i_r(k)) / (2.0 * sq);
        const Complex b1 = (v_r(k) + z0 * i_r(k)) / (2.0 * sq);
        if (std::abs(sp.s.s12()) < 1e-12) {
            i_t(k) = 0.0;  // no through path
            continue;
        }
        const Complex a2 = (b1 - sp.s.s11() * a1) / sp.s.s12();
        const Complex b2 = sp.s.s21() * a1 + sp.s.s22() * a2;
        i_t(k) = (b2 - a2) / sq;
    }
    return i_t;
}

pattern::FieldPattern reflected_field(const emdata::EmDataset &ds, const ComplexVector &i_r,
                                      const ComplexVector &v_oc,
                                      const std::vector<antenna::PhaseState> &r_states) {
    const auto n = static_cast<Eigen::Index>(ds.ports());
    if (i_r.size() != n || v_oc.size() != n)
        throw InvalidArgument("reflected_field: vector length mismatch");
    const bool behavioral_states = ds.q == 0;
    if (behavioral_states && r_states.size() != ds.m)
        throw InvalidArgument("reflected_field: one reflect state per cell required");

    // Open-circuit minus structural term, reconstructed from the actual
    // excitation: Sum_p [(2 Re Z_R)^-1 v_oc]_p E_p. The conjugate-matched
    // surface then scatters exactly nothing, which is what defines the
    // structural reference.
    const ComplexMatrix re2 = (2.0 * ds.z_r.real()).cast<Complex>();
    const ComplexVector corr = netalg::solve(re2, v_oc);
    const ComplexVector weights = i_r + corr;

    pattern::FieldPattern out = pattern::FieldPattern::zeros(ds.grid, ds.freq_hz);
    for (Eigen::Index p = 0; p < n; ++p) {
        Complex w = weights(p);
        if (behavioral_states && p < static_cast<Eigen::Index>(ds.m))
            w *= r_states[static_cast<std::size_t>(p)].phase_factor();
        if (w == Complex{0.0, 0.0})
            continue;
        const auto &port = ds.e_r_ports[static_cast<std::size_t>(p)].values;
        for (std::size_t s = 0; s < out.values.size(); ++s)
            out.values[s] += w * port[s];
    }
    return out;
}

pattern::FieldPattern transmitted_field(const emdata::EmDataset &ds, const ComplexVector &i_t,
                                        const std::vector<antenna::PhaseState> &t_states) {
    const auto m = static_cast<Eigen::Index>(ds.m);
    if (i_t.size() != m)
        throw InvalidArgument("transmitted_field: one current per cell required");
    if (t_states.size() != ds.m)
        throw InvalidArgument("transmitted_field: one transmit state per cell required");

    pattern::FieldPattern out = pattern::FieldPattern::zeros(ds.grid, ds.freq_hz);
    if (ds.q == 0) {
        for (Eigen::Index k = 0; k < m; ++k) {
            const Complex w = i_t(k) * t_states[static_cast<std::size_t>(k)].phase_factor();
            if (w == Complex{0.0, 0.0})
                continue;
            const auto &port = ds.e_t_ports[static_cast<std::size_t>(k)].values;
            for (std::size_t s = 0; s < out.values.size(); ++s)
                out.values[s] += w * port[s];
        }
        return out;
    }

    // Internal-port datasets: each antenna pattern is reduced over the
    // loaded switch ports, E_eff = E_A - E_P (Z_PT + Z_PT^L)^-1 Z_PTAT.
    const auto q = static_cast<Eigen::Index>(ds.q);
    ComplexMatrix z_pt = ds.z_t.bottomRightCorner(q, q);
    for (std::size_t cell = 0; cell < ds.m; ++cell) {
        const auto loads = antenna::state_load_vector(t_states[cell], ds.freq_hz);
        for (int k = 0; k < antenna::switches_per_antenna; ++k) {
            const auto idx = static_cast<Eigen::Index>(cell * antenna::switches_per_antenna +
                                                       static_cast<std::size_t>(k));
            z_pt(idx, idx) += loads[static_cast<std::size_t>(k)];
        }
    }
    const ComplexMatrix z_ptat = ds.z_t.bottomLeftCorner(q, m);
    const ComplexVector internal_weights = netalg::solve(z_pt, z_ptat) * i_t;  // length Q

    for (Eigen::Index k = 0; k < m; ++k) {
        const Complex w = i_t(k);
        if (w == Complex{0.0, 0.0})
            continue;
        const auto &port = ds.e_t_ports[static_cast<std::size_t>(k)].values;
        for (std::size_t s = 0; s < out.values.size(); ++s)
            out.values[s] += w * port[s];
    }
    for (Eigen::Index k = 0; k < q; ++k) {
        const Complex w = -internal_weights(k);
        if (w == Complex{0.0, 0.0})
            continue;
        const auto &port = ds.e_t_ports[static_cast<std::size_t>(ds.m) + static_cast<std::size_t>(k)].values;
        for (std::size_t s = 0; s < out.values.size(); ++s)
            out.values[s] += w * port[s];
    }
    return out;
}

SolveResult simulate(const emdata::EmDataset &ds, const SurfaceConfig &config,
                     const Incidence &incidence) {
    config.validate(ds.m);
    SolveResult res;

    res.v_oc = stage("plane_wave_voc", [&] {
        ComplexVector v = emdata::plane_wave_voc(ds, incidence.theta_deg, incidence.phi_deg,
                                                 incidence.amplitude);
        if (ds.q == 0) {
            // Behavioral tier: the reflect antenna's phase shifter rotates
            // its received open-circuit voltage.
            for (std::size_t cell = 0; cell < ds.m; ++cell)
                v(static_cast<Eigen::Index>(cell)) *= config.r_states[cell].phase_factor();
        }
        return v;
    });

    const ComplexMatrix z_ta = stage("transmit_array_impedance", [&] {
        return transmit_array_impedance(ds, config.t_states);
    });

    LoadMatrix loads;
    loads.z_ar_l = stage("reflect_side_load", [&] {
        return reflect_side_load(ds, config.splitters, z_ta, &res.regularized_splitter);
    });
    loads.z_pr_l = ComplexVector::Zero(static_cast<Eigen::Index>(ds.q));
    if (ds.q > 0) {
        for (std::size_t cell = 0; cell < ds.m; ++cell) {
            const auto cell_loads = antenna::state_load_vector(config.r_states[cell], ds.freq_hz);
            for (int k = 0; k < antenna::switches_per_antenna; ++k)
                loads.z_pr_l(static_cast<Eigen::Index>(cell * antenna::switches_per_antenna +
                                                       static_cast<std::size_t>(k))) =
                    cell_loads[static_cast<std::size_t>(k)];
        }
    }

    stage("port_currents", [&] {
        port_currents(ds, loads, res.v_oc, res.i_r, res.v_r);
        return 0;
    });

    res.i_t = stage("transmitted_currents", [&] {
        return transmitted_currents(config.splitters, res.v_r, res.i_r);
    });

    res.e_r = stage("reflected_field", [&] {
        return reflected_field(ds, res.i_r, res.v_oc, config.r_states);
    });
    res.e_t = stage("transmitted_field", [&] {
        return transmitted_field(ds, res.i_t, config.t_states);
    });
    return res;
}

double available_power(const emdata::EmDataset &ds, const ComplexVector &v_oc) {
    const ComplexMatrix re = ds.z_r.real().cast<Complex>();
    const ComplexVector x = netalg::solve(re, v_oc);
    return 0.125 * v_oc.dot(x).real();
}

} // namespace bdris::thevenin
