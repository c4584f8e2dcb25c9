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

#include "core/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace bdris::splitter {

namespace {

constexpr Complex j{0.0, 1.0};

double ratio_db_at(double c, double f_hz, const VaractorCircuit &tmpl) {
    VaractorCircuit vc = tmpl;
    vc.c_j0 = c;
    const Complex z = varactor_impedance(vc, f_hz);
    return 20.0 * std::log10(std::abs(z) / (2.0 * netalg::default_z0));
}

// Capacitance of the series-branch resonance with the bias inductor,
// where |Z| peaks: 1/(wC) = w(L_c + L_s).
double resonance_capacitance(double f_hz, const VaractorCircuit &tmpl) {
    const double w = 2.0 * std::numbers::pi * f_hz;
    return 1.0 / (w * w * (tmpl.l_c + tmpl.l_s));
}

// Bisection on a bracket where fn is monotone and fn(lo), fn(hi) straddle 0.
double bisect(double lo, double hi, const std::function<double(double)> &fn) {
    double flo = fn(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

Complex varactor_impedance(const VaractorCircuit &circuit, double f_hz) {
    if (!(f_hz > 0.0))
        throw InvalidArgument("varactor_impedance: frequency must be positive");
    if (!(circuit.c_j0 > 0.0) || circuit.l_s < 0.0 || circuit.r_s < 0.0 || !(circuit.l_c > 0.0))
        throw InvalidArgument("varactor_impedance: circuit constants out of range");
    const double w = 2.0 * std::numbers::pi * f_hz;
    const Complex branch = 1.0 / (j * w * circuit.c_j0) + j * w * circuit.l_s + circuit.r_s;
    const Complex den = branch + j * w * circuit.l_c;
    if (std::abs(den) < 1e-9)
        throw DegenerateCircuit("varactor_impedance: lossless parallel resonance, |denominator| < 1e-9 Ohm");
    return branch * (j * w * circuit.l_c) / den;
}

TwoPortNetwork series_impedance_network(Complex z, double z0) {
    if (!(z0 > 0.0))
        throw InvalidArgument("series_impedance_network: z0 must be positive");
    if (z.real() < -1e-12 * std::max(1.0, std::abs(z)))
        throw NonPassive("series_impedance_network: Re(Z) < 0");
    TwoPortNetwork net;
    net.z0 = z0;
    const Complex den = z + 2.0 * z0;
    net.s(0, 0) = z / den;
    net.s(1, 1) = z / den;
    net.s(0, 1) = 2.0 * z0 / den;
    net.s(1, 0) = 2.0 * z0 / den;
    return net;
}

double power_ratio_db(const SplitterState &state) {
    const double mag21 = std::abs(state.s.s21());
    if (mag21 == 0.0)
        throw InfiniteRatio("power_ratio_db: |s21| = 0");
    return 20.0 * std::log10(std::abs(state.s.s11()) / mag21);
}

SplitterState state_from_impedance(Complex z, double z0, SplitterMode mode) {
    SplitterState st;
    st.mode = mode;
    st.z = z;
    st.s = series_impedance_network(z, z0);
    try {
        const netalg::ComplexMatrix zp = netalg::s_to_z(st.s);
        st.z_params = Eigen::Matrix2cd(zp);
    } catch (const SingularConversion &) {
        st.z_params.reset();  // downstream must use the S-domain path
    }
    return st;
}

SplitterState state_from_capacitance(double c_j0, double f_hz, const VaractorCircuit &tmpl,
                                     SplitterMode mode) {
    VaractorCircuit vc = tmpl;
    vc.c_j0 = c_j0;
    SplitterState st = state_from_impedance(varactor_impedance(vc, f_hz), netalg::default_z0, mode);
    st.c_j0 = c_j0;
    return st;
}

std::vector<double> solve_capacitance(double target_ratio_db, double f_hz,
                                      const VaractorCircuit &tmpl) {
    const double c_res = std::clamp(resonance_capacitance(f_hz, tmpl), c_j0_min, c_j0_max);
    auto fwd = [&](double c) { return ratio_db_at(c, f_hz, tmpl) - target_ratio_db; };

    const double at_min = fwd(c_j0_min);
    const double at_max = fwd(c_j0_max);
    const double at_res = fwd(c_res);

    if (at_res < 0.0) {
        std::ostringstream msg;
        msg << "solve_capacitance: target " << target_ratio_db
            << " dB above attainable maximum " << (at_res + target_ratio_db) << " dB";
        throw Unachievable(msg.str());
    }
    if (at_min > 0.0 && at_max > 0.0) {
        std::ostringstream msg;
        msg << "solve_capacitance: target " << target_ratio_db
            << " dB below attainable range [" << (std::min(at_min, at_max) + target_ratio_db)
            << ", " << (at_res + target_ratio_db) << "] dB";
        throw Unachievable(msg.str());
    }

    // The ratio rises monotonically toward the resonance capacitance from
    // both ends of the tuning range, so each side holds at most one root.
    std::vector<double> roots;
    if (at_min <= 0.0 && c_res > c_j0_min)
        roots.push_back(bisect(c_j0_min, c_res, fwd));
    if (at_max <= 0.0 && c_res < c_j0_max)
        roots.push_back(bisect(c_res, c_j0_max, fwd));
    std::sort(roots.begin(), roots.end());
    return roots;
}

SplitterState mode_preset(SplitterMode mode, double f_hz, const VaractorCircuit &tmpl) {
    if (!(f_hz >= 2.3e9 && f_hz <= 2.5e9))
        throw InvalidArgument("mode_preset: frequency outside the 2.3-2.5 GHz model band");
    switch (mode) {
    case SplitterMode::transmission:
        return state_from_capacitance(c_j0_max, f_hz, tmpl, mode);
    case SplitterMode::reflection:
    case SplitterMode::hybrid: {
        const double target = (mode == SplitterMode::reflection) ? 20.0 : 0.0;
        const std::vector<double> roots = solve_capacitance(target, f_hz, tmpl);
        // Upper-capacitance root: keeps reflection < hybrid < transmission
        // monotone in capacitance, the same ordering as the bias sweep.
        return state_from_capacitance(roots.back(), f_hz, tmpl, mode);
    }
    case SplitterMode::custom:
        break;
    }
    throw InvalidArgument("mode_preset: custom mode requires an explicit capacitance");
}

double bias_voltage_estimate(double c_j0) {
    const double c = std::clamp(c_j0, c_j0_min, c_j0_max);
    const double t = std::log(c / c_j0_min) / std::log(c_j0_max / c_j0_min);
    return -20.0 * (1.0 - t);
}

SweepPoint evaluate_point(double c_j0, double f_hz, const VaractorCircuit &tmpl) {
    const SplitterState st = state_from_capacitance(c_j0, f_hz, tmpl);
    SweepPoint p;
    p.freq_hz = f_hz;
    p.c_pf = c_j0 * 1e12;
    p.re_z = st.z.real();
    p.im_z = st.z.imag();
    p.s11_db = 20.0 * std::log10(std::abs(st.s.s11()));
    p.s21_db = 20.0 * std::log10(std::abs(st.s.s21()));
    p.ratio_db = p.s11_db - p.s21_db;
    return p;
}

void write_sweep_csv(const std::string &path, const std::vector<SweepPoint> &rows) {
    std::ofstream out(path);
    if (!out)
        throw IoError("write_sweep_csv: cannot open " + path);
    out << "freq_hz,c_pf,re_z,im_z,s11_db,s21_db,ratio_db\n";
    out.precision(12);
    for (const SweepPoint &p : rows) {
        out << p.freq_hz << ',' << p.c_pf << ',' << p.re_z << ',' << p.im_z << ',' << p.s11_db
            << ',' << p.s21_db << ',' << p.ratio_db << '\n';
    }
    if (!out)
        throw IoError("write_sweep_csv: write failed for " + path);
}

const char *mode_name(SplitterMode mode) {
    switch (mode) {
    case SplitterMode::reflection: return "reflection";
    case SplitterMode::hybrid: return "hybrid";
    case SplitterMode::transmission: return "transmission";
    case SplitterMode::custom: return "custom";
    }
    return "unknown";
}

} // namespace bdris::splitter
