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

#include "core/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace bdris::pattern {

namespace {

constexpr double deg = std::numbers::pi / 180.0;

void check_axis(const std::vector<double> &axis, double lo, double hi, const char *name) {
    if (axis.empty())
        throw InvalidArgument(std::string("AngleGrid: empty ") + name + " axis");
    double step = 0.0;
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (axis[i] < lo - 1e-9 || axis[i] > hi + 1e-9)
            throw InvalidArgument(std::string("AngleGrid: ") + name + " sample out of range");
        if (i > 0) {
            const double d = axis[i] - axis[i - 1];
            if (d <= 0.0)
                throw InvalidArgument(std::string("AngleGrid: ") + name + " axis not increasing");
            if (i == 1)
                step = d;
            else if (std::abs(d - step) > 1e-9)
                throw InvalidArgument(std::string("AngleGrid: ") + name + " axis not uniform");
        }
    }
}

std::size_t nearest_index(const std::vector<double> &axis, double value) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < axis.size(); ++i) {
        const double d = std::abs(axis[i] - value);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    return best;
}

std::optional<std::size_t> exact_phi_index(const AngleGrid &grid, double phi) {
    for (std::size_t i = 0; i < grid.phi_deg.size(); ++i)
        if (std::abs(grid.phi_deg[i] - phi) < 1e-9)
            return i;
    return std::nullopt;
}

bool in_sector(double theta, Sector sector) {
    return sector == Sector::reflection ? theta <= 90.0 + 1e-12 : theta >= 90.0 - 1e-12;
}

} // namespace

void AngleGrid::validate() const {
    check_axis(theta_deg, 0.0, 180.0, "theta");
    check_axis(phi_deg, 0.0, 360.0 - 1e-12, "phi");
}

AngleGrid AngleGrid::yoz_cut() {
    AngleGrid g;
    g.theta_deg.resize(181);
    for (int i = 0; i <= 180; ++i)
        g.theta_deg[static_cast<std::size_t>(i)] = static_cast<double>(i);
    g.phi_deg = {90.0, 270.0};
    return g;
}

AngleGrid AngleGrid::full_sphere(double theta_step_deg, double phi_step_deg) {
    AngleGrid g;
    for (double t = 0.0; t <= 180.0 + 1e-9; t += theta_step_deg)
        g.theta_deg.push_back(std::min(t, 180.0));
    for (double p = 0.0; p < 360.0 - 1e-9; p += phi_step_deg)
        g.phi_deg.push_back(p);
    return g;
}

void FieldPattern::validate() const {
    grid.validate();
    if (values.size() != grid.size())
        throw GridMismatch("FieldPattern: sample count does not match grid");
    for (const Complex &v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidArgument("FieldPattern: non-finite sample");
}

FieldPattern FieldPattern::zeros(const AngleGrid &grid, double freq_hz) {
    FieldPattern p;
    p.grid = grid;
    p.values.assign(grid.size(), Complex{0.0, 0.0});
    p.freq_hz = freq_hz;
    return p;
}

FieldPattern normalize(const FieldPattern &p) {
    double peak = 0.0;
    for (const Complex &v : p.values)
        peak = std::max(peak, std::abs(v));
    if (peak == 0.0)
        throw ZeroPattern("normalize: pattern is identically zero");
    FieldPattern out = p;
    for (Complex &v : out.values)
        v /= peak;
    out.normalized = true;
    return out;
}

FieldPattern structural_subtract(const FieldPattern &total, const FieldPattern &structural) {
    if (!(total.grid == structural.grid))
        throw GridMismatch("structural_subtract: grids differ");
    if (std::abs(total.freq_hz - structural.freq_hz) > 1e-6 * std::max(1.0, total.freq_hz))
        throw GridMismatch("structural_subtract: frequencies differ");
    FieldPattern out = total;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] -= structural.values[i];
    out.normalized = false;
    return out;
}

SectorCut sector_cut(const FieldPattern &p, Sector sector) {
    const auto pos = exact_phi_index(p.grid, 90.0);
    const auto neg = exact_phi_index(p.grid, 270.0);
    if (!pos && !neg)
        throw GridMismatch("sector_cut: grid has no phi = 90 or phi = 270 samples");

    // Signed offset from the sector broadside: theta for reflection,
    // 180 - theta for transmission; phi = 270 supplies the negative side.
    auto offset = [sector](double theta) {
        return sector == Sector::reflection ? theta : 180.0 - theta;
    };

    SectorCut cut;
    auto push = [&](double signed_angle, std::size_t it, std::size_t ip) {
        cut.angle_deg.push_back(signed_angle);
        cut.mag.push_back(std::abs(p.at(it, ip)));
        cut.theta_deg.push_back(p.grid.theta_deg[it]);
        cut.phi_deg.push_back(p.grid.phi_deg[ip]);
    };

    const auto &thetas = p.grid.theta_deg;
    if (neg) {
        // Negative side, walked from the sector edge toward broadside.
        std::vector<std::size_t> idx;
        for (std::size_t it = 0; it < thetas.size(); ++it)
            if (in_sector(thetas[it], sector) && offset(thetas[it]) > 1e-12)
                idx.push_back(it);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return offset(thetas[a]) > offset(thetas[b]);
        });
        for (std::size_t it : idx)
            push(-offset(thetas[it]), it, *neg);
    }
    if (pos) {
        std::vector<std::size_t> idx;
        for (std::size_t it = 0; it < thetas.size(); ++it)
            if (in_sector(thetas[it], sector))
                idx.push_back(it);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return offset(thetas[a]) < offset(thetas[b]);
        });
        for (std::size_t it : idx)
            push(offset(thetas[it]), it, *pos);
    }
    return cut;
}

BeamMetrics beam_metrics(const FieldPattern &p, Sector sector) {
    p.validate();
    double global_max = 0.0;
    for (const Complex &v : p.values)
        global_max = std::max(global_max, std::abs(v));

    const SectorCut cut = sector_cut(p, sector);
    if (cut.mag.empty())
        throw NoBeam("beam_metrics: sector holds no samples");

    std::size_t ipk = 0;
    for (std::size_t i = 1; i < cut.mag.size(); ++i)
        if (cut.mag[i] > cut.mag[ipk])
            ipk = i;
    const double peak = cut.mag[ipk];
    if (peak <= 0.0 || (global_max > 0.0 && 20.0 * std::log10(peak / global_max) < -40.0))
        throw NoBeam("beam_metrics: sector peak more than 40 dB under the pattern maximum");

    BeamMetrics m;
    m.peak_theta_deg = cut.theta_deg[ipk];
    m.peak_phi_deg = cut.phi_deg[ipk];
    m.peak_level_db = 20.0 * std::log10(peak);

    // -3 dB crossings, linearly interpolated in the cut.
    const double half = peak / std::numbers::sqrt2;
    double left = cut.angle_deg.front();
    for (std::size_t i = ipk; i-- > 0;) {
        if (cut.mag[i] < half) {
            const double t = (half - cut.mag[i]) / (cut.mag[i + 1] - cut.mag[i]);
            left = cut.angle_deg[i] + t * (cut.angle_deg[i + 1] - cut.angle_deg[i]);
            break;
        }
    }
    double right = cut.angle_deg.back();
    for (std::size_t i = ipk + 1; i < cut.mag.size(); ++i) {
        if (cut.mag[i] < half) {
            const double t = (cut.mag[i - 1] - half) / (cut.mag[i - 1] - cut.mag[i]);
            right = cut.angle_deg[i - 1] + t * (cut.angle_deg[i] - cut.angle_deg[i - 1]);
            break;
        }
    }
    m.hpbw_deg = std::max(right - left, 1e-9);

    // Main lobe ends at the first local minimum on each side of the peak.
    std::size_t lo = ipk;
    while (lo > 0 && cut.mag[lo - 1] <= cut.mag[lo])
        --lo;
    std::size_t hi = ipk;
    while (hi + 1 < cut.mag.size() && cut.mag[hi + 1] <= cut.mag[hi])
        ++hi;
    double side = 0.0;
    for (std::size_t i = 0; i < cut.mag.size(); ++i) {
        if (i >= lo && i <= hi)
            continue;
        const bool rising_left = (i == 0) || cut.mag[i - 1] <= cut.mag[i];
        const bool falling_right = (i + 1 == cut.mag.size()) || cut.mag[i + 1] <= cut.mag[i];
        if (rising_left && falling_right)
            side = std::max(side, cut.mag[i]);
    }
    m.max_sidelobe_db = side > 0.0 ? std::min(20.0 * std::log10(side / peak), 0.0) : db_floor;
    return m;
}

double magnitude_at(const FieldPattern &p, double theta_deg, double phi_deg) {
    const std::size_t it = nearest_index(p.grid.theta_deg, theta_deg);
    const std::size_t ip = nearest_index(p.grid.phi_deg, phi_deg);
    return std::abs(p.at(it, ip));
}

std::vector<double> solid_angle_weights(const AngleGrid &grid) {
    const auto &th = grid.theta_deg;
    const auto &ph = grid.phi_deg;
    double wphi = 2.0 * std::numbers::pi;
    if (ph.size() > 1)
        wphi = (ph[1] - ph[0]) * deg;

    std::vector<double> w(grid.size(), 0.0);
    for (std::size_t it = 0; it < th.size(); ++it) {
        double wth = 0.0;
        if (th.size() > 1) {
            const double step = (th[1] - th[0]) * deg;
            const bool edge = (it == 0) || (it + 1 == th.size());
            wth = step * (edge ? 0.5 : 1.0);
        }
        const double wt = std::sin(th[it] * deg) * wth * wphi;
        for (std::size_t ip = 0; ip < ph.size(); ++ip)
            w[grid.index(it, ip)] = wt;
    }
    return w;
}

double radiated_power(const FieldPattern &p, Sector sector) {
    p.validate();
    const std::vector<double> w = solid_angle_weights(p.grid);
    double total = 0.0;
    for (std::size_t it = 0; it < p.grid.theta_deg.size(); ++it) {
        if (!in_sector(p.grid.theta_deg[it], sector))
            continue;
        for (std::size_t ip = 0; ip < p.grid.phi_deg.size(); ++ip)
            total += std::norm(p.at(it, ip)) * w[p.grid.index(it, ip)];
    }
    return total / (2.0 * eta0);
}

void write_pattern_csv(const std::string &path, const FieldPattern &p) {
    std::ofstream out(path);
    if (!out)
        throw IoError("write_pattern_csv: cannot open " + path);
    double peak = 0.0;
    for (const Complex &v : p.values)
        peak = std::max(peak, std::abs(v));
    out << "theta_deg,phi_deg,re,im,mag_db\n";
    out.precision(12);
    for (std::size_t it = 0; it < p.grid.theta_deg.size(); ++it) {
        for (std::size_t ip = 0; ip < p.grid.phi_deg.size(); ++ip) {
            const Complex v = p.at(it, ip);
            double mag_db = db_floor;
            if (peak > 0.0 && std::abs(v) > 0.0)
                mag_db = std::max(20.0 * std::log10(std::abs(v) / peak), db_floor);
            out << p.grid.theta_deg[it] << ',' << p.grid.phi_deg[ip] << ',' << v.real() << ','
                << v.imag() << ',' << mag_db << '\n';
        }
    }
    if (!out)
        throw IoError("write_pattern_csv: write failed for " + path);
}

FieldPattern read_pattern_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("read_pattern_csv: cannot open " + path);
    std::string header;
    std::getline(in, header);
    if (header != "theta_deg,phi_deg,re,im,mag_db")
        throw SchemaError("read_pattern_csv: unrecognized header in " + path);

    struct Row {
        double theta, phi;
        Complex value;
    };
    std::vector<Row> rows;
    std::vector<double> thetas, phis;
    auto remember = [](std::vector<double> &axis, double v) {
        for (double x : axis)
            if (std::abs(x - v) < 1e-9)
                return;
        axis.push_back(v);
    };
    for (std::string line; std::getline(in, line);) {
        if (line.empty())
            continue;
        Row r{};
        double mag_db = 0.0;
        char comma = 0;
        std::istringstream ss(line);
        double re = 0.0, im = 0.0;
        if (!(ss >> r.theta >> comma >> r.phi >> comma >> re >> comma >> im >> comma >> mag_db))
            throw SchemaError("read_pattern_csv: malformed row in " + path);
        r.value = Complex{re, im};
        rows.push_back(r);
        remember(thetas, r.theta);
        remember(phis, r.phi);
    }
    std::sort(thetas.begin(), thetas.end());
    std::sort(phis.begin(), phis.end());

    FieldPattern p;
    p.grid.theta_deg = thetas;
    p.grid.phi_deg = phis;
    p.grid.validate();
    if (rows.size() != p.grid.size())
        throw SchemaError("read_pattern_csv: sample count does not tile the grid");
    p.values.assign(p.grid.size(), Complex{0.0, 0.0});
    for (const Row &r : rows) {
        const std::size_t it = nearest_index(thetas, r.theta);
        const std::size_t ip = nearest_index(phis, r.phi);
        p.values[p.grid.index(it, ip)] = r.value;
    }
    return p;
}

std::string metrics_json(const BeamMetrics &m, Sector sector) {
    nlohmann::json j;
    j["sector"] = sector == Sector::reflection ? "reflection" : "transmission";
    j["peak_theta_deg"] = m.peak_theta_deg;
    j["peak_phi_deg"] = m.peak_phi_deg;
    j["peak_level_db"] = m.peak_level_db;
    j["hpbw_deg"] = m.hpbw_deg;
    j["max_sidelobe_db"] = m.max_sidelobe_db;
    return j.dump(2);
}

} // namespace bdris::pattern
