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

#ifndef BDRIS_CORE_PATTERN_HPP
#define BDRIS_CORE_PATTERN_HPP

#include <complex>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace bdris::pattern {

using Complex = std::complex<double>;

inline constexpr double db_floor = -80.0;            // export clamp, dB relative
inline constexpr double eta0 = 376.730313668;        // free-space impedance, Ohm

// Uniform (theta, phi) sampling in degrees. Theta spans [0, 180],
// phi lives in [0, 360).
struct AngleGrid {
    std::vector<double> theta_deg;
    std::vector<double> phi_deg;

    std::size_t size() const { return theta_deg.size() * phi_deg.size(); }
    std::size_t index(std::size_t i_theta, std::size_t i_phi) const {
        return i_theta * phi_deg.size() + i_phi;
    }
    bool operator==(const AngleGrid &other) const = default;

    void validate() const;

    // theta 0..180 step 1, phi {90, 270}: the YOZ cut both halves.
    static AngleGrid yoz_cut();
    // theta step 1, phi step 5 over the full sphere.
    static AngleGrid full_sphere(double theta_step_deg = 1.0, double phi_step_deg = 5.0);
};

// Complex far-field samples over a grid, row-major theta x phi.
struct FieldPattern {
    AngleGrid grid;
    std::vector<Complex> values;
    double freq_hz = 0.0;
    bool normalized = false;

    Complex at(std::size_t i_theta, std::size_t i_phi) const {
        return values[grid.index(i_theta, i_phi)];
    }
    void validate() const;

    static FieldPattern zeros(const AngleGrid &grid, double freq_hz);
};

enum class Sector { reflection, transmission };

struct BeamMetrics {
    double peak_theta_deg = 0.0;
    double peak_phi_deg = 0.0;
    double peak_level_db = 0.0;   // absolute 20*log10|E| at the peak sample
    double hpbw_deg = 0.0;
    double max_sidelobe_db = 0.0; // relative to the peak, <= 0
};

// Peak magnitude scaled to 1; ZeroPattern when the input is identically 0.
FieldPattern normalize(const FieldPattern &p);

// Pointwise complex difference; grids and frequency must match.
FieldPattern structural_subtract(const FieldPattern &total, const FieldPattern &structural);

// One signed principal cut through a sector: the reflection sector maps
// (theta, phi in {90, 270}) onto a signed angle about broadside (0 deg),
// the transmission sector about back-broadside (180 deg).
struct SectorCut {
    std::vector<double> angle_deg;  // signed offset from the sector broadside
    std::vector<double> mag;        // |E| samples
    std::vector<double> theta_deg;  // originating grid coordinates
    std::vector<double> phi_deg;
};

SectorCut sector_cut(const FieldPattern &p, Sector sector);

// Peak direction, half-power beamwidth (linear interpolation to the
// -3 dB crossings) and worst sidelobe in the sector's principal cut.
// NoBeam when the sector lies > 40 dB under the pattern's global max.
BeamMetrics beam_metrics(const FieldPattern &p, Sector sector);

// Magnitude at the grid sample nearest to (theta, phi).
double magnitude_at(const FieldPattern &p, double theta_deg, double phi_deg);

// Solid-angle quadrature weights, row-major over the grid: trapezoid in
// theta (with the sin(theta) factor) times the phi spacing. A single-phi
// axis is weighted with the full circle.
std::vector<double> solid_angle_weights(const AngleGrid &grid);

// Hemispheric power integral of |E|^2/(2 eta0) on the shared quadrature.
double radiated_power(const FieldPattern &p, Sector sector);

// CSV with header theta_deg,phi_deg,re,im,mag_db (mag_db relative to the
// pattern peak, clamped at the -80 dB floor).
void write_pattern_csv(const std::string &path, const FieldPattern &p);

// Rebuild a pattern from its CSV export; the grid is inferred from the
// listed angles and every grid point must be present exactly once.
FieldPattern read_pattern_csv(const std::string &path);

std::string metrics_json(const BeamMetrics &m, Sector sector);

} // namespace bdris::pattern

#endif
