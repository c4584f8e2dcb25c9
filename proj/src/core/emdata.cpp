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

#include "core/emdata.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "json.hpp"

#include "core/antenna.hpp"

namespace bdris::emdata {

namespace {

constexpr Complex cj{0.0, 1.0};
constexpr double deg = std::numbers::pi / 180.0;
constexpr int schema_version = 1;
constexpr double antenna_port_resistance = 50.0;  // Ohm
constexpr double internal_port_resistance = 50.0; // Ohm
constexpr double internal_coupling_ohm = 10.0;    // antenna <-> switch port

double wavenumber(double freq_hz) {
    return 2.0 * std::numbers::pi * freq_hz / 299792458.0;
}

// cos^q shape over the hemisphere a side radiates into; zero back lobe.
double element_shape(double theta_deg_v, double exponent, bool reflect_side) {
    const double c = std::cos(theta_deg_v * deg);
    const double local = reflect_side ? c : -c;
    if (local <= 0.0)
        return 0.0;
    return std::pow(local, exponent);
}

// Per-switch effective weights of the six-port gadget behind each
// reconfigurable antenna. Loading the six ports with the drive-table
// on/off impedances scales the antenna's receive/radiate path by exactly
// exp(j * state phase): the pair S1/S2 carries the common term, S3/S4
// flips the sign, S5/S6 supplies the quadrature states.
struct InternalGadget {
    std::array<Complex, antenna::switches_per_antenna> w;   // z_ap * pattern coefficient
    std::array<Complex, antenna::switches_per_antenna> beta; // pattern/receive coefficient
};

InternalGadget make_gadget(double freq_hz) {
    const Complex z_on = antenna::diode_load(antenna::SwitchState::on, freq_hz);
    const Complex z_off = antenna::diode_load(antenna::SwitchState::off, freq_hz);
    const Complex u_on = 1.0 / (internal_port_resistance + z_on);
    const Complex u_off = 1.0 / (internal_port_resistance + z_off);
    const Complex du = u_on - u_off;
    const Complex rho = u_off / du;
    const Complex base = 1.0 / (1.0 + 2.0 * rho);

    InternalGadget g;
    const Complex g0{1.0, 0.0};
    const std::array<Complex, 6> delta = {base, base, -g0, g0, cj * g0, -cj * g0};
    for (int k = 0; k < 6; ++k) {
        g.w[static_cast<std::size_t>(k)] = delta[static_cast<std::size_t>(k)] / du;
        g.beta[static_cast<std::size_t>(k)] =
            g.w[static_cast<std::size_t>(k)] / internal_coupling_ohm;
    }
    return g;
}

void check_matrix(const ComplexMatrix &z, std::size_t ports, std::size_t m, const char *name) {
    if (static_cast<std::size_t>(z.rows()) != ports || static_cast<std::size_t>(z.cols()) != ports)
        throw SchemaError(std::string(name) + ": wrong shape");
    if (!z.allFinite())
        throw SchemaError(std::string(name) + ": non-finite entries");
    const double scale = z.cwiseAbs().maxCoeff();
    if ((z - z.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(scale, 1.0))
        throw ReciprocityError(std::string(name) + ": matrix is not symmetric");
    for (std::size_t i = 0; i < m; ++i)
        if (!(z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real() > 0.0))
            throw SchemaError(std::string(name) + ": antenna-port diagonal must have Re > 0");
}

nlohmann::json complex_to_json(const Complex &v) {
    return nlohmann::json::array({v.real(), v.imag()});
}

Complex complex_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 2)
        throw SchemaError("complex value must be a [re, im] pair");
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json matrix_to_json(const ComplexMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty())
        throw SchemaError("matrix field must be a non-empty array");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (j[r].size() != cols)
            throw SchemaError("matrix field has ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(j[r][c]);
    }
    return m;
}

nlohmann::json values_to_json(const std::vector<Complex> &v) {
    nlohmann::json out = nlohmann::json::array();
    for (const Complex &c : v)
        out.push_back(complex_to_json(c));
    return out;
}

std::vector<Complex> values_from_json(const nlohmann::json &j) {
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto &e : j)
        out.push_back(complex_from_json(e));
    return out;
}

pattern::FieldPattern pattern_from_json(const nlohmann::json &j, const pattern::AngleGrid &grid,
                                        double freq_hz, const char *name) {
    pattern::FieldPattern p;
    p.grid = grid;
    p.freq_hz = freq_hz;
    p.values = values_from_json(j);
    if (p.values.size() != grid.size())
        throw GridMismatch(std::string(name) + ": sample count does not match the dataset grid");
    return p;
}

} // namespace

void EmDataset::validate() const {
    if (m < 1)
        throw SchemaError("EmDataset: cell count must be >= 1");
    if (q != 0 && (q % m) != 0)
        throw SchemaError("EmDataset: internal port count must be a multiple of the cell count");
    if (!(freq_hz > 0.0))
        throw SchemaError("EmDataset: frequency must be positive");
    if (layout.size() != m)
        throw SchemaError("EmDataset: layout length must equal the cell count");
    grid.validate();

    const std::size_t n = ports();
    check_matrix(z_r, n, m, "z_r");
    check_matrix(z_t, n, m, "z_t");
    if (static_cast<std::size_t>(v_oc.size()) != n)
        throw SchemaError("v_oc: wrong length");
    if (static_cast<std::size_t>(voc_coupling.size()) != n)
        throw SchemaError("voc_coupling: wrong length");
    if (!v_oc.allFinite() || !voc_coupling.allFinite())
        throw SchemaError("excitation vectors: non-finite entries");

    if (e_r_ports.size() != n || e_t_ports.size() != n)
        throw SchemaError("port pattern lists must hold one pattern per port");
    auto check_pattern = [&](const pattern::FieldPattern &p, const char *name) {
        if (!(p.grid == grid))
            throw GridMismatch(std::string(name) + ": pattern grid differs from the dataset grid");
        p.validate();
    };
    for (const auto &p : e_r_ports)
        check_pattern(p, "e_r_ports");
    for (const auto &p : e_t_ports)
        check_pattern(p, "e_t_ports");
    check_pattern(e_oc, "e_oc");
    check_pattern(e_r_str, "e_r_str");
}

EmDataset EmDataset::mirrored() const {
    EmDataset out = *this;
    std::swap(out.z_r, out.z_t);
    std::swap(out.e_r_ports, out.e_t_ports);
    // Flip every pattern through the array plane (theta -> 180 - theta) so
    // the swapped sides keep their radiation hemispheres.
    auto flip = [&](pattern::FieldPattern &p) {
        pattern::FieldPattern src = p;
        const std::size_t nt = grid.theta_deg.size();
        for (std::size_t it = 0; it < nt; ++it)
            for (std::size_t ip = 0; ip < grid.phi_deg.size(); ++ip)
                p.values[grid.index(it, ip)] = src.at(nt - 1 - it, ip);
    };
    for (auto &p : out.e_r_ports)
        flip(p);
    for (auto &p : out.e_t_ports)
        flip(p);
    flip(out.e_oc);
    flip(out.e_r_str);
    return out;
}

EmDataset generate_synthetic(const SyntheticSpec &spec) {
    if (spec.m_x < 1 || spec.m_y < 1)
        throw InvalidLayout("generate_synthetic: grid dimensions must be >= 1");
    if (!(spec.spacing_m > 0.0))
        throw InvalidLayout("generate_synthetic: spacing must be positive");
    if (!(spec.freq_hz > 0.0))
        throw InvalidLayout("generate_synthetic: frequency must be positive");

    EmDataset ds;
    ds.freq_hz = spec.freq_hz;
    ds.m = spec.m_x * spec.m_y;
    ds.q = spec.tier == Tier::internal_ports ? ds.m * antenna::switches_per_antenna : 0;
    ds.tier = spec.tier;
    ds.spacing_m = spec.spacing_m;
    ds.element_exponent = spec.element_exponent;
    // Pattern-overlap coupling needs the full solid angle: on a single cut
    // plane, x-displaced cells are indistinguishable and the resulting
    // resistance matrix would be singular.
    const bool full_sphere = spec.full_sphere_grid || spec.mutual_coupling;
    ds.grid = full_sphere ? pattern::AngleGrid::full_sphere() : pattern::AngleGrid::yoz_cut();

    // Centered rectangular layout, row-major in (y, x).
    for (std::size_t iy = 0; iy < spec.m_y; ++iy)
        for (std::size_t ix = 0; ix < spec.m_x; ++ix) {
            const double x = (static_cast<double>(ix) - 0.5 * (static_cast<double>(spec.m_x) - 1.0)) * spec.spacing_m;
            const double y = (static_cast<double>(iy) - 0.5 * (static_cast<double>(spec.m_y) - 1.0)) * spec.spacing_m;
            ds.layout.push_back({x, y});
        }

    const std::size_t n = ds.ports();
    const double k0 = wavenumber(spec.freq_hz);
    const std::vector<double> weights = pattern::solid_angle_weights(ds.grid);

    InternalGadget gadget;
    if (ds.q > 0)
        gadget = make_gadget(spec.freq_hz);

    // Port -> owning cell and pattern coefficient (1 for antenna ports,
    // the gadget weight for switch ports).
    auto port_cell = [&](std::size_t p) {
        return p < ds.m ? p : (p - ds.m) / antenna::switches_per_antenna;
    };
    auto port_coeff = [&](std::size_t p) {
        return p < ds.m ? Complex{1.0, 0.0}
                        : gadget.beta[(p - ds.m) % antenna::switches_per_antenna];
    };

    // Unit-current patterns before power calibration: shared element
    // shape, the cell's geometric phase, and the port coefficient.
    auto raw_pattern = [&](std::size_t p, bool reflect_side) {
        pattern::FieldPattern fp = pattern::FieldPattern::zeros(ds.grid, ds.freq_hz);
        const auto &pos = ds.layout[port_cell(p)];
        const Complex coeff = port_coeff(p);
        for (std::size_t it = 0; it < ds.grid.theta_deg.size(); ++it) {
            const double th = ds.grid.theta_deg[it] * deg;
            const double shape = element_shape(ds.grid.theta_deg[it], spec.element_exponent,
                                               reflect_side);
            if (shape == 0.0)
                continue;
            for (std::size_t ip = 0; ip < ds.grid.phi_deg.size(); ++ip) {
                const double phv = ds.grid.phi_deg[ip] * deg;
                const double proj = std::sin(th) * (pos[0] * std::cos(phv) + pos[1] * std::sin(phv));
                fp.values[ds.grid.index(it, ip)] = coeff * shape * std::exp(cj * (k0 * proj));
            }
        }
        return fp;
    };

    for (std::size_t p = 0; p < n; ++p) {
        ds.e_r_ports.push_back(raw_pattern(p, true));
        ds.e_t_ports.push_back(raw_pattern(p, false));
    }

    // Calibrate so a unit antenna-port current radiates the power a 50 Ohm
    // radiation resistance dissipates: integral |K E|^2 / (2 eta0) = 25 W.
    double self_integral = 0.0;
    for (std::size_t i = 0; i < ds.grid.size(); ++i)
        self_integral += std::norm(ds.e_r_ports[0].values[i]) * weights[i];
    const double cell0_norm = self_integral / pattern::eta0;  // Gram diagonal at K = 1
    const double K = std::sqrt(antenna_port_resistance / cell0_norm);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t i = 0; i < ds.grid.size(); ++i) {
            ds.e_r_ports[p].values[i] *= K;
            ds.e_t_ports[p].values[i] *= K;
        }

    // Impedance matrices. The mutual-coupling option replaces the
    // resistive part with the pattern Gram matrix so circuit dissipation
    // and radiated power agree exactly on this grid's quadrature.
    ComplexMatrix z = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < ds.m; ++i)
        z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = antenna_port_resistance;
    if (spec.mutual_coupling) {
        for (std::size_t a = 0; a < ds.m; ++a)
            for (std::size_t b = a + 1; b < ds.m; ++b) {
                Complex acc{0.0, 0.0};
                for (std::size_t i = 0; i < ds.grid.size(); ++i)
                    acc += ds.e_r_ports[a].values[i] * std::conj(ds.e_r_ports[b].values[i]) *
                           weights[i];
                const double r_mut = (acc / pattern::eta0).real();
                z(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = r_mut;
                z(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = r_mut;
            }
    }
    for (std::size_t p = ds.m; p < n; ++p) {
        z(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = internal_port_resistance;
        const std::size_t a = port_cell(p);
        z(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(p)) = internal_coupling_ohm;
        z(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(a)) = internal_coupling_ohm;
    }
    ds.z_r = z;
    ds.z_t = z;

    // Receive weights mirror the radiating coefficients (reciprocity).
    ds.voc_coupling = ComplexVector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t p = 0; p < n; ++p)
        ds.voc_coupling(static_cast<Eigen::Index>(p)) = port_coeff(p);

    ds.v_oc = plane_wave_voc(ds, 0.0, 0.0, 1.0);

    // Structural reference: the specular re-radiation of the matched
    // surface; the open-circuit pattern differs from it by the
    // (2 Re Z)^-1 v_oc correction the field engine reconstructs.
    ds.e_r_str = pattern::FieldPattern::zeros(ds.grid, ds.freq_hz);
    for (std::size_t a = 0; a < ds.m; ++a) {
        const Complex w = ds.v_oc(static_cast<Eigen::Index>(a)) / (2.0 * antenna_port_resistance);
        for (std::size_t i = 0; i < ds.grid.size(); ++i)
            ds.e_r_str.values[i] += w * ds.e_r_ports[a].values[i];
    }
    const ComplexMatrix re2 = (2.0 * ds.z_r.real()).cast<Complex>();
    const ComplexVector corr = netalg::solve(re2, ds.v_oc);
    ds.e_oc = ds.e_r_str;
    for (std::size_t p = 0; p < n; ++p) {
        const Complex w = corr(static_cast<Eigen::Index>(p));
        for (std::size_t i = 0; i < ds.grid.size(); ++i)
            ds.e_oc.values[i] += w * ds.e_r_ports[p].values[i];
    }

    ds.validate();
    return ds;
}

ComplexVector plane_wave_voc(const EmDataset &ds, double theta_inc_deg, double phi_inc_deg,
                             double amplitude) {
    if (theta_inc_deg >= 90.0 || theta_inc_deg < 0.0)
        throw WrongSide("plane_wave_voc: incidence must arrive on the reflecting side (theta < 90)");
    const double k0 = wavenumber(ds.freq_hz);
    const double th = theta_inc_deg * deg;
    const double ph = phi_inc_deg * deg;
    const double ux = std::sin(th) * std::cos(ph);
    const double uy = std::sin(th) * std::sin(ph);

    const std::size_t n = ds.ports();
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t p = 0; p < n; ++p) {
        const std::size_t cell = p < ds.m ? p : (p - ds.m) / antenna::switches_per_antenna;
        const double proj = ds.layout[cell][0] * ux + ds.layout[cell][1] * uy;
        v(static_cast<Eigen::Index>(p)) = amplitude *
                                          ds.voc_coupling(static_cast<Eigen::Index>(p)) *
                                          std::exp(-cj * (k0 * proj));
    }
    return v;
}

void save_dataset(const EmDataset &ds, const std::string &path) {
    ds.validate();
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["frequency_hz"] = ds.freq_hz;
    j["cells"] = ds.m;
    j["internal_ports"] = ds.q;
    j["tier"] = ds.tier == Tier::behavioral ? "behavioral" : "internal_ports";
    j["spacing_m"] = ds.spacing_m;
    j["element_exponent"] = ds.element_exponent;
    nlohmann::json layout = nlohmann::json::array();
    for (const auto &pos : ds.layout)
        layout.push_back(nlohmann::json::array({pos[0], pos[1]}));
    j["layout"] = std::move(layout);
    j["grid"]["theta_deg"] = ds.grid.theta_deg;
    j["grid"]["phi_deg"] = ds.grid.phi_deg;
    j["z_r"] = matrix_to_json(ds.z_r);
    j["z_t"] = matrix_to_json(ds.z_t);
    nlohmann::json voc = nlohmann::json::array();
    nlohmann::json coup = nlohmann::json::array();
    for (Eigen::Index i = 0; i < ds.v_oc.size(); ++i) {
        voc.push_back(complex_to_json(ds.v_oc(i)));
        coup.push_back(complex_to_json(ds.voc_coupling(i)));
    }
    j["v_oc"] = std::move(voc);
    j["voc_coupling"] = std::move(coup);
    nlohmann::json er = nlohmann::json::array();
    nlohmann::json et = nlohmann::json::array();
    for (const auto &p : ds.e_r_ports)
        er.push_back(values_to_json(p.values));
    for (const auto &p : ds.e_t_ports)
        et.push_back(values_to_json(p.values));
    j["e_r_ports"] = std::move(er);
    j["e_t_ports"] = std::move(et);
    j["e_oc"] = values_to_json(ds.e_oc.values);
    j["e_r_str"] = values_to_json(ds.e_r_str.values);

    std::ofstream out(path);
    if (!out)
        throw IoError("save_dataset: cannot open " + path);
    out << j.dump();
    if (!out)
        throw IoError("save_dataset: write failed for " + path);
}

EmDataset load_dataset(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("load_dataset: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("load_dataset: invalid JSON: ") + e.what());
    }

    try {
        const int version = j.at("schema_version").get<int>();
        if (version != schema_version)
            throw SchemaError("load_dataset: unsupported schema version");

        EmDataset ds;
        ds.freq_hz = j.at("frequency_hz").get<double>();
        ds.m = j.at("cells").get<std::size_t>();
        ds.q = j.at("internal_ports").get<std::size_t>();
        ds.tier = j.at("tier").get<std::string>() == "internal_ports" ? Tier::internal_ports
                                                                      : Tier::behavioral;
        ds.spacing_m = j.at("spacing_m").get<double>();
        ds.element_exponent = j.at("element_exponent").get<double>();
        for (const auto &pos : j.at("layout"))
            ds.layout.push_back({pos.at(0).get<double>(), pos.at(1).get<double>()});
        ds.grid.theta_deg = j.at("grid").at("theta_deg").get<std::vector<double>>();
        ds.grid.phi_deg = j.at("grid").at("phi_deg").get<std::vector<double>>();
        ds.z_r = matrix_from_json(j.at("z_r"));
        ds.z_t = matrix_from_json(j.at("z_t"));

        const std::vector<Complex> voc = values_from_json(j.at("v_oc"));
        const std::vector<Complex> coup = values_from_json(j.at("voc_coupling"));
        ds.v_oc = ComplexVector::Zero(static_cast<Eigen::Index>(voc.size()));
        ds.voc_coupling = ComplexVector::Zero(static_cast<Eigen::Index>(coup.size()));
        for (std::size_t i = 0; i < voc.size(); ++i)
            ds.v_oc(static_cast<Eigen::Index>(i)) = voc[i];
        for (std::size_t i = 0; i < coup.size(); ++i)
            ds.voc_coupling(static_cast<Eigen::Index>(i)) = coup[i];

        for (const auto &p : j.at("e_r_ports"))
            ds.e_r_ports.push_back(pattern_from_json(p, ds.grid, ds.freq_hz, "e_r_ports"));
        for (const auto &p : j.at("e_t_ports"))
            ds.e_t_ports.push_back(pattern_from_json(p, ds.grid, ds.freq_hz, "e_t_ports"));
        ds.e_oc = pattern_from_json(j.at("e_oc"), ds.grid, ds.freq_hz, "e_oc");
        ds.e_r_str = pattern_from_json(j.at("e_r_str"), ds.grid, ds.freq_hz, "e_r_str");

        ds.validate();
        return ds;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("load_dataset: ") + e.what());
    }
}

} // namespace bdris::emdata
