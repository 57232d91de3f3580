#include "nalandau/units.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nalandau::units {

using namespace nalandau::constants;

Continuum map_lattice_to_continuum(const LatticeParams& lp) {
    if (lp.a_m <= 0.0) throw std::domain_error("units: lattice constant must be positive");
    Continuum c;
    c.vF_mps = 1.5 * lp.a_m * lp.t_eV * eV_J / hbar_Js;
    if (lp.tprime_eV == 0.0) {
        c.mass_kg = -std::numeric_limits<double>::infinity();
        c.mass_finite = false;
    } else {
        c.mass_kg = -2.0 * hbar_Js * hbar_Js /
                    (9.0 * lp.tprime_eV * eV_J * lp.a_m * lp.a_m);
        c.mass_finite = true;
    }
    return c;
}

ModelParams derive_model(double vF_mps, double mass_kg, const FieldParams& fp) {
    if (!(fp.B_T > 0.0))
        throw std::domain_error("units: B > 0 required for magnetic quantities");
    if (!(vF_mps > 0.0)) throw std::domain_error("units: vF must be positive");
    if (!std::isfinite(mass_kg))
        throw std::domain_error("units: finite mass required (tprime = 0 gives none)");
    ModelParams mp;
    mp.vF_mps = vF_mps;
    mp.mass_kg = mass_kg;
    mp.B_T = fp.B_T;
    mp.E_Vpm = fp.E_Vpm;
    mp.lB_m = std::sqrt(hbar_Js / (e_charge_C * fp.B_T));
    mp.z = mass_kg * vF_mps * mp.lB_m / hbar_Js;
    mp.w = std::fabs(mp.z);
    mp.epsB_eV = hbar_Js * vF_mps / mp.lB_m / eV_J;
    return mp;
}

ModelParams derive_model_from_scales(double epsB_eV, double z, const FieldParams& fp) {
    if (!(fp.B_T > 0.0))
        throw std::domain_error("units: B > 0 required for magnetic quantities");
    if (!(epsB_eV > 0.0)) throw std::domain_error("units: eps_B must be positive");
    const double lB = std::sqrt(hbar_Js / (e_charge_C * fp.B_T));
    const double vF = epsB_eV * eV_J * lB / hbar_Js;
    const double mass = z * hbar_Js / (vF * lB);
    return derive_model(vF, mass, fp);
}

double energy_to_internal(double E_eV, const ModelParams& mp) { return E_eV / mp.epsB_eV; }
double energy_from_internal(double E_int, const ModelParams& mp) { return E_int * mp.epsB_eV; }
double length_to_internal(double x_m, const ModelParams& mp) { return x_m / mp.lB_m; }
double length_from_internal(double x_int, const ModelParams& mp) { return x_int * mp.lB_m; }

double degeneracy_per_area(const ModelParams& mp) {
    return e_charge_C * mp.B_T / planck_Js;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& value, const std::string& line) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad numeric value in line: " + line);
    }
    if (pos != value.size())
        throw std::runtime_error("config: trailing junk in line: " + line);
    return v;
}

} // namespace

Config parse_config(std::istream& in) {
    Config cfg;
    bool seen_a = false, seen_t = false, seen_tp = false, seen_B = false;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key=value, got: " + raw);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config: expected key=value, got: " + raw);
        const double v = parse_number(value, raw);
        if (key == "a_angstrom") {
            cfg.lattice.a_m = v * 1e-10;
            seen_a = true;
        } else if (key == "t_eV") {
            cfg.lattice.t_eV = v;
            seen_t = true;
        } else if (key == "tprime_eV") {
            cfg.lattice.tprime_eV = v;
            seen_tp = true;
        } else if (key == "B_tesla") {
            cfg.field.B_T = v;
            seen_B = true;
        } else if (key == "E_voltperm") {
            cfg.field.E_Vpm = v;
        } else if (key == "vF_over_c") {
            cfg.vF_over_c = v;
        } else if (key == "mass_eV") {
            cfg.mass_eV = v;
        } else {
            throw std::runtime_error("config: unknown key '" + key + "'");
        }
    }
    if (!seen_a || !seen_t || !seen_tp || !seen_B)
        throw std::runtime_error(
            "config: a_angstrom, t_eV, tprime_eV and B_tesla are required");
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    return parse_config(in);
}

ModelParams build_model(const Config& cfg) {
    const Continuum cont = map_lattice_to_continuum(cfg.lattice);
    const double vF = cfg.vF_over_c ? *cfg.vF_over_c * c_mps : cont.vF_mps;
    double mass = 0.0;
    if (cfg.mass_eV) {
        mass = *cfg.mass_eV * eV_J / (c_mps * c_mps);
    } else {
        if (!cont.mass_finite)
            throw std::domain_error(
                "units: tprime = 0 leaves the mass infinite; set mass_eV explicitly");
        mass = cont.mass_kg;
    }
    return derive_model(vF, mass, cfg.field);
}

} // namespace nalandau::units
