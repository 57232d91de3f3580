#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "nalandau/io.hpp"
#include "nalandau/landau.hpp"
#include "nalandau/perturb.hpp"
#include "nalandau/units.hpp"
#include "nalandau/validate.hpp"
#include "nalandau/zetahall.hpp"

namespace py = pybind11;
using namespace nalandau;

namespace {

perturb::FactorOrder order_from(const std::string& name) {
    if (name == "prefix") return perturb::FactorOrder::PrefixQ;
    if (name == "after-bracket") return perturb::FactorOrder::AfterBracket;
    if (name == "after-inverse") return perturb::FactorOrder::AfterInverse;
    if (name == "suffix") return perturb::FactorOrder::SuffixQ;
    throw std::invalid_argument(
        "ordering must be prefix, after-bracket, after-inverse or suffix");
}

perturb::PerturbationSpec spec_from(double a_angstrom, const std::string& ordering,
                                    const units::ModelParams& mp) {
    perturb::PerturbationSpec spec =
        perturb::make_perturbation_spec(a_angstrom * 1e-10, mp);
    spec.factor_order = order_from(ordering);
    return spec;
}

const char* valley_name(landau::Valley v) {
    return v == landau::Valley::K ? "K" : "Kprime";
}

} // namespace

PYBIND11_MODULE(_nalandau, m) {
    m.doc() = "deformed-Landau graphene model: spectra, Hall staircase, "
              "perturbation elements";
    m.attr("__version__") = io::version;

    py::class_<units::ModelParams>(m, "Model")
        .def_readonly("vF_mps", &units::ModelParams::vF_mps)
        .def_readonly("mass_kg", &units::ModelParams::mass_kg)
        .def_readonly("B_T", &units::ModelParams::B_T)
        .def_readonly("z", &units::ModelParams::z)
        .def_readonly("w", &units::ModelParams::w)
        .def_readonly("epsB_eV", &units::ModelParams::epsB_eV)
        .def_readonly("lB_m", &units::ModelParams::lB_m)
        .def("__repr__", [](const units::ModelParams& mp) {
            return "Model(epsB_eV=" + io::format_number(mp.epsB_eV) +
                   ", z=" + io::format_number(mp.z) +
                   ", B_T=" + io::format_number(mp.B_T) + ")";
        });

    m.def(
        "make_model",
        [](double epsB_eV, double w, int mass_sign, double B_T) {
            if (mass_sign != 1 && mass_sign != -1)
                throw std::invalid_argument("mass_sign must be +1 or -1");
            return units::derive_model_from_scales(epsB_eV, mass_sign * w,
                                                   units::FieldParams{B_T, 0.0});
        },
        py::arg("epsB_eV") = units::reference_point::epsB_eV_quoted,
        py::arg("w") = units::reference_point::w_quoted,
        py::arg("mass_sign") = -1, py::arg("B_T") = units::reference_point::B_tesla,
        "Model from the dimensionless scales (eps_B, w); defaults to the "
        "quoted working point.");

    m.def("level_energy", &landau::level_energy, py::arg("n"), py::arg("s"),
          py::arg("model"), "E_{n,s} in eps_B units");
    m.def("zero_mode_energy", &landau::zero_mode_energy, py::arg("model"),
          "1/(2z) in eps_B units");
    m.def(
        "free_dispersion",
        [](double k1, double k2, int sign_mass) {
            py::list out;
            for (const auto& mode : landau::free_dispersion(k1, k2, sign_mass))
                out.append(py::make_tuple(mode.branch, mode.energy));
            return out;
        },
        py::arg("k1"), py::arg("k2"), py::arg("sign_mass") = -1,
        "[(branch, energy_int)] of the free deformed cone");

    py::class_<zetahall::SpectrumTable>(m, "SpectrumTable")
        .def_readonly("n_max", &zetahall::SpectrumTable::n_max)
        .def_readonly("cover_pos", &zetahall::SpectrumTable::cover_pos)
        .def_readonly("cover_neg", &zetahall::SpectrumTable::cover_neg)
        .def_readonly("margin", &zetahall::SpectrumTable::margin)
        .def_readonly("epsB_eV", &zetahall::SpectrumTable::epsB_eV)
        .def_readonly("spin_factor", &zetahall::SpectrumTable::spin_factor)
        .def(
            "levels",
            [](const zetahall::SpectrumTable& t) {
                py::list out;
                for (const auto& lv : t.levels)
                    out.append(py::make_tuple(valley_name(lv.valley), lv.n, lv.s,
                                              lv.is_zero_mode, lv.energy_int,
                                              lv.energy_eV));
                return out;
            },
            "[(valley, n, s, is_zero_mode, energy_epsB, energy_eV)] ascending")
        .def("__len__",
             [](const zetahall::SpectrumTable& t) { return t.levels.size(); });

    m.def("spectrum_table", &zetahall::build_spectrum_table, py::arg("model"),
          py::arg("n_max"), "merged two-valley table up to n_max");
    m.def("required_nmax", &zetahall::required_nmax, py::arg("mu_max_int"));
    m.def("hall_sigma", &zetahall::hall_sigma_e2h, py::arg("table"),
          py::arg("mu_int"), "T = 0 staircase, e^2/h units");
    m.def("hall_sigma_finite_t", &zetahall::hall_sigma_e2h_finiteT,
          py::arg("table"), py::arg("mu_int"), py::arg("beta_int"));

    m.def("hurwitz_zeta", &zetahall::hurwitz_zeta, py::arg("u"), py::arg("a"));
    m.def("log_gamma", &zetahall::log_gamma, py::arg("z"));
    m.def(
        "level_logdet",
        [](double E_int, double mu_int, double beta_int, double lambda_scale) {
            return zetahall::level_logdet(E_int, {mu_int, beta_int}, lambda_scale);
        },
        py::arg("E_int"), py::arg("mu_int"), py::arg("beta_int"),
        py::arg("lambda_scale") = 1.0,
        "zeta-regularized log det of one level, log(2cosh(beta(mu-E)/2))");
    m.def(
        "occupation",
        [](double E_int, double mu_int, double beta_int) {
            return zetahall::occupation(E_int, {mu_int, beta_int});
        },
        py::arg("E_int"), py::arg("mu_int"), py::arg("beta_int"));

    m.def(
        "landau_matrix_element",
        [](int n, int s, int np, int sp, const units::ModelParams& mp,
           const std::string& ordering, double a_angstrom) {
            return perturb::landau_matrix_element(n, s, np, sp,
                                                  spec_from(a_angstrom, ordering, mp),
                                                  mp);
        },
        py::arg("n"), py::arg("s"), py::arg("np"), py::arg("sp"), py::arg("model"),
        py::arg("ordering") = "prefix", py::arg("a_angstrom") = 1.42,
        "<psi_{n',s'}|DH|psi_{n,s}> in eps_B units; s = 0 is the zero mode");
    m.def(
        "element_scale",
        [](int n, int s, const units::ModelParams& mp, const std::string& ordering,
           double a_angstrom) {
            return perturb::element_scale(n, s, spec_from(a_angstrom, ordering, mp),
                                          mp);
        },
        py::arg("n"), py::arg("s"), py::arg("model"),
        py::arg("ordering") = "prefix", py::arg("a_angstrom") = 1.42,
        "||DH psi_{n,s}||, the magnitude nullity is judged against");

    m.def(
        "crossed_level",
        [](int n, int s, const units::ModelParams& mp, double eta, double k) {
            const perturb::CrossedFieldSpec cf = perturb::make_crossed_spec(eta, k, mp);
            const perturb::CrossedLevel lv = perturb::crossed_field_spectrum(n, s, cf, mp);
            py::dict out;
            out["n"] = lv.n;
            out["s"] = lv.s;
            out["is_zero_mode"] = lv.is_zero_mode;
            out["energy_int"] = lv.energy_int;
            out["shift_int"] = lv.shift_int;
            out["lambda_cr"] = lv.lambda_cr;
            out["first_order"] = perturb::crossed_field_first_order(n, s, cf, mp);
            out["warn_perturbative"] = lv.warn_perturbative;
            return out;
        },
        py::arg("n"), py::arg("s"), py::arg("model"), py::arg("eta"),
        py::arg("k") = 0.0,
        "crossed-field level: rigid shift eta(k - eta z/2) on top of E_{n,s}");

    m.def(
        "acceptance_checks",
        []() {
            py::list out;
            for (const auto& r : validate::run_acceptance_checks())
                out.append(py::make_tuple(r.name, r.pass, r.detail));
            return out;
        },
        "run the acceptance suite, [(name, pass, detail)]");
}
