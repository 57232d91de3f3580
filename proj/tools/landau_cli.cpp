#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nalandau/io.hpp"
#include "nalandau/landau.hpp"
#include "nalandau/lattice.hpp"
#include "nalandau/perturb.hpp"
#include "nalandau/units.hpp"
#include "nalandau/validate.hpp"
#include "nalandau/zetahall.hpp"

using nlohmann::json;
using namespace nalandau;

namespace {

struct CliError {
    int code;
    std::string kind, message;
};

std::string fnum(double v) { return io::format_number(v); }

template <class F>
void parallel_for(int n, int threads, F&& body) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; i++) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mx;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; t++)
        pool.emplace_back([&] {
            try {
                for (int i; (i = next.fetch_add(64)) < n;)
                    for (int j = i; j < std::min(n, i + 64); j++) body(j);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mx);
                if (!err) err = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{1, "config", "cannot open config file: " + path};
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw CliError{1, "config", std::string("config parse error: ") + e.what()};
    }
}

void reject_unknown_keys(const json& cfg, const std::set<std::string>& allowed) {
    for (const auto& item : cfg.items())
        if (!allowed.count(item.key()))
            throw CliError{1, "config", "unknown config key: " + item.key()};
}

double get_num(const json& cfg, const std::string& key, double dflt) {
    if (!cfg.contains(key)) return dflt;
    if (!cfg.at(key).is_number())
        throw CliError{1, "config", "config key must be a number: " + key};
    return cfg.at(key).get<double>();
}

int get_count(const json& cfg, const std::string& key, int dflt) {
    const double v = get_num(cfg, key, dflt);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e8)
        throw CliError{1, "config", "config key must be a count >= 1: " + key};
    return static_cast<int>(v);
}

std::string get_str(const json& cfg, const std::string& key, const std::string& dflt) {
    if (!cfg.contains(key)) return dflt;
    if (!cfg.at(key).is_string())
        throw CliError{1, "config", "config key must be a string: " + key};
    return cfg.at(key).get<std::string>();
}

double require_finite(double v, const std::string& key) {
    if (!std::isfinite(v))
        throw CliError{1, "config", "config key must be finite: " + key};
    return v;
}

// model selection: direct (eps_B, w) scales win, else a key=value params file,
// else the quoted working point
units::ModelParams model_from(const json& cfg, io::KeyValues& prov) {
    const bool direct = cfg.contains("epsB_eV") || cfg.contains("w") ||
                        cfg.contains("mass_sign") || cfg.contains("B_T");
    if (!direct && cfg.contains("params_file")) {
        const std::string path = get_str(cfg, "params_file", "");
        units::Config pc;
        try {
            pc = units::load_config(path);
        } catch (const std::exception& e) {
            throw CliError{1, "config", e.what()};
        }
        prov.emplace_back("params_file", path);
        return units::build_model(pc);
    }
    const double epsB = require_finite(
        get_num(cfg, "epsB_eV", units::reference_point::epsB_eV_quoted), "epsB_eV");
    const double w =
        require_finite(get_num(cfg, "w", units::reference_point::w_quoted), "w");
    const double sign = get_num(cfg, "mass_sign", -1.0);
    const double B = require_finite(get_num(cfg, "B_T", units::reference_point::B_tesla), "B_T");
    if (sign == 0.0 || !std::isfinite(sign))
        throw CliError{1, "config", "mass_sign must be nonzero"};
    prov.emplace_back("epsB_eV", fnum(epsB));
    prov.emplace_back("w", fnum(w));
    prov.emplace_back("mass_sign", sign < 0 ? "-1" : "1");
    prov.emplace_back("B_T", fnum(B));
    return units::derive_model_from_scales(epsB, (sign < 0 ? -1.0 : 1.0) * w,
                                           units::FieldParams{B, 0.0});
}

perturb::FactorOrder ordering_from(const std::string& name) {
    if (name == "prefix") return perturb::FactorOrder::PrefixQ;
    if (name == "after-bracket") return perturb::FactorOrder::AfterBracket;
    if (name == "after-inverse") return perturb::FactorOrder::AfterInverse;
    if (name == "suffix") return perturb::FactorOrder::SuffixQ;
    throw CliError{1, "config",
                   "ordering must be one of prefix, after-bracket, after-inverse, "
                   "suffix: " + name};
}

struct Output {
    io::Table table;
    io::KeyValues provenance;
    io::NamedArrays extras;
};

const std::set<std::string> common_keys = {
    "command", "out",       "format", "threads",
    "epsB_eV", "w",         "mass_sign", "B_T",
    "params_file"};

std::set<std::string> with(std::initializer_list<const char*> extra) {
    std::set<std::string> s = common_keys;
    for (const char* k : extra) s.insert(k);
    return s;
}

Output run_bands(const json& cfg) {
    reject_unknown_keys(cfg, with({"a_angstrom", "t_eV", "tprime_eV", "points"}));
    units::LatticeParams lp;
    lp.a_m = require_finite(get_num(cfg, "a_angstrom", units::reference_point::a_angstrom), "a_angstrom") * 1e-10;
    lp.t_eV = require_finite(get_num(cfg, "t_eV", units::reference_point::t_eV), "t_eV");
    lp.tprime_eV = require_finite(get_num(cfg, "tprime_eV", units::reference_point::tprime_eV), "tprime_eV");
    const int points = get_count(cfg, "points", 400);
    const lattice::HoneycombGeometry g = lattice::HoneycombGeometry::make(lp.a_m);
    const lattice::Vec2 gamma{0.0, 0.0};
    const lattice::Vec2 m_point = 0.5 * (g.K + g.Kprime);
    const auto rows = lattice::scan_path(g, lp, {gamma, g.K, m_point, gamma}, points);
    Output out;
    out.table.header = {"k1", "k2", "E_plus", "E_minus"};
    for (const auto& r : rows)
        out.table.rows.push_back({fnum(r.k1), fnum(r.k2), fnum(r.E_plus), fnum(r.E_minus)});
    out.provenance = {{"command", "bands"},
                      {"path", "Gamma-K-M-Gamma"},
                      {"a_angstrom", fnum(lp.a_m * 1e10)},
                      {"t_eV", fnum(lp.t_eV)},
                      {"tprime_eV", fnum(lp.tprime_eV)},
                      {"points", std::to_string(points)}};
    return out;
}

Output run_free_dispersion(const json& cfg) {
    reject_unknown_keys(cfg, with({"sign_mass", "kmax", "points"}));
    const double sign = get_num(cfg, "sign_mass", -1.0);
    if (sign != 1.0 && sign != -1.0)
        throw CliError{1, "config", "sign_mass must be +1 or -1"};
    const double kmax = require_finite(get_num(cfg, "kmax", 3.0), "kmax");
    const int points = get_count(cfg, "points", 601);
    Output out;
    out.table.header = {"k", "E_plus", "E_minus"};
    for (int i = 0; i < points; i++) {
        const double k = points == 1 ? -kmax : -kmax + 2.0 * kmax * i / (points - 1.0);
        const auto modes = landau::free_dispersion(k, 0.0, static_cast<int>(sign));
        double ep = 0.0, em = 0.0;
        for (const auto& m : modes) (m.branch == 1 ? ep : em) = m.energy;
        out.table.rows.push_back({fnum(k), fnum(ep), fnum(em)});
    }
    out.provenance = {{"command", "free-dispersion"},
                      {"sign_mass", fnum(sign)},
                      {"kmax", fnum(kmax)},
                      {"points", std::to_string(points)}};
    return out;
}

Output run_spectrum(const json& cfg) {
    reject_unknown_keys(cfg, with({"nmax"}));
    Output out;
    out.provenance = {{"command", "spectrum"}};
    const units::ModelParams mp = model_from(cfg, out.provenance);
    const int nmax = get_count(cfg, "nmax", 10);
    const zetahall::SpectrumTable table = zetahall::build_spectrum_table(mp, nmax);
    out.table.header = {"valley", "n", "s", "is_zero_mode", "energy_epsB", "energy_eV"};
    for (const auto& lv : table.levels)
        out.table.rows.push_back(
            {lv.valley == landau::Valley::K ? "K" : "Kprime", std::to_string(lv.n),
             std::to_string(lv.s), lv.is_zero_mode ? "1" : "0",
             fnum(lv.energy_int), fnum(lv.energy_eV)});
    out.provenance.emplace_back("nmax", std::to_string(nmax));
    return out;
}

Output run_hall(const json& cfg, int threads) {
    reject_unknown_keys(cfg, with({"mu_min", "mu_max", "points", "beta"}));
    Output out;
    out.provenance = {{"command", "hall"}};
    const units::ModelParams mp = model_from(cfg, out.provenance);
    const double mu_min = require_finite(get_num(cfg, "mu_min", -3.0), "mu_min");
    const double mu_max = require_finite(get_num(cfg, "mu_max", 3.0), "mu_max");
    if (mu_max < mu_min) throw CliError{1, "config", "mu_max < mu_min"};
    const int points = get_count(cfg, "points", 601);
    const double beta = get_num(cfg, "beta", 0.0);
    if (beta < 0.0 || !std::isfinite(beta))
        throw CliError{1, "config", "beta must be >= 0 (0 selects T = 0)"};

    const double reach = std::max(std::fabs(mu_min), std::fabs(mu_max));
    const zetahall::SpectrumTable table =
        zetahall::build_spectrum_table(mp, zetahall::required_nmax(reach));
    std::vector<double> mu(points), sigma(points);
    for (int i = 0; i < points; i++)
        mu[i] = points == 1 ? mu_min
                            : mu_min + (mu_max - mu_min) * i / (points - 1.0);
    parallel_for(points, threads, [&](int i) {
        sigma[i] = beta == 0.0
                       ? zetahall::hall_sigma_e2h(table, mu[i])
                       : zetahall::hall_sigma_e2h_finiteT(table, mu[i], beta);
    });
    out.table.header = {"mu_epsB", "mu_eV", "sigma_e2_over_h", "reduced"};
    std::vector<double> edges;
    for (const auto& lv : table.levels)
        if (lv.energy_int > std::max(mu_min, table.cover_neg + table.margin) &&
            lv.energy_int < std::min(mu_max, table.cover_pos - table.margin))
            edges.push_back(lv.energy_int);
    for (int i = 0; i < points; i++)
        out.table.rows.push_back({fnum(mu[i]), fnum(mu[i] * mp.epsB_eV),
                                  fnum(sigma[i]), fnum(0.25 * sigma[i])});
    out.provenance.emplace_back("mu_min", fnum(mu_min));
    out.provenance.emplace_back("mu_max", fnum(mu_max));
    out.provenance.emplace_back("points", std::to_string(points));
    out.provenance.emplace_back("beta", beta == 0.0 ? "0 (T = 0)" : fnum(beta));
    out.provenance.emplace_back("n_max", std::to_string(table.n_max));
    out.extras.emplace_back("plateau_edges_epsB", edges);
    return out;
}

Output run_perturb_check(const json& cfg) {
    reject_unknown_keys(cfg, with({"nmax", "ordering", "a_angstrom", "quadrature_order"}));
    Output out;
    out.provenance = {{"command", "perturb-check"}};
    const units::ModelParams mp = model_from(cfg, out.provenance);
    const int nmax = get_count(cfg, "nmax", 6);
    const std::string ord_name = get_str(cfg, "ordering", "prefix");
    const double a_m =
        require_finite(get_num(cfg, "a_angstrom", units::reference_point::a_angstrom), "a_angstrom") * 1e-10;
    perturb::PerturbationSpec spec = perturb::make_perturbation_spec(a_m, mp);
    spec.factor_order = ordering_from(ord_name);
    spec.quadrature_order = get_count(cfg, "quadrature_order", 64);

    std::vector<std::pair<int, int>> labels{{0, 0}};  // s = 0: zero mode
    for (int n = 0; n <= nmax; n++)
        for (int s : {-1, +1}) labels.emplace_back(n, s);
    out.table.header = {"n", "s", "np", "sp", "value"};
    for (const auto& ket : labels)
        for (const auto& bra : labels) {
            const double v = perturb::landau_matrix_element(
                ket.first, ket.second, bra.first, bra.second, spec, mp);
            out.table.rows.push_back({std::to_string(ket.first),
                                      std::to_string(ket.second),
                                      std::to_string(bra.first),
                                      std::to_string(bra.second), fnum(v)});
        }
    out.provenance.emplace_back("nmax", std::to_string(nmax));
    out.provenance.emplace_back("ordering", ord_name);
    out.provenance.emplace_back("a_angstrom", fnum(a_m * 1e10));
    out.provenance.emplace_back("quadrature_order",
                                std::to_string(spec.quadrature_order));
    out.provenance.emplace_back("strength_prefactor", fnum(spec.strength_prefactor));
    return out;
}

Output run_crossed(const json& cfg) {
    reject_unknown_keys(cfg, with({"eta", "k", "nmax"}));
    Output out;
    out.provenance = {{"command", "crossed"}};
    const units::ModelParams mp = model_from(cfg, out.provenance);
    const double eta = require_finite(get_num(cfg, "eta", 0.05), "eta");
    const double k = require_finite(get_num(cfg, "k", 0.0), "k");
    const int nmax = get_count(cfg, "nmax", 10);
    const perturb::CrossedFieldSpec cf = perturb::make_crossed_spec(eta, k, mp);

    std::vector<std::pair<int, int>> labels{{0, 0}};
    for (int n = 0; n <= nmax; n++)
        for (int s : {-1, +1}) labels.emplace_back(n, s);
    out.table.header = {"n", "s", "is_zero_mode", "energy_epsB", "shift_epsB",
                        "lambda_cr", "first_order_epsB"};
    for (const auto& lb : labels) {
        const perturb::CrossedLevel lv =
            perturb::crossed_field_spectrum(lb.first, lb.second, cf, mp);
        const double fo =
            perturb::crossed_field_first_order(lb.first, lb.second, cf, mp);
        out.table.rows.push_back({std::to_string(lv.n), std::to_string(lv.s),
                                  lv.is_zero_mode ? "1" : "0", fnum(lv.energy_int),
                                  fnum(lv.shift_int), fnum(lv.lambda_cr), fnum(fo)});
    }
    out.provenance.emplace_back("eta", fnum(eta));
    out.provenance.emplace_back("k", fnum(k));
    out.provenance.emplace_back("nmax", std::to_string(nmax));
    out.provenance.emplace_back("perturbative_ok", cf.warn_perturbative ? "no" : "yes");
    return out;
}

int run_validate(const json& cfg, std::ostream& os) {
    reject_unknown_keys(cfg, common_keys);
    int failures = 0;
    for (const auto& r : validate::run_acceptance_checks()) {
        os << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        if (!r.pass) failures++;
    }
    os.flush();
    return failures;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deformed-Landau graphene model: spectra, Hall staircase, "
                 "perturbation tables"};
    std::string command, config_path, out_path = "-", format = "csv";
    int threads = 0;
    app.add_option("command", command,
                   "bands | free-dispersion | spectrum | hall | perturb-check | "
                   "crossed | validate (may also come from the config)");
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_path, "output path, - for stdout");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads for grid sweeps")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(e);
        io::write_error_json(std::cerr, "usage", e.what());
        std::cerr << "\n";
        return 1;
    }

    try {
        json cfg = json::object();
        if (!config_path.empty()) cfg = load_json_file(config_path);
        if (!cfg.is_object())
            throw CliError{1, "config", "config root must be a JSON object"};
        if (command.empty()) command = get_str(cfg, "command", "");
        if (command.empty())
            throw CliError{1, "usage", "no command given (argument or config)"};
        if (app.count("--out") == 0) out_path = get_str(cfg, "out", out_path);
        if (app.count("--format") == 0) format = get_str(cfg, "format", format);
        if (format != "csv" && format != "json")
            throw CliError{1, "config", "format must be csv or json"};
        if (app.count("--threads") == 0)
            threads = static_cast<int>(get_num(cfg, "threads", 0));
        if (threads <= 0) {
            if (const char* env = std::getenv("LANDAU_THREADS"))
                threads = std::atoi(env);
        }
        if (threads <= 0)
            threads = std::max(1u, std::thread::hardware_concurrency());

        std::ofstream file;
        std::ostream* os = &std::cout;
        if (out_path != "-") {
            file.open(out_path);
            if (!file) throw CliError{1, "io", "cannot open output path: " + out_path};
            os = &file;
        }

        if (command == "validate") {
            const int failures = run_validate(cfg, *os);
            if (failures) {
                io::write_error_json(
                    std::cerr, "validation",
                    std::to_string(failures) + " acceptance check(s) failed");
                std::cerr << "\n";
                return 2;
            }
            return 0;
        }

        Output out;
        if (command == "bands") out = run_bands(cfg);
        else if (command == "free-dispersion") out = run_free_dispersion(cfg);
        else if (command == "spectrum") out = run_spectrum(cfg);
        else if (command == "hall") out = run_hall(cfg, threads);
        else if (command == "perturb-check") out = run_perturb_check(cfg);
        else if (command == "crossed") out = run_crossed(cfg);
        else throw CliError{1, "usage", "unknown command: " + command};

        out.provenance.emplace_back("format", format);
        if (format == "csv") io::write_csv(*os, out.table);
        else io::write_json(*os, out.table, out.provenance, out.extras);
        os->flush();
        if (out_path != "-" && !file)
            throw CliError{2, "io", "write failed: " + out_path};
        return 0;
    } catch (const CliError& e) {
        io::write_error_json(std::cerr, e.kind, e.message);
        std::cerr << "\n";
        return e.code;
    } catch (const std::domain_error& e) {
        io::write_error_json(std::cerr, "domain", e.what());
        std::cerr << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        io::write_error_json(std::cerr, "domain", e.what());
        std::cerr << "\n";
        return 2;
    } catch (const std::exception& e) {
        io::write_error_json(std::cerr, "numeric", e.what());
        std::cerr << "\n";
        return 2;
    }
}
