#include "nalandau/landau.hpp"

#include <cmath>
#include <stdexcept>

namespace nalandau::landau {

namespace {

constexpr double pi = 3.14159265358979323846;

void require_level(int n, int s) {
    if (n < 0) throw std::invalid_argument("landau: n must be >= 0");
    if (s != 1 && s != -1) throw std::invalid_argument("landau: s must be +1 or -1");
}

void require_massive(const units::ModelParams& mp) {
    if (mp.z == 0.0)
        throw std::domain_error("landau: z = 0 (massless); use the massless regime");
}

} // namespace

double level_energy(int n, int s, const units::ModelParams& mp) {
    require_level(n, s);
    require_massive(mp);
    const double D = 1.0 + 8.0 * mp.z * mp.z * (n + 1.0);
    return (n + 1.0 + 0.5 * s * std::sqrt(D)) / mp.z;
}

double zero_mode_energy(const units::ModelParams& mp) {
    require_massive(mp);
    return 0.5 / mp.z;
}

double limit_energy(int n, int s, const units::ModelParams& mp, Regime regime) {
    require_level(n, s);
    switch (regime) {
        case Regime::LargeZ:
            require_massive(mp);
            return s * std::sqrt(2.0 * (n + 1.0)) + (n + 1.0) / mp.z;
        case Regime::SmallZ:
            require_massive(mp);
            return (n + 1.0 + 0.5 * s) / mp.z + 2.0 * s * mp.z * (n + 1.0);
        case Regime::Massless:
            return s * std::sqrt(2.0 * (n + 1.0));
    }
    throw std::invalid_argument("landau: unknown regime");
}

SpinorState eigenstate(int n, int s, double k, const units::ModelParams& mp) {
    require_level(n, s);
    require_massive(mp);
    const double z = mp.z;
    const double D = 1.0 + 8.0 * z * z * (n + 1.0);
    const double sqrtD = std::sqrt(D);
    const double rho = (1.0 - s * sqrtD) / (2.0 * z * std::sqrt(2.0 * (n + 1.0)));
    SpinorState st;
    st.n = n;
    st.s = s;
    st.k = k;
    st.center = k;
    st.upper_index = n + 1;
    st.lower_index = n;
    st.c_upper = 1.0 / std::sqrt(1.0 + rho * rho);
    st.c_lower = cplx{0.0, rho} * st.c_upper;
    // sqrt(D) + s evaluated without cancellation on the s = -1 branch
    const double sqrtD_plus_s =
        (s > 0) ? sqrtD + 1.0 : 8.0 * z * z * (n + 1.0) / (sqrtD + 1.0);
    st.K_norm = std::exp(-0.5 * (n + 2.0) * std::log(2.0) + 0.5 * std::log(sqrtD_plus_s) -
                         0.25 * std::log(pi) - 0.5 * std::lgamma(n + 2.0) -
                         0.25 * std::log(D));
    st.energy_int = level_energy(n, s, mp);
    return st;
}

SpinorState zero_mode_state(double k, const units::ModelParams& mp) {
    require_massive(mp);
    SpinorState st;
    st.is_zero_mode = true;
    st.n = 0;
    st.s = 0;
    st.k = k;
    st.center = k;
    st.upper_index = 0;
    st.lower_index = -1;
    st.c_upper = 1.0;
    st.c_lower = 0.0;
    st.K_norm = std::pow(pi, -0.25);
    st.energy_int = zero_mode_energy(mp);
    return st;
}

cplx state_upper(const SpinorState& st, double q) {
    return st.c_upper * osc::hermite_function(st.upper_index, q);
}

cplx state_lower(const SpinorState& st, double q) {
    if (st.lower_index < 0) return {0.0, 0.0};
    return st.c_lower * osc::hermite_function(st.lower_index, q);
}

std::vector<LandauLevel> valley_spectrum(Valley v, int n_max,
                                         const units::ModelParams& mp) {
    if (n_max < 0) throw std::invalid_argument("landau: n_max must be >= 0");
    require_massive(mp);
    const double sign = (v == Valley::K) ? 1.0 : -1.0;
    const double deg = units::degeneracy_per_area(mp);
    std::vector<LandauLevel> levels;
    levels.reserve(2 * (n_max + 1) + 1);
    LandauLevel zm;
    zm.valley = v;
    zm.is_zero_mode = true;
    zm.energy_int = sign * zero_mode_energy(mp);
    zm.energy_eV = units::energy_from_internal(zm.energy_int, mp);
    zm.degeneracy_per_area = deg;
    levels.push_back(zm);
    for (int n = 0; n <= n_max; n++) {
        for (int s : {-1, 1}) {
            LandauLevel lv;
            lv.valley = v;
            lv.n = n;
            lv.s = s;
            lv.energy_int = sign * level_energy(n, s, mp);
            lv.energy_eV = units::energy_from_internal(lv.energy_int, mp);
            lv.degeneracy_per_area = deg;
            levels.push_back(lv);
        }
    }
    return levels;
}

std::array<FreeMode, 2> free_dispersion(double k1, double k2, int sign_mass) {
    if (sign_mass != 1 && sign_mass != -1)
        throw std::invalid_argument("landau: sign_mass must be +1 or -1");
    const double kk = std::hypot(k1, k2);
    std::array<FreeMode, 2> out;
    int idx = 0;
    for (int branch : {1, -1}) {
        FreeMode fm;
        fm.k1 = k1;
        fm.k2 = k2;
        fm.branch = branch;
        fm.energy = 0.5 * sign_mass * kk * kk + branch * kk;
        if (kk == 0.0) {
            fm.spinor = (branch == 1) ? std::array<cplx, 2>{cplx{1.0, 0.0}, cplx{0.0, 0.0}}
                                      : std::array<cplx, 2>{cplx{0.0, 0.0}, cplx{1.0, 0.0}};
        } else {
            const cplx phase{k1 / kk, k2 / kk};
            const double r = 1.0 / std::sqrt(2.0);
            fm.spinor = {cplx{r, 0.0}, static_cast<double>(branch) * r * phase};
        }
        out[idx++] = fm;
    }
    return out;
}

std::array<cplx, 4> bloch_matrix(Valley v, double k1, double k2, int sign_mass) {
    if (sign_mass != 1 && sign_mass != -1)
        throw std::invalid_argument("landau: sign_mass must be +1 or -1");
    const double e0 = 0.5 * sign_mass * (k1 * k1 + k2 * k2);
    if (v == Valley::K)
        return {cplx{e0, 0.0}, cplx{k1, -k2}, cplx{k1, k2}, cplx{e0, 0.0}};
    return {cplx{-e0, 0.0}, cplx{k1, k2}, cplx{k1, -k2}, cplx{-e0, 0.0}};
}

osc::OperatorMatrix valley_transform_sigma2(const osc::OperatorMatrix& H) {
    if (H.basis_tag != "osc*spinor")
        throw std::invalid_argument("landau: expected an osc*spinor operator");
    const osc::OperatorMatrix s2 = osc::tensor_spinor(osc::osc_identity(H.nosc), 2);
    return osc::scale(-1.0, osc::mul(s2, osc::mul(H, s2)));
}

osc::OperatorMatrix tp_conjugate(const osc::OperatorMatrix& H) {
    if (H.basis_tag != "osc*spinor")
        throw std::invalid_argument("landau: expected an osc*spinor operator");
    const int nosc = H.nosc;
    osc::OperatorMatrix out = H;
    for (int i = 0; i < nosc; i++) {
        for (int j = 0; j < nosc; j++) {
            out.at(i, j) = H.at(nosc + i, nosc + j);
            out.at(nosc + i, nosc + j) = H.at(i, j);
        }
    }
    return out;
}

CurrentDensity current_density(const SpinorState& st, const std::vector<double>& q_grid,
                               const units::ModelParams& mp) {
    require_massive(mp);
    if (q_grid.size() < 3) throw std::domain_error("landau: current grid too small");
    const double h = q_grid[1] - q_grid[0];
    if (!(h > 0.0)) throw std::domain_error("landau: grid must be increasing");
    for (size_t i = 1; i < q_grid.size(); i++) {
        if (std::fabs((q_grid[i] - q_grid[i - 1]) - h) > 1e-9 * std::fabs(h))
            throw std::domain_error("landau: grid must be uniform");
    }
    if (q_grid.front() > -8.0 + 1e-9 || q_grid.back() < 8.0 - 1e-9)
        throw std::domain_error("landau: grid must span center +- 8 lB");
    const double z = mp.z;
    CurrentDensity cd;
    cd.q = q_grid;
    cd.j0.resize(q_grid.size());
    cd.j1.resize(q_grid.size());
    cd.j2.resize(q_grid.size());
    for (size_t i = 0; i < q_grid.size(); i++) {
        const double q = q_grid[i];
        const cplx up = state_upper(st, q);
        const cplx lo = state_lower(st, q);
        const cplx dup = st.c_upper * osc::hermite_function_derivative(st.upper_index, q);
        const cplx dlo = (st.lower_index >= 0)
                             ? st.c_lower * osc::hermite_function_derivative(st.lower_index, q)
                             : cplx{0.0, 0.0};
        const double rho = std::norm(up) + std::norm(lo);
        const cplx grad = std::conj(up) * dup + std::conj(lo) * dlo;  // Phi^+ Phi'
        const cplx cross = std::conj(up) * lo;
        cd.j0[i] = rho;
        cd.j1[i] = grad.imag() / z + 2.0 * cross.real();
        cd.j2[i] = -(q / z) * rho + 2.0 * cross.imag();
    }
    return cd;
}

} // namespace nalandau::landau
