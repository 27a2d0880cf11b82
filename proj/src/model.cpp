#include "dqpt/model.hpp"

#include <cmath>

namespace dqpt {

namespace debug {
bool flip_dispersion_branch = false;
}

double BlochMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& row : e)
        for (const auto& v : row) m = std::max(m, std::abs(v));
    return m;
}

double reduce_momentum(double k) {
    double r = std::fmod(k, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

std::vector<double> momentum_grid(std::size_t n) {
    std::vector<double> ks(n);
    for (std::size_t j = 0; j < n; ++j) ks[j] = two_pi * static_cast<double>(j) / static_cast<double>(n);
    return ks;
}

BlochMatrix bloch_hamiltonian(const ModelParams& p, double k) {
    const double kr = reduce_momentum(k);
    const cplx dy = p.delta * std::sin(kr);
    const cplx dz = -(p.t1 * std::cos(kr) + p.t2 * std::cos(2.0 * kr) + p.mu());
    BlochMatrix h;
    h.e[0][0] = dz;
    h.e[0][1] = cplx(0, -1) * dy;
    h.e[1][0] = cplx(0, 1) * dy;
    h.e[1][1] = -dz;
    return h;
}

cplx dispersion(const ModelParams& p, double k) {
    const BlochMatrix h = bloch_hamiltonian(p, k);
    const cplx dy = h.dy(), dz = h.dz();
    cplx eps = std::sqrt(dy * dy + dz * dz);  // principal branch: Re >= 0
    if (eps.real() == 0.0 && eps.imag() < 0.0) eps = -eps;
    if (debug::flip_dispersion_branch) eps = -eps;
    return eps;
}

double phase_boundary_residual(const ModelParams& p) {
    const double g = p.gamma / p.delta;
    if (p.t2 == 0.0) {
        const double a = p.mu_r / p.t1;
        return a * a + g * g - 1.0;
    }
    const double lhs = p.mu_r + p.t2 - 2.0 * p.t2 * g * g;
    return lhs * lhs - p.t1 * p.t1 * (1.0 - g * g);
}

MinGapResult min_gap(const ModelParams& p, const std::vector<double>& k_grid) {
    MinGapResult r{std::abs(dispersion(p, k_grid.at(0))), k_grid.at(0)};
    for (std::size_t j = 1; j < k_grid.size(); ++j) {
        const double a = std::abs(dispersion(p, k_grid[j]));
        if (a < r.min_abs_eps) {
            r.min_abs_eps = a;
            r.k_argmin = k_grid[j];
        }
    }
    return r;
}

}  // namespace dqpt
