#ifndef DQPT_TESTS_HELPERS_HPP
#define DQPT_TESTS_HELPERS_HPP

// Shared oracles and detectors for the unit and acceptance suites. Everything
// here is deliberately independent of the library internals: the matrix
// exponential goes through a from-scratch eigendecomposition, the Hermitian
// critical point is solved analytically, and cusps are located from finite
// differences of the rate series alone.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dqpt/dynamics.hpp"
#include "dqpt/model.hpp"

namespace dqpt_test {

using dqpt::cplx;

// ---------------------------------------------------------------------------
// random draws

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
};

// Random parameter set whose spectrum stays away from the degeneracy floor
// on a coarse scan, so eigensystem construction is safe at any k.
inline dqpt::ModelParams random_gapped(Rng& rng, bool allow_nnn = true) {
    for (;;) {
        dqpt::ModelParams p;
        p.t1 = rng.uniform(0.5, 1.5);
        p.t2 = allow_nnn && rng.uniform(0.0, 1.0) < 0.5 ? rng.uniform(-0.8, 0.8) : 0.0;
        p.delta = rng.uniform(0.5, 1.2);
        p.mu_r = rng.uniform(-2.0, 2.0);
        p.gamma = rng.uniform(-1.0, 1.0);
        double lo = 1e300;
        for (int j = 0; j < 512; ++j)
            lo = std::min(lo, std::abs(dqpt::dispersion(p, dqpt::two_pi * j / 512.0)));
        if (lo > 0.05) return p;
    }
}

// ---------------------------------------------------------------------------
// independent matrix-exponential oracle

// exp(-i H t) |state> via a from-scratch eigendecomposition of the 2x2
// matrix: eigenvalues from the characteristic polynomial, eigenvectors from
// the column relations, inverse by the adjugate. No branch or gauge fixing.
inline dqpt::StateVector expm_oracle(const dqpt::BlochMatrix& h, double t,
                                     const dqpt::StateVector& state) {
    const cplx a = h.e[0][0], b = h.e[0][1], c = h.e[1][0], d = h.e[1][1];
    const cplx tr = a + d, det = a * d - b * c;
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;

    auto eigvec = [&](cplx l) -> dqpt::StateVector {
        const dqpt::StateVector v1{b, l - a}, v2{l - d, c};
        return v1.norm() >= v2.norm() ? v1 : v2;
    };
    const dqpt::StateVector v1 = eigvec(l1), v2 = eigvec(l2);
    const cplx vdet = v1.a * v2.b - v2.a * v1.b;

    // coefficients of state in the (v1, v2) basis, via the 2x2 inverse
    const cplx c1 = (v2.b * state.a - v2.a * state.b) / vdet;
    const cplx c2 = (-v1.b * state.a + v1.a * state.b) / vdet;
    const cplx ph1 = std::exp(cplx(0, -1) * l1 * t), ph2 = std::exp(cplx(0, -1) * l2 * t);
    return (c1 * ph1) * v1 + (c2 * ph2) * v2;
}

// ---------------------------------------------------------------------------
// analytic Hermitian critical point

struct HermitianOracle {
    double cos_kc, k_c, eps_f, t_c;
};

// gamma = 0 quench (t1=1): the echo vanishes where
// (cos k + mu_i)(cos k + mu_f) + Delta^2 sin^2 k = 0, a quadratic in cos k.
inline HermitianOracle hermitian_oracle(double mu_i, double mu_f, double delta) {
    const double a = 1.0 - delta * delta;
    const double b = mu_i + mu_f;
    const double c = mu_i * mu_f + delta * delta;
    const double disc = std::sqrt(b * b - 4.0 * a * c);
    double root = (-b + disc) / (2.0 * a);
    if (std::abs(root) > 1.0) root = (-b - disc) / (2.0 * a);
    HermitianOracle o;
    o.cos_kc = root;
    o.k_c = std::acos(root);
    o.eps_f = std::hypot(delta * std::sin(o.k_c), root + mu_f);
    o.t_c = M_PI / (2.0 * o.eps_f);
    return o;
}

// ---------------------------------------------------------------------------
// cusp detection on rate series

// Kink times of a rate curve. Candidates are local maxima of the second
// difference on the sampling grid; each candidate is then re-measured at half
// the step. A genuine kink has a second difference proportional to dt (slope
// jump), a smooth extremum one proportional to dt^2, so the inferred slope
// jump survives the refinement only for true cusps.
inline std::vector<double> detect_cusps(const dqpt::QuenchWorkspace& ws, bool self_normal,
                                        double rel_floor = 10.0, double abs_floor = 1e-5) {
    const dqpt::QuenchSpec& q = ws.spec();
    const double dt = q.t_max / static_cast<double>(q.n_times - 1);
    auto rate = [&](double t) {
        return self_normal ? dqpt::self_normal_rate(ws, t) : dqpt::loschmidt_rate(ws, t);
    };
    std::vector<double> lr(q.n_times);
    for (std::size_t i = 0; i < q.n_times; ++i) lr[i] = rate(q.t(i));

    std::vector<double> d2(q.n_times, 0.0);
    for (std::size_t i = 1; i + 1 < q.n_times; ++i)
        d2[i] = std::abs(lr[i + 1] - 2.0 * lr[i] + lr[i - 1]);
    std::vector<double> sorted(d2.begin() + 1, d2.end() - 1);
    std::sort(sorted.begin(), sorted.end());
    const double floor = std::max(abs_floor, rel_floor * sorted[sorted.size() / 2]);

    std::vector<double> cusps;
    for (std::size_t i = 2; i + 2 < q.n_times; ++i) {
        if (!(d2[i] > d2[i - 1] && d2[i] >= d2[i + 1] && d2[i] > floor)) continue;
        // sub-grid kink estimate: a slope jump at t_i + theta*dt splits its
        // second-difference weight (1-theta) : theta between t_i and the
        // neighbor on the kink side
        const double side = d2[i + 1] >= d2[i - 1] ? 1.0 : -1.0;
        const double wing = std::max(d2[i + 1], d2[i - 1]);
        const double t_est = q.t(i) + side * dt * wing / (d2[i] + wing);
        // slope jump re-measured at half step, centered on the estimate: a
        // kink keeps its magnitude, a smooth extremum loses half of it
        const double jump_full = (d2[i] + wing) / dt;
        const double d2_half =
            std::abs(rate(t_est + dt / 2) - 2.0 * rate(t_est) + rate(t_est - dt / 2));
        if (d2_half / (dt / 2) > 0.5 * jump_full) cusps.push_back(t_est);
    }
    return cusps;
}

// ---------------------------------------------------------------------------
// staircase maxima of p(k_c, t)

// Number of strict local maxima of p(k_c, t) with at least `prominence`
// relief on both sides, before p first reaches 1 - 1e-6.
inline int count_prominent_maxima(const dqpt::QuenchSpec& q, double k_c, double t_c,
                                  double prominence = 1e-3, std::size_t n_samples = 4000) {
    const dqpt::ModeData md = dqpt::make_mode_data(q.initial, q.final_params, k_c);
    std::vector<double> p(n_samples);
    std::size_t stop = n_samples;
    for (std::size_t i = 0; i < n_samples; ++i) {
        p[i] = dqpt::transition_probability(dqpt::mode_amplitudes(md, t_c * i / (n_samples - 1.0)));
        if (p[i] > 1.0 - 1e-6) {
            stop = i;
            break;
        }
    }
    int count = 0;
    for (std::size_t i = 1; i + 1 < stop; ++i) {
        if (!(p[i] > p[i - 1] && p[i] > p[i + 1])) continue;
        double left = p[i], right = p[i];
        for (std::size_t j = i; j-- > 0 && p[j] < p[i];) left = std::min(left, p[j]);
        for (std::size_t j = i + 1; j < stop && p[j] < p[i]; ++j) right = std::min(right, p[j]);
        if (p[i] - std::max(left, right) >= prominence) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// phase-boundary point constructors

// Gap-closing parameters of the plain chain (t1 = 1): the dispersion
// vanishes at k* when mu_r = -cos k* and gamma = Delta sin k*, which sits
// exactly on the boundary ellipse. k* is taken from the n-point grid so a
// grid scan can resolve the closing.
inline dqpt::ModelParams boundary_point_plain(double k_star, double delta) {
    return {1.0, 0.0, delta, -std::cos(k_star), delta * std::sin(k_star)};
}

// Same construction for the next-nearest-neighbor chain.
inline dqpt::ModelParams boundary_point_nnn(double k_star, double t2, double delta) {
    return {1.0, t2, delta, -(std::cos(k_star) + t2 * std::cos(2.0 * k_star)),
            delta * std::sin(k_star)};
}

}  // namespace dqpt_test

#endif
