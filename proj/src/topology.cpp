#include "dqpt/topology.hpp"

#include <cmath>
#include <limits>

namespace dqpt {

namespace {

constexpr double c1_phase_floor = 1e-14;
constexpr double wrap_limit = M_PI * (1.0 - 1e-6);

// <u~(s)|H_f|u(s)> / <u~(s)|u(s)> in the initial biorthogonal basis.
cplx phase_integrand(const ModeData& md, double s) {
    const ModeAmplitudes amp = mode_amplitudes(md, s);
    const cplx c[2] = {amp.c1, amp.c2};
    cplx num = 0.0;
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) num += std::conj(c[m]) * c[n] * md.a[m][n];
    const double den = std::norm(amp.c1) + std::norm(amp.c2);
    if (!(den > 0.0)) throw ZeroNormError("dynamical_phase: biorthogonal norm vanished");
    return num / den;
}

std::size_t auto_substeps(const ModeData& md, double t) {
    const double scale = std::max(1.0, std::abs(md.eps_f));
    auto n = static_cast<std::size_t>(std::ceil(64.0 * t * scale));
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    return n;
}

cplx simpson_integral(const ModeData& md, double t0, double t1, std::size_t n) {
    const double h = (t1 - t0) / static_cast<double>(n);
    cplx acc = phase_integrand(md, t0) + phase_integrand(md, t1);
    for (std::size_t i = 1; i < n; ++i) {
        const double s = t0 + h * static_cast<double>(i);
        acc += (i % 2 == 1 ? 4.0 : 2.0) * phase_integrand(md, s);
    }
    return acc * (h / 3.0);
}

double winding(const std::vector<double>& phi, bool half_bz, std::size_t& bad_steps) {
    // phi sampled on k_j = 2*pi*j/N; winding over [0, 2pi) uses periodicity,
    // over [0, pi) it runs up to the k = pi grid point.
    const std::size_t n = phi.size();
    const std::size_t last = half_bz ? n / 2 : n;
    double sum = 0.0;
    bad_steps = 0;
    for (std::size_t j = 0; j < last; ++j) {
        const double next = (j + 1 == n) ? phi[0] : phi[j + 1];
        const double d = principal_angle(next - phi[j]);
        if (std::abs(d) >= wrap_limit) ++bad_steps;
        sum += d;
    }
    return sum / two_pi;
}

}  // namespace

double principal_angle(double phi) {
    double r = std::remainder(phi, two_pi);
    if (r <= -M_PI) r += two_pi;
    return r;
}

cplx dynamical_phase(const ModeData& md, double t, std::size_t substeps) {
    if (t == 0.0) return 0.0;
    if (substeps == 0) substeps = auto_substeps(md, t);
    if (substeps % 2 != 0) ++substeps;
    const cplx integral = simpson_integral(md, 0.0, t, substeps);
    const ModeAmplitudes amp = mode_amplitudes(md, t);
    const double norm_t = std::norm(amp.c1) + std::norm(amp.c2);
    if (!(norm_t > 0.0)) throw ZeroNormError("dynamical_phase: biorthogonal norm vanished at t");
    return -integral + cplx(0, 0.5) * std::log(norm_t);
}

cplx dynamical_phase(const QuenchSpec& q, double k, double t, std::size_t substeps) {
    return dynamical_phase(make_mode_data(q.initial, q.final_params, k), t, substeps);
}

double geometric_phase(const ModeData& md, double t) {
    const ModeAmplitudes amp = mode_amplitudes(md, t);
    if (std::abs(amp.c1) < c1_phase_floor)
        throw UndefinedPhaseError("geometric_phase: |c1| below 1e-14, total phase undefined");
    const cplx dyn = dynamical_phase(md, t);
    return principal_angle(std::arg(amp.c1) - dyn.real());
}

double geometric_phase(const QuenchSpec& q, double k, double t) {
    return geometric_phase(make_mode_data(q.initial, q.final_params, k), t);
}

PhaseSlice phase_slice(const ModeData& md, double t) {
    const ModeAmplitudes amp = mode_amplitudes(md, t);
    if (std::abs(amp.c1) < c1_phase_floor)
        throw UndefinedPhaseError("phase_slice: |c1| below 1e-14, total phase undefined");
    PhaseSlice ps;
    ps.k = md.k;
    ps.t = t;
    ps.total_phase = std::arg(amp.c1);
    ps.dyn_phase = dynamical_phase(md, t);
    ps.geom_phase = principal_angle(ps.total_phase - ps.dyn_phase.real());
    return ps;
}

namespace {

double dtop_once(const QuenchWorkspace& ws, double t, bool half_bz, std::size_t& bad_steps) {
    const std::size_t n = ws.size();
    std::vector<double> phi(n);
    auto* pphi = phi.data();
    bool undefined = false;  // exceptions may not escape the omp region
#pragma omp parallel for schedule(static) reduction(|| : undefined)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) {
        try {
            pphi[j] = geometric_phase(ws.mode(static_cast<std::size_t>(j)), t);
        } catch (const DqptError&) {
            undefined = true;
        }
    }
    if (undefined)
        throw UndefinedPhaseError("dtop: geometric phase undefined at some grid momentum");
    return winding(phi, half_bz, bad_steps);
}

}  // namespace

double dtop(const QuenchWorkspace& ws, double t, bool half_bz) {
    std::size_t bad = 0;
    const double nu = dtop_once(ws, t, half_bz, bad);
    if (bad == 0) return nu;
    // one automatic grid doubling
    QuenchSpec fine = ws.spec();
    fine.n_momenta *= 2;
    const double nu2 = dtop_once(QuenchWorkspace(fine), t, half_bz, bad);
    if (bad == 0) return nu2;
    throw GridTooCoarseError("dtop: near-pi geometric-phase step persists after grid doubling");
}

double dtop(const QuenchSpec& q, double t, bool half_bz) {
    return dtop(QuenchWorkspace(q), t, half_bz);
}

namespace {

// Fills phi[j*M + i] = phi_G(k_j, t_i); NaN where |c1| is below the phase floor.
void fill_phase_matrix(const QuenchWorkspace& ws, std::vector<double>& phi, bool parallel) {
    const QuenchSpec& q = ws.spec();
    const std::size_t n = ws.size(), m = q.n_times;
    const double dt = q.t_max / static_cast<double>(m - 1);
    auto* out = phi.data();

    auto per_mode = [&](std::size_t j) {
        const ModeData& md = ws.mode(j);
        const double scale = std::max(1.0, std::abs(md.eps_f));
        auto nsub = static_cast<std::size_t>(std::ceil(64.0 * dt * scale));
        if (nsub < 2) nsub = 2;
        if (nsub % 2 != 0) ++nsub;

        cplx integral = 0.0;
        out[j * m + 0] = 0.0;  // phi_G(k, 0) = 0
        for (std::size_t i = 1; i < m; ++i) {
            const double t0 = q.t(i - 1), t1 = q.t(i);
            try {
                integral += simpson_integral(md, t0, t1, nsub);
            } catch (const DqptError&) {
                for (std::size_t r = i; r < m; ++r)
                    out[j * m + r] = std::numeric_limits<double>::quiet_NaN();
                break;
            }
            const ModeAmplitudes amp = mode_amplitudes(md, t1);
            if (std::abs(amp.c1) < c1_phase_floor) {
                out[j * m + i] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            const double norm_t = std::norm(amp.c1) + std::norm(amp.c2);
            const cplx dyn = -integral + cplx(0, 0.5) * std::log(norm_t);
            out[j * m + i] = principal_angle(std::arg(amp.c1) - dyn.real());
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
            per_mode(static_cast<std::size_t>(j));
    } else {
        for (std::size_t j = 0; j < n; ++j) per_mode(j);
    }
}

DtopSeries dtop_series_impl(const QuenchWorkspace& ws, bool half_bz, bool parallel) {
    const QuenchSpec& q = ws.spec();
    const std::size_t n = ws.size(), m = q.n_times;
    std::vector<double> phi(n * m);
    fill_phase_matrix(ws, phi, parallel);

    DtopSeries out;
    out.t.resize(m);
    out.nu.resize(m);
    std::vector<double> column(n);
    for (std::size_t i = 0; i < m; ++i) {
        out.t[i] = q.t(i);
        bool masked = false;
        for (std::size_t j = 0; j < n; ++j) {
            column[j] = phi[j * m + i];
            if (std::isnan(column[j])) masked = true;
        }
        if (!masked) {
            std::size_t bad = 0;
            const double nu = winding(column, half_bz, bad);
            if (bad == 0) {
                out.nu[i] = nu;
                continue;
            }
        }
        out.nu[i] = std::numeric_limits<double>::quiet_NaN();
        ++out.n_masked;
    }
    return out;
}

}  // namespace

DtopSeries dtop_series(const QuenchWorkspace& ws, bool half_bz) {
    return dtop_series_impl(ws, half_bz, true);
}

DtopSeries dtop_series_serial(const QuenchWorkspace& ws, bool half_bz) {
    return dtop_series_impl(ws, half_bz, false);
}

}  // namespace dqpt
