#include "dqpt/dynamics.hpp"

#include <cmath>

namespace dqpt {

void QuenchSpec::validate() const {
    initial.validate();
    final_params.validate();
    if (n_momenta < 2) throw ConfigError("QuenchSpec: n_momenta must be >= 2");
    if (n_times < 2) throw ConfigError("QuenchSpec: n_times must be >= 2");
    if (!(t_max > 0.0)) throw ConfigError("QuenchSpec: t_max must be positive");
    // both parameter sets must be gapped on the whole grid
    for (std::size_t j = 0; j < n_momenta; ++j) {
        const double kj = k(j);
        for (const ModelParams* p : {&initial, &final_params}) {
            const BlochMatrix h = bloch_hamiltonian(*p, kj);
            if (std::abs(dispersion(*p, kj)) <= degeneracy_floor * h.max_abs())
                throw DegeneracyError("QuenchSpec: gap closes on the momentum grid");
        }
    }
}

cplx sinc_c(cplx z) {
    if (std::abs(z) < 1e-6) {
        const cplx z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

StateVector evolve(const BlochMatrix& h_f, cplx eps_f, double t, const StateVector& state) {
    const cplx z = eps_f * t;
    const cplx c = std::cos(z);
    const cplx s_over_eps = t * sinc_c(z);  // sin(eps t)/eps
    const StateVector hv = apply_matrix(h_f, state);
    return {c * state.a - cplx(0, 1) * s_over_eps * hv.a,
            c * state.b - cplx(0, 1) * s_over_eps * hv.b};
}

ModeData make_mode_data(const ModelParams& initial, const ModelParams& final_params, double k) {
    ModeData md;
    md.k = k;
    md.eig_i = biortho_eigensystem(bloch_hamiltonian(initial, k));
    md.h_f = bloch_hamiltonian(final_params, k);
    md.eps_f = dispersion(final_params, k);

    const StateVector& um = md.eig_i.right_minus;
    const StateVector& up = md.eig_i.right_plus;
    const StateVector hum = apply_matrix(md.h_f, um);
    const StateVector hup = apply_matrix(md.h_f, up);
    md.a[0][0] = apply_bra(md.eig_i.left_minus, hum);
    md.a[0][1] = apply_bra(md.eig_i.left_minus, hup);
    md.a[1][0] = apply_bra(md.eig_i.left_plus, hum);
    md.a[1][1] = apply_bra(md.eig_i.left_plus, hup);
    md.m11 = md.a[0][0] / md.eps_f;
    md.m21 = md.a[1][0] / md.eps_f;

    md.w = {hum.a / md.eps_f, hum.b / md.eps_f};
    md.y_self = conj_dot(um, md.w);
    md.s_uw = md.y_self;  // <u|w> with unit-norm u
    md.nw2 = std::norm(md.w.a) + std::norm(md.w.b);
    return md;
}

ModeAmplitudes mode_amplitudes(const ModeData& md, double t) {
    const cplx z = md.eps_f * t;
    const cplx c = std::cos(z);
    const cplx is = cplx(0, 1) * std::sin(z);
    return {c - is * md.m11, -is * md.m21};
}

ModeAmplitudes mode_amplitudes(const QuenchSpec& q, double k, double t) {
    return mode_amplitudes(make_mode_data(q.initial, q.final_params, k), t);
}

double mode_echo(const ModeAmplitudes& amp) {
    const double n1 = std::norm(amp.c1), n2 = std::norm(amp.c2);
    const double den = n1 + n2;
    if (!(den > 0.0)) throw ZeroNormError("mode_echo: |c1|^2 + |c2|^2 underflowed");
    return n1 / den;
}

double mode_echo(const QuenchSpec& q, double k, double t) {
    return mode_echo(mode_amplitudes(q, k, t));
}

double transition_probability(const ModeAmplitudes& amp) {
    const double n1 = std::norm(amp.c1), n2 = std::norm(amp.c2);
    const double den = n1 + n2;
    if (!(den > 0.0)) throw ZeroNormError("transition_probability: |c1|^2 + |c2|^2 underflowed");
    return n2 / den;
}

double transition_probability(const QuenchSpec& q, double k, double t) {
    return transition_probability(mode_amplitudes(q, k, t));
}

QuenchWorkspace::QuenchWorkspace(const QuenchSpec& q) : spec_(q) {
    spec_.validate();
    const std::size_t n = spec_.n_momenta;
    modes_.resize(n);
    auto* data = modes_.data();
    bool degenerate = false;  // exceptions may not escape the omp region
#pragma omp parallel for schedule(static) reduction(|| : degenerate)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) {
        try {
            data[j] = make_mode_data(spec_.initial, spec_.final_params,
                                     spec_.k(static_cast<std::size_t>(j)));
        } catch (const DqptError&) {
            degenerate = true;
        }
    }
    if (degenerate)
        throw DegeneracyError("QuenchWorkspace: eigensystem construction failed on the grid");
}

namespace {

constexpr double g_floor = 1e-300;

double ln_mode_echo(const ModeData& md, double t) {
    const ModeAmplitudes amp = mode_amplitudes(md, t);
    const double n1 = std::norm(amp.c1), n2 = std::norm(amp.c2);
    const double g = std::max(n1 / std::max(n1 + n2, g_floor), g_floor);
    return std::log(g);
}

double ln_self_normal_factor(const ModeData& md, double t) {
    const cplx z = md.eps_f * t;
    const cplx c = std::cos(z);
    const cplx mis = cplx(0, -1) * std::sin(z);
    // overlap <u_-^i|u_-^i(t)> and norm of u_-^i(t) = c u + mis w
    const cplx ov = c + mis * md.y_self;
    const double nrm2 = std::norm(c) + std::norm(mis) * md.nw2 +
                        2.0 * std::real(std::conj(c) * mis * md.s_uw);
    const double f = std::max(std::norm(ov) / std::max(nrm2, g_floor), g_floor);
    return std::log(f);
}

}  // namespace

double loschmidt_rate(const QuenchWorkspace& ws, double t) {
    double sum = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) sum += ln_mode_echo(ws.mode(j), t);
    return -sum / static_cast<double>(ws.size());
}

double loschmidt_rate(const QuenchSpec& q, double t) {
    return loschmidt_rate(QuenchWorkspace(q), t);
}

double self_normal_rate(const QuenchWorkspace& ws, double t) {
    double sum = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) sum += ln_self_normal_factor(ws.mode(j), t);
    return -sum / static_cast<double>(ws.size());
}

double self_normal_rate(const QuenchSpec& q, double t) {
    return self_normal_rate(QuenchWorkspace(q), t);
}

RateSeries rate_series(const QuenchWorkspace& ws) {
    const QuenchSpec& q = ws.spec();
    const std::size_t m = q.n_times, n = ws.size();
    RateSeries out;
    out.t.resize(m);
    out.bio.resize(m);
    out.self_normal.resize(m);
    // per-k log factors for one t, summed in ascending k order
    std::vector<double> lg(n), lf(n);
    for (std::size_t i = 0; i < m; ++i) {
        const double ti = q.t(i);
        auto* plg = lg.data();
        auto* plf = lf.data();
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) {
            const ModeData& md = ws.mode(static_cast<std::size_t>(j));
            plg[j] = ln_mode_echo(md, ti);
            plf[j] = ln_self_normal_factor(md, ti);
        }
        double sg = 0.0, sf = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sg += lg[j];
            sf += lf[j];
        }
        out.t[i] = ti;
        out.bio[i] = -sg / static_cast<double>(n);
        out.self_normal[i] = -sf / static_cast<double>(n);
    }
    return out;
}

RateSeries rate_series_serial(const QuenchWorkspace& ws) {
    const QuenchSpec& q = ws.spec();
    const std::size_t m = q.n_times, n = ws.size();
    RateSeries out;
    out.t.resize(m);
    out.bio.resize(m);
    out.self_normal.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double ti = q.t(i);
        double sg = 0.0, sf = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sg += ln_mode_echo(ws.mode(j), ti);
            sf += ln_self_normal_factor(ws.mode(j), ti);
        }
        out.t[i] = ti;
        out.bio[i] = -sg / static_cast<double>(n);
        out.self_normal[i] = -sf / static_cast<double>(n);
    }
    return out;
}

}  // namespace dqpt
