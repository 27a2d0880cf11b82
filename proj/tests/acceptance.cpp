// Acceptance gate: one line per criterion, nonzero exit if any fails.
//
// The checks pin the quantitative behavior of the library against
// independent oracles (from-scratch matrix exponential, analytic Hermitian
// critical point) and against the structural claims for the reference
// quenches: ordering of biorthogonal vs self-normal critical times, unit
// DTOP jumps, cusp/event/jump coincidence, the p(k_c,t) staircase, and the
// phase-boundary gap closings.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "dqpt/fisher.hpp"
#include "dqpt/topology.hpp"
#include "helpers.hpp"

using namespace dqpt;
using namespace dqpt_test;

namespace {

using clock_type = std::chrono::steady_clock;

struct Gate {
    int failures = 0;

    void report(int id, const std::string& name, bool pass, const std::string& detail) {
        std::printf("criterion %2d %-24s %s  %s\n", id, name.c_str(), pass ? "[PASS]" : "[FAIL]",
                    detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

double elapsed(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

const QuenchSpec fig1_quench{{1.0, 0.0, 0.9, 0.25, 0.5}, {1.0, 0.0, 0.9, 1.7, 0.5}, 2000, 6.0,
                             1201};

// 1. closed-form evolve vs the eigendecomposition exponential, 1e3 random
// draws, relative 1e-10, under 5 s.
void criterion_evolution(Gate& gate) {
    const auto t0 = clock_type::now();
    Rng rng(11);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = random_gapped(rng);
        const double k = rng.uniform(0.0, two_pi);
        const double t = rng.uniform(0.0, 10.0);
        const BlochMatrix h = bloch_hamiltonian(p, k);
        const cplx eps = dispersion(p, k);
        const StateVector s{cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                            cplx(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        const StateVector got = evolve(h, eps, t, s);
        const StateVector want = expm_oracle(h, t, s);
        worst = std::max(worst, (got - want).norm() / std::max(want.norm(), 1e-300));
    }
    const double dt = elapsed(t0);
    gate.report(1, "evolution-oracle", worst < 1e-10 && dt < 5.0,
                fmt("worst rel %.2e over 1000 draws, %.2f s", worst, dt));
}

// 2. biorthonormality and resolution of identity, 1e3 random gapped
// momenta, 1e-10, under 1 s.
void criterion_biorthonormality(Gate& gate) {
    const auto t0 = clock_type::now();
    Rng rng(13);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = random_gapped(rng);
        const double k = rng.uniform(0.0, two_pi);
        const BiorthEigenSystem e = biortho_eigensystem(bloch_hamiltonian(p, k));
        worst = std::max(worst, std::abs(apply_bra(e.left_minus, e.right_minus) - 1.0));
        worst = std::max(worst, std::abs(apply_bra(e.left_plus, e.right_plus) - 1.0));
        worst = std::max(worst, std::abs(apply_bra(e.left_minus, e.right_plus)));
        worst = std::max(worst, std::abs(apply_bra(e.left_plus, e.right_minus)));
        // sum_n |u_n><u~_n| = I
        const cplx i00 = e.right_minus.a * e.left_minus.a + e.right_plus.a * e.left_plus.a;
        const cplx i01 = e.right_minus.a * e.left_minus.b + e.right_plus.a * e.left_plus.b;
        const cplx i10 = e.right_minus.b * e.left_minus.a + e.right_plus.b * e.left_plus.a;
        const cplx i11 = e.right_minus.b * e.left_minus.b + e.right_plus.b * e.left_plus.b;
        worst = std::max({worst, std::abs(i00 - 1.0), std::abs(i01), std::abs(i10),
                          std::abs(i11 - 1.0)});
    }
    const double dt = elapsed(t0);
    gate.report(2, "biorthonormality", worst < 1e-10 && dt < 1.0,
                fmt("worst residual %.2e over 1000 draws, %.2f s", worst, dt));
}

// 3. g = 1 - p to 1e-12 over 1e4 random (k, t) of the reference quench.
void criterion_echo_identity(Gate& gate) {
    Rng rng(17);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double k = rng.uniform(0.0, two_pi);
        const double t = rng.uniform(0.0, fig1_quench.t_max);
        const ModeAmplitudes amp = mode_amplitudes(fig1_quench, k, t);
        worst = std::max(worst, std::abs(mode_echo(amp) + transition_probability(amp) - 1.0));
    }
    gate.report(3, "echo-identity", worst < 1e-12, fmt("worst |g+p-1| %.2e over 10000", worst));
}

// 4. Hermitian regression: analytic (k_c, t_c) recovered by the rate cusp,
// the DTOP jump, and the Fisher event, all to 1e-3, under 10 s at N = 2000.
void criterion_hermitian(Gate& gate) {
    const auto t0 = clock_type::now();
    const HermitianOracle o = hermitian_oracle(0.25, 1.7, 0.9);
    QuenchSpec q{{1.0, 0.0, 0.9, 0.25, 0.0}, {1.0, 0.0, 0.9, 1.7, 0.0}, 2000, 2.0, 2001};
    const QuenchWorkspace ws(q);

    // (a) rate cusp: peak of the second difference on a 1e-3 grid
    const double dt = q.t_max / static_cast<double>(q.n_times - 1);
    std::vector<double> lr(q.n_times);
    for (std::size_t i = 0; i < q.n_times; ++i) lr[i] = loschmidt_rate(ws, q.t(i));
    double best = 0.0, t_cusp = 0.0;
    for (std::size_t i = 1; i + 1 < q.n_times; ++i) {
        const double d2 = std::abs(lr[i + 1] - 2.0 * lr[i] + lr[i - 1]);
        if (q.t(i) > 0.5 && d2 > best) best = d2, t_cusp = q.t(i);
    }

    // (b) DTOP jump: bisect the step of nu(t) on the half zone
    double lo = 0.5, hi = 2.0;
    const double nu_lo = dtop(ws, lo, true);
    while (hi - lo > 1e-4) {
        const double mid = (lo + hi) / 2;
        (std::abs(dtop(ws, mid, true) - nu_lo) < 0.5 ? lo : hi) = mid;
    }
    const double t_jump = (lo + hi) / 2;

    // (c) first Fisher event
    const auto events = find_events(q, 0, 2000);
    double t_fisher = 1e300, k_fisher = 0.0;
    for (const auto& e : events)
        if (e.t_c < t_fisher) t_fisher = e.t_c, k_fisher = e.k_c;
    // events come in mirror pairs k_c and 2pi - k_c; compare against [0, pi]
    if (k_fisher > M_PI) k_fisher = two_pi - k_fisher;

    const double run = elapsed(t0);
    const bool pass = std::abs(t_cusp - o.t_c) < 1e-3 && std::abs(t_jump - o.t_c) < 1e-3 &&
                      std::abs(t_fisher - o.t_c) < 1e-3 && std::abs(k_fisher - o.k_c) < 1e-3 &&
                      run < 10.0;
    gate.report(4, "hermitian-regression", pass,
                fmt("oracle t_c %.6f: cusp %.6f, jump %.6f, fisher %.6f (k_c %.6f vs %.6f), "
                    "%.2f s",
                    o.t_c, t_cusp, t_jump, t_fisher, k_fisher, o.k_c, run));
}

// events of a quench restricted to the time window, deduplicated across the
// mirror momentum pairs (same t_c at k_c and 2pi - k_c)
std::vector<DqptEvent> unique_events(const QuenchSpec& q, int n_max, double t_limit) {
    std::vector<DqptEvent> out;
    for (const auto& e : find_events(q, n_max, q.n_momenta)) {
        if (e.t_c >= t_limit) continue;
        bool dup = false;
        for (const auto& u : out)
            if (std::abs(u.t_c - e.t_c) < 1e-6) dup = true;
        if (!dup) out.push_back(e);
    }
    return out;
}

// 5. reference quench: first biorthogonal critical time strictly before the
// first self-normal one, and nu jumps by exactly +-1 at every event, the
// jump landing within one time-grid step. Under 30 s.
void criterion_fig1(Gate& gate) {
    const auto t0 = clock_type::now();
    const QuenchSpec& q = fig1_quench;
    const QuenchWorkspace ws(q);
    const double dt = q.t_max / static_cast<double>(q.n_times - 1);

    const auto events = unique_events(q, 5, q.t_max - 2 * dt);
    const auto self_cusps = detect_cusps(ws, true);
    const double t_bio = events.empty() ? 1e300 : events.front().t_c;
    const double t_self = self_cusps.empty() ? -1e300 : self_cusps.front();

    bool jumps_ok = !events.empty();
    std::string jump_list;
    for (const auto& e : events) {
        const double step = dtop(ws, e.t_c + dt, true) - dtop(ws, e.t_c - dt, true);
        jump_list += fmt(" %+.3f@%.3f", step, e.t_c);
        if (std::abs(std::abs(step) - 1.0) > 1e-3) jumps_ok = false;
    }
    const double run = elapsed(t0);
    const bool pass = t_bio < t_self && jumps_ok && run < 30.0;
    gate.report(5, "fig1-structure", pass,
                fmt("bio t_c %.4f < self %.4f, jumps%s, %.2f s", t_bio, t_self, jump_list.c_str(),
                    run));
}

// 6. the three chemical-potential quenches: every rate cusp aligns with an
// integer DTOP change within one step; at least one quench has the
// biorthogonal critical time later than the self-normal one; all events
// pass p(k_c, t_c) > 1 - 1e-6.
void criterion_fig2(Gate& gate) {
    const std::pair<double, double> pairs[3] = {{0.3, 1.7}, {-0.6, 0.7}, {1.7, -0.3}};
    bool cusps_ok = true, p_ok = true, later_seen = false;
    std::string detail;
    for (const auto& [mi, mf] : pairs) {
        QuenchSpec q{{1.0, 0.0, 0.9, mi, 0.5}, {1.0, 0.0, 0.9, mf, 0.5}, 2000, 6.0, 1201};
        const QuenchWorkspace ws(q);
        const double dt = q.t_max / static_cast<double>(q.n_times - 1);

        const auto cusps = detect_cusps(ws, false);
        int aligned = 0;
        for (double t : cusps) {
            const double step = dtop(ws, t + dt, true) - dtop(ws, t - dt, true);
            if (std::abs(step - std::round(step)) < 1e-3 && std::abs(std::round(step)) >= 1.0)
                ++aligned;
        }
        if (aligned != static_cast<int>(cusps.size()) || cusps.empty()) cusps_ok = false;

        const auto self_cusps = detect_cusps(ws, true);
        if (!cusps.empty() && !self_cusps.empty() && cusps.front() > self_cusps.front())
            later_seen = true;

        for (const auto& e : unique_events(q, 5, q.t_max))
            if (transition_probability(q, e.k_c, e.t_c) <= 1.0 - 1e-6) p_ok = false;

        detail += fmt(" (%g->%g: %d/%zu cusps aligned)", mi, mf, aligned, cusps.size());
    }
    gate.report(6, "fig2-structure", cusps_ok && later_seen && p_ok,
                fmt("%s, self-earlier case %s, p-checks %s", detail.c_str(),
                    later_seen ? "found" : "missing", p_ok ? "pass" : "fail"));
}

// 7. Fisher consistency: |c1(k_c, t_c)| < 1e-8 at every event; branch
// spacing pi / eps_f to 1e-12.
void criterion_fisher(Gate& gate) {
    const QuenchSpec& q = fig1_quench;
    double worst_c1 = 0.0, worst_gap = 0.0;
    const auto events = find_events(q, 3, q.n_momenta);
    for (const auto& e : events) {
        const ModeAmplitudes amp = mode_amplitudes(q, e.k_c, e.t_c);
        worst_c1 = std::max(worst_c1, std::abs(amp.c1));
    }
    Rng rng(19);
    for (int i = 0; i < 200; ++i) {
        const double k = rng.uniform(0.05, two_pi - 0.05);
        const ModeData md = make_mode_data(q.initial, q.final_params, k);
        for (int n = 0; n < 4; ++n) {
            const cplx gap = fisher_time(md, n + 1) - fisher_time(md, n);
            worst_gap = std::max(worst_gap, std::abs(gap - M_PI / md.eps_f));
        }
    }
    gate.report(7, "fisher-consistency", !events.empty() && worst_c1 < 1e-8 && worst_gap < 1e-12,
                fmt("%zu events, worst |c1| %.2e, worst spacing err %.2e", events.size(), worst_c1,
                    worst_gap));
}

// 8. next-nearest-neighbor quench: branches n = 0..3 all cross the
// imaginary axis; each crossing matches a rate cusp and a unit DTOP step
// within one time-grid step; p(k_c, t_c) > 1 - 1e-6. Under 60 s.
void criterion_fig4(Gate& gate) {
    const auto t0 = clock_type::now();
    QuenchSpec q{{1.0, 0.7, 0.9, -0.5, 0.5}, {1.0, 0.7, 0.9, 2.2, 0.5}, 2000, 6.0, 1201};
    const QuenchWorkspace ws(q);
    const double dt = q.t_max / static_cast<double>(q.n_times - 1);

    const auto events = unique_events(q, 3, q.t_max - 2 * dt);
    bool branches[4] = {};
    for (const auto& e : events)
        if (e.n >= 0 && e.n < 4) branches[e.n] = true;
    const bool all_cross = branches[0] && branches[1] && branches[2] && branches[3];

    const auto cusps = detect_cusps(ws, false);
    bool ok = all_cross && !events.empty();
    for (const auto& e : events) {
        double nearest = 1e300;
        for (double t : cusps) nearest = std::min(nearest, std::abs(t - e.t_c));
        if (nearest > dt) ok = false;
        const double step = dtop(ws, e.t_c + dt, true) - dtop(ws, e.t_c - dt, true);
        if (std::abs(std::abs(step) - 1.0) > 1e-3) ok = false;
        if (transition_probability(q, e.k_c, e.t_c) <= 1.0 - 1e-6) ok = false;
    }
    const double run = elapsed(t0);
    gate.report(8, "nnn-structure", ok && run < 60.0,
                fmt("%zu events, branches 0..3 %s, %.2f s", events.size(),
                    all_cross ? "all cross" : "incomplete", run));
}

// 9. p(k_c, t) staircase: at the k_c of the m-th event, exactly m - 1
// prominent maxima before p reaches 1.
void criterion_staircase(Gate& gate) {
    const QuenchSpec& q = fig1_quench;
    const auto events = unique_events(q, 3, 1e300);
    bool pass = events.size() >= 4;
    std::string detail;
    for (std::size_t m = 0; m < events.size(); ++m) {
        const int maxima = count_prominent_maxima(q, events[m].k_c, events[m].t_c);
        detail += fmt(" m=%zu:%d", m + 1, maxima);
        if (maxima != static_cast<int>(m)) pass = false;
    }
    gate.report(9, "pkt-staircase", pass, fmt("maxima before 1:%s", detail.c_str()));
}

// 10. phase boundary vs gap: 10 closings of the plain-chain boundary and 10
// of the NNN boundary give min_gap < 1e-3 at N = 8192; 10 random
// off-boundary points give min_gap > 1e-2.
void criterion_boundary(Gate& gate) {
    const std::vector<double> grid = momentum_grid(8192);
    double worst_on = 0.0, worst_off = 1e300, worst_res = 0.0;
    for (int i = 0; i < 10; ++i) {
        // gap-closing momenta taken from the scan grid itself
        const double k1 = grid[200 + 700 * static_cast<std::size_t>(i)];
        const ModelParams p1 = boundary_point_plain(k1, 0.9);
        worst_res = std::max(worst_res, std::abs(phase_boundary_residual(p1)));
        worst_on = std::max(worst_on, min_gap(p1, grid).min_abs_eps);
        const double k2 = grid[350 + 650 * static_cast<std::size_t>(i)];
        const ModelParams p2 = boundary_point_nnn(k2, 0.7, 0.9);
        worst_res = std::max(worst_res, std::abs(phase_boundary_residual(p2)));
        worst_on = std::max(worst_on, min_gap(p2, grid).min_abs_eps);
    }
    Rng rng(23);
    int off = 0;
    while (off < 10) {
        const ModelParams p = random_gapped(rng);
        if (std::abs(phase_boundary_residual(p)) < 0.2) continue;
        worst_off = std::min(worst_off, min_gap(p, grid).min_abs_eps);
        ++off;
    }
    gate.report(10, "phase-boundary", worst_res < 1e-12 && worst_on < 1e-3 && worst_off > 1e-2,
                fmt("on-boundary max gap %.2e (residual %.1e), off-boundary min gap %.2e",
                    worst_on, worst_res, worst_off));
}

}  // namespace

int main() {
    Gate gate;
    criterion_evolution(gate);
    criterion_biorthonormality(gate);
    criterion_echo_identity(gate);
    criterion_hermitian(gate);
    criterion_fig1(gate);
    criterion_fig2(gate);
    criterion_fisher(gate);
    criterion_fig4(gate);
    criterion_staircase(gate);
    criterion_boundary(gate);
    if (gate.failures) {
        std::printf("acceptance: %d criterion(s) failed\n", gate.failures);
        return 1;
    }
    std::printf("acceptance: all criteria passed\n");
    return 0;
}
