#include "dqpt/fisher.hpp"

#include <algorithm>
#include <cmath>

namespace dqpt {

namespace {

constexpr double branch_window = 1e-12;

cplx matrix_element(const ModeData& md, EchoKind kind) {
    return kind == EchoKind::biorthogonal ? md.m11 : md.y_self;
}

}  // namespace

cplx artanh(cplx z) {
    return 0.5 * (std::log(1.0 + z) - std::log(1.0 - z));
}

cplx fisher_time(const ModeData& md, int n, EchoKind kind) {
    const cplx x = matrix_element(md, kind);
    if (std::abs(x - 1.0) < branch_window || std::abs(x + 1.0) < branch_window)
        throw BranchPointError("fisher_time: artanh argument at a branch point");
    const double pref = M_PI * (2.0 * n + 1.0) / 2.0;
    return pref / md.eps_f - cplx(0, 1) * artanh(x) / md.eps_f;
}

cplx fisher_time(const QuenchSpec& q, double k, int n, EchoKind kind) {
    return fisher_time(make_mode_data(q.initial, q.final_params, k), n, kind);
}

std::vector<FisherBranch> trace_branches(const QuenchSpec& q, int n_max, std::size_t k_samples,
                                         EchoKind kind) {
    if (n_max < 0) throw ConfigError("trace_branches: n_max must be >= 0");
    const std::vector<double> ks = momentum_grid(k_samples);

    // t_{n+1} - t_n = pi/eps_f, so one matrix element serves every branch.
    struct KData {
        cplx t0;
        cplx spacing;
        bool valid;
    };
    std::vector<KData> base(k_samples);
    auto* pbase = base.data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(k_samples); ++j) {
        try {
            const ModeData md = make_mode_data(q.initial, q.final_params, ks[j]);
            pbase[j] = {fisher_time(md, 0, kind), M_PI / md.eps_f, true};
        } catch (const DqptError&) {
            pbase[j] = {0.0, 0.0, false};
        }
    }

    std::vector<FisherBranch> branches(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        FisherBranch& br = branches[static_cast<std::size_t>(n)];
        br.n = n;
        br.samples.resize(k_samples);
        for (std::size_t j = 0; j < k_samples; ++j) {
            const KData& b = base[j];
            br.samples[j] = {ks[j], b.valid ? b.t0 + static_cast<double>(n) * b.spacing : cplx{},
                             b.valid};
        }
    }
    return branches;
}

namespace {

struct ImEval {
    double im;
    double re;
    bool valid;
};

ImEval eval_im(const QuenchSpec& q, double k, int n, EchoKind kind) {
    try {
        const cplx t = fisher_time(q, k, n, kind);
        return {t.imag(), t.real(), true};
    } catch (const DqptError&) {
        return {0.0, 0.0, false};
    }
}

}  // namespace

std::vector<DqptEvent> find_events(const QuenchSpec& q, int n_max, std::size_t k_samples,
                                   double tol, EchoKind kind) {
    const auto branches = trace_branches(q, n_max, k_samples, kind);
    const double dk = two_pi / static_cast<double>(k_samples);

    std::vector<DqptEvent> events;
    for (const FisherBranch& br : branches) {
        for (std::size_t j = 0; j + 1 < br.samples.size(); ++j) {
            const FisherSample& a = br.samples[j];
            const FisherSample& b = br.samples[j + 1];
            if (!a.valid || !b.valid) continue;
            if (a.t.imag() == 0.0) {  // root exactly on a sample
                if (a.t.real() > 0.0) events.push_back({br.n, a.k, a.t.real()});
                continue;
            }
            if (a.t.imag() * b.t.imag() >= 0.0) continue;

            double lo = a.k, hi = b.k;
            double f_lo = a.t.imag();
            double k_root = 0.5 * (lo + hi), re_root = 0.0;
            for (int it = 0; it < 200; ++it) {
                k_root = 0.5 * (lo + hi);
                const ImEval mid = eval_im(q, k_root, br.n, kind);
                if (!mid.valid) break;  // bracket ran into a branch point
                re_root = mid.re;
                if (std::abs(mid.im) <= tol || hi - lo < 1e-15) break;
                if (f_lo * mid.im < 0.0) {
                    hi = k_root;
                } else {
                    lo = k_root;
                    f_lo = mid.im;
                }
            }
            const ImEval fin = eval_im(q, k_root, br.n, kind);
            if (fin.valid && std::abs(fin.im) <= tol && fin.re > 0.0)
                events.push_back({br.n, k_root, fin.re});
        }
    }

    std::sort(events.begin(), events.end(), [](const DqptEvent& a, const DqptEvent& b) {
        if (a.t_c != b.t_c) return a.t_c < b.t_c;
        if (a.k_c != b.k_c) return a.k_c < b.k_c;
        return a.n < b.n;
    });

    // merge duplicates found from adjacent brackets (one grid cell window)
    std::vector<DqptEvent> merged;
    for (const DqptEvent& e : events) {
        const bool dup = std::any_of(merged.begin(), merged.end(), [&](const DqptEvent& m) {
            return m.n == e.n && std::abs(m.k_c - e.k_c) <= dk &&
                   std::abs(m.t_c - e.t_c) <= dk * (1.0 + std::abs(e.t_c));
        });
        if (!dup) merged.push_back(e);
    }
    return merged;
}

}  // namespace dqpt
