#ifndef DQPT_TOPOLOGY_HPP
#define DQPT_TOPOLOGY_HPP

#include "dqpt/dynamics.hpp"

namespace dqpt {

// Pancharatnam-type phases of the evolved lower band at one (k, t).
struct PhaseSlice {
    double k;
    double t;
    double total_phase;  // arg(c1), principal value
    cplx dyn_phase;
    double geom_phase;   // total - Re(dyn), reduced to (-pi, pi]
};

// Reduce an angle to (-pi, pi].
double principal_angle(double phi);

// Biorthogonal dynamical phase
//   phi_dyn = -int_0^t ds <u~(s)|H_f|u(s)> / <u~(s)|u(s)> + (i/2) ln <u~(t)|u(t)>,
// with the associated bra built in the initial biorthogonal basis, so the
// denominator is |c1|^2 + |c2|^2 (real positive) and the log term is purely
// imaginary. Composite Simpson; substeps = 0 selects
// ceil(64 t max(1, |eps_f|)) rounded up to even.
cplx dynamical_phase(const ModeData& md, double t, std::size_t substeps = 0);
cplx dynamical_phase(const QuenchSpec& q, double k, double t, std::size_t substeps = 0);

// phi_G = arg(c1) - Re(phi_dyn), principal value. Throws UndefinedPhaseError
// when |c1| < 1e-14 (exactly at DQPT points).
double geometric_phase(const ModeData& md, double t);
double geometric_phase(const QuenchSpec& q, double k, double t);

PhaseSlice phase_slice(const ModeData& md, double t);

// DTOP nu(t): winding of phi_G over the Brillouin zone by principal-value
// finite differences; [0, pi) instead of [0, 2pi) when half_bz is set.
// Retries once on a doubled k grid before throwing GridTooCoarseError.
double dtop(const QuenchWorkspace& ws, double t, bool half_bz = false);
double dtop(const QuenchSpec& q, double t, bool half_bz = false);

struct DtopSeries {
    std::vector<double> t;
    std::vector<double> nu;  // NaN where masked
    std::size_t n_masked = 0;
};

// nu on the full time grid; per-k cumulative Simpson for the dynamical phase.
// Times where the phase winding is undefined or the grid too coarse are masked.
DtopSeries dtop_series(const QuenchWorkspace& ws, bool half_bz = false);
DtopSeries dtop_series_serial(const QuenchWorkspace& ws, bool half_bz = false);

}  // namespace dqpt

#endif
