#ifndef DQPT_FISHER_HPP
#define DQPT_FISHER_HPP

#include "dqpt/dynamics.hpp"

namespace dqpt {

// Which matrix element feeds the artanh in the Fisher-zero formula:
// the biorthogonal one (the physical diagnostic) or the ordinary
// conjugate-inner-product one (the self-normal comparison baseline).
enum class EchoKind { biorthogonal, self_normal };

struct FisherSample {
    double k;
    cplx t;      // complex zero time; Z = i t
    bool valid;  // false where the artanh argument hit the branch-point window
};

struct FisherBranch {
    int n;
    std::vector<FisherSample> samples;  // ordered by k over [0, 2pi)
};

// One detected critical point.
struct DqptEvent {
    int n;
    double k_c;
    double t_c;
};

// t_n(k) = pi (2n+1) / (2 eps_f) - (i/eps_f) artanh(x),
// x = <u~_-^i|H_f/eps_f|u_-^i>; principal branch of the complex artanh.
// Throws BranchPointError when |x -+ 1| < 1e-12.
cplx fisher_time(const ModeData& md, int n, EchoKind kind = EchoKind::biorthogonal);
cplx fisher_time(const QuenchSpec& q, double k, int n, EchoKind kind = EchoKind::biorthogonal);

// Principal branch: artanh(z) = [ln(1+z) - ln(1-z)] / 2.
cplx artanh(cplx z);

// Samples t_n(k) for n = 0..n_max on a k_samples grid, masking branch points.
std::vector<FisherBranch> trace_branches(const QuenchSpec& q, int n_max, std::size_t k_samples,
                                         EchoKind kind = EchoKind::biorthogonal);

// Imaginary-axis crossings of Z_n(k): brackets sign changes of Im t_n(k) and
// refines by bisection to |Im t_n| <= tol. Events with Re t_n <= 0 are
// discarded, near-duplicates merged, result sorted by (t_c, k_c, n).
std::vector<DqptEvent> find_events(const QuenchSpec& q, int n_max, std::size_t k_samples,
                                   double tol = 1e-10, EchoKind kind = EchoKind::biorthogonal);

}  // namespace dqpt

#endif
