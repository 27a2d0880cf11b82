#ifndef DQPT_DYNAMICS_HPP
#define DQPT_DYNAMICS_HPP

#include <cstddef>
#include <vector>

#include "dqpt/spectral.hpp"

namespace dqpt {

// One quench protocol: prepare the lower biorthogonal band of `initial`,
// evolve under `final_params`, sample on uniform (k, t) grids.
struct QuenchSpec {
    ModelParams initial;
    ModelParams final_params;
    std::size_t n_momenta = 256;  // k_j = 2*pi*j/N
    double t_max = 6.0;
    std::size_t n_times = 1201;  // t_i = t_max * i/(n_times-1)

    double k(std::size_t j) const {
        return two_pi * static_cast<double>(j) / static_cast<double>(n_momenta);
    }
    double t(std::size_t i) const {
        return t_max * static_cast<double>(i) / static_cast<double>(n_times - 1);
    }
    bool trivial() const { return initial == final_params; }
    void validate() const;
};

// Coefficients of the evolved lower band in the initial biorthogonal basis:
// c1 = <u~_-^i|u_-^i(t)>, c2 = <u~_+^i|u_-^i(t)>.
struct ModeAmplitudes {
    cplx c1, c2;
};

// Per-momentum cache of everything the closed-form sweeps need.
struct ModeData {
    double k;
    BiorthEigenSystem eig_i;  // initial eigensystem
    BlochMatrix h_f;
    cplx eps_f;    // branch-fixed final dispersion
    cplx m11;      // <u~_-^i| H_f/eps_f |u_-^i>
    cplx m21;      // <u~_+^i| H_f/eps_f |u_-^i>
    cplx a[2][2];  // <u~_m^i| H_f |u_n^i>
    // self-normal pieces (ordinary inner products, unit-norm |u_-^i>)
    cplx y_self;   // <u_-^i| H_f/eps_f |u_-^i>
    StateVector w; // (H_f/eps_f)|u_-^i>
    cplx s_uw;     // <u_-^i|w>
    double nw2;    // ||w||^2
};

ModeData make_mode_data(const ModelParams& initial, const ModelParams& final_params, double k);

// exp(-i H_f t) state via the traceless involution H_f^2 = eps_f^2 I:
// [cos(eps t) I - i sin(eps t) H/eps] state, series-expanded near eps t = 0.
StateVector evolve(const BlochMatrix& h_f, cplx eps_f, double t, const StateVector& state);

// sin(z)/z with the small-argument series.
cplx sinc_c(cplx z);

ModeAmplitudes mode_amplitudes(const ModeData& md, double t);
ModeAmplitudes mode_amplitudes(const QuenchSpec& q, double k, double t);

// g_k(t) = |c1|^2 / (|c1|^2 + |c2|^2), the per-mode biorthogonal echo.
double mode_echo(const QuenchSpec& q, double k, double t);
double mode_echo(const ModeAmplitudes& amp);

// p(k,t) = |c2|^2 / (|c1|^2 + |c2|^2) = 1 - g_k(t).
double transition_probability(const QuenchSpec& q, double k, double t);
double transition_probability(const ModeAmplitudes& amp);

// Precomputed per-k data for a full quench; immutable after construction.
class QuenchWorkspace {
  public:
    explicit QuenchWorkspace(const QuenchSpec& q);

    const QuenchSpec& spec() const { return spec_; }
    std::size_t size() const { return modes_.size(); }
    const ModeData& mode(std::size_t j) const { return modes_[j]; }

  private:
    QuenchSpec spec_;
    std::vector<ModeData> modes_;
};

// LR(t) = -(1/N) sum_j ln g_{k_j}(t), with g clamped at 1e-300.
double loschmidt_rate(const QuenchWorkspace& ws, double t);
double loschmidt_rate(const QuenchSpec& q, double t);

// Conventional rate: per-mode |<u_-^i|u_-^i(t)>|^2 / ||u_-^i(t)||^2 with
// ordinary inner products and enforced normalization.
double self_normal_rate(const QuenchWorkspace& ws, double t);
double self_normal_rate(const QuenchSpec& q, double t);

struct RateSeries {
    std::vector<double> t;
    std::vector<double> bio;
    std::vector<double> self_normal;
};

// Full-grid sweep; OpenMP over k with a fixed-order reduction, so the result
// is identical to the serial reference.
RateSeries rate_series(const QuenchWorkspace& ws);
RateSeries rate_series_serial(const QuenchWorkspace& ws);

}  // namespace dqpt

#endif
