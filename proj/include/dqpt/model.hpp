#ifndef DQPT_MODEL_HPP
#define DQPT_MODEL_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "dqpt/errors.hpp"

namespace dqpt {

using cplx = std::complex<double>;
inline constexpr double two_pi = 6.283185307179586476925286766559;

// Parameters of one non-Hermitian Kitaev chain (t2 = 0 for the plain chain).
struct ModelParams {
    double t1 = 1.0;     // nearest-neighbor hopping
    double t2 = 0.0;     // next-nearest-neighbor hopping
    double delta = 0.0;  // p-wave pairing amplitude
    double mu_r = 0.0;   // Re(mu)
    double gamma = 0.0;  // Im(mu)

    cplx mu() const { return {mu_r, gamma}; }

    // Rejects the flat-band degenerate limits.
    void validate() const {
        if (t1 == 0.0) throw ConfigError("ModelParams: t1 must be nonzero");
        if (delta == 0.0) throw ConfigError("ModelParams: delta must be nonzero");
    }

    bool operator==(const ModelParams&) const = default;
};

// 2x2 Bloch matrix, traceless by construction: H = d_y sigma_y + d_z sigma_z.
struct BlochMatrix {
    std::array<std::array<cplx, 2>, 2> e{};

    // Pauli components (d_x is identically zero for this model family).
    cplx dy() const { return cplx(0, 1) * e[0][1]; }  // e01 = -i d_y
    cplx dz() const { return e[0][0]; }

    double max_abs() const;
};

// Reduce k to [0, 2*pi).
double reduce_momentum(double k);

// Uniform momentum grid k_j = 2*pi*j/n, j = 0..n-1.
std::vector<double> momentum_grid(std::size_t n);

// H_k = Delta sin(k) sigma_y - [t1 cos(k) + t2 cos(2k) + mu] sigma_z.
BlochMatrix bloch_hamiltonian(const ModelParams& p, double k);

// Branch-fixed root of eps^2 = dy^2 + dz^2: Re(eps) >= 0, and Im(eps) >= 0
// when Re(eps) = 0. Full spectrum is +-eps.
cplx dispersion(const ModelParams& p, double k);

// Zero iff the parameters sit on a gap-closing phase boundary.
// t2 = 0:   (mu_r/t1)^2 + (gamma/Delta)^2 - 1
// t2 != 0:  (mu_r + t2 - 2 t2 g^2)^2 - t1^2 (1 - g^2), g = gamma/Delta
double phase_boundary_residual(const ModelParams& p);

struct MinGapResult {
    double min_abs_eps;
    double k_argmin;
};

// Minimum of |eps_k| over the grid (grid-resolution accuracy only).
MinGapResult min_gap(const ModelParams& p, const std::vector<double>& k_grid);

namespace debug {
// Test hook: flips the dispersion branch. Used by selftest as a negative control.
extern bool flip_dispersion_branch;
}  // namespace debug

}  // namespace dqpt

#endif
