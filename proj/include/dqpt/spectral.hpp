#ifndef DQPT_SPECTRAL_HPP
#define DQPT_SPECTRAL_HPP

#include <array>

#include "dqpt/model.hpp"

namespace dqpt {

// Complex 2-vector in the particle-hole basis psi_k = (c_k, c_{-k}^dag)^T.
// No normalization is enforced: non-Hermitian evolution changes the self-norm.
struct StateVector {
    cplx a{}, b{};

    StateVector operator+(const StateVector& o) const { return {a + o.a, b + o.b}; }
    StateVector operator-(const StateVector& o) const { return {a - o.a, b - o.b}; }
    friend StateVector operator*(cplx s, const StateVector& v) { return {s * v.a, s * v.b}; }
    double norm() const;  // Euclidean norm
};

// Plain (unconjugated) covector-ket contraction.
inline cplx apply_bra(const StateVector& bra, const StateVector& ket) {
    return bra.a * ket.a + bra.b * ket.b;
}

// Conventional conjugate-linear inner product <a|b>.
inline cplx conj_dot(const StateVector& a, const StateVector& b) {
    return std::conj(a.a) * b.a + std::conj(a.b) * b.b;
}

inline StateVector apply_matrix(const BlochMatrix& m, const StateVector& v) {
    return {m.e[0][0] * v.a + m.e[0][1] * v.b, m.e[1][0] * v.a + m.e[1][1] * v.b};
}

// Branch- and gauge-fixed biorthogonal eigensystem of one Bloch matrix.
// Right kets are unit-norm with the largest-modulus component real positive;
// left bras are the rows of the inverse right-eigenvector matrix, so
// biorthonormality <u~_m|u_n> = delta_mn holds exactly by construction.
struct BiorthEigenSystem {
    cplx epsilon;             // branch-fixed (Re >= 0); spectrum is +-epsilon
    StateVector right_minus;  // H u = -epsilon u
    StateVector right_plus;   // H u = +epsilon u
    StateVector left_minus;   // covector entries of <u~_-|
    StateVector left_plus;
};

// Relative degeneracy floor on |epsilon| (in units of max|H entry|).
inline constexpr double degeneracy_floor = 1e-9;

// Closed-form eigensystem from the Pauli decomposition H = d_y sigma_y + d_z sigma_z.
// Throws DegeneracyError below the floor or at an exceptional point.
BiorthEigenSystem biortho_eigensystem(const BlochMatrix& h);

struct Amplitudes {
    cplx c_minus, c_plus;
};

// Coefficients of `state` in the biorthogonal basis: c_n = <u~_n|state>.
Amplitudes expand(const StateVector& state, const BiorthEigenSystem& eig);

// Biorthogonal inner product <a~|b> = sum_n d_n^* c_n built from the
// associated-state bra of a.
cplx biortho_inner(const StateVector& a, const StateVector& b, const BiorthEigenSystem& eig);

// p = <a~|b><b~|a> / (<a~|a><b~|b>), real in [0,1].
double transition_probability_static(const StateVector& a, const StateVector& b,
                                     const BiorthEigenSystem& eig);

}  // namespace dqpt

#endif
