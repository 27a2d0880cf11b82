#include "dqpt/spectral.hpp"

#include <cmath>

namespace dqpt {

double StateVector::norm() const { return std::sqrt(std::norm(a) + std::norm(b)); }

namespace {

// Unit norm, largest-modulus component real positive (first component on ties).
StateVector gauge_fix(StateVector v) {
    const double n = v.norm();
    v = (1.0 / n) * v;
    const cplx pivot = (std::abs(v.a) >= std::abs(v.b)) ? v.a : v.b;
    const double pa = std::abs(pivot);
    if (pa > 0.0) v = (std::conj(pivot) / pa) * v;
    return v;
}

// Eigenvector of [[dz, -i dy], [i dy, -dz]] for eigenvalue lam, picking the
// better-conditioned of the two closed-form columns.
StateVector eigvec(cplx dy, cplx dz, cplx lam) {
    const StateVector col_a{cplx(0, -1) * dy, lam - dz};  // (b, lam - a)
    const StateVector col_b{lam + dz, cplx(0, 1) * dy};   // (lam + a, c)
    const double na = std::norm(col_a.a) + std::norm(col_a.b);
    const double nb = std::norm(col_b.a) + std::norm(col_b.b);
    return gauge_fix(na >= nb ? col_a : col_b);
}

}  // namespace

BiorthEigenSystem biortho_eigensystem(const BlochMatrix& h) {
    const cplx dy = h.dy(), dz = h.dz();
    cplx eps = std::sqrt(dy * dy + dz * dz);
    if (eps.real() == 0.0 && eps.imag() < 0.0) eps = -eps;

    const double scale = h.max_abs();
    if (std::abs(eps) <= degeneracy_floor * scale)
        throw DegeneracyError("biortho_eigensystem: |epsilon| below degeneracy floor");

    BiorthEigenSystem sys;
    sys.epsilon = eps;
    sys.right_minus = eigvec(dy, dz, -eps);
    sys.right_plus = eigvec(dy, dz, eps);

    // Left bras = rows of the inverse of V = [right_minus | right_plus].
    const cplx det = sys.right_minus.a * sys.right_plus.b - sys.right_plus.a * sys.right_minus.b;
    if (std::abs(det) < 1e-12)
        throw DegeneracyError("biortho_eigensystem: eigenvectors numerically coalescent");
    const cplx inv = 1.0 / det;
    sys.left_minus = {inv * sys.right_plus.b, -inv * sys.right_plus.a};
    sys.left_plus = {-inv * sys.right_minus.b, inv * sys.right_minus.a};
    return sys;
}

Amplitudes expand(const StateVector& state, const BiorthEigenSystem& eig) {
    return {apply_bra(eig.left_minus, state), apply_bra(eig.left_plus, state)};
}

cplx biortho_inner(const StateVector& a, const StateVector& b, const BiorthEigenSystem& eig) {
    const Amplitudes d = expand(a, eig), c = expand(b, eig);
    return std::conj(d.c_minus) * c.c_minus + std::conj(d.c_plus) * c.c_plus;
}

double transition_probability_static(const StateVector& a, const StateVector& b,
                                     const BiorthEigenSystem& eig) {
    const Amplitudes d = expand(a, eig), c = expand(b, eig);
    const double na = std::norm(d.c_minus) + std::norm(d.c_plus);
    const double nb = std::norm(c.c_minus) + std::norm(c.c_plus);
    if (na <= 0.0 || nb <= 0.0)
        throw ZeroNormError("transition_probability_static: vanishing biorthogonal self-norm");
    const cplx ov = std::conj(d.c_minus) * c.c_minus + std::conj(d.c_plus) * c.c_plus;
    double p = std::norm(ov) / (na * nb);
    return std::min(p, 1.0);  // clip rounding overshoot at the Cauchy-Schwarz bound
}

}  // namespace dqpt
