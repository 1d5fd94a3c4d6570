#include <algorithm>
#include <cmath>
#include <numeric>

#include "entfid/linalg.hpp"

namespace entfid {

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

// One complex Jacobi rotation annihilating A(p,q). Writing the pivot as
// A(p,q) = |b| e^{i beta} with diagonal entries app, aqq, the plane rotation
//   G = [[c, -s e^{i beta}], [s e^{-i beta}, c]]
// zeroes the pivot of G^dag A G when t = s/c solves t^2 - 2 tau t - 1 = 0,
// tau = (aqq - app) / (2|b|); the smaller-magnitude root keeps the rotation
// close to the identity.
void rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const cplx phase = apq / mag;
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = tau >= 0.0 ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const int n = a.rows();
    // rows p and q of G^dag A
    for (int k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = c * apk + s * phase * aqk;
        a(q, k) = -s * std::conj(phase) * apk + c * aqk;
    }
    // columns p and q of (G^dag A) G
    for (int k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = c * akp + s * std::conj(phase) * akq;
        a(k, q) = -s * phase * akp + c * akq;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cplx(a(p, p).real(), 0.0);
    a(q, q) = cplx(a(q, q).real(), 0.0);

    for (int k = 0; k < n; ++k) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = c * vkp + s * std::conj(phase) * vkq;
        v(k, q) = -s * phase * vkp + c * vkq;
    }
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& h, double hermiticity_tol) {
    if (!h.is_square()) throw DimensionMismatch("hermitian_eig: matrix is not square");
    if (!h.is_finite()) throw NotHermitian("hermitian_eig: matrix has non-finite entries");
    if (h.hermiticity_residual() > hermiticity_tol)
        throw NotHermitian("hermitian_eig: matrix is not Hermitian within tolerance");

    const int n = h.rows();
    // Symmetrize to remove sub-tolerance asymmetry before iterating.
    ComplexMatrix a = cplx(0.5, 0.0) * (h + h.adjoint());
    for (int i = 0; i < n; ++i) a(i, i) = cplx(a(i, i).real(), 0.0);
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, frobenius_norm(a));
    const double stop = 1e-13 * scale;
    const double skip = stop / (10.0 * std::max(1, n));

    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_norm(a) <= stop) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > skip) rotate(a, v, p, q);
    }
    if (!converged && offdiag_norm(a) > stop)
        throw ConvergenceFailure("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        out.eigenvalues[k] = a(src, src).real();
        // phase convention: first nonzero component real-positive
        cplx factor(1.0, 0.0);
        for (int i = 0; i < n; ++i) {
            const cplx vi = v(i, src);
            if (std::abs(vi) > 1e-12) {
                factor = std::conj(vi) / std::abs(vi);
                break;
            }
        }
        for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, src) * factor;
    }
    return out;
}

}  // namespace entfid
