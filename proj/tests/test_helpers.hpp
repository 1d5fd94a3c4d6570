#pragma once

#include <cmath>
#include <vector>

#include "entfid/linalg.hpp"
#include "entfid/sampling.hpp"

namespace entfid::testing {

inline ComplexMatrix random_hermitian(Rng& rng, int n) {
    ComplexMatrix h(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = cplx(rng.normal(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            h(i, j) = 0.5 * rng.cnormal();
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

inline ComplexMatrix random_matrix(Rng& rng, int rows, int cols) {
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.cnormal();
    return m;
}

// Top eigenvalue of a PSD matrix by plain power iteration; test-side oracle
// independent of the Jacobi solver.
inline double power_iteration_top(const ComplexMatrix& h, int iters = 2000,
                                  uint64_t seed = 7777) {
    Rng rng(seed);
    std::vector<cplx> v = random_unit_vector(rng, h.rows());
    double value = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<cplx> w = apply_matrix(h, v);
        cplx ray = 0.0;
        double n2 = 0.0;
        for (size_t k = 0; k < w.size(); ++k) {
            ray += std::conj(v[k]) * w[k];
            n2 += std::norm(w[k]);
        }
        value = ray.real();
        if (n2 < 1e-280) break;
        const double inv = 1.0 / std::sqrt(n2);
        for (size_t k = 0; k < w.size(); ++k) v[k] = w[k] * inv;
    }
    return value;
}

// |<x|y>| distance up to a global phase, for comparing kets.
inline double ket_distance_up_to_phase(const BipartiteKet& x, const BipartiteKet& y) {
    const cplx ip = dot(y, x);
    const double a = std::abs(ip);
    cplx phase = a > 1e-15 ? ip / a : cplx(1.0, 0.0);
    double d2 = 0.0;
    for (size_t k = 0; k < x.amp.size(); ++k) d2 += std::norm(x.amp[k] - phase * y.amp[k]);
    return std::sqrt(d2);
}

}  // namespace entfid::testing
