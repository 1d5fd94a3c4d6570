#include "entfid/sampling.hpp"

#include <cmath>

#include "entfid/channel.hpp"

namespace entfid {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on raw uniforms; u1 shifted away from zero.
    const double u1 = (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    // splitmix64 step over seed xor stream
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<cplx> random_unit_vector(Rng& rng, int dim) {
    std::vector<cplx> v(dim);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& x : v) {
            x = rng.cnormal();
            n2 += std::norm(x);
        }
    } while (n2 < 1e-12);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& x : v) x *= inv;
    return v;
}

namespace {

// Orthonormalize the columns of g in place (modified Gram-Schmidt with one
// re-orthogonalization pass).
void orthonormalize_columns(ComplexMatrix& g) {
    const int rows = g.rows();
    const int cols = g.cols();
    for (int j = 0; j < cols; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (int i = 0; i < rows; ++i) proj += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < rows; ++i) g(i, j) -= proj * g(i, k);
            }
        }
        double n2 = 0.0;
        for (int i = 0; i < rows; ++i) n2 += std::norm(g(i, j));
        const double inv = 1.0 / std::sqrt(n2);
        for (int i = 0; i < rows; ++i) g(i, j) *= inv;
    }
}

}  // namespace

ComplexMatrix random_unitary(Rng& rng, int dim) {
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.cnormal();
    orthonormalize_columns(g);
    return g;
}

ComplexMatrix random_density(Rng& rng, int dim, int mixture) {
    if (mixture <= 0) mixture = dim * dim;
    ComplexMatrix rho(dim, dim);
    for (int m = 0; m < mixture; ++m) {
        std::vector<cplx> v(dim);
        for (auto& x : v) x = rng.cnormal();
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) rho(i, j) += v[i] * std::conj(v[j]);
    }
    const cplx tr = rho.trace();
    rho *= cplx(1.0 / tr.real(), 0.0);
    for (int i = 0; i < dim; ++i) rho(i, i) = cplx(rho(i, i).real(), 0.0);
    return rho;
}

Channel random_channel(Rng& rng, int dim_in, int dim_out, int kraus_count) {
    if (kraus_count <= 0) kraus_count = dim_in * dim_out;
    // Haar isometry dim_in -> dim_out (x) environment, read off env slices.
    ComplexMatrix g(dim_out * kraus_count, dim_in);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) g(i, j) = rng.cnormal();
    orthonormalize_columns(g);

    std::vector<ComplexMatrix> kraus(kraus_count, ComplexMatrix(dim_out, dim_in));
    for (int e = 0; e < kraus_count; ++e)
        for (int b = 0; b < dim_out; ++b)
            for (int a = 0; a < dim_in; ++a) kraus[e](b, a) = g(b * kraus_count + e, a);
    return Channel(dim_in, dim_out, std::move(kraus));
}

}  // namespace entfid
