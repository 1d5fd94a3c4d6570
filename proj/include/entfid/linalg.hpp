#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "entfid/errors.hpp"

namespace entfid {

using cplx = std::complex<double>;

/// Dense complex matrix with row-major storage and (row, col) indexing.
/// All operators, density matrices and Choi matrices in this library are
/// instances of this type; dimensions stay small (at most 81x81).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);  // zero-initialized

    static ComplexMatrix identity(int n);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix transpose() const;
    cplx trace() const;

    /// Largest entry magnitude (the max norm used by the tolerance contracts).
    double max_abs() const;
    bool is_finite() const;
    double hermiticity_residual() const;  // max |M - M^dag|, square only

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
    friend ComplexMatrix operator*(ComplexMatrix m, cplx s) { return m *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

/// Max-norm distance between two same-shaped matrices.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; the left factor is the slow index, matching the
/// bipartite ket convention below.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

/// Partial trace of an operator on A(x)B over the discarded factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Subsystem keep);

/// Relabel an operator on X(x)Y as one on Y(x)X by swapping the factors.
ComplexMatrix swap_factors(const ComplexMatrix& m, int dim_x, int dim_y);

/// Matrix-vector product.
std::vector<cplx> apply_matrix(const ComplexMatrix& m, const std::vector<cplx>& v);

// -------------------------------------------------------------------------
// Spectral routines
// -------------------------------------------------------------------------

/// Eigensystem of a Hermitian matrix. Eigenvalues are sorted in descending
/// order; eigenvectors are the aligned orthonormal columns, each with its
/// first nonzero component made real and positive so that results are
/// reproducible.
struct HermitianEigen {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi diagonalization for Hermitian matrices. Deterministic for
/// identical input bits; capped at 100 sweeps.
HermitianEigen hermitian_eig(const ComplexMatrix& h, double hermiticity_tol = 1e-9);

double spectral_norm(const ComplexMatrix& o);
double trace_norm(const ComplexMatrix& o);
double frobenius_norm(const ComplexMatrix& o);

/// Throws NotDensityMatrix unless m is Hermitian, unit trace and PSD within tol.
void require_density(const ComplexMatrix& m, double tol = 1e-9);

/// Uhlmann fidelity F(rho, sigma) = || sqrt(rho) sqrt(sigma) ||_1. Note this
/// is the square-root convention; the channel fidelity O reported elsewhere
/// uses the overlap (squared) convention.
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Binary entropy h(x) in bits, with h(0) = h(1) = 0.
double binary_entropy(double x);

// -------------------------------------------------------------------------
// Bipartite kets
// -------------------------------------------------------------------------

/// Pure state on a bipartite space; amplitude of |a_i>|b_j> sits at index
/// i*dim_b + j.
struct BipartiteKet {
    int dim_a = 0;
    int dim_b = 0;
    std::vector<cplx> amp;

    double norm() const;
    BipartiteKet normalized() const;  // NotNormalized on the zero vector
    bool is_normalized(double tol = 1e-12) const;

    /// Amplitudes reshaped to a dim_a x dim_b matrix.
    ComplexMatrix amplitude_matrix() const;
};

cplx dot(const BipartiteKet& x, const BipartiteKet& y);
ComplexMatrix outer(const BipartiteKet& psi);              // |psi><psi|
ComplexMatrix reduced_a(const BipartiteKet& psi);          // Tr_B |psi><psi|
std::vector<double> schmidt_coefficients(const BipartiteKet& psi);  // descending singular values

BipartiteKet maximally_entangled_ket(int d);  // sum_i |ii> / sqrt(d)

}  // namespace entfid
