#include "entfid/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace entfid {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, cplx(0.0, 0.0)) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("matrix dimensions must be non-negative");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    ComplexMatrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) throw DimensionMismatch("ragged row in matrix literal");
        int j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = std::conj(data_[k]);
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionMismatch("trace of non-square matrix");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const auto& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double ComplexMatrix::hermiticity_residual() const {
    if (!is_square()) throw DimensionMismatch("hermiticity residual of non-square matrix");
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix addition shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix subtraction shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    ComplexMatrix m(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff shape mismatch");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return m;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Subsystem keep) {
    if (!m.is_square() || m.rows() != dim_a * dim_b)
        throw DimensionMismatch("partial_trace: operator does not factor as dim_a*dim_b");
    if (keep == Subsystem::A) {
        ComplexMatrix r(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int j = 0; j < dim_a; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < dim_b; ++k) s += m(i * dim_b + k, j * dim_b + k);
                r(i, j) = s;
            }
        return r;
    }
    ComplexMatrix r(dim_b, dim_b);
    for (int k = 0; k < dim_b; ++k)
        for (int l = 0; l < dim_b; ++l) {
            cplx s = 0.0;
            for (int i = 0; i < dim_a; ++i) s += m(i * dim_b + k, i * dim_b + l);
            r(k, l) = s;
        }
    return r;
}

ComplexMatrix swap_factors(const ComplexMatrix& m, int dim_x, int dim_y) {
    if (!m.is_square() || m.rows() != dim_x * dim_y)
        throw DimensionMismatch("swap_factors: operator does not factor as dim_x*dim_y");
    ComplexMatrix r(dim_y * dim_x, dim_y * dim_x);
    for (int x1 = 0; x1 < dim_x; ++x1)
        for (int y1 = 0; y1 < dim_y; ++y1)
            for (int x2 = 0; x2 < dim_x; ++x2)
                for (int y2 = 0; y2 < dim_y; ++y2)
                    r(y1 * dim_x + x1, y2 * dim_x + x2) = m(x1 * dim_y + y1, x2 * dim_y + y2);
    return r;
}

std::vector<cplx> apply_matrix(const ComplexMatrix& m, const std::vector<cplx>& v) {
    if (static_cast<int>(v.size()) != m.cols()) throw DimensionMismatch("matrix-vector shape mismatch");
    std::vector<cplx> r(m.rows(), cplx(0.0, 0.0));
    for (int i = 0; i < m.rows(); ++i) {
        cplx s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

// -------------------------------------------------------------------------
// Norms, fidelity, entropy
// -------------------------------------------------------------------------

namespace {

std::vector<double> singular_values(const ComplexMatrix& o) {
    // Singular values via the Gram matrix; fine at these dimensions.
    const ComplexMatrix gram = o.adjoint() * o;
    HermitianEigen eig = hermitian_eig(gram, 1e-8);
    std::vector<double> sv;
    sv.reserve(eig.eigenvalues.size());
    for (double v : eig.eigenvalues) sv.push_back(std::sqrt(std::max(v, 0.0)));
    return sv;
}

}  // namespace

double spectral_norm(const ComplexMatrix& o) {
    if (o.rows() == 0 || o.cols() == 0) return 0.0;
    if (o.max_abs() == 0.0) return 0.0;
    return singular_values(o).front();
}

double trace_norm(const ComplexMatrix& o) {
    if (o.rows() == 0 || o.cols() == 0) return 0.0;
    if (o.max_abs() == 0.0) return 0.0;
    double s = 0.0;
    for (double v : singular_values(o)) s += v;
    return s;
}

double frobenius_norm(const ComplexMatrix& o) {
    double s = 0.0;
    for (const auto& v : o.data()) s += std::norm(v);
    return std::sqrt(s);
}

void require_density(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) throw NotDensityMatrix("density matrix must be square");
    if (!m.is_finite()) throw NotDensityMatrix("density matrix has non-finite entries");
    if (m.hermiticity_residual() > tol) throw NotDensityMatrix("density matrix is not Hermitian");
    if (std::abs(m.trace() - cplx(1.0, 0.0)) > tol) throw NotDensityMatrix("density matrix trace is not 1");
    HermitianEigen eig = hermitian_eig(m, tol);
    if (eig.eigenvalues.back() < -tol) throw NotDensityMatrix("density matrix is not positive semi-definite");
}

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    require_density(rho);
    require_density(sigma);
    if (rho.rows() != sigma.rows()) throw DimensionMismatch("fidelity: dimension mismatch");

    HermitianEigen er = hermitian_eig(rho);
    const int n = rho.rows();
    ComplexMatrix sqrt_rho(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = std::sqrt(std::max(er.eigenvalues[k], 0.0));
        if (s == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                sqrt_rho(i, j) += s * er.eigenvectors(i, k) * std::conj(er.eigenvectors(j, k));
    }

    ComplexMatrix inner = sqrt_rho * sigma * sqrt_rho;
    inner = cplx(0.5, 0.0) * (inner + inner.adjoint());
    HermitianEigen ei = hermitian_eig(inner, 1e-8);
    double f = 0.0;
    for (double v : ei.eigenvalues) f += std::sqrt(std::max(v, 0.0));
    return f;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    require_density(rho);
    HermitianEigen eig = hermitian_eig(rho);
    double s = 0.0;
    for (double v : eig.eigenvalues) {
        if (v <= 0.0) continue;  // noise floor below 0 is clipped
        s -= v * std::log2(v);
    }
    return s;
}

double binary_entropy(double x) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) throw OutOfRange("binary_entropy: argument outside [0, 1]");
    x = std::clamp(x, 0.0, 1.0);
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// -------------------------------------------------------------------------
// Bipartite kets
// -------------------------------------------------------------------------

double BipartiteKet::norm() const {
    double s = 0.0;
    for (const auto& v : amp) s += std::norm(v);
    return std::sqrt(s);
}

BipartiteKet BipartiteKet::normalized() const {
    const double n = norm();
    if (n < 1e-300) throw NotNormalized("cannot normalize the zero ket");
    BipartiteKet r = *this;
    for (auto& v : r.amp) v /= n;
    return r;
}

bool BipartiteKet::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

ComplexMatrix BipartiteKet::amplitude_matrix() const {
    ComplexMatrix m(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_b; ++j) m(i, j) = amp[static_cast<size_t>(i) * dim_b + j];
    return m;
}

cplx dot(const BipartiteKet& x, const BipartiteKet& y) {
    if (x.amp.size() != y.amp.size()) throw DimensionMismatch("ket inner product shape mismatch");
    cplx s = 0.0;
    for (size_t k = 0; k < x.amp.size(); ++k) s += std::conj(x.amp[k]) * y.amp[k];
    return s;
}

ComplexMatrix outer(const BipartiteKet& psi) {
    const int n = static_cast<int>(psi.amp.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = psi.amp[i] * std::conj(psi.amp[j]);
    return m;
}

ComplexMatrix reduced_a(const BipartiteKet& psi) {
    ComplexMatrix m = psi.amplitude_matrix();
    return m * m.adjoint();
}

std::vector<double> schmidt_coefficients(const BipartiteKet& psi) {
    const ComplexMatrix r = reduced_a(psi);
    HermitianEigen eig = hermitian_eig(r, 1e-8);
    std::vector<double> sv;
    sv.reserve(eig.eigenvalues.size());
    for (double v : eig.eigenvalues) sv.push_back(std::sqrt(std::max(v, 0.0)));
    return sv;
}

BipartiteKet maximally_entangled_ket(int d) {
    BipartiteKet k;
    k.dim_a = d;
    k.dim_b = d;
    k.amp.assign(static_cast<size_t>(d) * d, cplx(0.0, 0.0));
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) k.amp[static_cast<size_t>(i) * d + i] = w;
    return k;
}

}  // namespace entfid
