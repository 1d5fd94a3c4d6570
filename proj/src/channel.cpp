#include "entfid/channel.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <utility>

namespace entfid {

namespace {

double residual_from_identity(const ComplexMatrix& m) {
    ComplexMatrix d = m;
    for (int i = 0; i < d.rows(); ++i) d(i, i) -= 1.0;
    return d.max_abs();
}

}  // namespace

Channel::Channel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    if (dim_in <= 0 || dim_out <= 0) throw DimensionMismatch("channel dimensions must be positive");
    if (kraus_.empty()) throw DimensionMismatch("channel needs at least one Kraus operator");
    for (const auto& k : kraus_) {
        if (k.rows() != dim_out_ || k.cols() != dim_in_)
            throw DimensionMismatch("Kraus operator shape does not match declared dimensions");
        if (!k.is_finite()) throw DimensionMismatch("Kraus operator has non-finite entries");
    }
    ComplexMatrix tp(dim_in_, dim_in_);
    ComplexMatrix un(dim_out_, dim_out_);
    for (const auto& k : kraus_) {
        tp += k.adjoint() * k;
        un += k * k.adjoint();
    }
    tp_residual_ = residual_from_identity(tp);
    unital_residual_ = residual_from_identity(un);
}

ValidationReport validate_channel(const Channel& c, double tol) {
    ValidationReport r;
    r.tolerance = tol;
    r.tp_residual = c.tp_residual();
    r.unital_residual = c.unital_residual();
    ChoiOperator j = choi(c);
    r.choi_min_eigenvalue = j.eig().eigenvalues.back();
    r.trace_preserving = r.tp_residual <= tol;
    r.completely_positive = r.choi_min_eigenvalue >= -tol;  // automatic for Kraus form
    r.unital = r.unital_residual <= tol;
    r.valid = r.trace_preserving && r.completely_positive;
    return r;
}

void ensure_valid(const Channel& c, double tol) {
    if (c.tp_residual() > tol)
        throw InvalidChannel("channel is not trace preserving (residual " +
                             std::to_string(c.tp_residual()) + ")");
}

BipartiteKet op_to_ket(const ComplexMatrix& k) {
    BipartiteKet psi;
    psi.dim_a = k.cols();
    psi.dim_b = k.rows();
    psi.amp.assign(static_cast<size_t>(psi.dim_a) * psi.dim_b, cplx(0.0, 0.0));
    for (int i = 0; i < psi.dim_a; ++i)
        for (int j = 0; j < psi.dim_b; ++j) psi.amp[static_cast<size_t>(i) * psi.dim_b + j] = k(j, i);
    return psi;
}

ComplexMatrix ket_to_op(const BipartiteKet& psi) {
    if (static_cast<int>(psi.amp.size()) != psi.dim_a * psi.dim_b)
        throw DimensionMismatch("ket amplitude count does not match declared dimensions");
    ComplexMatrix k(psi.dim_b, psi.dim_a);
    for (int i = 0; i < psi.dim_a; ++i)
        for (int j = 0; j < psi.dim_b; ++j) k(j, i) = psi.amp[static_cast<size_t>(i) * psi.dim_b + j];
    return k;
}

BipartiteKet ket_conjugate(const BipartiteKet& psi) {
    BipartiteKet r = psi;
    for (auto& v : r.amp) v = std::conj(v);
    return r;
}

struct ChoiOperator::Cache {
    ComplexMatrix matrix;
    std::once_flag once;
    std::optional<HermitianEigen> eig;
};

ChoiOperator::ChoiOperator(ComplexMatrix matrix, int dim_in, int dim_out)
    : dim_in_(dim_in), dim_out_(dim_out), cache_(std::make_shared<Cache>()) {
    if (!matrix.is_square() || matrix.rows() != dim_in * dim_out)
        throw DimensionMismatch("Choi matrix shape does not match declared dimensions");
    cache_->matrix = std::move(matrix);
}

const ComplexMatrix& ChoiOperator::matrix() const { return cache_->matrix; }

const HermitianEigen& ChoiOperator::eig() const {
    std::call_once(cache_->once, [this] { cache_->eig = hermitian_eig(cache_->matrix, 1e-8); });
    return *cache_->eig;
}

ChoiOperator choi(const Channel& c) {
    const int n = c.dim_in() * c.dim_out();
    ComplexMatrix j(n, n);
    for (const auto& k : c.kraus()) {
        const BipartiteKet psi = op_to_ket(k);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) j(r, s) += psi.amp[r] * std::conj(psi.amp[s]);
    }
    return ChoiOperator(std::move(j), c.dim_in(), c.dim_out());
}

ComplexMatrix choi_from_action(const Channel& c) {
    const int da = c.dim_in();
    const int db = c.dim_out();
    ComplexMatrix j(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int l = 0; l < da; ++l) {
            // N(|i><l|)
            ComplexMatrix block(db, db);
            for (const auto& k : c.kraus())
                for (int r = 0; r < db; ++r)
                    for (int s = 0; s < db; ++s) block(r, s) += k(r, i) * std::conj(k(s, l));
            for (int r = 0; r < db; ++r)
                for (int s = 0; s < db; ++s) j(i * db + r, l * db + s) = block(r, s);
        }
    return j;
}

StandardKraus standard_kraus(const Channel& c, double eps_deg) {
    ensure_valid(c);
    const ChoiOperator j = choi(c);
    const HermitianEigen& eig = j.eig();
    constexpr double kRankCutoff = 1e-10;

    StandardKraus out;
    const int n = c.dim_in() * c.dim_out();
    for (int k = 0; k < n; ++k) {
        const double e = eig.eigenvalues[k];
        if (e <= kRankCutoff) break;  // descending order
        BipartiteKet psi;
        psi.dim_a = c.dim_in();
        psi.dim_b = c.dim_out();
        psi.amp.resize(static_cast<size_t>(n));
        const double w = std::sqrt(e);
        for (int i = 0; i < n; ++i) psi.amp[i] = w * eig.eigenvectors(i, k);
        out.kraus.push_back(ket_to_op(psi));
        out.norms.push_back(e);
    }
    if (out.norms.empty()) throw InvalidChannel("channel has numerically vanishing Choi operator");

    out.degeneracy_top = 1;
    const double top = out.norms.front();
    for (size_t k = 1; k < out.norms.size(); ++k)
        if (out.norms[k] >= top * (1.0 - eps_deg)) out.degeneracy_top = static_cast<int>(k) + 1;
    return out;
}

Channel dual_channel(const Channel& c) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(c.kraus().size());
    for (const auto& k : c.kraus()) kraus.push_back(k.adjoint());
    return Channel(c.dim_out(), c.dim_in(), std::move(kraus));
}

ComplexMatrix apply(const Channel& c, const ComplexMatrix& rho) {
    if (!rho.is_square() || rho.rows() != c.dim_in())
        throw DimensionMismatch("apply: state dimension does not match channel input");
    ComplexMatrix out(c.dim_out(), c.dim_out());
    for (const auto& k : c.kraus()) out += k * rho * k.adjoint();
    return out;
}

ComplexMatrix apply_extended(const Channel& c, const ComplexMatrix& rho_ra) {
    if (!rho_ra.is_square() || rho_ra.rows() % c.dim_in() != 0)
        throw DimensionMismatch("apply_extended: state does not factor as reference (x) input");
    const int dim_r = rho_ra.rows() / c.dim_in();
    const ComplexMatrix id_r = ComplexMatrix::identity(dim_r);
    ComplexMatrix out(dim_r * c.dim_out(), dim_r * c.dim_out());
    for (const auto& k : c.kraus()) {
        const ComplexMatrix ext = tensor(id_r, k);
        out += ext * rho_ra * ext.adjoint();
    }
    return out;
}

Channel tensor_channels(const Channel& c1, const Channel& c2) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(c1.kraus().size() * c2.kraus().size());
    for (const auto& a : c1.kraus())
        for (const auto& b : c2.kraus()) kraus.push_back(tensor(a, b));
    return Channel(c1.dim_in() * c2.dim_in(), c1.dim_out() * c2.dim_out(), std::move(kraus));
}

Channel compose_channels(const Channel& outer, const Channel& inner) {
    if (inner.dim_out() != outer.dim_in())
        throw DimensionMismatch("compose_channels: inner output does not match outer input");
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(outer.kraus().size() * inner.kraus().size());
    for (const auto& a : outer.kraus())
        for (const auto& b : inner.kraus()) kraus.push_back(a * b);
    return Channel(inner.dim_in(), outer.dim_out(), std::move(kraus));
}

ComplexMatrix choi_product(const ChoiOperator& j1, const ChoiOperator& j2) {
    const int a1 = j1.dim_in(), b1 = j1.dim_out();
    const int a2 = j2.dim_in(), b2 = j2.dim_out();
    const ComplexMatrix kron = tensor(j1.matrix(), j2.matrix());
    const int n = a1 * a2 * b1 * b2;
    ComplexMatrix out(n, n);
    // reindex (i1 j1 i2 j2) -> (i1 i2 j1 j2)
    auto src_index = [&](int i1, int i2, int k1, int k2) {
        return ((i1 * b1 + k1) * a2 + i2) * b2 + k2;
    };
    auto dst_index = [&](int i1, int i2, int k1, int k2) {
        return ((i1 * a2 + i2) * b1 + k1) * b2 + k2;
    };
    for (int i1 = 0; i1 < a1; ++i1)
        for (int i2 = 0; i2 < a2; ++i2)
            for (int k1 = 0; k1 < b1; ++k1)
                for (int k2 = 0; k2 < b2; ++k2) {
                    const int r = dst_index(i1, i2, k1, k2);
                    const int rs = src_index(i1, i2, k1, k2);
                    for (int l1 = 0; l1 < a1; ++l1)
                        for (int l2 = 0; l2 < a2; ++l2)
                            for (int m1 = 0; m1 < b1; ++m1)
                                for (int m2 = 0; m2 < b2; ++m2)
                                    out(r, dst_index(l1, l2, m1, m2)) =
                                        kron(rs, src_index(l1, l2, m1, m2));
                }
    return out;
}

}  // namespace entfid
