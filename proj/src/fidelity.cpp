#include "entfid/fidelity.hpp"

#include <cmath>

#include "entfid/sampling.hpp"

namespace entfid {

namespace {

void require_square_channel(const Channel& c) {
    if (c.dim_in() != c.dim_out())
        throw DimensionMismatch("maximum entanglement fidelity needs dim_in == dim_out");
}

}  // namespace

FidelityReport max_fidelity(const Channel& c, double eps_deg) {
    require_square_channel(c);
    ensure_valid(c);
    const int d = c.dim_in();

    const StandardKraus sk = standard_kraus(c, eps_deg);
    FidelityReport rep;
    rep.kraus_norms = sk.norms;
    rep.top_eigenvalue = sk.norms.front();
    rep.o_value = rep.top_eigenvalue / d;
    rep.degeneracy = sk.degeneracy_top;
    rep.input_kind = rep.degeneracy > 1 ? InputKind::degenerate_family : InputKind::unique_pure;

    // Optimal inputs live on the span of the adjoint-operator kets with top
    // norm; {|K_i^dag> / sqrt(e_i)} is an orthonormal basis of that span.
    for (int i = 0; i < rep.degeneracy; ++i) {
        BipartiteKet v = op_to_ket(sk.kraus[i].adjoint());
        const double w = 1.0 / std::sqrt(sk.norms[i]);
        for (auto& a : v.amp) a *= w;
        rep.top_eigenspace.push_back(std::move(v));
    }

    if (rep.degeneracy == 1) {
        rep.optimal_input = outer(rep.top_eigenspace.front());
    } else {
        // default representative: uniform mixture over the orthonormal basis
        const int n = d * d;
        rep.optimal_input = ComplexMatrix(n, n);
        for (const auto& v : rep.top_eigenspace) rep.optimal_input += outer(v);
        rep.optimal_input *= cplx(1.0 / rep.degeneracy, 0.0);
    }
    return rep;
}

double objective(const Channel& c, const ComplexMatrix& rho_ra) {
    require_square_channel(c);
    ensure_valid(c);
    require_density(rho_ra);
    const int d = c.dim_in();
    if (rho_ra.rows() != d * d)
        throw DimensionMismatch("objective: state must live on reference (x) input");

    const ComplexMatrix rho_rb = apply_extended(c, rho_ra);
    const BipartiteKet phi = maximally_entangled_ket(d);
    const std::vector<cplx> v = apply_matrix(rho_rb, phi.amp);
    cplx overlap = 0.0;
    for (size_t k = 0; k < v.size(); ++k) overlap += std::conj(phi.amp[k]) * v[k];
    return overlap.real();
}

double objective_choi(const Channel& c, const ComplexMatrix& rho_ra) {
    require_square_channel(c);
    ensure_valid(c);
    require_density(rho_ra);
    const int d = c.dim_in();
    if (rho_ra.rows() != d * d)
        throw DimensionMismatch("objective: state must live on reference (x) input");

    const ComplexMatrix j_dual = choi_from_action(dual_channel(c));
    cplx ip = 0.0;
    for (int r = 0; r < rho_ra.rows(); ++r)
        for (int s = 0; s < rho_ra.cols(); ++s) ip += rho_ra(r, s) * j_dual(s, r);
    return ip.real() / d;
}

double oracle_max_fidelity(const Channel& c, int restarts, int iters, uint64_t seed) {
    require_square_channel(c);
    ensure_valid(c);
    const int d = c.dim_in();
    const int n = d * d;
    // Assemble the adjoint map's Choi matrix by applying it to basis dyads;
    // no eigensolver is involved anywhere on this path.
    const ComplexMatrix j = choi_from_action(dual_channel(c));

    double best = 0.0;
    std::vector<cplx> v(n), w(n);
    for (int r = 0; r < restarts; ++r) {
        Rng rng(mix_seed(seed, static_cast<uint64_t>(r)));
        v = random_unit_vector(rng, n);
        double value = 0.0;
        for (int it = 0; it < iters; ++it) {
            w = apply_matrix(j, v);
            cplx ray = 0.0;
            double n2 = 0.0;
            for (int k = 0; k < n; ++k) {
                ray += std::conj(v[k]) * w[k];
                n2 += std::norm(w[k]);
            }
            const double next = ray.real();
            if (n2 < 1e-280) break;  // started orthogonal to the support
            const double inv = 1.0 / std::sqrt(n2);
            for (int k = 0; k < n; ++k) v[k] = w[k] * inv;
            if (it > 0 && std::abs(next - value) <= 1e-12 * std::max(1.0, std::abs(next))) {
                value = next;
                break;
            }
            value = next;
        }
        best = std::max(best, value);
    }
    return best / d;
}

double fully_entangled_fraction(const ComplexMatrix& rho_ab, int restarts, int iters,
                                uint64_t seed) {
    require_density(rho_ab);
    const int n = rho_ab.rows();
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (d * d != n)
        throw DimensionMismatch("fully_entangled_fraction: state is not on a d x d space");

    const BipartiteKet phi = maximally_entangled_ket(d);
    const ComplexMatrix id = ComplexMatrix::identity(d);

    // overlap <phi| (U (x) I)^dag rho (U (x) I) |phi>
    auto value_at = [&](const ComplexMatrix& u) {
        const ComplexMatrix ext = tensor(u, id);
        const std::vector<cplx> rotated = apply_matrix(ext, phi.amp);
        const std::vector<cplx> v = apply_matrix(rho_ab, rotated);
        cplx overlap = 0.0;
        for (int k = 0; k < n; ++k) overlap += std::conj(rotated[k]) * v[k];
        return overlap.real();
    };

    auto unitary_step = [&](Rng& rng, const ComplexMatrix& u, double eps) {
        ComplexMatrix h(d, d);
        for (int i = 0; i < d; ++i) {
            h(i, i) = cplx(rng.normal(), 0.0);
            for (int j = i + 1; j < d; ++j) {
                h(i, j) = 0.5 * rng.cnormal();
                h(j, i) = std::conj(h(i, j));
            }
        }
        const HermitianEigen eig = hermitian_eig(h, 1e-8);
        ComplexMatrix rot(d, d);
        for (int k = 0; k < d; ++k) {
            const cplx ph = std::exp(cplx(0.0, eps * eig.eigenvalues[k]));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    rot(i, j) += ph * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
        }
        return u * rot;
    };

    double best = value_at(id);  // result can never fall below the untouched overlap
    for (int r = 0; r < restarts; ++r) {
        Rng rng(mix_seed(seed, 0x0fe00000ULL + static_cast<uint64_t>(r)));
        ComplexMatrix u = r == 0 ? id : random_unitary(rng, d);
        double cur = value_at(u);
        double eps = 0.5;
        for (int it = 0; it < iters && eps > 1e-5; ++it) {
            const ComplexMatrix cand = unitary_step(rng, u, eps);
            const double cv = value_at(cand);
            if (cv > cur) {
                u = cand;
                cur = cv;
                eps = std::min(eps * 1.05, 0.8);
            } else {
                eps *= 0.96;
            }
        }
        best = std::max(best, cur);
    }
    return best;
}

MultiplicativityReport check_multiplicativity(const Channel& c1, const Channel& c2) {
    require_square_channel(c1);
    require_square_channel(c2);
    MultiplicativityReport r;
    r.rhs = max_fidelity(c1).o_value * max_fidelity(c2).o_value;
    r.lhs = max_fidelity(tensor_channels(c1, c2)).o_value;
    r.gap = r.lhs - r.rhs;
    return r;
}

}  // namespace entfid
