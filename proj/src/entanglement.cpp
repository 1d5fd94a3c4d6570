#include "entfid/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entfid/sampling.hpp"

namespace entfid {

namespace {

constexpr double kSchmidtProductTol = 1e-7;  // "product" threshold for reports

double entropy_of_schmidt(const std::vector<double>& sv) {
    double s = 0.0;
    for (double v : sv) {
        const double p = v * v;
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

BipartiteKet combine(const Subspace& s, const std::vector<cplx>& coeff) {
    BipartiteKet out;
    out.dim_a = s.dim_a;
    out.dim_b = s.dim_b;
    out.amp.assign(static_cast<size_t>(s.dim_a) * s.dim_b, cplx(0.0, 0.0));
    for (size_t k = 0; k < s.basis.size(); ++k)
        for (size_t i = 0; i < out.amp.size(); ++i) out.amp[i] += coeff[k] * s.basis[k].amp[i];
    return out;
}

}  // namespace

void require_orthonormal(const Subspace& s, double tol) {
    if (s.basis.empty()) throw DimensionMismatch("subspace has an empty basis");
    for (size_t i = 0; i < s.basis.size(); ++i) {
        if (s.basis[i].dim_a != s.dim_a || s.basis[i].dim_b != s.dim_b)
            throw DimensionMismatch("subspace basis ket has wrong dimensions");
        for (size_t j = i; j < s.basis.size(); ++j) {
            const cplx ip = dot(s.basis[i], s.basis[j]);
            const cplx want = i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            if (std::abs(ip - want) > tol)
                throw NotNormalized("subspace basis is not orthonormal within tolerance");
        }
    }
}

double pure_entanglement(const BipartiteKet& psi) {
    if (!psi.is_normalized(1e-9)) throw NotNormalized("pure_entanglement needs a unit ket");
    return entropy_of_schmidt(schmidt_coefficients(psi));
}

PencilProducts product_states_in_pencil(const Subspace& s) {
    if (s.dim_a != 2 || s.dim_b != 2 || s.basis.size() != 2)
        throw DimensionMismatch("pencil search needs two basis kets of a two-qubit space");
    require_orthonormal(s);

    const ComplexMatrix m0 = ket_to_op(s.basis[0]);
    const ComplexMatrix m1 = ket_to_op(s.basis[1]);
    // det(x M0 + y M1) = a x^2 + m xy + b y^2
    const cplx a = m0(0, 0) * m0(1, 1) - m0(0, 1) * m0(1, 0);
    const cplx b = m1(0, 0) * m1(1, 1) - m1(0, 1) * m1(1, 0);
    const cplx m = m0(0, 0) * m1(1, 1) + m1(0, 0) * m0(1, 1) - m0(0, 1) * m1(1, 0) -
                   m1(0, 1) * m0(1, 0);

    PencilProducts out;
    auto push_root = [&](cplx x, cplx y) {
        std::vector<cplx> coeff{x, y};
        BipartiteKet ket = combine(s, coeff);
        if (ket.norm() < 1e-12) return;
        ket = ket.normalized();
        for (const auto& prev : out.states)
            if (std::abs(dot(prev, ket)) > 1.0 - 1e-10) return;  // same projective root
        out.states.push_back(std::move(ket));
    };

    constexpr double kZero = 1e-12;
    if (std::abs(a) < kZero && std::abs(b) < kZero && std::abs(m) < kZero) {
        // determinant vanishes identically: every vector of the span is a
        // product state; hand back the basis directions
        out.degenerate = true;
        push_root(1.0, 0.0);
        push_root(0.0, 1.0);
        return out;
    }

    if (std::abs(a) < kZero) {
        push_root(1.0, 0.0);  // root at infinity (y = 0)
        if (std::abs(m) >= kZero) push_root(-b / m, 1.0);
    } else {
        const cplx disc = std::sqrt(m * m - 4.0 * a * b);
        push_root((-m + disc) / (2.0 * a), 1.0);
        push_root((-m - disc) / (2.0 * a), 1.0);
    }
    return out;
}

EntanglementReport min_entanglement_over_subspace(const Subspace& s, int restarts, int iters,
                                                  uint64_t seed) {
    require_orthonormal(s);
    EntanglementReport rep;

    if (s.basis.size() == 1) {
        rep.method = EntanglementMethod::pure_unique;
        rep.minimizer = s.basis.front().normalized();
        rep.e_value = pure_entanglement(rep.minimizer);
        return rep;
    }

    if (s.dim_a == 2 && s.dim_b == 2) {
        // Two-dimensional subspace of a two-qubit space always holds a
        // product state; the pencil finds it exactly.
        Subspace pair{s.dim_a, s.dim_b, {s.basis[0], s.basis[1]}};
        const PencilProducts prods = product_states_in_pencil(pair);
        rep.method = EntanglementMethod::pencil_product_state;
        rep.minimizer = prods.states.front();
        rep.e_value = 0.0;
        return rep;
    }

    // stochastic minimization over unit coefficient vectors on the basis
    const int k = static_cast<int>(s.basis.size());
    rep.method = EntanglementMethod::numeric_min;
    rep.seed = seed;
    rep.restarts = restarts;
    rep.iters = iters;

    auto normalize_coeff = [](std::vector<cplx>& c) {
        double n2 = 0.0;
        for (const auto& v : c) n2 += std::norm(v);
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& v : c) v *= inv;
    };
    auto energy = [&](const std::vector<cplx>& c) {
        return entropy_of_schmidt(schmidt_coefficients(combine(s, c)));
    };

    double best = std::numeric_limits<double>::infinity();
    std::vector<cplx> best_coeff;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(mix_seed(seed, 0xe0000000ULL + static_cast<uint64_t>(r)));
        std::vector<cplx> cur(k);
        for (auto& v : cur) v = rng.cnormal();
        normalize_coeff(cur);
        double cur_e = energy(cur);
        double step = 0.4;
        for (int it = 0; it < iters && step > 1e-5; ++it) {
            std::vector<cplx> cand = cur;
            for (auto& v : cand) v += step * rng.cnormal();
            normalize_coeff(cand);
            const double ce = energy(cand);
            if (ce < cur_e) {
                cur = std::move(cand);
                cur_e = ce;
                step = std::min(step * 1.05, 0.6);
            } else {
                step *= 0.97;  // anneal
            }
        }
        if (cur_e < best) {
            best = cur_e;
            best_coeff = cur;
        }
    }

    rep.minimizer = combine(s, best_coeff).normalized();
    const std::vector<double> sv = schmidt_coefficients(rep.minimizer);
    // snap to an exact zero when the minimizer is product within tolerance
    rep.e_value = sv.size() > 1 && sv[1] <= kSchmidtProductTol ? 0.0 : best;
    return rep;
}

EntanglementReport input_entanglement(const Channel& c, double eps_deg, int restarts, int iters,
                                      uint64_t seed) {
    return input_entanglement(c, max_fidelity(c, eps_deg), restarts, iters, seed);
}

EntanglementReport input_entanglement(const Channel& c, const FidelityReport& fid, int restarts,
                                      int iters, uint64_t seed) {
    if (c.dim_in() != c.dim_out())
        throw DimensionMismatch("input entanglement needs dim_in == dim_out");

    Subspace top{c.dim_in(), c.dim_out(), fid.top_eigenspace};
    if (fid.degeneracy == 1) {
        EntanglementReport rep;
        rep.method = EntanglementMethod::pure_unique;
        rep.minimizer = top.basis.front().normalized();
        rep.e_value = pure_entanglement(rep.minimizer);
        return rep;
    }
    if (c.dim_in() == 2) {
        // Degenerate qubit channel: any two top-eigenspace directions span a
        // plane holding a product state, so the minimum is exactly zero.
        Subspace pair{2, 2, {top.basis[0], top.basis[1]}};
        const PencilProducts prods = product_states_in_pencil(pair);
        EntanglementReport rep;
        rep.method = EntanglementMethod::pencil_product_state;
        rep.minimizer = prods.states.front();
        rep.e_value = 0.0;
        return rep;
    }
    return min_entanglement_over_subspace(top, restarts, iters, seed);
}

}  // namespace entfid
