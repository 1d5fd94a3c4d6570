#pragma once

#include <cstdint>
#include <vector>

#include "entfid/fidelity.hpp"

namespace entfid {

/// Orthonormal set of bipartite kets spanning a subspace of interest
/// (typically the top Choi eigenspace carrying the optimal inputs).
struct Subspace {
    int dim_a = 0;
    int dim_b = 0;
    std::vector<BipartiteKet> basis;
};

/// Throws unless the basis kets are pairwise orthonormal within tol.
void require_orthonormal(const Subspace& s, double tol = 1e-10);

/// Entanglement entropy of a normalized pure state, in bits.
double pure_entanglement(const BipartiteKet& psi);

enum class EntanglementMethod { pure_unique, pencil_product_state, numeric_min };

struct EntanglementReport {
    double e_value = 0.0;
    BipartiteKet minimizer;
    EntanglementMethod method = EntanglementMethod::pure_unique;
    // numeric-route metadata, zero elsewhere
    uint64_t seed = 0;
    int restarts = 0;
    int iters = 0;
};

struct PencilProducts {
    std::vector<BipartiteKet> states;  // 1 or 2 normalized product kets
    bool degenerate = false;           // every vector of the span is product
};

/// Product states inside a two-dimensional subspace of a two-qubit space.
/// The basis kets are flattened to 2x2 operators M0, M1 and the roots of the
/// homogeneous quadratic det(x M0 + y M1) = 0 picked out; each root is a
/// rank-one operator whose ket is a product state.
PencilProducts product_states_in_pencil(const Subspace& s);

/// Minimum entanglement entropy over unit vectors of the subspace. Two-qubit
/// two-dimensional subspaces go through the pencil (exact zeros); otherwise
/// a seeded stochastic minimizer over basis coefficients is used.
EntanglementReport min_entanglement_over_subspace(const Subspace& s, int restarts = 64,
                                                  int iters = 500, uint64_t seed = 0x5eedULL);

/// Minimum entanglement of formation over the optimal inputs of Theorem-1
/// type: entanglement of the unique optimal ket when the top Choi eigenvalue
/// is simple, otherwise the minimum over the degenerate eigenspace (exactly
/// zero for qubit channels, via a product witness).
EntanglementReport input_entanglement(const Channel& c, double eps_deg = 1e-9,
                                      int restarts = 64, int iters = 500,
                                      uint64_t seed = 0x5eedULL);

/// Same, reusing an already computed fidelity report.
EntanglementReport input_entanglement(const Channel& c, const FidelityReport& fid,
                                      int restarts = 64, int iters = 500,
                                      uint64_t seed = 0x5eedULL);

}  // namespace entfid
