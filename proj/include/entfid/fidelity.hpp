#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entfid/channel.hpp"

namespace entfid {

enum class InputKind { unique_pure, degenerate_family };

/// Result of the one-shot maximum-fidelity computation. o_value is the
/// overlap (squared-fidelity) between the best channel output and the
/// maximally entangled state; it equals the top Choi eigenvalue over the
/// input dimension. Inputs achieving it live on the span of top_eigenspace.
struct FidelityReport {
    double o_value = 0.0;
    double top_eigenvalue = 0.0;
    int degeneracy = 1;
    InputKind input_kind = InputKind::unique_pure;
    ComplexMatrix optimal_input;                 // density on reference (x) input
    std::vector<BipartiteKet> top_eigenspace;    // orthonormal kets spanning the optimal set
    std::vector<double> kraus_norms;             // descending standard Kraus norms
    std::optional<BipartiteKet> separable_witness;
};

/// Maximum overlap with a maximally entangled state over all (possibly
/// mixed, possibly entangled) inputs, together with an optimal input.
/// Requires equal input and output dimensions.
FidelityReport max_fidelity(const Channel& c, double eps_deg = 1e-9);

/// Overlap of the channel output on rho_ra with the maximally entangled
/// state, computed by direct channel application.
double objective(const Channel& c, const ComplexMatrix& rho_ra);

/// Same quantity via the Choi operator of the adjoint map; kept as a second
/// algebraic route, must agree with objective() to 1e-10.
double objective_choi(const Channel& c, const ComplexMatrix& rho_ra);

/// Independent verification oracle: hill climbing over pure inputs by power
/// iteration on the adjoint map's Choi matrix from random starts. Never
/// exceeds the true optimum; reaches it to ~1e-6 given enough restarts and
/// iterations. Does not use the Jacobi eigensolver anywhere.
double oracle_max_fidelity(const Channel& c, int restarts = 5, int iters = 200,
                           uint64_t seed = 0x5eedULL);

/// Overlap with the best local-unitary rotation of the maximally entangled
/// state, maximized by stochastic ascent over unitaries on the first factor.
/// The identity is always among the starting points.
double fully_entangled_fraction(const ComplexMatrix& rho_ab, int restarts = 8, int iters = 300,
                                uint64_t seed = 0x5eedULL);

struct MultiplicativityReport {
    double lhs = 0.0;  // O of the joint channel
    double rhs = 0.0;  // product of component O values
    double gap = 0.0;  // lhs - rhs
};

MultiplicativityReport check_multiplicativity(const Channel& c1, const Channel& c2);

}  // namespace entfid
