#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entfid/channel.hpp"

namespace entfid {

/// Analytic predictions attached to a family-constructed channel, so the CLI
/// can print predicted vs computed values without re-identifying the family.
struct ClosedForm {
    std::optional<double> o_value;
    std::optional<double> e_value;  // bits
};

struct FamilyChannel {
    Channel channel;
    ClosedForm closed_form;
    std::string spec;  // normalized family spec string
};

// -------------------------------------------------------------------------
// Qubit families
// -------------------------------------------------------------------------

/// Amplitude damping with damping probability p.
FamilyChannel amplitude_damping(double p);

/// Extremal two-Kraus qubit channel parametrized by the Gram overlaps of the
/// output and environment state pairs. b, c in [0, 1]; negative values are
/// accepted and canonicalized through the local-unitary sign equivalence.
/// b = c = 1 is the identity channel.
struct PcubedParams {
    double b = 0.0;
    double c = 0.0;
    bool sign_canonicalized = false;  // true when a negative input was folded
};

PcubedParams canonical_pcubed_params(double b, double c);
FamilyChannel pcubed_channel(double b, double c);

/// Same channel built from the defining isometry (nonorthogonal pure inputs
/// mapped to products of pure outputs), traced over the environment. Used to
/// cross-check the closed-form Kraus route.
Channel pcubed_channel_from_isometry(double b, double c);

/// Trigonometric parameters of the same two-Kraus channel.
std::pair<double, double> pcubed_to_uv(double b, double c);
FamilyChannel uv_channel(double u, double v);

/// Noise ordering: a channel with overlap c simulates any channel of the
/// same family with c' <= c through an intermediate channel applied first.
struct SimulationDecomposition {
    Channel coarse;        // the simulated (noisier) channel, overlap c'
    Channel intermediate;  // the pre-processing channel M
    Channel composed;      // fine channel composed with M
    double choi_residual;  // max |Choi(composed) - Choi(coarse)|
};

SimulationDecomposition pcubed_simulation(double b, double c, double c_prime);

enum class Degradability { degradable, anti_degradable };

struct DegradabilityClass {
    Degradability kind = Degradability::degradable;
    bool boundary = false;  // |b| == |c| (both classifications meet)
};

DegradabilityClass classify_degradability(double b, double c);

// -------------------------------------------------------------------------
// Pauli channels
// -------------------------------------------------------------------------

/// Mixing probabilities for I, X, Y, Z, canonicalized so the identity weight
/// is the largest (input conjugation by a Pauli re-sorts the weights without
/// changing any fidelity quantity).
struct PauliParams {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};
};

PauliParams canonical_pauli_params(const std::array<double, 4>& p);
FamilyChannel pauli_channel(const std::array<double, 4>& p);
bool pauli_anti_degradable(const std::array<double, 4>& p);

// -------------------------------------------------------------------------
// Qutrit families
// -------------------------------------------------------------------------

/// Non-unital qutrit channel mixing the identity with a partial swap and a
/// decay term; its optimal input is unique and maximally entangled for
/// lambda in (2/5, 1].
FamilyChannel qutrit_m(double lambda);

/// Unital qutrit channel with four Hermitian Kraus operators; its optimal
/// input is never maximally entangled, and at z = 0 the optimal inputs span
/// a completely entangled subspace.
FamilyChannel qutrit_p(double z);

// -------------------------------------------------------------------------
// Family spec strings (CLI surface)
// -------------------------------------------------------------------------

/// Grammar: ad:p=0.5 | pcubed:b=0.3,c=0.7 | uv:u=1.0,v=0.5 |
///          pauli:0.5,0.2,0.2,0.1 | qutritM:lambda=0.6 | qutritP:z=0.4
FamilyChannel parse_family_spec(const std::string& spec);
bool is_family_spec(const std::string& spec);

/// Fixed list of representative family specs crossed pairwise by the CLI
/// multiplicativity suite.
std::vector<std::string> family_suite_specs();

}  // namespace entfid
