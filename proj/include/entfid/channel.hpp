#pragma once

#include <memory>
#include <vector>

#include "entfid/linalg.hpp"

namespace entfid {

/// A quantum channel given as an ordered list of dim_out x dim_in Kraus
/// operators. Construction enforces shapes and finite entries; trace
/// preservation is checked by validate_channel / ensure_valid so that broken
/// Kraus sets can still be loaded and reported on.
class Channel {
public:
    Channel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus);

    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

    /// max |sum K^dag K - I| — zero for a trace-preserving map.
    double tp_residual() const { return tp_residual_; }
    /// max |sum K K^dag - I| — zero for a unital map.
    double unital_residual() const { return unital_residual_; }

private:
    int dim_in_;
    int dim_out_;
    std::vector<ComplexMatrix> kraus_;
    double tp_residual_;
    double unital_residual_;
};

struct ValidationReport {
    double tp_residual = 0.0;
    double unital_residual = 0.0;
    double choi_min_eigenvalue = 0.0;
    double tolerance = 1e-9;
    bool trace_preserving = false;
    bool completely_positive = false;
    bool unital = false;
    bool valid = false;  // trace_preserving && completely_positive
};

ValidationReport validate_channel(const Channel& c, double tol = 1e-9);

/// Throws InvalidChannel unless the map is trace preserving within tol.
void ensure_valid(const Channel& c, double tol = 1e-9);

// -------------------------------------------------------------------------
// Operator-ket duality (computational bases fixed at both ends)
// -------------------------------------------------------------------------

/// Ket associated with an operator K: in -> out by acting on one half of the
/// unnormalized maximally entangled state of the input space. The ket lives
/// on in (x) out and carries amplitude K(j, i) at |i>|j>.
BipartiteKet op_to_ket(const ComplexMatrix& k);

/// Inverse of op_to_ket.
ComplexMatrix ket_to_op(const BipartiteKet& psi);

/// Componentwise complex conjugation in the fixed product basis.
BipartiteKet ket_conjugate(const BipartiteKet& psi);

// -------------------------------------------------------------------------
// Choi operator
// -------------------------------------------------------------------------

/// Hermitian operator on in (x) out capturing the channel's action; the
/// eigendecomposition is computed lazily, at most once, and shared by copies.
class ChoiOperator {
public:
    ChoiOperator(ComplexMatrix matrix, int dim_in, int dim_out);

    const ComplexMatrix& matrix() const;
    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }

    const HermitianEigen& eig() const;

private:
    struct Cache;
    int dim_in_;
    int dim_out_;
    std::shared_ptr<Cache> cache_;
};

/// Choi operator assembled from Kraus-operator kets.
ChoiOperator choi(const Channel& c);

/// Choi matrix assembled by applying the channel to basis dyads. Kept as an
/// independent construction route; must agree with choi() and is used by the
/// verification oracle so it never touches the Jacobi eigensolver path.
ComplexMatrix choi_from_action(const Channel& c);

// -------------------------------------------------------------------------
// Standard Kraus decomposition
// -------------------------------------------------------------------------

/// Kraus set read off the Choi eigendecomposition: mutually orthogonal under
/// the Frobenius inner product, squared norms descending, one operator per
/// nonzero Choi eigenvalue.
struct StandardKraus {
    std::vector<ComplexMatrix> kraus;
    std::vector<double> norms;  // descending; sums to dim_in
    int degeneracy_top = 1;     // count of norms within eps_deg of norms[0]
};

StandardKraus standard_kraus(const Channel& c, double eps_deg = 1e-9);

// -------------------------------------------------------------------------
// Derived channels and channel application
// -------------------------------------------------------------------------

/// Adjoint map (Kraus operators K^dag, same order). Unital whenever the
/// input is trace preserving.
Channel dual_channel(const Channel& c);

ComplexMatrix apply(const Channel& c, const ComplexMatrix& rho);

/// Apply the channel to the second factor of a state on R (x) in; the
/// reference dimension is inferred from the state's shape.
ComplexMatrix apply_extended(const Channel& c, const ComplexMatrix& rho_ra);

/// Parallel use of two channels; Kraus set is all pairwise tensor products.
Channel tensor_channels(const Channel& c1, const Channel& c2);

/// Serial composition outer(inner(.)).
Channel compose_channels(const Channel& outer, const Channel& inner);

/// Choi matrix of a product channel from component Chois, i.e. the tensor
/// product reindexed from (in1 out1)(in2 out2) to (in1 in2)(out1 out2).
ComplexMatrix choi_product(const ChoiOperator& j1, const ChoiOperator& j2);

}  // namespace entfid
