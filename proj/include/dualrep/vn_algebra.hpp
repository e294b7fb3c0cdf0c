#pragma once

// Finite-dimensional von Neumann algebra calculus on M_d(C): commutants,
// generated algebras (as double commutants), centers and the vector trace.
//
// Operator subspaces are stored through their column-major vectorizations,
// which turns the Hilbert-Schmidt inner product tr(Y^* X) into the standard
// inner product on C^{d^2}.

#include <vector>

#include "dualrep/numlin.hpp"

namespace dualrep {

class OperatorSubspace {
public:
    OperatorSubspace(Eigen::Index ambient_dim, ComplexMatrix vec_basis);

    Eigen::Index ambient_dim() const { return d_; }
    Eigen::Index dim() const { return vec_basis_.cols(); }
    /// Basis element i reshaped to a d x d matrix. HS-orthonormal.
    ComplexMatrix element(Eigen::Index i) const;
    std::vector<ComplexMatrix> elements() const;
    /// The basis as orthonormal columns of C^{d^2}.
    Subspace as_subspace() const { return {d_ * d_, vec_basis_}; }
    const ComplexMatrix& vec_basis() const { return vec_basis_; }

    /// HS-orthogonal projection of x onto the subspace.
    ComplexMatrix project(const ComplexMatrix& x) const;

private:
    Eigen::Index d_;
    ComplexMatrix vec_basis_;  ///< d^2 x k
};

ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d);

/// {X : X U = U X for all U in ops}. The kernel of the stacked maps
/// X -> U X - X U is read off the Hermitian operator sum_U L_U^* L_U;
/// eigenvalues <= eps_rank * lambda_max are treated as zero.
OperatorSubspace commutant(const std::vector<ComplexMatrix>& ops, Eigen::Index d, double eps_rank = Tolerances{}.rank);

/// Commutant of the commutant of ops plus their adjoints: the unital
/// *-algebra the operators generate.
OperatorSubspace double_commutant(const std::vector<ComplexMatrix>& ops, Eigen::Index d,
                                  double eps_rank = Tolerances{}.rank);

OperatorSubspace commutant(const OperatorSubspace& a, double eps_rank = Tolerances{}.rank);

/// Intersection as the kernel of the sum of the two complementary projectors.
OperatorSubspace intersect(const OperatorSubspace& a, const OperatorSubspace& b, double eps_rank = Tolerances{}.rank);

/// A intersected with A'. Throws invalid_parameter if A is not an algebra
/// (A differs from its own double commutant by more than eps).
OperatorSubspace center(const OperatorSubspace& a, double eps = Tolerances{}.eq);
bool is_factor(const OperatorSubspace& a, double eps = Tolerances{}.eq);

/// <A chi, chi>.
cplx trace_state(const ComplexMatrix& a, const ComplexVector& chi);

/// True iff the HS distance from x to the subspace is below eps * ||x||_HS.
bool contains(const OperatorSubspace& a, const ComplexMatrix& x, double eps = Tolerances{}.eq);

bool operator_subspace_equal(const OperatorSubspace& a, const OperatorSubspace& b, double eps);
double max_principal_angle(const OperatorSubspace& a, const OperatorSubspace& b);

nlohmann::json to_json(const OperatorSubspace& a);

}  // namespace dualrep
