#pragma once

// Orbit analysis for a projective representation pi: the analysis operator
// Theta_x y = sum_g <y, pi(g) x> chi_g, the frame operator S = Theta^* Theta,
// the Gram matrix Theta Theta^*, and the classification built on them.

#include <cstdint>
#include <optional>

#include "dualrep/reps.hpp"
#include "dualrep/vn_algebra.hpp"

namespace dualrep {

struct FrameClassification {
    Eigen::Index orbit_span_dim = 0;
    double lower_bound = 0.0;  ///< smallest nonzero eigenvalue of S
    double upper_bound = 0.0;  ///< largest eigenvalue of S
    bool is_complete_frame = false;
    bool is_frame_sequence = false;
    bool is_parseval = false;  ///< Parseval frame for the orbit span
    bool is_riesz_sequence = false;
    bool is_orthonormal = false;
    double tolerance_used = 0.0;
    double rank_tolerance = 0.0;
    /// Smallest kept and largest dropped singular value of Theta, relative to
    /// the largest; how far the rank decision is from the cut.
    double min_kept_ratio = 0.0;
    double max_dropped_ratio = 0.0;
    double gram_identity_error = 0.0;  ///< ||Gram - I||_max
};

struct AnalysisOperator {
    ComplexMatrix matrix;  ///< |G| x dim, row g = conj(pi(g) x)^T
    ComplexVector vector;
};

AnalysisOperator analysis_op(const ProjectiveRep& pi, const ComplexVector& x);

/// ||Theta pi(g) - lambda_g Theta||_max over g, where lambda is the left
/// regular representation with the multiplier of pi.
double intertwining_residual(const ProjectiveRep& pi, const AnalysisOperator& theta);

ComplexMatrix frame_operator(const ProjectiveRep& pi, const ComplexVector& x);
ComplexMatrix gram_matrix(const ProjectiveRep& pi, const ComplexVector& x);

FrameClassification classify(const ProjectiveRep& pi, const ComplexVector& x, const Tolerances& tol = {});

/// S^{-1/2} x with the pseudo-inverse on the support. Throws
/// invalid_parameter for x = 0.
ComplexVector parseval_normalize(const ProjectiveRep& pi, const ComplexVector& x, double eps_rank = Tolerances{}.rank);

/// A representation together with its commutant pi(G)' and bicommutant
/// pi(G)''. Built once and shared by the operations that need the algebras.
class RepContext {
public:
    explicit RepContext(ProjectiveRep rep, const Tolerances& tol = {});

    const ProjectiveRep& rep() const { return rep_; }
    const OperatorSubspace& commutant() const { return commutant_; }
    const OperatorSubspace& bicommutant() const { return bicommutant_; }
    const Tolerances& tolerances() const { return tol_; }

    /// [pi(G)' x]
    Subspace commutant_orbit(const ComplexVector& x) const;
    /// [pi(G) x]
    Subspace orbit_span(const ComplexVector& x) const;
    /// closure of Theta_x(H) in l^2(G)
    Subspace analysis_range(const ComplexVector& x) const;

private:
    ProjectiveRep rep_;
    Tolerances tol_;
    OperatorSubspace commutant_;
    OperatorSubspace bicommutant_;
};

struct RouteVerdicts {
    bool analysis_route = false;   ///< from ranges of Theta_x, Theta_y
    bool commutant_route = false;  ///< from [pi(G)'x], [pi(G)'y]
    double analysis_measure = 0.0;   ///< overlap or principal angle
    double commutant_measure = 0.0;
};

RouteVerdicts orthogonality_routes(const RepContext& ctx, const ComplexVector& x, const ComplexVector& y);
RouteVerdicts weak_equivalence_routes(const RepContext& ctx, const ComplexVector& x, const ComplexVector& y);

/// Ranges of Theta_x and Theta_y orthogonal. Both routes are evaluated and an
/// internal_consistency error is raised if they disagree.
bool pi_orthogonal(const RepContext& ctx, const ComplexVector& x, const ComplexVector& y);
/// Closures of the ranges of Theta_x and Theta_y equal; dual-route as above.
bool pi_weakly_equivalent(const RepContext& ctx, const ComplexVector& x, const ComplexVector& y);

bool pi_orthogonal(const ProjectiveRep& pi, const ComplexVector& x, const ComplexVector& y, const Tolerances& tol = {});
bool pi_weakly_equivalent(const ProjectiveRep& pi, const ComplexVector& x, const ComplexVector& y,
                          const Tolerances& tol = {});

enum class DilationMode { frame, parseval };

struct DilationResult {
    ComplexVector eta;  ///< the vector dilated (Parseval-normalized in parseval mode)
    ComplexVector h;
    int tries = 0;
    FrameClassification combined;  ///< classification of eta + h
    double parseval_error = 0.0;   ///< ||S_{eta+h} - I||_max
};

/// Randomized construction of h with eta, h pi-orthogonal and eta + h a
/// complete frame vector (complete Parseval in parseval mode). Every return
/// is certified; after max_tries failed draws a construction_failure is
/// thrown. Throws precondition if pi is not a frame representation.
DilationResult dilate_to_complete(const RepContext& ctx, const ComplexVector& eta, DilationMode mode,
                                  std::uint64_t seed, int max_tries = 5);

/// x = Theta_eta^+ (I - P) chi_e, P the projection onto the range of
/// Theta_xi; then [Theta_x(H)] is orthogonal to [Theta_xi(H)]. Throws
/// precondition if eta's orbit is not a Riesz sequence and no_witness if
/// Theta_xi is onto l^2(G).
ComplexVector orthogonal_range_witness(const RepContext& ctx, const ComplexVector& xi, const ComplexVector& eta_riesz);

struct Parameterization {
    ComplexMatrix a;            ///< element of pi(G)'' with a * xi ~ eta
    double residual = 0.0;      ///< ||a xi - eta||
    bool in_bicommutant = false;
    bool is_unitary = false;
    bool is_invertible = false;
    bool completed = false;     ///< a partial isometry was added on [pi(G)' xi]^perp
};

/// Minimal-norm least-squares solution of A xi = eta over a basis of
/// pi(G)''. When eta is a complete frame vector and the solution is not
/// unique (xi not separating for pi(G)''), it is extended by a partial
/// isometry of pi(G)'' from [pi(G)'xi]^perp onto [pi(G)'eta]^perp so that A
/// is invertible, and unitary when both vectors are complete Parseval.
Parameterization bessel_parameterize(const RepContext& ctx, const ComplexVector& xi_parseval, const ComplexVector& eta,
                                     double eps = 1e-9, std::uint64_t seed = 0);

nlohmann::json to_json(const FrameClassification& c);

}  // namespace dualrep
