#pragma once

// Projective unitary representations g -> pi(g) with
// pi(g) pi(h) = mu(g, h) pi(gh), stored densely (one matrix per element).

#include <set>
#include <vector>

#include "dualrep/group.hpp"
#include "dualrep/numlin.hpp"

namespace dualrep {

class ProjectiveRep {
public:
    /// Shape-checked only; verify_rep certifies unitarity and the twisted
    /// homomorphism identity.
    ProjectiveRep(Multiplier mu, std::vector<ComplexMatrix> matrices);

    const FiniteGroup& group() const { return mu_.group(); }
    const Multiplier& multiplier() const { return mu_; }
    Eigen::Index dim() const { return dim_; }
    std::size_t order() const { return matrices_.size(); }
    const ComplexMatrix& operator()(Element g) const { return matrices_[g]; }
    const std::vector<ComplexMatrix>& matrices() const { return matrices_; }

    /// The orbit {pi(g) x} as the columns of a dim x |G| matrix.
    ComplexMatrix orbit(const ComplexVector& x) const;

private:
    Multiplier mu_;
    std::vector<ComplexMatrix> matrices_;
    Eigen::Index dim_ = 0;
};

/// lambda(g) chi_h = mu(g, h) chi_{gh}. Throws invalid_parameter if mu is
/// not a valid multiplier.
ProjectiveRep left_regular(const Multiplier& mu);

/// rho(g) chi_h = conj(mu(h g^-1, g)) chi_{h g^-1}, whose multiplier is exactly
/// conj(mu). This differs from mu(h, g^-1) chi_{h g^-1} by the unit scalar
/// mu(g, g^-1) per element, so it generates the same algebra.
ProjectiveRep right_regular(const Multiplier& mu);

/// rho(g) chi_h = mu(h, g^-1) chi_{h g^-1}, literally. Its multiplier is
/// mu(h^-1, g^-1) and is cohomologous, not always equal, to conj(mu).
ProjectiveRep right_regular_literal(const Multiplier& mu);

struct RepReport {
    bool pass = false;
    double max_unitarity_error = 0.0;
    double max_identity_error = 0.0;   ///< ||pi(e) - I||
    double max_twist_error = 0.0;      ///< max ||pi(g)pi(h) - mu(g,h)pi(gh)||_max
    Element worst_g = 0;
    Element worst_h = 0;
    std::string failure;
};

RepReport verify_rep(const ProjectiveRep& pi, double eps = Tolerances{}.rep);
/// Check against a multiplier other than the one stored in the rep.
RepReport verify_rep(const ProjectiveRep& pi, const Multiplier& mu, double eps = Tolerances{}.rep);

constexpr double kProjectiveModulusGate = 1e-6;

/// Reads mu(g, h) = tr(pi(gh)^* pi(g) pi(h)) / dim off the matrices, checks
/// the product really is that multiple of pi(gh) within eps and that its
/// modulus is 1 within 1e-6, then normalizes. Throws not_projective otherwise.
Multiplier derive_multiplier(const std::vector<ComplexMatrix>& matrices, const FiniteGroup& g, double eps = 1e-9);

/// pi restricted to range(P), written in the orthonormal eigenvalue-1
/// eigenvectors of P. Throws invalid_parameter if P is not an orthogonal
/// projection, not_invariant if P fails to commute with some pi(g).
ProjectiveRep subrepresentation(const ProjectiveRep& pi, const ComplexMatrix& p, double eps = 1e-9);

/// Basis used by subrepresentation (columns of the returned matrix).
ComplexMatrix projection_range_basis(const ComplexMatrix& p);

/// g -> diag(exp(2 pi i g k / N) : k in E) on C^|E|.
ProjectiveRep character_subrep(std::size_t n, const std::set<std::size_t>& freqs);

/// Projection onto span{e_k : k in E}, e_k[h] = exp(-2 pi i k h / N)/sqrt(N).
/// It lies in the commutant of left_regular(Z_N) and lambda(g) e_k = exp(2 pi i g k/N) e_k.
ComplexMatrix dft_frequency_projection(std::size_t n, const std::set<std::size_t>& freqs);

nlohmann::json rep_to_json(const ProjectiveRep& pi);
ProjectiveRep rep_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RepReport& r);

}  // namespace dualrep
