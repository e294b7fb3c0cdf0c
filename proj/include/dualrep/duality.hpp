#pragma once

// Commuting pairs pi(G)' = sigma(G)'', dual-pair certification and the
// three-clause duality check between pi-orbits and sigma-orbits of a vector.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualrep/frames.hpp"
#include "dualrep/gabor.hpp"

namespace dualrep {

struct CommutingPairResult {
    bool commuting = false;
    double residual_angle = 0.0;  ///< max principal angle between pi' and sigma''
    Eigen::Index commutant_dim = 0;
    Eigen::Index bicommutant_dim = 0;
};

/// pi(G)' against sigma(G)'' as subspaces of M_d. Throws invalid_parameter
/// on a dimension mismatch.
CommutingPairResult is_commuting_pair(const ProjectiveRep& pi, const ProjectiveRep& sigma, const Tolerances& tol = {});

enum class PairStatus { feasible, not_commuting, infeasible_by_dimension, no_frame_vector, infeasible_empirically };

std::string_view to_string(PairStatus s);

struct DualPairReport {
    CommutingPairResult commuting;
    std::optional<ComplexVector> frame_vector;  ///< complete frame vector for pi (Parseval-normalized)
    double sigma_bessel_bound = 0.0;            ///< upper frame bound of the sigma-orbit of frame_vector
    std::optional<ComplexVector> riesz_vector;
    bool feasible = false;
    PairStatus status = PairStatus::not_commuting;
    int frame_draws = 0;
    int riesz_draws = 0;
    std::string notes;
};

/// Seeded search for the two witnesses. The first basis vector is tried
/// before the random draws. Absence of a witness is reported, never thrown.
DualPairReport certify_dual_pair(const ProjectiveRep& pi, const ProjectiveRep& sigma, std::uint64_t seed,
                                 int n_samples = 50, const Tolerances& tol = {});

/// A pair together with its certification report.
/// gram_scale = dim / |G_pi|: the sigma-Gram of a complete Parseval
/// pi-vector is gram_scale * I (1 for the regular pair, ab/N for Gabor).
class CertifiedPair {
public:
    CertifiedPair(ProjectiveRep pi, ProjectiveRep sigma, std::uint64_t seed = 0, const Tolerances& tol = {});

    const ProjectiveRep& pi() const { return pi_; }
    const ProjectiveRep& sigma() const { return sigma_; }
    const DualPairReport& report() const { return report_; }
    const Tolerances& tolerances() const { return tol_; }
    double gram_scale() const { return gram_scale_; }
    bool is_dual() const { return report_.feasible; }
    bool is_commuting() const { return report_.commuting.commuting; }

private:
    ProjectiveRep pi_;
    ProjectiveRep sigma_;
    Tolerances tol_;
    DualPairReport report_;
    double gram_scale_;
};

enum class Clause { frame_seq_vs_frame_seq, frame_vs_riesz, parseval_vs_orthonormal };

std::string_view to_string(Clause c);

struct ClauseResult {
    Clause clause;
    bool lhs = false;  ///< property of the pi-orbit
    bool rhs = false;  ///< property of the sigma-orbit
    bool holds() const { return lhs == rhs; }
};

struct DualityVerdict {
    ComplexVector xi;
    FrameClassification pi_classification;
    FrameClassification sigma_classification;
    std::vector<ClauseResult> clauses;  ///< in evaluation order
    bool theorem_consistent = false;
    std::optional<Clause> first_failed;
    /// ||Gram_sigma - gram_scale * I||_max
    double scaled_gram_error = 0.0;
    /// Relative mismatch between the pi-frame bounds and kappa times the
    /// sigma-bounds, kappa = 1 / gram_scale; zero in exact arithmetic.
    double bound_residual = 0.0;
};

/// All three clauses for a certified dual pair; only the frame-sequence
/// clause when the pair is merely commuting. Throws invalid_pair if the
/// pair is not commuting and invalid_parameter for xi = 0.
DualityVerdict verify_duality(const CertifiedPair& pair, const ComplexVector& xi);

std::pair<ProjectiveRep, ProjectiveRep> make_regular_pair(const Multiplier& mu);
std::pair<ProjectiveRep, ProjectiveRep> make_gabor_pair(const GaborLattice& lattice);

/// Pair description as JSON:
///   {"kind": "regular", "group": "Z12" | {cayley...}, "multiplier": "trivial" | "heisenberg" | table,
///    "N": n (heisenberg), "projection": matrix (optional, applied to both)}
///   {"kind": "gabor", "lattice": [N, a, b]}
///   {"kind": "custom", "pi": rep, "sigma": rep}
std::pair<ProjectiveRep, ProjectiveRep> resolve_pair(const nlohmann::json& spec);

struct SweepOptions {
    std::size_t n_vectors = 200;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    Tolerances tol;
};

struct SweepRecord {
    std::size_t index = 0;
    std::string kind;  ///< random, basis, rank_deficient, parseval, zero
    bool excluded = false;
    std::optional<DualityVerdict> verdict;
};

struct SweepReport {
    std::string pair_label;
    CommutingPairResult commuting;
    bool dual = false;
    std::size_t n_random = 0;
    std::size_t n_checked = 0;
    std::size_t n_excluded = 0;
    std::size_t failures = 0;
    double worst_residual = 0.0;
    std::vector<SweepRecord> records;
    bool pass() const { return commuting.commuting && failures == 0; }
};

/// verify_duality on n_vectors seeded draws plus basis vectors, rank-deficient
/// vectors, Parseval-normalized draws and the zero vector (recorded, not
/// counted). Draw i uses the substream (seed, i), so the result does not
/// depend on jobs.
SweepReport duality_sweep(const CertifiedPair& pair, const std::string& label, const SweepOptions& options);

nlohmann::json to_json(const CommutingPairResult& r);
nlohmann::json to_json(const DualPairReport& r);
nlohmann::json to_json(const DualityVerdict& v);
nlohmann::json to_json(const SweepReport& r);
/// Header plus one row: pair,n,failures,worst_residual
std::string to_csv(const SweepReport& r);

}  // namespace dualrep
