#include "dualrep/frames.hpp"

#include <cmath>
#include <sstream>

#include "dualrep/error.hpp"

namespace dualrep {

AnalysisOperator analysis_op(const ProjectiveRep& pi, const ComplexVector& x) {
    require(x.size() == pi.dim(), ErrorKind::invalid_parameter, "analysis_op: vector length does not match dim");
    return {pi.orbit(x).adjoint(), x};
}

double intertwining_residual(const ProjectiveRep& pi, const AnalysisOperator& theta) {
    const ProjectiveRep lambda = left_regular(pi.multiplier());
    double worst = 0.0;
    for (Element g = 0; g < pi.order(); ++g)
        worst = std::max(worst, max_abs(theta.matrix * pi(g) - lambda(g) * theta.matrix));
    return worst;
}

ComplexMatrix frame_operator(const ProjectiveRep& pi, const ComplexVector& x) {
    const ComplexMatrix orbit = pi.orbit(x);
    return orbit * orbit.adjoint();
}

ComplexMatrix gram_matrix(const ProjectiveRep& pi, const ComplexVector& x) {
    const ComplexMatrix orbit = pi.orbit(x);
    return orbit.adjoint() * orbit;
}

FrameClassification classify(const ProjectiveRep& pi, const ComplexVector& x, const Tolerances& tol) {
    require(x.size() == pi.dim(), ErrorKind::invalid_parameter, "classify: vector length does not match dim");
    FrameClassification c;
    c.tolerance_used = tol.eq;
    c.rank_tolerance = tol.rank;

    const ComplexMatrix orbit = pi.orbit(x);
    const RankRange rr = rank_and_range(orbit, tol.rank);
    const Eigen::VectorXd& s = rr.singular_values;
    const double smax = s.size() ? s(0) : 0.0;
    c.orbit_span_dim = rr.rank;

    const ComplexMatrix gram = orbit.adjoint() * orbit;
    c.gram_identity_error = max_abs(gram - ComplexMatrix::Identity(gram.rows(), gram.cols()));

    if (rr.rank == 0) return c;

    c.upper_bound = smax * smax;
    c.lower_bound = s(rr.rank - 1) * s(rr.rank - 1);
    c.min_kept_ratio = s(rr.rank - 1) / smax;
    c.max_dropped_ratio = rr.rank < s.size() ? s(rr.rank) / smax : 0.0;

    const auto group_order = static_cast<Eigen::Index>(pi.order());
    c.is_frame_sequence = true;
    c.is_complete_frame = rr.rank == pi.dim();
    c.is_riesz_sequence = rr.rank == group_order;
    // S vanishes off the orbit span, so S equals the span projection exactly
    // when its nonzero spectrum is {1}.
    c.is_parseval = std::abs(c.lower_bound - 1.0) <= tol.eq && std::abs(c.upper_bound - 1.0) <= tol.eq;
    c.is_orthonormal = c.is_riesz_sequence && c.gram_identity_error < tol.eq;
    return c;
}

ComplexVector parseval_normalize(const ProjectiveRep& pi, const ComplexVector& x, double eps_rank) {
    require(x.size() == pi.dim(), ErrorKind::invalid_parameter, "parseval_normalize: vector length does not match dim");
    require(x.norm() > 0.0, ErrorKind::invalid_parameter, "parseval_normalize: zero vector");
    return psd_power(frame_operator(pi, x), -0.5, eps_rank) * x;
}

RepContext::RepContext(ProjectiveRep rep, const Tolerances& tol)
    : rep_(std::move(rep)),
      tol_(tol),
      commutant_(dualrep::commutant(rep_.matrices(), rep_.dim(), tol.rank)),
      bicommutant_(dualrep::commutant(commutant_, tol.rank)) {}

Subspace RepContext::commutant_orbit(const ComplexVector& x) const {
    require(x.size() == rep_.dim(), ErrorKind::invalid_parameter, "vector length does not match dim");
    ComplexMatrix cols(rep_.dim(), commutant_.dim());
    for (Eigen::Index j = 0; j < commutant_.dim(); ++j) cols.col(j) = commutant_.element(j) * x;
    return rank_and_range(cols, tol_.rank).range;
}

Subspace RepContext::orbit_span(const ComplexVector& x) const { return rank_and_range(rep_.orbit(x), tol_.rank).range; }

Subspace RepContext::analysis_range(const ComplexVector& x) const {
    return rank_and_range(analysis_op(rep_, x).matrix, tol_.rank).range;
}

RouteVerdicts orthogonality_routes(const RepContext& ctx, const ComplexVector& x, const ComplexVector& y) {
    RouteVerdicts v;
    v.analysis_measure = max_overlap(ctx.analysis_range(x), ctx.analysis_range(y));
    v.commutant_measure = max_overlap(ctx.commutant_orbit(x), ctx.commutant_orbit(y));
    v.analysis_route = v.analysis_measure < ctx.tolerances().route;
    v.commutant_route = v.commutant_measure < ctx.tolerances().route;
    return v;
}

RouteVerdicts weak_equivalence_routes(const RepContext& ctx, const ComplexVector& x, const ComplexVector& y) {
    RouteVerdicts v;
    v.analysis_measure = max_principal_angle(ctx.analysis_range(x), ctx.analysis_range(y));
    v.commutant_measure = max_principal_angle(ctx.commutant_orbit(x), ctx.commutant_orbit(y));
    v.analysis_route = v.analysis_measure < ctx.tolerances().route;
    v.commutant_route = v.commutant_measure < ctx.tolerances().route;
    return v;
}

namespace {

bool agreed(const RouteVerdicts& v, const char* what) {
    if (v.analysis_route != v.commutant_route) {
        std::ostringstream os;
        os << what << ": analysis-range route says " << v.analysis_route << " (" << v.analysis_measure
           << "), commutant route says " << v.commutant_route << " (" << v.commutant_measure << ")";
        fail(ErrorKind::internal_consistency, os.str());
    }
    return v.analysis_route;
}

}  // namespace

bool pi_orthogonal(const RepContext& ctx, const ComplexVector& x, const ComplexVector& y) {
    return agreed(orthogonality_routes(ctx, x, y), "pi_orthogonal");
}

bool pi_weakly_equivalent(const RepContext& ctx, const ComplexVector& x, const ComplexVector& y) {
    return agreed(weak_equivalence_routes(ctx, x, y), "pi_weakly_equivalent");
}

bool pi_orthogonal(const ProjectiveRep& pi, const ComplexVector& x, const ComplexVector& y, const Tolerances& tol) {
    return pi_orthogonal(RepContext(pi, tol), x, y);
}

bool pi_weakly_equivalent(const ProjectiveRep& pi, const ComplexVector& x, const ComplexVector& y,
                          const Tolerances& tol) {
    return pi_weakly_equivalent(RepContext(pi, tol), x, y);
}

DilationResult dilate_to_complete(const RepContext& ctx, const ComplexVector& eta_in, DilationMode mode,
                                  std::uint64_t seed, int max_tries) {
    const ProjectiveRep& pi = ctx.rep();
    const Tolerances& tol = ctx.tolerances();
    require(eta_in.size() == pi.dim(), ErrorKind::invalid_parameter, "dilate_to_complete: vector length mismatch");
    require(eta_in.norm() > 0.0, ErrorKind::invalid_parameter, "dilate_to_complete: eta is zero");

    {
        Rng probe(seed, 0x70726f6265ULL);
        const ComplexVector v = probe.gaussian_vector(pi.dim());
        require(classify(pi, v, tol).is_complete_frame, ErrorKind::precondition,
                "representation has no complete frame vector");
    }

    DilationResult out;
    out.eta = mode == DilationMode::parseval ? parseval_normalize(pi, eta_in, tol.rank) : eta_in;
    const auto id = ComplexMatrix::Identity(pi.dim(), pi.dim());

    auto certify = [&](const ComplexVector& h) -> bool {
        const ComplexVector sum = out.eta + h;
        out.combined = classify(pi, sum, tol);
        out.parseval_error = max_abs(frame_operator(pi, sum) - id);
        if (!out.combined.is_complete_frame) return false;
        if (mode == DilationMode::parseval && out.parseval_error > tol.eq) return false;
        return h.norm() == 0.0 || pi_orthogonal(ctx, out.eta, h);
    };

    const ComplexVector zero = ComplexVector::Zero(pi.dim());
    if (certify(zero)) {
        out.h = zero;
        return out;
    }

    // F projects onto [pi(G)'eta]^perp and lies in pi(G)''; anything in its
    // range is pi-orthogonal to eta.
    ComplexMatrix filter = id - ctx.commutant_orbit(out.eta).projector();
    if (mode == DilationMode::parseval) filter = (id - ctx.orbit_span(out.eta).projector()) * filter;

    for (int attempt = 1; attempt <= max_tries; ++attempt) {
        out.tries = attempt;
        Rng rng(seed, static_cast<std::uint64_t>(attempt));
        ComplexVector h = filter * rng.gaussian_vector(pi.dim());
        if (h.norm() == 0.0) break;
        if (mode == DilationMode::parseval) h = parseval_normalize(pi, h, tol.rank);
        if (certify(h)) {
            out.h = h;
            return out;
        }
    }
    fail(ErrorKind::construction_failure,
         "no dilation found after " + std::to_string(max_tries) + " draws (last combined orbit rank " +
             std::to_string(out.combined.orbit_span_dim) + " of " + std::to_string(pi.dim()) + ")");
}

ComplexVector orthogonal_range_witness(const RepContext& ctx, const ComplexVector& xi, const ComplexVector& eta_riesz) {
    const ProjectiveRep& pi = ctx.rep();
    const Tolerances& tol = ctx.tolerances();
    require(classify(pi, eta_riesz, tol).is_riesz_sequence, ErrorKind::precondition,
            "orthogonal_range_witness: eta does not generate a Riesz sequence");
    const Subspace range = ctx.analysis_range(xi);
    const auto n = static_cast<Eigen::Index>(pi.order());
    require(range.dim() < n, ErrorKind::no_witness, "range of Theta_xi is all of l^2(G)");

    ComplexVector chi_e = ComplexVector::Zero(n);
    chi_e(static_cast<Eigen::Index>(pi.group().identity())) = 1.0;
    const ComplexVector target = chi_e - range.basis * (range.basis.adjoint() * chi_e);
    const ComplexMatrix theta = analysis_op(pi, eta_riesz).matrix;
    ComplexVector x = theta.completeOrthogonalDecomposition().solve(target);
    require(x.norm() > 0.0, ErrorKind::internal_consistency, "witness vanished");
    require(pi_orthogonal(ctx, x, xi), ErrorKind::internal_consistency, "witness is not pi-orthogonal to xi");
    return x;
}

Parameterization bessel_parameterize(const RepContext& ctx, const ComplexVector& xi, const ComplexVector& eta,
                                     double eps, std::uint64_t seed) {
    const ProjectiveRep& pi = ctx.rep();
    const Tolerances& tol = ctx.tolerances();
    require(eta.size() == pi.dim() && xi.size() == pi.dim(), ErrorKind::invalid_parameter,
            "bessel_parameterize: vector length mismatch");
    const FrameClassification cx = classify(pi, xi, tol);
    require(cx.is_complete_frame && cx.is_parseval, ErrorKind::precondition,
            "bessel_parameterize: xi is not a complete Parseval frame vector");

    const OperatorSubspace& alg = ctx.bicommutant();
    const std::vector<ComplexMatrix> basis = alg.elements();
    ComplexMatrix images(pi.dim(), alg.dim());
    for (Eigen::Index j = 0; j < alg.dim(); ++j) images.col(j) = basis[static_cast<std::size_t>(j)] * xi;
    const ComplexVector coeffs = images.completeOrthogonalDecomposition().solve(eta);

    Parameterization out;
    out.a = ComplexMatrix::Zero(pi.dim(), pi.dim());
    for (Eigen::Index j = 0; j < alg.dim(); ++j) out.a += coeffs(j) * basis[static_cast<std::size_t>(j)];

    const auto id = ComplexMatrix::Identity(pi.dim(), pi.dim());
    const FrameClassification ce = classify(pi, eta, tol);
    const ComplexMatrix p_xi = ctx.commutant_orbit(xi).projector();
    if (ce.is_complete_frame && max_abs(id - p_xi) > tol.eq) {
        // Add a partial isometry of pi(G)'' from [pi(G)'xi]^perp onto
        // [pi(G)'eta]^perp: the polar part of a generic element compressed
        // between the two complements.
        const ComplexMatrix q_xi = id - p_xi;
        const ComplexMatrix q_eta = id - ctx.commutant_orbit(eta).projector();
        Rng rng(seed, 0x626573736cULL);
        ComplexMatrix generic = ComplexMatrix::Zero(pi.dim(), pi.dim());
        for (const auto& b : basis) generic += rng.complex_normal() * b;
        const ComplexMatrix y = q_eta * generic * q_xi;
        Eigen::JacobiSVD<ComplexMatrix> svd(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::VectorXd& s = svd.singularValues();
        Eigen::Index r = 0;
        while (r < s.size() && s(r) > tol.rank * std::max(s(0), 1e-300)) ++r;
        out.a += svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint();
        out.completed = r > 0;
    }

    out.residual = (out.a * xi - eta).norm();
    out.in_bicommutant = contains(alg, out.a, tol.eq);
    out.is_unitary = max_abs(out.a.adjoint() * out.a - id) < tol.eq;
    out.is_invertible = rank_and_range(out.a, tol.rank).rank == pi.dim();
    require(out.residual < eps, ErrorKind::parameterization_failure,
            "residual " + std::to_string(out.residual) + " above tolerance");
    require(out.in_bicommutant, ErrorKind::parameterization_failure, "solution left pi(G)''");
    return out;
}

nlohmann::json to_json(const FrameClassification& c) {
    return {{"orbit_span_dim", c.orbit_span_dim},
            {"lower_bound", c.lower_bound},
            {"upper_bound", c.upper_bound},
            {"is_complete_frame", c.is_complete_frame},
            {"is_frame_sequence", c.is_frame_sequence},
            {"is_parseval", c.is_parseval},
            {"is_riesz_sequence", c.is_riesz_sequence},
            {"is_orthonormal", c.is_orthonormal},
            {"tolerance_used", c.tolerance_used},
            {"rank_tolerance", c.rank_tolerance},
            {"min_kept_ratio", c.min_kept_ratio},
            {"max_dropped_ratio", c.max_dropped_ratio},
            {"gram_identity_error", c.gram_identity_error}};
}

}  // namespace dualrep
