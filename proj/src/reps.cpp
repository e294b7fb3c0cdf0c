#include "dualrep/reps.hpp"

#include <cmath>
#include <numbers>

#include "dualrep/error.hpp"

namespace dualrep {

ProjectiveRep::ProjectiveRep(Multiplier mu, std::vector<ComplexMatrix> matrices)
    : mu_(std::move(mu)), matrices_(std::move(matrices)) {
    require(matrices_.size() == mu_.group().order(), ErrorKind::invalid_parameter,
            "representation needs one matrix per group element");
    dim_ = matrices_.front().rows();
    require(dim_ >= 1, ErrorKind::invalid_parameter, "representation dimension must be positive");
    for (const auto& m : matrices_)
        require(m.rows() == dim_ && m.cols() == dim_, ErrorKind::invalid_parameter,
                "representation matrices must all be dim x dim");
}

ComplexMatrix ProjectiveRep::orbit(const ComplexVector& x) const {
    require(x.size() == dim_, ErrorKind::invalid_parameter, "vector length does not match representation dim");
    ComplexMatrix out(dim_, static_cast<Eigen::Index>(order()));
    for (Element g = 0; g < order(); ++g) out.col(static_cast<Eigen::Index>(g)) = matrices_[g] * x;
    return out;
}

namespace {

void require_valid(const Multiplier& mu) {
    const MultiplierReport r = validate_multiplier(mu, 1e-9);
    require(r.pass, ErrorKind::invalid_parameter, "multiplier is not a valid cocycle (" + r.failure + ")");
}

}  // namespace

ProjectiveRep left_regular(const Multiplier& mu) {
    require_valid(mu);
    const FiniteGroup& g = mu.group();
    const auto n = static_cast<Eigen::Index>(g.order());
    std::vector<ComplexMatrix> mats;
    mats.reserve(g.order());
    for (Element a = 0; a < g.order(); ++a) {
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        for (Element h = 0; h < g.order(); ++h)
            m(static_cast<Eigen::Index>(g.mul(a, h)), static_cast<Eigen::Index>(h)) = mu(a, h);
        mats.push_back(std::move(m));
    }
    return ProjectiveRep(mu, std::move(mats));
}

ProjectiveRep right_regular(const Multiplier& mu) {
    require_valid(mu);
    const FiniteGroup& g = mu.group();
    const auto n = static_cast<Eigen::Index>(g.order());
    std::vector<ComplexMatrix> mats;
    mats.reserve(g.order());
    for (Element a = 0; a < g.order(); ++a) {
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        for (Element h = 0; h < g.order(); ++h) {
            const Element target = g.mul(h, g.inv(a));
            m(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(h)) = std::conj(mu(target, a));
        }
        mats.push_back(std::move(m));
    }
    return ProjectiveRep(conjugate_multiplier(mu), std::move(mats));
}

ProjectiveRep right_regular_literal(const Multiplier& mu) {
    require_valid(mu);
    const FiniteGroup& g = mu.group();
    const auto n = static_cast<Eigen::Index>(g.order());
    std::vector<ComplexMatrix> mats;
    Multiplier::Table twisted(g.order(), std::vector<cplx>(g.order()));
    for (Element a = 0; a < g.order(); ++a) {
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        for (Element h = 0; h < g.order(); ++h)
            m(static_cast<Eigen::Index>(g.mul(h, g.inv(a))), static_cast<Eigen::Index>(h)) = mu(h, g.inv(a));
        mats.push_back(std::move(m));
        for (Element b = 0; b < g.order(); ++b) twisted[a][b] = mu(g.inv(b), g.inv(a));
    }
    return ProjectiveRep(Multiplier(g, std::move(twisted)), std::move(mats));
}

RepReport verify_rep(const ProjectiveRep& pi, double eps) { return verify_rep(pi, pi.multiplier(), eps); }

RepReport verify_rep(const ProjectiveRep& pi, const Multiplier& mu, double eps) {
    require(mu.group().order() == pi.order(), ErrorKind::invalid_parameter, "multiplier group does not match rep");
    const FiniteGroup& g = pi.group();
    RepReport r;
    const ComplexMatrix id = ComplexMatrix::Identity(pi.dim(), pi.dim());
    for (Element a = 0; a < pi.order(); ++a)
        r.max_unitarity_error = std::max(r.max_unitarity_error, max_abs(pi(a).adjoint() * pi(a) - id));
    r.max_identity_error = max_abs(pi(g.identity()) - id);
    for (Element a = 0; a < pi.order(); ++a)
        for (Element b = 0; b < pi.order(); ++b) {
            const double err = max_abs(pi(a) * pi(b) - mu(a, b) * pi(g.mul(a, b)));
            if (err > r.max_twist_error) {
                r.max_twist_error = err;
                r.worst_g = a;
                r.worst_h = b;
            }
        }
    if (r.max_unitarity_error > eps)
        r.failure = "unitarity";
    else if (r.max_identity_error > eps)
        r.failure = "identity";
    else if (r.max_twist_error > eps)
        r.failure = "twisted-homomorphism";
    r.pass = r.failure.empty();
    return r;
}

Multiplier derive_multiplier(const std::vector<ComplexMatrix>& matrices, const FiniteGroup& g, double eps) {
    require(matrices.size() == g.order(), ErrorKind::invalid_parameter, "need one matrix per group element");
    const Eigen::Index d = matrices.front().rows();
    Multiplier::Table t(g.order(), std::vector<cplx>(g.order()));
    for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b) {
            const ComplexMatrix prod = matrices[a] * matrices[b];
            const ComplexMatrix& target = matrices[g.mul(a, b)];
            const cplx scalar = (target.adjoint() * prod).trace() / static_cast<double>(d);
            const double residual = max_abs(prod - scalar * target);
            require(residual <= eps, ErrorKind::not_projective,
                    "pi(" + std::to_string(a) + ")pi(" + std::to_string(b) + ") is not a multiple of pi(gh)");
            const double mag = std::abs(scalar);
            require(std::abs(mag - 1.0) <= kProjectiveModulusGate, ErrorKind::not_projective,
                    "composition scalar is not unimodular");
            t[a][b] = scalar / mag;
        }
    return Multiplier(g, std::move(t));
}

ComplexMatrix projection_range_basis(const ComplexMatrix& p) {
    const EigResult e = hermitian_eig(p, 1e-8);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = e.values.size() - 1; k >= 0; --k)
        if (e.values(k) > 0.5) cols.push_back(k);
    ComplexMatrix basis(p.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = e.vectors.col(cols[i]);
    return basis;
}

ProjectiveRep subrepresentation(const ProjectiveRep& pi, const ComplexMatrix& p, double eps) {
    require(p.rows() == pi.dim() && p.cols() == pi.dim(), ErrorKind::invalid_parameter,
            "projection shape does not match representation");
    require(max_abs(p - p.adjoint()) <= eps && max_abs(p * p - p) <= eps, ErrorKind::invalid_parameter,
            "P is not an orthogonal projection");
    for (Element g = 0; g < pi.order(); ++g)
        require(max_abs(p * pi(g) - pi(g) * p) <= eps, ErrorKind::not_invariant,
                "P does not commute with pi(" + std::to_string(g) + ")");
    const ComplexMatrix basis = projection_range_basis(p);
    require(basis.cols() >= 1, ErrorKind::invalid_parameter, "P is the zero projection");
    std::vector<ComplexMatrix> mats;
    mats.reserve(pi.order());
    for (Element g = 0; g < pi.order(); ++g) mats.push_back(basis.adjoint() * pi(g) * basis);
    return ProjectiveRep(pi.multiplier(), std::move(mats));
}

ProjectiveRep character_subrep(std::size_t n, const std::set<std::size_t>& freqs) {
    require(n >= 1, ErrorKind::invalid_parameter, "character_subrep: N must be positive");
    require(!freqs.empty(), ErrorKind::invalid_parameter, "character_subrep: frequency set is empty");
    for (std::size_t k : freqs) require(k < n, ErrorKind::invalid_parameter, "character_subrep: frequency out of range");
    const FiniteGroup g = cyclic_group(n);
    std::vector<ComplexMatrix> mats;
    const auto d = static_cast<Eigen::Index>(freqs.size());
    for (Element a = 0; a < n; ++a) {
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        Eigen::Index i = 0;
        for (std::size_t k : freqs) {
            m(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((a * k) % n) / n);
            ++i;
        }
        mats.push_back(std::move(m));
    }
    return ProjectiveRep(trivial_multiplier(g), std::move(mats));
}

ComplexMatrix dft_frequency_projection(std::size_t n, const std::set<std::size_t>& freqs) {
    const ComplexMatrix f = dft_basis(static_cast<Eigen::Index>(n));
    ComplexMatrix p = ComplexMatrix::Zero(f.rows(), f.cols());
    for (std::size_t k : freqs) {
        require(k < n, ErrorKind::invalid_parameter, "frequency out of range");
        p += f.col(static_cast<Eigen::Index>(k)) * f.col(static_cast<Eigen::Index>(k)).adjoint();
    }
    return p;
}

nlohmann::json rep_to_json(const ProjectiveRep& pi) {
    nlohmann::json mats = nlohmann::json::array();
    for (const auto& m : pi.matrices()) mats.push_back(matrix_to_json(m));
    return {{"group", group_to_json(pi.group())},
            {"multiplier", multiplier_to_json(pi.multiplier())},
            {"dim", pi.dim()},
            {"matrices", std::move(mats)}};
}

ProjectiveRep rep_from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("group") && j.contains("matrices"), ErrorKind::invalid_parameter,
            "representation JSON needs group and matrices");
    const FiniteGroup g = group_from_json(j.at("group"));
    std::vector<ComplexMatrix> mats;
    for (const auto& m : j.at("matrices")) mats.push_back(matrix_from_json(m));
    require(mats.size() == g.order(), ErrorKind::invalid_parameter, "need one matrix per group element");
    if (j.contains("dim"))
        require(j.at("dim").get<Eigen::Index>() == mats.front().rows(), ErrorKind::invalid_parameter,
                "representation dim does not match matrices");
    Multiplier mu = j.contains("multiplier") ? multiplier_from_json(g, j.at("multiplier")) : derive_multiplier(mats, g);
    return ProjectiveRep(std::move(mu), std::move(mats));
}

nlohmann::json to_json(const RepReport& r) {
    nlohmann::json j = {{"pass", r.pass},
                        {"max_unitarity_error", r.max_unitarity_error},
                        {"max_identity_error", r.max_identity_error},
                        {"max_twist_error", r.max_twist_error},
                        {"worst_pair", {r.worst_g, r.worst_h}}};
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

}  // namespace dualrep
