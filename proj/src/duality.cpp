#include "dualrep/duality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "dualrep/error.hpp"

namespace dualrep {

namespace {

constexpr std::uint64_t kFrameStream = 1ULL << 60;
constexpr std::uint64_t kRieszStream = 2ULL << 60;
constexpr std::uint64_t kAdversarialStream = 3ULL << 60;

ComplexVector basis_vector(Eigen::Index d, Eigen::Index i) {
    ComplexVector e = ComplexVector::Zero(d);
    e(i) = 1.0;
    return e;
}

}  // namespace

CommutingPairResult is_commuting_pair(const ProjectiveRep& pi, const ProjectiveRep& sigma, const Tolerances& tol) {
    require(pi.dim() == sigma.dim(), ErrorKind::invalid_parameter, "is_commuting_pair: dimensions differ");
    const OperatorSubspace lhs = commutant(pi.matrices(), pi.dim(), tol.rank);
    const OperatorSubspace rhs = double_commutant(sigma.matrices(), sigma.dim(), tol.rank);
    CommutingPairResult r;
    r.commutant_dim = lhs.dim();
    r.bicommutant_dim = rhs.dim();
    r.residual_angle = max_principal_angle(lhs, rhs);
    r.commuting = r.commutant_dim == r.bicommutant_dim && r.residual_angle < tol.eq;
    return r;
}

std::string_view to_string(PairStatus s) {
    switch (s) {
        case PairStatus::feasible: return "feasible";
        case PairStatus::not_commuting: return "not_commuting";
        case PairStatus::infeasible_by_dimension: return "infeasible_by_dimension";
        case PairStatus::no_frame_vector: return "no_frame_vector";
        case PairStatus::infeasible_empirically: return "infeasible_empirically";
    }
    return "unknown";
}

DualPairReport certify_dual_pair(const ProjectiveRep& pi, const ProjectiveRep& sigma, std::uint64_t seed,
                                 int n_samples, const Tolerances& tol) {
    require(pi.dim() == sigma.dim(), ErrorKind::invalid_parameter, "certify_dual_pair: dimensions differ");
    const Eigen::Index d = pi.dim();
    DualPairReport rep;
    rep.commuting = is_commuting_pair(pi, sigma, tol);
    std::string notes;

    auto candidate = [&](std::uint64_t stream, int i) {
        if (i == 0) return basis_vector(d, 0);
        Rng rng(seed, stream + static_cast<std::uint64_t>(i - 1));
        return rng.gaussian_vector(d);
    };

    if (static_cast<Eigen::Index>(pi.order()) < d) {
        notes += "pi has fewer group elements than the dimension; no complete frame vector. ";
    } else {
        for (int i = 0; i <= n_samples; ++i) {
            ++rep.frame_draws;
            const ComplexVector x = candidate(kFrameStream, i);
            if (!classify(pi, x, tol).is_complete_frame) continue;
            const ComplexVector xp = parseval_normalize(pi, x, tol.rank);
            rep.frame_vector = xp;
            rep.sigma_bessel_bound = classify(sigma, xp, tol).upper_bound;
            break;
        }
    }

    const bool dimension_blocks = static_cast<Eigen::Index>(sigma.order()) > d;
    if (dimension_blocks) {
        notes += std::to_string(sigma.order()) + " sigma-orbit vectors cannot be independent in dimension " +
                 std::to_string(d) + ". ";
    } else {
        for (int i = 0; i <= n_samples; ++i) {
            ++rep.riesz_draws;
            const ComplexVector x = candidate(kRieszStream, i);
            if (!classify(sigma, x, tol).is_riesz_sequence) continue;
            rep.riesz_vector = x;
            break;
        }
    }

    rep.feasible = rep.commuting.commuting && rep.frame_vector && rep.riesz_vector;
    if (!rep.commuting.commuting)
        rep.status = PairStatus::not_commuting;
    else if (dimension_blocks)
        rep.status = PairStatus::infeasible_by_dimension;
    else if (!rep.frame_vector)
        rep.status = PairStatus::no_frame_vector;
    else if (!rep.riesz_vector)
        rep.status = PairStatus::infeasible_empirically;
    else
        rep.status = PairStatus::feasible;
    if (!rep.commuting.commuting) notes += "pi(G)' differs from sigma(G)''. ";
    if (!notes.empty()) notes.pop_back();
    rep.notes = notes;
    return rep;
}

CertifiedPair::CertifiedPair(ProjectiveRep pi, ProjectiveRep sigma, std::uint64_t seed, const Tolerances& tol)
    : pi_(std::move(pi)),
      sigma_(std::move(sigma)),
      tol_(tol),
      report_(certify_dual_pair(pi_, sigma_, seed, 50, tol)),
      gram_scale_(static_cast<double>(pi_.dim()) / static_cast<double>(pi_.order())) {}

std::string_view to_string(Clause c) {
    switch (c) {
        case Clause::frame_seq_vs_frame_seq: return "frame_seq_vs_frame_seq";
        case Clause::frame_vs_riesz: return "frame_vs_riesz";
        case Clause::parseval_vs_orthonormal: return "parseval_vs_orthonormal";
    }
    return "unknown";
}

DualityVerdict verify_duality(const CertifiedPair& pair, const ComplexVector& xi) {
    const ProjectiveRep& pi = pair.pi();
    const ProjectiveRep& sigma = pair.sigma();
    const Tolerances& tol = pair.tolerances();
    require(xi.size() == pi.dim(), ErrorKind::invalid_parameter, "verify_duality: vector length does not match dim");
    require(xi.norm() > 0.0, ErrorKind::invalid_parameter, "verify_duality: zero vector is no frame sequence");
    require(pair.is_commuting(), ErrorKind::invalid_pair, "verify_duality: pair is not commuting");

    DualityVerdict v;
    v.xi = xi;
    v.pi_classification = classify(pi, xi, tol);
    v.sigma_classification = classify(sigma, xi, tol);
    const FrameClassification& cp = v.pi_classification;
    const FrameClassification& cs = v.sigma_classification;

    const ComplexMatrix gram = gram_matrix(sigma, xi);
    v.scaled_gram_error =
        max_abs(gram - pair.gram_scale() * ComplexMatrix::Identity(gram.rows(), gram.cols()));
    if (cp.orbit_span_dim > 0 && cs.orbit_span_dim > 0) {
        const double kappa = 1.0 / pair.gram_scale();
        v.bound_residual = std::max(std::abs(cp.lower_bound - kappa * cs.lower_bound),
                                    std::abs(cp.upper_bound - kappa * cs.upper_bound)) /
                           cp.upper_bound;
    }

    v.clauses.push_back({Clause::frame_seq_vs_frame_seq, cp.is_frame_sequence, cs.is_frame_sequence});
    if (pair.is_dual()) {
        v.clauses.push_back({Clause::frame_vs_riesz, cp.is_complete_frame, cs.is_riesz_sequence});
        v.clauses.push_back({Clause::parseval_vs_orthonormal, cp.is_complete_frame && cp.is_parseval,
                             cs.is_riesz_sequence && v.scaled_gram_error < tol.eq});
    }
    v.theorem_consistent = true;
    for (const auto& c : v.clauses)
        if (!c.holds()) {
            v.theorem_consistent = false;
            v.first_failed = c.clause;
            break;
        }
    return v;
}

std::pair<ProjectiveRep, ProjectiveRep> make_regular_pair(const Multiplier& mu) {
    return {left_regular(mu), right_regular(mu)};
}

std::pair<ProjectiveRep, ProjectiveRep> make_gabor_pair(const GaborLattice& lattice) {
    return {gabor_rep(lattice), gabor_rep(adjoint_lattice(lattice))};
}

std::pair<ProjectiveRep, ProjectiveRep> resolve_pair(const nlohmann::json& spec) {
    require(spec.is_object() && spec.contains("kind"), ErrorKind::invalid_parameter, "pair spec needs a kind");
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "regular") {
        const std::string mname =
            spec.contains("multiplier") && spec["multiplier"].is_string() ? spec["multiplier"].get<std::string>() : "";
        std::optional<FiniteGroup> group;
        if (spec.contains("group"))
            group = spec["group"].is_string() ? group_from_label(spec["group"].get<std::string>())
                                              : group_from_json(spec["group"]);
        std::optional<Multiplier> mu;
        if (mname == "heisenberg") {
            std::size_t n = 0;
            if (spec.contains("N")) {
                n = spec["N"].get<std::size_t>();
            } else {
                require(group.has_value(), ErrorKind::invalid_parameter, "heisenberg multiplier needs N or a group");
                n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(group->order()))));
            }
            mu = heisenberg_multiplier(n);
            require(!group || *group == mu->group(), ErrorKind::invalid_parameter,
                    "heisenberg multiplier needs the group Z_N x Z_N");
        } else {
            require(group.has_value(), ErrorKind::invalid_parameter, "regular pair needs a group");
            if (mname.empty() && spec.contains("multiplier"))
                mu = multiplier_from_json(*group, spec["multiplier"]);
            else if (mname.empty() || mname == "trivial")
                mu = trivial_multiplier(*group);
            else
                fail(ErrorKind::invalid_parameter, "unknown multiplier '" + mname + "'");
        }
        auto pair = make_regular_pair(*mu);
        if (spec.contains("projection")) {
            const ComplexMatrix p = matrix_from_json(spec["projection"]);
            return {subrepresentation(pair.first, p), subrepresentation(pair.second, p)};
        }
        return pair;
    }
    if (kind == "gabor") {
        require(spec.contains("lattice"), ErrorKind::invalid_parameter, "gabor pair needs a lattice");
        const auto& l = spec["lattice"];
        GaborLattice lattice;
        if (l.is_string()) {
            lattice = lattice_from_string(l.get<std::string>());
        } else {
            require(l.is_array() && l.size() == 3, ErrorKind::invalid_parameter, "lattice must be [N, a, b]");
            lattice = {l[0].get<std::size_t>(), l[1].get<std::size_t>(), l[2].get<std::size_t>()};
        }
        require(lattice.valid(), ErrorKind::invalid_parameter, "invalid Gabor lattice: a and b must divide N");
        return make_gabor_pair(lattice);
    }
    if (kind == "custom") {
        require(spec.contains("pi") && spec.contains("sigma"), ErrorKind::invalid_parameter,
                "custom pair needs pi and sigma");
        return {rep_from_json(spec["pi"]), rep_from_json(spec["sigma"])};
    }
    fail(ErrorKind::invalid_parameter, "unknown pair kind '" + kind + "'");
}

namespace {

struct SweepTask {
    std::string kind;
    ComplexVector xi;
};

// A spectral projection of a random Hermitian element of pi(G)': whole
// eigenvalue clusters below the median.
ComplexMatrix random_commutant_projection(const OperatorSubspace& comm, Rng& rng) {
    const Eigen::Index d = comm.ambient_dim();
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (const auto& c : comm.elements()) h += rng.complex_normal() * c;
    h = 0.5 * (h + h.adjoint()).eval();
    const EigResult e = hermitian_eig(h, 1e-8);
    const double spread = e.values(d - 1) - e.values(0);
    if (spread <= 1e-8 * std::max(1.0, std::abs(e.values(d - 1)))) return ComplexMatrix::Identity(d, d);
    const double cut = e.values((d - 1) / 2);
    Eigen::Index k = 0;
    while (k < d && e.values(k) <= cut + 1e-8 * spread) ++k;
    if (k == d) return ComplexMatrix::Identity(d, d);
    return e.vectors.leftCols(k) * e.vectors.leftCols(k).adjoint();
}

}  // namespace

SweepReport duality_sweep(const CertifiedPair& pair, const std::string& label, const SweepOptions& options) {
    const ProjectiveRep& pi = pair.pi();
    const Eigen::Index d = pi.dim();
    require(pair.is_commuting(), ErrorKind::invalid_pair, "sweep: pair is not commuting");

    std::vector<SweepTask> tasks;
    tasks.reserve(options.n_vectors + static_cast<std::size_t>(d) + 8);
    for (std::size_t i = 0; i < options.n_vectors; ++i) {
        Rng rng(options.seed, i);
        tasks.push_back({"random", rng.gaussian_vector(d)});
    }
    for (Eigen::Index i = 0; i < d; ++i) tasks.push_back({"basis", basis_vector(d, i)});
    const OperatorSubspace comm = commutant(pi.matrices(), d, options.tol.rank);
    for (std::uint64_t k = 0; k < 3; ++k) {
        Rng rng(options.seed, kAdversarialStream + k);
        const ComplexMatrix p = random_commutant_projection(comm, rng);
        tasks.push_back({"rank_deficient", p * rng.gaussian_vector(d)});
    }
    for (std::uint64_t k = 3; k < 6; ++k) {
        Rng rng(options.seed, kAdversarialStream + k);
        tasks.push_back({"parseval", parseval_normalize(pi, rng.gaussian_vector(d), options.tol.rank)});
    }
    tasks.push_back({"zero", ComplexVector::Zero(d)});

    std::vector<SweepRecord> records(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            SweepRecord& r = records[i];
            r.index = i;
            r.kind = tasks[i].kind;
            if (tasks[i].xi.norm() == 0.0) {
                r.excluded = true;
                continue;
            }
            try {
                r.verdict = verify_duality(pair, tasks[i].xi);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(tasks.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    SweepReport rep;
    rep.pair_label = label;
    rep.commuting = pair.report().commuting;
    rep.dual = pair.is_dual();
    rep.n_random = options.n_vectors;
    for (const auto& r : records) {
        if (r.excluded) {
            ++rep.n_excluded;
            continue;
        }
        ++rep.n_checked;
        if (!r.verdict->theorem_consistent) ++rep.failures;
        rep.worst_residual = std::max(rep.worst_residual, r.verdict->bound_residual);
    }
    rep.records = std::move(records);
    return rep;
}

namespace {

nlohmann::json clauses_json(const DualityVerdict& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : v.clauses)
        out.push_back({{"clause", to_string(c.clause)}, {"pi", c.lhs}, {"sigma", c.rhs}, {"holds", c.holds()}});
    return out;
}

}  // namespace

nlohmann::json to_json(const CommutingPairResult& r) {
    return {{"commuting", r.commuting},
            {"residual_angle", r.residual_angle},
            {"commutant_dim", r.commutant_dim},
            {"bicommutant_dim", r.bicommutant_dim}};
}

nlohmann::json to_json(const DualPairReport& r) {
    nlohmann::json j = {{"commuting_pair", to_json(r.commuting)},
                        {"feasible", r.feasible},
                        {"status", to_string(r.status)},
                        {"frame_draws", r.frame_draws},
                        {"riesz_draws", r.riesz_draws},
                        {"notes", r.notes}};
    j["frame_vector"] = r.frame_vector ? vector_to_json(*r.frame_vector) : nlohmann::json(nullptr);
    j["sigma_bessel_bound"] = r.frame_vector ? nlohmann::json(r.sigma_bessel_bound) : nlohmann::json(nullptr);
    j["riesz_vector"] = r.riesz_vector ? vector_to_json(*r.riesz_vector) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const DualityVerdict& v) {
    return {{"xi", vector_to_json(v.xi)},
            {"pi_classification", to_json(v.pi_classification)},
            {"sigma_classification", to_json(v.sigma_classification)},
            {"clauses", clauses_json(v)},
            {"theorem_consistent", v.theorem_consistent},
            {"first_failed", v.first_failed ? nlohmann::json(to_string(*v.first_failed)) : nlohmann::json(nullptr)},
            {"scaled_gram_error", v.scaled_gram_error},
            {"bound_residual", v.bound_residual}};
}

nlohmann::json to_json(const SweepReport& r) {
    nlohmann::json verdicts = nlohmann::json::array();
    nlohmann::json counterexamples = nlohmann::json::array();
    for (const auto& rec : r.records) {
        nlohmann::json j = {{"index", rec.index}, {"kind", rec.kind}, {"excluded", rec.excluded}};
        if (rec.verdict) {
            const DualityVerdict& v = *rec.verdict;
            j["consistent"] = v.theorem_consistent;
            j["clauses"] = clauses_json(v);
            j["bound_residual"] = v.bound_residual;
            if (!v.theorem_consistent) counterexamples.push_back(to_json(v));
        }
        verdicts.push_back(std::move(j));
    }
    return {{"pair", r.pair_label},
            {"commuting_pair", to_json(r.commuting)},
            {"dual_pair", r.dual},
            {"n_random", r.n_random},
            {"n_checked", r.n_checked},
            {"n_excluded", r.n_excluded},
            {"failures", r.failures},
            {"worst_residual", r.worst_residual},
            {"pass", r.pass()},
            {"verdicts", std::move(verdicts)},
            {"counterexamples", std::move(counterexamples)}};
}

std::string to_csv(const SweepReport& r) {
    std::string label = r.pair_label;
    std::replace(label.begin(), label.end(), ',', ' ');
    return "pair,n,failures,worst_residual\n" + label + "," + std::to_string(r.n_checked) + "," +
           std::to_string(r.failures) + "," + nlohmann::json(r.worst_residual).dump() + "\n";
}

}  // namespace dualrep
