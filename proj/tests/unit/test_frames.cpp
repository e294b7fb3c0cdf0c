#include "doctest.h"
#include "dualrep/error.hpp"
#include "dualrep/frames.hpp"
#include "dualrep/gabor.hpp"

using namespace dualrep;

namespace {

ComplexVector chi(Eigen::Index n, Eigen::Index i) { return ComplexVector::Unit(n, i); }

ComplexVector dft_vector(Eigen::Index n, Eigen::Index k) { return dft_basis(n).col(k); }

ProjectiveRep regular(std::size_t n) { return left_regular(trivial_multiplier(cyclic_group(n))); }

std::vector<ProjectiveRep> test_reps() {
    std::vector<ProjectiveRep> out;
    out.push_back(regular(6));
    out.push_back(left_regular(trivial_multiplier(group_from_label("Z2xZ4"))));
    out.push_back(left_regular(heisenberg_multiplier(3)));
    out.push_back(right_regular(heisenberg_multiplier(2)));
    out.push_back(gabor_rep({6, 1, 2}));
    out.push_back(gabor_rep({8, 2, 2}));
    out.push_back(gabor_rep({6, 2, 3}));
    out.push_back(character_subrep(8, {1, 3, 4}));
    return out;
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::internal_consistency;
}

}  // namespace

TEST_CASE("analysis operator") {
    const ProjectiveRep l3 = regular(3);
    CHECK(max_abs(analysis_op(l3, chi(3, 0)).matrix - ComplexMatrix::Identity(3, 3)) < 1e-15);
    CHECK(analysis_op(l3, ComplexVector::Zero(3)).matrix.norm() == 0.0);
    CHECK_THROWS_AS(analysis_op(l3, ComplexVector::Zero(4)), Error);

    Rng rng(1);
    for (const auto& pi : test_reps()) {
        const ComplexVector x = rng.gaussian_vector(pi.dim());
        const ComplexMatrix theta = analysis_op(pi, x).matrix;
        CHECK(theta.rows() == static_cast<Eigen::Index>(pi.order()));
        for (Element g = 0; g < pi.order(); ++g) {
            const ComplexVector v = pi(g) * x;
            for (Eigen::Index k = 0; k < pi.dim(); ++k) {
                CHECK(theta(static_cast<Eigen::Index>(g), k) == std::conj(v(k)));
                // (Theta y)[g] = <y, pi(g) x> on basis vectors
                CHECK(std::abs((theta * chi(pi.dim(), k))(static_cast<Eigen::Index>(g)) - inner(chi(pi.dim(), k), v)) <
                      1e-15);
            }
        }
    }
}

TEST_CASE("analysis operator intertwines with the left regular representation") {
    Rng rng(2);
    for (const auto& pi : test_reps())
        for (int i = 0; i < 100; ++i) {
            const AnalysisOperator theta = analysis_op(pi, rng.gaussian_vector(pi.dim()));
            CHECK(intertwining_residual(pi, theta) < 1e-9);
        }
    // with the conjugate multiplier the relation fails when mu is not real
    const ProjectiveRep h = left_regular(heisenberg_multiplier(3));
    const AnalysisOperator theta = analysis_op(h, rng.gaussian_vector(9));
    const ProjectiveRep lam = left_regular(conjugate_multiplier(h.multiplier()));
    double worst = 0.0;
    for (Element g = 0; g < 9; ++g) worst = std::max(worst, max_abs(theta.matrix * h(g) - lam(g) * theta.matrix));
    CHECK(worst > 1e-3);
}

TEST_CASE("frame operator and Gram matrix") {
    for (std::size_t n : {1, 4, 7}) {
        const ProjectiveRep l = regular(n);
        const auto d = static_cast<Eigen::Index>(n);
        CHECK(max_abs(frame_operator(l, chi(d, 0)) - ComplexMatrix::Identity(d, d)) < 1e-15);
        CHECK(max_abs(gram_matrix(l, chi(d, 0)) - ComplexMatrix::Identity(d, d)) < 1e-15);
    }
    const ComplexVector ones = ComplexVector::Ones(2);
    const ComplexMatrix s = frame_operator(regular(2), ones);
    CHECK(max_abs(s - 2.0 * ones * ones.adjoint()) < 1e-15);
    const EigResult e = hermitian_eig(s);
    CHECK(std::abs(e.values(0)) < 1e-14);
    CHECK(std::abs(e.values(1) - 4.0) < 1e-14);

    Rng rng(3);
    const ComplexVector g = rng.gaussian_vector(4);
    CHECK(max_abs(frame_operator(gabor_rep({4, 1, 1}), g) - 4.0 * g.squaredNorm() * ComplexMatrix::Identity(4, 4)) <
          1e-12);

    for (const auto& pi : test_reps()) {
        const ComplexVector x = rng.gaussian_vector(pi.dim());
        const ComplexMatrix sx = frame_operator(pi, x), gx = gram_matrix(pi, x);
        const ProjectiveRep lam = left_regular(pi.multiplier());
        for (Element h = 0; h < pi.order(); ++h) {
            CHECK(max_abs(sx * pi(h) - pi(h) * sx) < 1e-10);
            CHECK(max_abs(gx * lam(h) - lam(h) * gx) < 1e-10);
        }
    }
}

TEST_CASE("classification examples") {
    for (std::size_t n : {2, 5, 8}) {
        const auto d = static_cast<Eigen::Index>(n);
        const FrameClassification c = classify(regular(n), chi(d, 0));
        CHECK(c.is_complete_frame);
        CHECK(c.is_frame_sequence);
        CHECK(c.is_parseval);
        CHECK(c.is_riesz_sequence);
        CHECK(c.is_orthonormal);
        CHECK(c.lower_bound == doctest::Approx(1.0));
        CHECK(c.upper_bound == doctest::Approx(1.0));
    }
    const FrameClassification c = classify(regular(2), ComplexVector::Ones(2));
    CHECK(c.is_frame_sequence);
    CHECK_FALSE(c.is_complete_frame);
    CHECK_FALSE(c.is_riesz_sequence);
    CHECK(c.orbit_span_dim == 1);
    CHECK(c.lower_bound == doctest::Approx(4.0));
    CHECK(c.upper_bound == doctest::Approx(4.0));

    const ComplexVector w = (ComplexVector(4) << 1, 0, 1, 0).finished();
    const FrameClassification gc = classify(gabor_rep({4, 1, 2}), w);
    CHECK_FALSE(gc.is_complete_frame);
    CHECK(gc.orbit_span_dim < 4);

    const FrameClassification z = classify(regular(3), ComplexVector::Zero(3));
    CHECK_FALSE(z.is_frame_sequence);
    CHECK(z.orbit_span_dim == 0);
}

TEST_CASE("classification flags are consistent") {
    Rng rng(4);
    for (const auto& pi : test_reps()) {
        const OperatorSubspace comm = commutant(pi.matrices(), pi.dim());
        for (int i = 0; i < 20; ++i) {
            ComplexVector x = rng.gaussian_vector(pi.dim());
            if (i % 4 == 1) x = parseval_normalize(pi, x);
            if (i % 4 == 2) {
                // rank-deficient: a random commutant element with a kernel
                ComplexMatrix c = ComplexMatrix::Zero(pi.dim(), pi.dim());
                for (const auto& b : comm.elements()) c += rng.complex_normal() * b;
                const EigResult e = hermitian_eig(0.5 * (c + c.adjoint()));
                const Eigen::Index k = std::max<Eigen::Index>(1, pi.dim() / 2);
                x = e.vectors.leftCols(k) * e.vectors.leftCols(k).adjoint() * x;
            }
            const FrameClassification f = classify(pi, x);
            const ComplexMatrix s = frame_operator(pi, x), g = gram_matrix(pi, x);
            CHECK(f.lower_bound <= f.upper_bound);
            if (f.is_orthonormal) CHECK(f.is_riesz_sequence);
            if (f.is_complete_frame) CHECK(f.is_frame_sequence);
            if (f.is_parseval) {
                CHECK(std::abs(f.lower_bound - 1.0) <= f.tolerance_used);
                CHECK(std::abs(f.upper_bound - 1.0) <= f.tolerance_used);
                CHECK(max_abs(s * s - s) < 1e-8);
            }
            const Eigen::Index gram_rank = rank_and_range(g).rank, s_rank = rank_and_range(s).rank;
            CHECK(f.is_riesz_sequence == (gram_rank == static_cast<Eigen::Index>(pi.order())));
            CHECK(f.is_complete_frame == (s_rank == pi.dim()));
            CHECK(f.orbit_span_dim == s_rank);
            CHECK(f.orbit_span_dim == gram_rank);
            // sampled quotients stay inside [A, B] on the orbit span
            const Subspace span = rank_and_range(pi.orbit(x)).range;
            for (int t = 0; t < 50; ++t) {
                const ComplexVector y = span.basis * rng.gaussian_vector(span.dim());
                const double q = (analysis_op(pi, x).matrix * y).squaredNorm() / y.squaredNorm();
                CHECK(q >= f.lower_bound * (1 - 1e-9));
                CHECK(q <= f.upper_bound * (1 + 1e-9));
            }
        }
    }
}

TEST_CASE("parseval normalization") {
    const ProjectiveRep l = regular(5);
    CHECK((parseval_normalize(l, 2.0 * chi(5, 0)) - chi(5, 0)).norm() < 1e-14);
    const ComplexVector f2 = dft_vector(5, 2);
    CHECK((parseval_normalize(l, chi(5, 3)) - chi(5, 3)).norm() < 1e-14);
    // a flat spectrum gives an orthonormal orbit, which is left alone
    Rng phases(50);
    ComplexVector u = ComplexVector::Zero(5);
    for (Eigen::Index k = 0; k < 5; ++k) u += std::polar(1.0, 6.0 * phases.uniform()) * dft_vector(5, k) / std::sqrt(5.0);
    CHECK(classify(l, u).is_orthonormal);
    CHECK((parseval_normalize(l, u) - u).norm() < 1e-13);
    CHECK(classify(l, parseval_normalize(l, f2)).is_parseval);

    Rng rng(5);
    const ProjectiveRep g = gabor_rep({6, 1, 2});
    for (int i = 0; i < 10; ++i) {
        const ComplexVector x = rng.gaussian_vector(6);
        const ComplexVector p = parseval_normalize(g, x);
        const Subspace span = rank_and_range(g.orbit(x)).range;
        CHECK(max_abs(frame_operator(g, p) - span.projector()) < 1e-9);
        CHECK(subspace_equal(span, rank_and_range(g.orbit(p)).range, 1e-9));
        CHECK(classify(g, p).is_parseval);
    }
    CHECK_THROWS_AS(parseval_normalize(l, ComplexVector::Zero(5)), Error);
}

TEST_CASE("pi-orthogonality and weak equivalence") {
    const RepContext c2(regular(2));
    const ComplexVector f0 = dft_vector(2, 0), f1 = dft_vector(2, 1);
    CHECK(pi_orthogonal(c2, f0, f1));
    CHECK_FALSE(pi_weakly_equivalent(c2, f0, f1));
    CHECK_FALSE(pi_orthogonal(c2, chi(2, 0), chi(2, 1)));

    Rng rng(6);
    for (const auto& pi : test_reps()) {
        const RepContext ctx(pi);
        const ComplexVector x = rng.gaussian_vector(pi.dim());
        CHECK(pi_weakly_equivalent(ctx, x, x));
        CHECK_FALSE(pi_orthogonal(ctx, x, x));
        ComplexMatrix a = ComplexMatrix::Zero(pi.dim(), pi.dim());
        for (const auto& b : ctx.commutant().elements()) a += rng.complex_normal() * b;
        REQUIRE(rank_and_range(a).rank == pi.dim());
        CHECK(pi_weakly_equivalent(ctx, x, a * x));
        for (int i = 0; i < 20; ++i) {
            const ComplexVector y = rng.gaussian_vector(pi.dim()), z = rng.gaussian_vector(pi.dim());
            const RouteVerdicts o = orthogonality_routes(ctx, y, z);
            const RouteVerdicts w = weak_equivalence_routes(ctx, y, z);
            CHECK(o.analysis_route == o.commutant_route);
            CHECK(w.analysis_route == w.commutant_route);
        }
    }
}

TEST_CASE("dilation") {
    const RepContext c4(regular(4));
    const DilationResult same = dilate_to_complete(c4, chi(4, 0), DilationMode::frame, 1);
    CHECK(same.h.norm() == 0.0);

    const ComplexVector eta = dft_frequency_projection(4, {0, 1}) * chi(4, 0);
    const DilationResult d = dilate_to_complete(c4, eta, DilationMode::frame, 7);
    CHECK(d.h.norm() > 0.0);
    CHECK(pi_orthogonal(c4, eta, d.h));
    CHECK(classify(regular(4), eta + d.h).is_complete_frame);

    const RepContext c2(regular(2));
    const DilationResult p = dilate_to_complete(c2, dft_vector(2, 0), DilationMode::parseval, 3);
    const ComplexVector f1 = dft_vector(2, 1);
    CHECK(std::abs(std::abs(inner(p.h, f1)) - p.h.norm()) < 1e-12);  // h is a multiple of f1
    CHECK(p.h.norm() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(max_abs(frame_operator(regular(2), p.eta + p.h) - ComplexMatrix::Identity(2, 2)) < 1e-12);

    // two copies of the regular representation of Z_2 have no complete frame vector
    const ProjectiveRep l2 = regular(2);
    std::vector<ComplexMatrix> doubled;
    for (const auto& u : l2.matrices()) {
        ComplexMatrix b = ComplexMatrix::Zero(4, 4);
        b.topLeftCorner(2, 2) = u;
        b.bottomRightCorner(2, 2) = u;
        doubled.push_back(b);
    }
    const RepContext cd(ProjectiveRep(l2.multiplier(), doubled));
    CHECK(kind_of([&] { dilate_to_complete(cd, chi(4, 0), DilationMode::frame, 1); }) == ErrorKind::precondition);
    CHECK(kind_of([&] { dilate_to_complete(c4, ComplexVector::Zero(4), DilationMode::frame, 1); }) ==
          ErrorKind::invalid_parameter);
}

TEST_CASE("orthogonal range witness") {
    const RepContext c2(regular(2));
    const ComplexVector x = orthogonal_range_witness(c2, dft_vector(2, 0), chi(2, 0));
    const ComplexVector f1 = dft_vector(2, 1);
    CHECK(x.norm() > 0);
    CHECK(std::abs(std::abs(inner(x, f1)) - x.norm()) < 1e-12);
    CHECK(kind_of([&] { orthogonal_range_witness(c2, chi(2, 0), chi(2, 0)); }) == ErrorKind::no_witness);
    CHECK(kind_of([&] { orthogonal_range_witness(c2, f1, ComplexVector::Ones(2)); }) == ErrorKind::precondition);

    Rng rng(8);
    for (std::size_t n : {6, 8}) {
        const ProjectiveRep pi = regular(n);
        const RepContext ctx(pi);
        const ComplexVector xi = dft_frequency_projection(n, {0, 2}) * rng.gaussian_vector(pi.dim());
        const ComplexVector w = orthogonal_range_witness(ctx, xi, chi(pi.dim(), 0));
        CHECK(subspace_perp(ctx.commutant_orbit(w), ctx.commutant_orbit(xi), 1e-7));
    }
    // Heisenberg case: a rank-deficient vector cut by a commutant projection
    const ProjectiveRep h = left_regular(heisenberg_multiplier(2));
    const RepContext ch(h);
    const ComplexMatrix r = right_regular(heisenberg_multiplier(2))(1);
    const EigResult e = hermitian_eig(r + r.adjoint());
    const ComplexMatrix p = e.vectors.leftCols(2) * e.vectors.leftCols(2).adjoint();
    const ComplexVector xi = p * rng.gaussian_vector(4);
    const ComplexVector w = orthogonal_range_witness(ch, xi, chi(4, 0));
    CHECK(pi_orthogonal(ch, w, xi));
    CHECK(subspace_perp(ch.commutant_orbit(w), ch.commutant_orbit(xi), 1e-7));
}

TEST_CASE("bessel parameterization") {
    const RepContext c4(regular(4));
    const ComplexVector e0 = chi(4, 0);
    const Parameterization id = bessel_parameterize(c4, e0, e0);
    CHECK(max_abs(id.a - ComplexMatrix::Identity(4, 4)) < 1e-10);
    CHECK(id.is_unitary);

    for (Element g = 0; g < 4; ++g) {
        const Parameterization p = bessel_parameterize(c4, e0, regular(4)(g) * e0);
        CHECK(p.residual < 1e-9);
        CHECK(max_abs(p.a - regular(4)(g)) < 1e-10);
    }

    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        ComplexVector eta = rng.gaussian_vector(4);
        if (i % 2) eta = parseval_normalize(regular(4), eta);
        const Parameterization p = bessel_parameterize(c4, e0, eta);
        ComplexMatrix circulant = ComplexMatrix::Zero(4, 4);
        for (Element h = 0; h < 4; ++h) circulant += eta(static_cast<Eigen::Index>(h)) * regular(4)(h);
        CHECK(max_abs(p.a - circulant) < 1e-10);
        CHECK(p.in_bicommutant);
        CHECK(p.is_unitary == classify(regular(4), eta).is_parseval);
    }

    // a vector that is complete Parseval but not separating for pi(G)''
    for (const GaborLattice& lat : {GaborLattice{6, 1, 2}, GaborLattice{4, 1, 2}, GaborLattice{6, 1, 1}}) {
        const ProjectiveRep pi = gabor_rep(lat);
        const RepContext ctx(pi);
        const ComplexVector xi = parseval_normalize(pi, rng.gaussian_vector(pi.dim()));
        const ComplexVector target = parseval_normalize(pi, rng.gaussian_vector(pi.dim()));
        const Parameterization u = bessel_parameterize(ctx, xi, target, 1e-9, 4);
        CHECK(u.residual < 1e-9);
        CHECK(u.in_bicommutant);
        CHECK(u.is_unitary);
        const ComplexVector frame = rng.gaussian_vector(pi.dim());
        const Parameterization v = bessel_parameterize(ctx, xi, frame, 1e-9, 4);
        CHECK(v.is_invertible);
        CHECK_FALSE(v.is_unitary);
        // an arbitrary target
        const ComplexVector deficient = frame_operator(pi, frame) * pi(1) * xi;
        const Parameterization z = bessel_parameterize(ctx, xi, deficient, 1e-9, 4);
        CHECK(z.residual < 1e-9);
        CHECK(z.in_bicommutant);
    }
    CHECK(kind_of([&] { bessel_parameterize(c4, 2.0 * e0, e0); }) == ErrorKind::precondition);
}
