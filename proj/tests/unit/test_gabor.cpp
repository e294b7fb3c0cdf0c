#include <numbers>

#include "doctest.h"
#include "dualrep/error.hpp"
#include "dualrep/frames.hpp"
#include "dualrep/gabor.hpp"

using namespace dualrep;

namespace {

std::vector<GaborLattice> all_lattices(std::initializer_list<std::size_t> ns) {
    std::vector<GaborLattice> out;
    for (std::size_t n : ns)
        for (std::size_t a = 1; a <= n; ++a)
            for (std::size_t b = 1; b <= n; ++b)
                if (n % a == 0 && n % b == 0) out.push_back({n, a, b});
    return out;
}

ComplexMatrix power(const ComplexMatrix& m, std::size_t k) {
    ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
    for (std::size_t i = 0; i < k; ++i) out = out * m;
    return out;
}

}  // namespace

TEST_CASE("translation and modulation") {
    ComplexMatrix t2(2, 2), m2(2, 2);
    t2 << 0, 1, 1, 0;
    m2 << 1, 0, 0, -1;
    CHECK(max_abs(translation(2) - t2) < 1e-15);
    CHECK(max_abs(modulation(2) - m2) < 1e-15);

    for (std::size_t n : {1, 3, 4, 7, 12}) {
        const ComplexMatrix t = translation(n), m = modulation(n);
        const auto id = ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        const cplx w = std::exp(cplx{0.0, 2.0 * std::numbers::pi / static_cast<double>(n)});
        CHECK(max_abs(m * t - w * t * m) < 1e-13);
        CHECK(max_abs(power(t, n) - id) < 1e-13);
        CHECK(max_abs(power(m, n) - id) < 1e-12);
        CHECK(is_unitary(t, 1e-14));
        CHECK(is_unitary(m, 1e-14));
        // (Tx)[k] = x[k-1]
        ComplexVector x = ComplexVector::LinSpaced(static_cast<Eigen::Index>(n), 1.0, static_cast<double>(n));
        const ComplexVector tx = t * x;
        for (std::size_t k = 0; k < n; ++k)
            CHECK(tx(static_cast<Eigen::Index>(k)) == x(static_cast<Eigen::Index>((k + n - 1) % n)));
    }
}

TEST_CASE("gabor representation") {
    const ProjectiveRep full = gabor_rep({4, 1, 1});
    CHECK(full.order() == 16);
    CHECK(full.dim() == 4);
    CHECK(full.group().label() == "Z4xZ4");

    const ProjectiveRep trivial = gabor_rep({4, 4, 4});
    CHECK(trivial.order() == 1);
    CHECK(max_abs(trivial(0) - ComplexMatrix::Identity(4, 4)) < 1e-15);

    for (const GaborLattice& l : all_lattices({4, 6, 8, 12})) {
        const ProjectiveRep p = gabor_rep(l);
        CHECK(verify_rep(p).pass);
        const std::size_t nt = l.translation_count();
        const double scale = static_cast<double>(l.a * l.b) / static_cast<double>(l.n);
        for (Element x = 0; x < p.order(); ++x)
            for (Element y = 0; y < p.order(); ++y) {
                const double n = static_cast<double>(x % nt), mp = static_cast<double>(y / nt);
                const cplx expected = std::exp(cplx{0.0, -2.0 * std::numbers::pi * scale * n * mp});
                CHECK(std::abs(p.multiplier()(x, y) - expected) < 1e-12);
            }
        for (Element m = 0; m < l.modulation_count(); ++m) {
            const ComplexMatrix& d = p(m * nt);
            CHECK(max_abs(d - ComplexMatrix(d.diagonal().asDiagonal())) < 1e-15);
        }
        for (Element n = 0; n < nt; ++n) {
            const ComplexMatrix& q = p(n);
            for (Eigen::Index c = 0; c < q.cols(); ++c) {
                CHECK(q.col(c).cwiseAbs().sum() == doctest::Approx(1.0));
                CHECK(q.col(c).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
            }
            CHECK(max_abs(q - ComplexMatrix(q.real().cast<cplx>())) < 1e-15);
        }
    }
    CHECK_THROWS_AS(gabor_rep({6, 4, 1}), Error);
}

TEST_CASE("adjoint lattice") {
    CHECK(adjoint_lattice({12, 3, 2}) == GaborLattice{12, 6, 4});
    CHECK(adjoint_lattice({9, 1, 1}) == GaborLattice{9, 9, 9});
    for (const GaborLattice& l : all_lattices({4, 6, 8, 12})) {
        CHECK(adjoint_lattice(adjoint_lattice(l)) == l);
        CHECK(adjoint_lattice(l).n == l.n);
    }
}

TEST_CASE("zak transform") {
    ComplexVector delta = ComplexVector::Zero(4);
    delta(0) = 1.0;
    const ComplexMatrix z = zak_transform(delta, 2);
    CHECK(z.rows() == 2);
    CHECK(z.cols() == 2);
    CHECK(std::abs(z(0, 0) - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(z(0, 1) - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(z.row(1).norm() < 1e-15);

    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 12, a = std::vector<std::size_t>{1, 2, 3, 4, 6, 12}[static_cast<std::size_t>(i) % 6];
        const ComplexVector f = rng.gaussian_vector(static_cast<Eigen::Index>(n));
        CHECK(zak_transform(f, a).norm() == doctest::Approx(f.norm()).epsilon(1e-12));
    }
    const ComplexVector f = rng.gaussian_vector(6);
    const ComplexMatrix zf = zak_transform(f, 6);
    CHECK(zf.cols() == 1);
    CHECK((zf.col(0) - f).norm() < 1e-14);
    CHECK_THROWS_AS(zak_transform(f, 4), Error);
}

TEST_CASE("density dichotomy on generic windows") {
    for (const GaborLattice& l : all_lattices({4, 6, 8})) {
        const ProjectiveRep p = gabor_rep(l);
        const std::size_t count = p.order();
        for (std::uint64_t s = 0; s < 50; ++s) {
            Rng rng(100, s);
            const FrameClassification c = classify(p, rng.gaussian_vector(static_cast<Eigen::Index>(l.n)));
            if (c.is_complete_frame) CHECK(count >= l.n);
            if (c.is_riesz_sequence) CHECK(count <= l.n);
        }
    }
}

TEST_CASE("full lattice tightness") {
    for (std::size_t n : {4, 6, 8, 16}) {
        const ProjectiveRep p = gabor_rep({n, 1, 1});
        Rng rng(n);
        const ComplexVector g = rng.gaussian_vector(static_cast<Eigen::Index>(n));
        ComplexMatrix s = ComplexMatrix::Zero(g.size(), g.size());
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t k = 0; k < n; ++k) {
                ComplexVector v(g.size());
                for (std::size_t j = 0; j < n; ++j)
                    v(static_cast<Eigen::Index>(j)) =
                        std::exp(cplx{0.0, 2.0 * std::numbers::pi * static_cast<double>((m * j) % n) / n}) *
                        g(static_cast<Eigen::Index>((j + n - k) % n));
                s += v * v.adjoint();
            }
        const auto id = ComplexMatrix::Identity(g.size(), g.size());
        CHECK(max_abs(s - static_cast<double>(n) * g.squaredNorm() * id) < 1e-9);
        CHECK(max_abs(frame_operator(p, g) - s) < 1e-9);
    }
}

TEST_CASE("lattice parsing") {
    CHECK(lattice_from_string("12,3,2") == GaborLattice{12, 3, 2});
    CHECK_THROWS_AS(lattice_from_string("12,5,2"), Error);
    CHECK_THROWS_AS(lattice_from_string("12,3"), Error);
    CHECK_THROWS_AS(lattice_from_string("a,b,c"), Error);
    CHECK_THROWS_AS(lattice_from_string("12,0,2"), Error);
}
