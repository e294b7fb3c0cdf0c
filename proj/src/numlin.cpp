#include "dualrep/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dualrep/error.hpp"

namespace dualrep {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream * 0xD1B54A32D192ED03ULL + 1))) {}

std::uint64_t Rng::next_u64() { return splitmix64(key_ + kGolden * ++counter_); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::size_t Rng::below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(uniform() * n); }

ComplexVector Rng::gaussian_vector(Eigen::Index n) {
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
    return v;
}

ComplexMatrix Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
}

ComplexMatrix Rng::random_unitary(Eigen::Index n) {
    const ComplexMatrix z = gaussian_matrix(n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool is_hermitian(const ComplexMatrix& a, double eps) {
    if (a.rows() != a.cols()) return false;
    const double scale = std::max(1.0, max_abs(a));
    return max_abs(a - a.adjoint()) <= eps * scale;
}

bool is_unitary(const ComplexMatrix& a, double eps) {
    if (a.rows() != a.cols()) return false;
    return max_abs(a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols())) <= eps;
}

EigResult hermitian_eig(const ComplexMatrix& a, double eps) {
    require(a.rows() == a.cols(), ErrorKind::invalid_parameter, "hermitian_eig: matrix is not square");
    const double norm = a.norm();
    require(!a.hasNaN() && std::isfinite(norm), ErrorKind::invalid_parameter,
            "hermitian_eig: non-finite entries");
    require((a - a.adjoint()).norm() <= eps * std::max(norm, 1e-300) || norm == 0.0,
            ErrorKind::invalid_parameter, "hermitian_eig: matrix is not Hermitian");
    if (a.rows() == 0) return {};
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    require(solver.info() == Eigen::Success, ErrorKind::invalid_parameter,
            "hermitian_eig: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

bool Subspace::is_orthonormal(double eps) const {
    if (basis.rows() != ambient_dim) return false;
    const ComplexMatrix g = basis.adjoint() * basis;
    return max_abs(g - ComplexMatrix::Identity(g.rows(), g.cols())) <= eps;
}

RankRange rank_and_range(const ComplexMatrix& a, double eps_rank) {
    RankRange out;
    out.range.ambient_dim = a.rows();
    if (a.size() == 0) {
        out.range.basis = ComplexMatrix(a.rows(), 0);
        out.singular_values = Eigen::VectorXd(0);
        return out;
    }
    // JacobiSVD: BDCSVD in Eigen 3.4.0 can return an inaccurate U for large
    // inputs with clustered singular values.
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
    out.singular_values = svd.singularValues();
    const double smax = out.singular_values(0);
    Eigen::Index r = 0;
    if (smax > 0) {
        while (r < out.singular_values.size() && out.singular_values(r) > eps_rank * smax) ++r;
    }
    out.rank = r;
    out.range.basis = svd.matrixU().leftCols(r);
    return out;
}

ComplexMatrix psd_power(const ComplexMatrix& a, double p, double eps_rank) {
    const EigResult e = hermitian_eig(a, Tolerances{}.orth * 100);
    const Eigen::Index n = a.rows();
    if (n == 0) return a;
    const double top = std::max(std::abs(e.values(0)), std::abs(e.values(n - 1)));
    const double cut = eps_rank * top;
    require(e.values(0) >= -cut, ErrorKind::invalid_parameter, "psd_power: matrix has a negative eigenvalue");
    Eigen::VectorXd mapped(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double v = e.values(k);
        mapped(k) = v <= cut ? 0.0 : std::pow(v, p);
    }
    return e.vectors * mapped.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

double max_principal_angle(const Subspace& s1, const Subspace& s2) {
    require(s1.ambient_dim == s2.ambient_dim, ErrorKind::invalid_parameter, "subspaces live in different spaces");
    if (s1.dim() != s2.dim()) return std::numbers::pi / 2;
    if (s1.dim() == 0) return 0.0;
    // sin of the largest angle is the norm of the part of s2 outside s1.
    const ComplexMatrix residual = s2.basis - s1.basis * (s1.basis.adjoint() * s2.basis);
    Eigen::JacobiSVD<ComplexMatrix> svd(residual);
    const double s = std::clamp(svd.singularValues()(0), 0.0, 1.0);
    return std::asin(s);
}

bool subspace_equal(const Subspace& s1, const Subspace& s2, double eps) {
    require(s1.ambient_dim == s2.ambient_dim, ErrorKind::invalid_parameter, "subspace_equal: ambient mismatch");
    if (s1.dim() != s2.dim()) return false;
    return max_principal_angle(s1, s2) < eps;
}

double max_overlap(const Subspace& s1, const Subspace& s2) {
    require(s1.ambient_dim == s2.ambient_dim, ErrorKind::invalid_parameter, "subspace_perp: ambient mismatch");
    if (s1.dim() == 0 || s2.dim() == 0) return 0.0;
    return max_abs(s1.basis.adjoint() * s2.basis);
}

bool subspace_perp(const Subspace& s1, const Subspace& s2, double eps) { return max_overlap(s1, s2) < eps; }

Subspace span_of(const std::vector<ComplexVector>& vectors, double eps_rank) {
    require(!vectors.empty(), ErrorKind::invalid_parameter, "span_of: no vectors");
    ComplexMatrix m(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
    return rank_and_range(m, eps_rank).range;
}

ComplexMatrix dft_basis(Eigen::Index n) {
    ComplexMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index h = 0; h < n; ++h)
        for (Eigen::Index k = 0; k < n; ++k)
            f(h, k) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>((k * h) % n) / n);
    return f;
}

nlohmann::json matrix_to_json(const ComplexMatrix& a) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) entries.push_back({a(i, j).real(), a(i, j).imag()});
    return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

namespace {

cplx scalar_from_json(const nlohmann::json& e) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    require(e.is_array() && e.size() == 2, ErrorKind::invalid_parameter, "complex entry must be [re, im]");
    return {e[0].get<double>(), e[1].get<double>()};
}

}  // namespace

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("entries"),
            ErrorKind::invalid_parameter, "matrix JSON needs rows, cols, entries");
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    require(rows >= 0 && cols >= 0 && entries.is_array() && static_cast<Eigen::Index>(entries.size()) == rows * cols,
            ErrorKind::invalid_parameter, "matrix JSON entry count does not match shape");
    ComplexMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) {
            a(i, c) = scalar_from_json(entries[static_cast<std::size_t>(i * cols + c)]);
            require(std::isfinite(a(i, c).real()) && std::isfinite(a(i, c).imag()), ErrorKind::invalid_parameter,
                    "matrix JSON has a non-finite entry");
        }
    return a;
}

nlohmann::json vector_to_json(const ComplexVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

ComplexVector vector_from_json(const nlohmann::json& j) {
    require(j.is_array(), ErrorKind::invalid_parameter, "vector JSON must be an array");
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = scalar_from_json(j[i]);
    return v;
}

}  // namespace dualrep
