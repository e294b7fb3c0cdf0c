#include "dualrep/vn_algebra.hpp"

#include <algorithm>

#include "dualrep/error.hpp"

namespace dualrep {

OperatorSubspace::OperatorSubspace(Eigen::Index ambient_dim, ComplexMatrix vec_basis)
    : d_(ambient_dim), vec_basis_(std::move(vec_basis)) {
    require(vec_basis_.rows() == d_ * d_, ErrorKind::invalid_parameter, "operator basis has the wrong length");
}

ComplexMatrix OperatorSubspace::element(Eigen::Index i) const { return unvec(vec_basis_.col(i), d_); }

std::vector<ComplexMatrix> OperatorSubspace::elements() const {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(dim()));
    for (Eigen::Index i = 0; i < dim(); ++i) out.push_back(element(i));
    return out;
}

ComplexMatrix OperatorSubspace::project(const ComplexMatrix& x) const {
    const ComplexVector v = vec(x);
    return unvec(vec_basis_ * (vec_basis_.adjoint() * v), d_);
}

ComplexVector vec(const ComplexMatrix& x) { return Eigen::Map<const ComplexVector>(x.data(), x.size()); }

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d) {
    require(v.size() == d * d, ErrorKind::invalid_parameter, "unvec: length is not d^2");
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

namespace {

// noise_floor: eigenvalues this small are rounding even when the whole
// spectrum is, e.g. when every operator is a scalar.
OperatorSubspace kernel_of(const ComplexMatrix& gram, Eigen::Index d, double eps_rank, double noise_floor) {
    const EigResult e = hermitian_eig(gram, 1e-8);
    const Eigen::Index n = e.values.size();
    const double top = n == 0 ? 0.0 : std::max(std::abs(e.values(0)), std::abs(e.values(n - 1)));
    Eigen::Index k = 0;
    while (k < n && e.values(k) <= eps_rank * top) ++k;
    if (top <= noise_floor) k = n;
    return OperatorSubspace(d, e.vectors.leftCols(k));
}

}  // namespace

OperatorSubspace commutant(const std::vector<ComplexMatrix>& ops, Eigen::Index d, double eps_rank) {
    require(d >= 1, ErrorKind::invalid_parameter, "commutant: dimension must be positive");
    for (const auto& u : ops)
        require(u.rows() == d && u.cols() == d, ErrorKind::invalid_parameter, "commutant: operator shape mismatch");

    // sum_U L_U^* L_U with L_U = I (x) U - U^T (x) I acting on vec(X)
    //   = I (x) sum U^*U + sum conj(U U^*) (x) I - C - C^*,  C = sum U^T (x) U^*.
    ComplexMatrix left = ComplexMatrix::Zero(d, d);
    ComplexMatrix right = ComplexMatrix::Zero(d, d);
    ComplexMatrix cross = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& u : ops) {
        left += u.adjoint() * u;
        right += (u * u.adjoint()).conjugate();
        const ComplexMatrix ua = u.adjoint();
        for (Eigen::Index ja = 0; ja < d; ++ja)
            for (Eigen::Index ia = 0; ia < d; ++ia) {
                const cplx c = u(ja, ia);
                if (c != cplx{0.0, 0.0}) cross.block(ia * d, ja * d, d, d) += c * ua;
            }
    }
    ComplexMatrix gram = -cross - cross.adjoint();
    for (Eigen::Index i = 0; i < d; ++i) {
        gram.block(i * d, i * d, d, d) += left;
        for (Eigen::Index j = 0; j < d; ++j)
            gram.block(i * d, j * d, d, d).diagonal().array() += right(i, j);
    }
    return kernel_of(gram, d, eps_rank, 1e-12 * left.trace().real());
}

OperatorSubspace commutant(const OperatorSubspace& a, double eps_rank) {
    return commutant(a.elements(), a.ambient_dim(), eps_rank);
}

OperatorSubspace double_commutant(const std::vector<ComplexMatrix>& ops, Eigen::Index d, double eps_rank) {
    std::vector<ComplexMatrix> closed = ops;
    closed.reserve(2 * ops.size());
    for (const auto& u : ops) closed.push_back(u.adjoint());
    return commutant(commutant(closed, d, eps_rank), eps_rank);
}

OperatorSubspace intersect(const OperatorSubspace& a, const OperatorSubspace& b, double eps_rank) {
    require(a.ambient_dim() == b.ambient_dim(), ErrorKind::invalid_parameter, "intersect: ambient mismatch");
    const Eigen::Index n = a.ambient_dim() * a.ambient_dim();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix pa = a.vec_basis() * a.vec_basis().adjoint();
    const ComplexMatrix pb = b.vec_basis() * b.vec_basis().adjoint();
    ComplexMatrix m = (id - pa) + (id - pb);
    m = 0.5 * (m + m.adjoint());
    const EigResult e = hermitian_eig(m, 1e-8);
    Eigen::Index k = 0;
    while (k < e.values.size() && e.values(k) <= eps_rank * 2.0) ++k;
    return OperatorSubspace(a.ambient_dim(), e.vectors.leftCols(k));
}

double max_principal_angle(const OperatorSubspace& a, const OperatorSubspace& b) {
    require(a.ambient_dim() == b.ambient_dim(), ErrorKind::invalid_parameter, "operator subspaces differ in size");
    return max_principal_angle(a.as_subspace(), b.as_subspace());
}

bool operator_subspace_equal(const OperatorSubspace& a, const OperatorSubspace& b, double eps) {
    require(a.ambient_dim() == b.ambient_dim(), ErrorKind::invalid_parameter, "operator subspaces differ in size");
    return subspace_equal(a.as_subspace(), b.as_subspace(), eps);
}

OperatorSubspace center(const OperatorSubspace& a, double eps) {
    const OperatorSubspace a_prime = commutant(a);
    const OperatorSubspace a_second = commutant(a_prime);
    require(operator_subspace_equal(a, a_second, std::max(eps, 1e-6)), ErrorKind::invalid_parameter,
            "center: input is not a von Neumann algebra");
    return intersect(a, a_prime);
}

bool is_factor(const OperatorSubspace& a, double eps) { return center(a, eps).dim() == 1; }

cplx trace_state(const ComplexMatrix& a, const ComplexVector& chi) {
    require(a.rows() == chi.size() && a.cols() == chi.size(), ErrorKind::invalid_parameter,
            "trace_state: shape mismatch");
    return inner(a * chi, chi);
}

bool contains(const OperatorSubspace& a, const ComplexMatrix& x, double eps) {
    require(x.rows() == a.ambient_dim() && x.cols() == a.ambient_dim(), ErrorKind::invalid_parameter,
            "contains: shape mismatch");
    const double nx = x.norm();
    if (nx == 0.0) return true;
    return (x - a.project(x)).norm() < eps * nx;
}

nlohmann::json to_json(const OperatorSubspace& a) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& m : a.elements()) basis.push_back(matrix_to_json(m));
    return {{"ambient_dim", a.ambient_dim()}, {"dim", a.dim()}, {"basis", std::move(basis)}};
}

}  // namespace dualrep
