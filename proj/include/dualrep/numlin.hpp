#pragma once

// Dense complex linear algebra kernel shared by every other module.
//
// Matrices are Eigen::MatrixXcd. Vectors live in C^n with the inner product
// <x, y> = sum_k x_k conj(y_k), linear in the first argument.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

namespace dualrep {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Default numerical tolerances. Every operation takes them explicitly so a
/// report can echo exactly what was used.
struct Tolerances {
    double eig = 1e-10;    ///< relative residual bound for eigendecompositions
    double rank = 1e-9;    ///< singular values below rank * sigma_max count as zero
    double orth = 1e-10;   ///< orthonormality of bases
    double eq = 1e-8;      ///< Parseval / orthonormal / algebra-equality gates
    double rep = 1e-10;    ///< twisted homomorphism identity
    double route = 1e-7;   ///< agreement gate between two independent routes
};

/// Inner product linear in the first slot: <x, y> = y^* x.
inline cplx inner(const ComplexVector& x, const ComplexVector& y) { return y.dot(x); }

/// Counter-based random stream. Draw i of stream (seed, stream) depends only on
/// those three numbers, so parallel sweeps reproduce serial ones bit for bit.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double uniform();          ///< in [0, 1)
    double normal();           ///< standard normal, Box-Muller
    cplx complex_normal();     ///< E|z|^2 = 1
    std::size_t below(std::size_t n);

    ComplexVector gaussian_vector(Eigen::Index n);
    ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);
    ComplexMatrix random_unitary(Eigen::Index n);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct EigResult {
    Eigen::VectorXd values;   ///< ascending
    ComplexMatrix vectors;    ///< unitary, columns are eigenvectors
};

/// Hermitian eigendecomposition. Throws invalid_parameter when
/// ||A - A^*|| > eps * ||A||.
EigResult hermitian_eig(const ComplexMatrix& a, double eps = Tolerances{}.eig);

/// An orthonormal basis of a subspace of C^ambient_dim, stored as columns.
struct Subspace {
    Eigen::Index ambient_dim = 0;
    ComplexMatrix basis;  ///< ambient_dim x k

    Eigen::Index dim() const { return basis.cols(); }
    ComplexMatrix projector() const { return basis * basis.adjoint(); }
    bool is_orthonormal(double eps = Tolerances{}.orth) const;
};

struct RankRange {
    Eigen::Index rank = 0;
    Subspace range;
    Eigen::VectorXd singular_values;  ///< descending, all of them
};

/// Numerical rank (singular values > eps_rank * sigma_max) and the span of the
/// matching left singular vectors.
RankRange rank_and_range(const ComplexMatrix& a, double eps_rank = Tolerances{}.rank);

/// Spectral power of a PSD matrix. Eigenvalues <= eps_rank * lambda_max are
/// sent to 0 for every p, so p < 0 gives the pseudo-inverse power on the
/// support and p = 0 gives the support projection.
ComplexMatrix psd_power(const ComplexMatrix& a, double p, double eps_rank = Tolerances{}.rank);

/// Largest principal angle between two subspaces of equal dimension,
/// computed from sines so that tiny angles are resolved.
double max_principal_angle(const Subspace& s1, const Subspace& s2);

bool subspace_equal(const Subspace& s1, const Subspace& s2, double eps);
bool subspace_perp(const Subspace& s1, const Subspace& s2, double eps);

/// Largest |<u, v>| over basis pairs.
double max_overlap(const Subspace& s1, const Subspace& s2);

Subspace span_of(const std::vector<ComplexVector>& vectors, double eps_rank = Tolerances{}.rank);

double max_abs(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double eps);
bool is_unitary(const ComplexMatrix& a, double eps);

/// Unitary DFT matrix whose column k is e_k[h] = exp(-2 pi i k h / n) / sqrt(n).
ComplexMatrix dft_basis(Eigen::Index n);

nlohmann::json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const nlohmann::json& j);

}  // namespace dualrep
