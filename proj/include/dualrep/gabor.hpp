#pragma once

// Finite Gabor systems on C^N. The lattice (N, a, b) indexes the operators
// M^{a m} T^{b n} for (m, n) in Z_{N/a} x Z_{N/b}; modulation comes first.

#include <cstddef>

#include "dualrep/reps.hpp"

namespace dualrep {

struct GaborLattice {
    std::size_t n = 1;  ///< ambient dimension N
    std::size_t a = 1;  ///< modulation step
    std::size_t b = 1;  ///< translation step

    bool valid() const { return n >= 1 && a >= 1 && b >= 1 && a <= n && b <= n && n % a == 0 && n % b == 0; }
    std::size_t modulation_count() const { return n / a; }
    std::size_t translation_count() const { return n / b; }

    friend bool operator==(const GaborLattice&, const GaborLattice&) = default;
};

/// (T x)[k] = x[(k - 1) mod N]
ComplexMatrix translation(std::size_t n);
/// M = diag(exp(2 pi i k / N))
ComplexMatrix modulation(std::size_t n);

/// pi(m, n) = M^{a m} T^{b n} on C^N as a rep of Z_{N/a} x Z_{N/b}, with the
/// multiplier read off the matrices by derive_multiplier.
ProjectiveRep gabor_rep(const GaborLattice& lattice);

/// (N, N/b, N/a)
GaborLattice adjoint_lattice(const GaborLattice& lattice);

/// Zf[j, k] = (N/a)^{-1/2} sum_m f[(j + m a) mod N] exp(-2 pi i m k / (N/a)),
/// an a x (N/a) array. Unitary from C^N onto C^{a x N/a}.
ComplexMatrix zak_transform(const ComplexVector& f, std::size_t a);

/// Parses "N,a,b".
GaborLattice lattice_from_string(const std::string& text);

}  // namespace dualrep
