#include "dualrep/gabor.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dualrep/error.hpp"

namespace dualrep {

ComplexMatrix translation(std::size_t n) {
    require(n >= 1, ErrorKind::invalid_parameter, "translation: N must be positive");
    const auto d = static_cast<Eigen::Index>(n);
    ComplexMatrix t = ComplexMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) t(k, (k + d - 1) % d) = 1.0;
    return t;
}

ComplexMatrix modulation(std::size_t n) {
    require(n >= 1, ErrorKind::invalid_parameter, "modulation: N must be positive");
    const auto d = static_cast<Eigen::Index>(n);
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) m(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / d);
    return m;
}

namespace {

// M^p T^q built directly: (M^p T^q x)[k] = exp(2 pi i p k / N) x[(k - q) mod N].
ComplexMatrix time_frequency_shift(std::size_t n, std::size_t p, std::size_t q) {
    const auto d = static_cast<Eigen::Index>(n);
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k < n; ++k)
        out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>((k + n - q % n) % n)) =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((p * k) % n) / static_cast<double>(n));
    return out;
}

}  // namespace

ProjectiveRep gabor_rep(const GaborLattice& lattice) {
    require(lattice.valid(), ErrorKind::invalid_parameter, "invalid Gabor lattice: a and b must divide N");
    const std::size_t nm = lattice.modulation_count();
    const std::size_t nt = lattice.translation_count();
    FiniteGroup g = direct_product(cyclic_group(nm), cyclic_group(nt));
    std::vector<ComplexMatrix> mats;
    mats.reserve(nm * nt);
    for (std::size_t m = 0; m < nm; ++m)
        for (std::size_t t = 0; t < nt; ++t) mats.push_back(time_frequency_shift(lattice.n, lattice.a * m, lattice.b * t));
    Multiplier mu = derive_multiplier(mats, g);
    return ProjectiveRep(std::move(mu), std::move(mats));
}

GaborLattice adjoint_lattice(const GaborLattice& lattice) {
    require(lattice.valid(), ErrorKind::invalid_parameter, "invalid Gabor lattice: a and b must divide N");
    return {lattice.n, lattice.n / lattice.b, lattice.n / lattice.a};
}

ComplexMatrix zak_transform(const ComplexVector& f, std::size_t a) {
    const auto n = static_cast<std::size_t>(f.size());
    require(a >= 1 && n >= 1 && n % a == 0, ErrorKind::invalid_parameter, "zak_transform: a must divide N");
    const std::size_t l = n / a;
    const double scale = 1.0 / std::sqrt(static_cast<double>(l));
    ComplexMatrix z(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(l));
    for (std::size_t j = 0; j < a; ++j)
        for (std::size_t k = 0; k < l; ++k) {
            cplx acc{0.0, 0.0};
            for (std::size_t m = 0; m < l; ++m)
                acc += f(static_cast<Eigen::Index>((j + m * a) % n)) *
                       std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((m * k) % l) / static_cast<double>(l));
            z(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = scale * acc;
        }
    return z;
}

GaborLattice lattice_from_string(const std::string& text) {
    std::stringstream ss(text);
    std::string part;
    std::vector<std::size_t> values;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t pos = 0;
            const long v = std::stol(part, &pos);
            require(pos == part.size() && v >= 1, ErrorKind::invalid_parameter, "bad lattice '" + text + "'");
            values.push_back(static_cast<std::size_t>(v));
        } catch (const std::logic_error&) {
            fail(ErrorKind::invalid_parameter, "bad lattice '" + text + "'");
        }
    }
    require(values.size() == 3, ErrorKind::invalid_parameter, "lattice must be N,a,b");
    GaborLattice l{values[0], values[1], values[2]};
    require(l.valid(), ErrorKind::invalid_parameter, "invalid Gabor lattice: a and b must divide N");
    return l;
}

}  // namespace dualrep
