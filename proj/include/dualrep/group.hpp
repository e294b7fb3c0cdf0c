#pragma once

// Finite groups as Cayley tables over dense indices 0..n-1, and multipliers
// (normalized T-valued 2-cocycles) on them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dualrep/numlin.hpp"

namespace dualrep {

using Element = std::size_t;

class FiniteGroup {
public:
    /// Validates associativity, a two-sided identity and two-sided inverses.
    /// Throws invalid_parameter on any violation.
    FiniteGroup(std::vector<std::vector<Element>> cayley, std::string label);

    std::size_t order() const { return cayley_.size(); }
    Element identity() const { return identity_; }
    Element mul(Element a, Element b) const { return cayley_[a][b]; }
    Element inv(Element a) const { return inverse_[a]; }
    const std::vector<std::vector<Element>>& cayley() const { return cayley_; }
    const std::vector<Element>& inverse_table() const { return inverse_; }
    const std::string& label() const { return label_; }
    bool is_abelian() const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.cayley_ == b.cayley_; }

private:
    std::vector<std::vector<Element>> cayley_;
    std::vector<Element> inverse_;
    Element identity_ = 0;
    std::string label_;
};

FiniteGroup cyclic_group(std::size_t n);

/// Componentwise product; element (i1, i2) has index i1 * |G2| + i2.
FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2);

/// Parses "Z12", "Z2xZ4", "Z3xZ3xZ2".
FiniteGroup group_from_label(const std::string& label);

class Multiplier {
public:
    using Table = std::vector<std::vector<cplx>>;

    /// Shape-checked only; use validate_multiplier for the cocycle identities.
    Multiplier(FiniteGroup group, Table table);

    const FiniteGroup& group() const { return group_; }
    cplx operator()(Element g, Element h) const { return table_[g][h]; }
    const Table& table() const { return table_; }

private:
    FiniteGroup group_;
    Table table_;
};

Multiplier trivial_multiplier(const FiniteGroup& g);

/// mu((m,n),(m',n')) = exp(-2 pi i n m' / N) on Z_N x Z_N.
Multiplier heisenberg_multiplier(std::size_t n);

Multiplier conjugate_multiplier(const Multiplier& mu);

struct MultiplierReport {
    bool pass = false;
    bool unit_modulus = true;
    bool cocycle = true;
    bool normalized = true;
    bool inverse_symmetry = true;  ///< mu(g, g^-1) == mu(g^-1, g)
    double max_unit_error = 0.0;
    double max_cocycle_error = 0.0;
    double max_normalization_error = 0.0;
    double max_inverse_symmetry_error = 0.0;
    std::string failure;                          ///< which condition failed first
    std::optional<std::vector<Element>> witness;  ///< pair or triple
};

constexpr double kUnitTolerance = 1e-12;

MultiplierReport validate_multiplier(const Multiplier& mu, double eps = kUnitTolerance);

/// Multiplier whose table has a different shape than its group is rejected
/// here (the Multiplier constructor already enforces it for in-memory tables).
Multiplier multiplier_from_json(const FiniteGroup& g, const nlohmann::json& j);
nlohmann::json multiplier_to_json(const Multiplier& mu);

/// {order, cayley: [[...]], label}
FiniteGroup group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);
nlohmann::json to_json(const MultiplierReport& r);

}  // namespace dualrep
