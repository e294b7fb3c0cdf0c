#include "dualrep/group.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dualrep/error.hpp"

namespace dualrep {

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> cayley, std::string label)
    : cayley_(std::move(cayley)), label_(std::move(label)) {
    const std::size_t n = cayley_.size();
    require(n >= 1, ErrorKind::invalid_parameter, "group must have at least one element");
    for (const auto& row : cayley_) {
        require(row.size() == n, ErrorKind::invalid_parameter, "Cayley table is not square");
        for (Element x : row) require(x < n, ErrorKind::invalid_parameter, "Cayley table entry out of range");
    }

    bool found = false;
    for (Element e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (Element a = 0; a < n && ok; ++a) ok = cayley_[e][a] == a && cayley_[a][e] == a;
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    require(found, ErrorKind::invalid_parameter, "Cayley table has no two-sided identity");

    inverse_.assign(n, n);
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            if (cayley_[a][b] == identity_ && cayley_[b][a] == identity_) {
                inverse_[a] = b;
                break;
            }
        }
        require(inverse_[a] < n, ErrorKind::invalid_parameter, "element " + std::to_string(a) + " has no inverse");
    }

    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                require(cayley_[cayley_[a][b]][c] == cayley_[a][cayley_[b][c]], ErrorKind::invalid_parameter,
                        "Cayley table is not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + ")");
}

bool FiniteGroup::is_abelian() const {
    for (Element a = 0; a < order(); ++a)
        for (Element b = a + 1; b < order(); ++b)
            if (cayley_[a][b] != cayley_[b][a]) return false;
    return true;
}

FiniteGroup cyclic_group(std::size_t n) {
    require(n >= 1, ErrorKind::invalid_parameter, "cyclic_group: N must be positive");
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return FiniteGroup(std::move(table), "Z" + std::to_string(n));
}

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
    const std::size_t n1 = g1.order();
    const std::size_t n2 = g2.order();
    std::vector<std::vector<Element>> table(n1 * n2, std::vector<Element>(n1 * n2));
    for (Element a = 0; a < n1 * n2; ++a)
        for (Element b = 0; b < n1 * n2; ++b)
            table[a][b] = g1.mul(a / n2, b / n2) * n2 + g2.mul(a % n2, b % n2);
    return FiniteGroup(std::move(table), g1.label() + "x" + g2.label());
}

FiniteGroup group_from_label(const std::string& label) {
    std::vector<std::size_t> factors;
    std::stringstream ss(label);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        require(part.size() >= 2 && (part[0] == 'Z' || part[0] == 'z'), ErrorKind::invalid_parameter,
                "unrecognized group label '" + label + "'");
        std::size_t pos = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(part.substr(1), &pos);
        } catch (const std::exception&) {
            fail(ErrorKind::invalid_parameter, "unrecognized group label '" + label + "'");
        }
        require(pos == part.size() - 1 && value >= 1, ErrorKind::invalid_parameter,
                "unrecognized group label '" + label + "'");
        factors.push_back(value);
    }
    require(!factors.empty(), ErrorKind::invalid_parameter, "empty group label");
    FiniteGroup g = cyclic_group(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, cyclic_group(factors[i]));
    return g;
}

Multiplier::Multiplier(FiniteGroup group, Table table) : group_(std::move(group)), table_(std::move(table)) {
    const std::size_t n = group_.order();
    require(table_.size() == n, ErrorKind::invalid_parameter, "multiplier table shape does not match group order");
    for (const auto& row : table_)
        require(row.size() == n, ErrorKind::invalid_parameter, "multiplier table shape does not match group order");
}

Multiplier trivial_multiplier(const FiniteGroup& g) {
    return Multiplier(g, Multiplier::Table(g.order(), std::vector<cplx>(g.order(), cplx{1.0, 0.0})));
}

Multiplier heisenberg_multiplier(std::size_t n) {
    require(n >= 1, ErrorKind::invalid_parameter, "heisenberg_multiplier: N must be positive");
    const FiniteGroup g = direct_product(cyclic_group(n), cyclic_group(n));
    Multiplier::Table t(g.order(), std::vector<cplx>(g.order()));
    for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b) {
            const std::size_t nn = a % n;   // translation index of the left factor
            const std::size_t mm = b / n;   // modulation index of the right factor
            t[a][b] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((nn * mm) % n) / n);
        }
    return Multiplier(g, std::move(t));
}

Multiplier conjugate_multiplier(const Multiplier& mu) {
    Multiplier::Table t = mu.table();
    for (auto& row : t)
        for (auto& v : row) v = std::conj(v);
    return Multiplier(mu.group(), std::move(t));
}

MultiplierReport validate_multiplier(const Multiplier& mu, double eps) {
    const FiniteGroup& g = mu.group();
    const std::size_t n = g.order();
    require(mu.table().size() == n, ErrorKind::invalid_parameter, "multiplier shape mismatch");
    MultiplierReport r;
    auto note = [&r](const char* what, std::vector<Element> w) {
        if (r.failure.empty()) {
            r.failure = what;
            r.witness = std::move(w);
        }
    };

    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            const double err = std::abs(std::abs(mu(a, b)) - 1.0);
            r.max_unit_error = std::max(r.max_unit_error, err);
            if (err > eps && r.unit_modulus) {
                r.unit_modulus = false;
                note("unit-modulus", {a, b});
            }
        }

    const Element e = g.identity();
    for (Element a = 0; a < n; ++a) {
        const double err = std::max(std::abs(mu(a, e) - 1.0), std::abs(mu(e, a) - 1.0));
        r.max_normalization_error = std::max(r.max_normalization_error, err);
        if (err > eps && r.normalized) {
            r.normalized = false;
            note("normalization", {a, e});
        }
    }

    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c) {
                const cplx lhs = mu(a, g.mul(b, c)) * mu(b, c);
                const cplx rhs = mu(g.mul(a, b), c) * mu(a, b);
                const double err = std::abs(lhs - rhs);
                r.max_cocycle_error = std::max(r.max_cocycle_error, err);
                if (err > eps && r.cocycle) {
                    r.cocycle = false;
                    note("cocycle", {a, b, c});
                }
            }

    for (Element a = 0; a < n; ++a) {
        const double err = std::abs(mu(a, g.inv(a)) - mu(g.inv(a), a));
        r.max_inverse_symmetry_error = std::max(r.max_inverse_symmetry_error, err);
        if (err > eps && r.inverse_symmetry) {
            r.inverse_symmetry = false;
            note("inverse-symmetry", {a, g.inv(a)});
        }
    }

    r.pass = r.unit_modulus && r.cocycle && r.normalized;
    // A valid cocycle forces mu(g, g^-1) = mu(g^-1, g); if it does not hold
    // here the checks above are broken, so a failure is reported.
    if (r.pass && !r.inverse_symmetry) r.pass = false;
    return r;
}

Multiplier multiplier_from_json(const FiniteGroup& g, const nlohmann::json& j) {
    require(j.is_array() && j.size() == g.order(), ErrorKind::invalid_parameter,
            "multiplier table shape does not match group order");
    Multiplier::Table t(g.order(), std::vector<cplx>(g.order()));
    for (std::size_t a = 0; a < g.order(); ++a) {
        const auto& row = j[a];
        require(row.is_array() && row.size() == g.order(), ErrorKind::invalid_parameter,
                "multiplier table shape does not match group order");
        for (std::size_t b = 0; b < g.order(); ++b) {
            const auto& e = row[b];
            require(e.is_array() && e.size() == 2, ErrorKind::invalid_parameter, "multiplier entry must be [re, im]");
            t[a][b] = {e[0].get<double>(), e[1].get<double>()};
        }
    }
    return Multiplier(g, std::move(t));
}

nlohmann::json multiplier_to_json(const Multiplier& mu) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : mu.table()) {
        nlohmann::json r = nlohmann::json::array();
        for (const cplx& v : row) r.push_back({v.real(), v.imag()});
        out.push_back(std::move(r));
    }
    return out;
}

FiniteGroup group_from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("cayley"), ErrorKind::invalid_parameter, "group JSON needs a cayley table");
    std::vector<std::vector<Element>> table;
    try {
        table = j.at("cayley").get<std::vector<std::vector<Element>>>();
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorKind::invalid_parameter, std::string("malformed cayley table: ") + ex.what());
    }
    if (j.contains("order"))
        require(j.at("order").get<std::size_t>() == table.size(), ErrorKind::invalid_parameter,
                "group JSON order does not match the Cayley table");
    return FiniteGroup(std::move(table), j.value("label", std::string("G")));
}

nlohmann::json group_to_json(const FiniteGroup& g) {
    return {{"order", g.order()}, {"cayley", g.cayley()}, {"label", g.label()}};
}

nlohmann::json to_json(const MultiplierReport& r) {
    nlohmann::json j = {
        {"pass", r.pass},
        {"unit_modulus", r.unit_modulus},
        {"cocycle", r.cocycle},
        {"normalized", r.normalized},
        {"inverse_symmetry", r.inverse_symmetry},
        {"max_unit_error", r.max_unit_error},
        {"max_cocycle_error", r.max_cocycle_error},
        {"max_normalization_error", r.max_normalization_error},
        {"max_inverse_symmetry_error", r.max_inverse_symmetry_error},
    };
    if (!r.failure.empty()) j["failure"] = r.failure;
    if (r.witness) j["witness"] = *r.witness;
    return j;
}

}  // namespace dualrep
