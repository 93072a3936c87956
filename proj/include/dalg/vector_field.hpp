#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/rational_function.hpp"

namespace dalg {

/// The derivation D = sum f_i d/dx_i on Q(x_1..x_n), given by its
/// component list.
struct VectorFieldDerivation {
    std::vector<std::string> variables;
    std::vector<RationalFunction> components;

    VectorFieldDerivation(std::vector<std::string> vars, std::vector<RationalFunction> comps)
        : variables(std::move(vars)), components(std::move(comps)) {
        if (variables.size() != components.size())
            throw std::invalid_argument("VectorFieldDerivation: component count mismatch");
        for (auto& f : components) {
            auto sup = f.num().support_vars();
            auto supd = f.den().support_vars();
            sup.insert(supd.begin(), supd.end());
            for (const auto& v : sup)
                if (std::find(variables.begin(), variables.end(), v) == variables.end())
                    throw std::invalid_argument("VectorFieldDerivation: component uses undeclared " + v);
            f = f.embed(variables);
        }
    }

    std::size_t dimension() const { return variables.size(); }

    bool is_polynomial() const {
        for (const auto& f : components)
            if (!f.is_polynomial()) return false;
        return true;
    }

    std::vector<Poly> polynomial_components() const {
        std::vector<Poly> out;
        out.reserve(components.size());
        for (const auto& f : components) {
            if (!f.is_polynomial())
                throw std::invalid_argument("VectorFieldDerivation: component " + f.to_string() +
                                            " is not polynomial; clear denominators first");
            out.push_back(f.as_polynomial().embed(variables));
        }
        return out;
    }

    /// Largest component total degree (0 for the zero field).
    unsigned max_component_degree() const {
        int d = 0;
        for (const auto& f : components) d = std::max(d, f.num().degree());
        return static_cast<unsigned>(std::max(0, d));
    }
};

/// Rescales by the least common denominator so components are polynomial;
/// returns the cleared derivation and the scaling factor lambda with
/// cleared = lambda * original.
inline std::pair<VectorFieldDerivation, Poly> clear_denominators(const VectorFieldDerivation& D) {
    Poly l = Poly::one(D.variables);
    for (const auto& f : D.components) {
        Poly den = f.den().embed(D.variables);
        Poly g = gcd(l, den);
        l = *div_exact(l * den, g);
    }
    std::vector<RationalFunction> comps;
    comps.reserve(D.components.size());
    for (const auto& f : D.components) comps.push_back(f * RationalFunction(l));
    return {VectorFieldDerivation(D.variables, std::move(comps)), l};
}

/// Dz = sum f_i dz/dx_i, exact via the quotient rule.
inline RationalFunction apply_derivation(const VectorFieldDerivation& D, const RationalFunction& z) {
    auto sup = z.num().support_vars();
    auto supd = z.den().support_vars();
    sup.insert(supd.begin(), supd.end());
    for (const auto& v : sup)
        if (std::find(D.variables.begin(), D.variables.end(), v) == D.variables.end())
            throw std::invalid_argument("apply_derivation: z uses undeclared variable " + v);
    RationalFunction ze = z.embed(D.variables);
    RationalFunction acc = RationalFunction::zero(D.variables);
    for (std::size_t i = 0; i < D.variables.size(); ++i)
        acc = acc + D.components[i] * ze.derivative(D.variables[i]);
    return acc;
}

inline Poly apply_derivation(const VectorFieldDerivation& D, const Poly& p) {
    RationalFunction r = apply_derivation(D, RationalFunction(p));
    return r.as_polynomial();
}

}  // namespace dalg
