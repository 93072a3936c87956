#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/rational_function.hpp"

namespace dalg {

/// f = poly_part + sum numerator_i / base_i^power_i, exact, with
/// deg(numerator_i) < deg(base_i). Bases are monic and pairwise coprime,
/// refined to squarefree granularity plus rational-root splitting.
struct PartialFractions {
    struct Term {
        Poly numerator;
        Poly base;
        unsigned power;
    };
    Poly poly_part;
    std::vector<Term> terms;

    RationalFunction recombine() const {
        RationalFunction acc{poly_part};
        for (const auto& t : terms)
            acc = acc + RationalFunction(t.numerator, t.base.pow(t.power));
        return acc;
    }
};

namespace detail {

/// base-adic expansion: numer = sum c_k base^k, emitting c_k / base^(mult-k).
inline void pf_emit(PartialFractions& out, const Poly& numer, const Poly& base, unsigned mult,
                    const std::string& var) {
    Poly rest = numer;
    for (unsigned k = 0; k < mult && !rest.is_zero(); ++k) {
        auto [q, r] = divrem_univar(rest, base, var);
        if (!r.is_zero()) out.terms.push_back({r, base, mult - k});
        rest = q;
    }
    if (!rest.is_zero()) throw std::logic_error("partial_fractions: expansion overflow");
}

}  // namespace detail

inline PartialFractions partial_fractions(const RationalFunction& f, const std::string& var) {
    PartialFractions out;
    auto [poly, proper] = f.split_proper(var);
    out.poly_part = poly;
    if (proper.is_zero()) return out;

    // Pairwise coprime monic factors with multiplicities.
    std::vector<std::pair<Poly, unsigned>> factors;
    for (const auto& part : squarefree_decompose(proper.den(), var)) {
        Poly rest = part.factor;
        for (const auto& [root, mult] : rational_roots(part.factor, var)) {
            Poly lin = Poly::variable(var, rest.vars()) - Poly::constant(root, rest.vars());
            factors.emplace_back(lin, part.multiplicity);
            for (unsigned k = 0; k < mult; ++k) rest = divrem_univar(rest, lin, var).first;
        }
        if (rest.degree_in(var) >= 1) factors.emplace_back(rest, part.multiplicity);
    }

    // Peel one coprime block base^mult at a time.
    Poly num = proper.num();
    Poly den = proper.den() * proper.den().dense_coeffs(var).back().inverse();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& [base, mult] = factors[i];
        Poly block = base.pow(mult);
        if (i + 1 == factors.size()) {
            Poly r = divrem_univar(num, block, var).second;
            detail::pf_emit(out, r, base, mult, var);
            break;
        }
        Poly rest = *div_exact(den, block);
        auto [g, s, t] = extended_gcd_univar(block, rest, var);
        if (g.degree() != 0) throw std::logic_error("partial_fractions: blocks not coprime");
        // num/(block*rest) = (num*t mod block)/block + carried/rest
        Poly r = divrem_univar(num * t, block, var).second;
        detail::pf_emit(out, r, base, mult, var);
        auto q = div_exact(num - r * rest, block);
        if (!q) throw std::logic_error("partial_fractions: inexact peel");
        num = *q;
        den = rest;
    }

    std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
        if (a.base.degree() != b.base.degree()) return a.base.degree() < b.base.degree();
        if (!(a.base == b.base)) return a.base < b.base;
        return a.power < b.power;
    });
    return out;
}

}  // namespace dalg
