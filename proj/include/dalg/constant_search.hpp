#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/linalg.hpp"
#include "dalg/vector_field.hpp"

namespace dalg {

// ---------------------------------------------------------------------------
// Monomial coefficient spaces
// ---------------------------------------------------------------------------

namespace detail {

struct MonomialSpace {
    std::vector<std::string> vars;
    std::vector<Exponents> list;  // graded-lex ascending
    std::map<Exponents, std::size_t, GradedLexLess> index;

    static MonomialSpace up_to(const std::vector<std::string>& vars, unsigned deg) {
        MonomialSpace s;
        s.vars = vars;
        Exponents e(vars.size(), 0);
        rec(s.list, e, 0, deg);
        std::sort(s.list.begin(), s.list.end(), GradedLexLess{});
        for (std::size_t i = 0; i < s.list.size(); ++i) s.index[s.list[i]] = i;
        return s;
    }

    std::vector<BigRat> coords(const Poly& p) const {
        std::vector<BigRat> v(list.size(), BigRat(0));
        Poly q = p.embed(vars);
        for (const auto& [e, c] : q.terms()) {
            auto it = index.find(e);
            if (it == index.end())
                throw std::domain_error("MonomialSpace: polynomial exceeds the space");
            v[it->second] = c;
        }
        return v;
    }

    Poly poly(const std::vector<BigRat>& v) const {
        Poly p(vars);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) p.add_term(list[i], v[i]);
        return p;
    }

  private:
    static void rec(std::vector<Exponents>& out, Exponents& e, std::size_t pos, unsigned left) {
        if (pos == e.size()) {
            out.push_back(e);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[pos] = k;
            rec(out, e, pos + 1, left - k);
        }
        e[pos] = 0;
    }
};

/// Matrix of P |-> D(P) - g*P from the domain space into the image space.
inline Matrix<BigRat> twisted_derivation_matrix(const VectorFieldDerivation& D, const Poly& g,
                                                const MonomialSpace& dom, const MonomialSpace& img) {
    Matrix<BigRat> M(img.list.size(), dom.list.size(), BigRat(0));
    for (std::size_t j = 0; j < dom.list.size(); ++j) {
        Poly m(dom.vars);
        m.add_term(dom.list[j], BigRat(1));
        Poly val = apply_derivation(D, m) - g * m;
        auto col = img.coords(val);
        for (std::size_t i = 0; i < col.size(); ++i) M.at(i, j) = col[i];
    }
    return M;
}

inline Matrix<BigRat> inclusion_matrix(const MonomialSpace& dom, const MonomialSpace& img) {
    Matrix<BigRat> E(img.list.size(), dom.list.size(), BigRat(0));
    for (std::size_t j = 0; j < dom.list.size(); ++j) E.at(img.index.at(dom.list[j]), j) = BigRat(1);
    return E;
}

/// Determinant (in the pencil variable) of one maximal square submatrix of
/// M - c E selected by fraction-free elimination with the given row
/// preference. Every rank-dropping c is a root.
inline Poly pencil_minor(const Matrix<BigRat>& M, const Matrix<BigRat>& E, bool reverse_rows) {
    const std::vector<std::string> cv{"c"};
    const std::size_t R = M.rows, C = M.cols;
    std::vector<std::vector<Poly>> a(R, std::vector<Poly>(C, Poly::zero(cv)));
    Poly c = Poly::variable("c", cv);
    for (std::size_t i = 0; i < R; ++i) {
        std::size_t row = reverse_rows ? R - 1 - i : i;
        for (std::size_t j = 0; j < C; ++j)
            a[i][j] = Poly::constant(M.at(row, j), cv) - c * Poly::constant(E.at(row, j), cv);
    }
    Poly prev = Poly::one(cv);
    for (std::size_t k = 0; k < C; ++k) {
        std::size_t p = k;
        while (p < R && a[p][k].is_zero()) ++p;
        if (p == R) return Poly::zero(cv);  // generic rank drop; caller treats as no information
        std::swap(a[k], a[p]);
        for (std::size_t i = k + 1; i < R; ++i)
            for (std::size_t j = k + 1; j < C; ++j) {
                Poly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                auto q = div_exact(num, prev);
                if (!q) throw std::logic_error("pencil_minor: inexact Bareiss division");
                a[i][j] = *q;
            }
        prev = a[k][k];
    }
    return prev;
}

/// Rational candidates c for which M - cE loses full column rank.
inline std::vector<BigRat> pencil_candidates(const Matrix<BigRat>& M, const Matrix<BigRat>& E) {
    Poly d1 = pencil_minor(M, E, false);
    Poly d2 = pencil_minor(M, E, true);
    Poly g;
    if (d1.is_zero() || d2.is_zero()) {
        g = d1.is_zero() ? d2 : d1;
        if (g.is_zero()) return {};
    } else {
        g = gcd_univar(d1, d2, "c");
    }
    if (g.degree() <= 0) return {};
    std::vector<BigRat> out;
    for (const auto& [r, m] : rational_roots(g, "c")) out.push_back(r);
    return out;
}

/// Nonconstant kernel polynomials of M - cE, integer-primitive, in graded order.
inline std::vector<Poly> pencil_kernel_polys(const Matrix<BigRat>& M, const Matrix<BigRat>& E,
                                             const BigRat& c, const MonomialSpace& dom) {
    Matrix<BigRat> A(M.rows, M.cols, BigRat(0));
    for (std::size_t i = 0; i < M.rows; ++i)
        for (std::size_t j = 0; j < M.cols; ++j) A.at(i, j) = M.at(i, j) - c * E.at(i, j);
    auto basis = nullspace(A, BigRat(0));
    std::vector<Poly> out;
    for (const auto& v : basis) {
        Poly p = dom.poly(v);
        if (p.is_zero() || p.is_constant()) continue;
        out.push_back(p.integer_primitive());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Darboux polynomials
// ---------------------------------------------------------------------------

/// Q with D(Q) = cofactor * Q exactly; Q non-constant.
struct DarbouxPair {
    Poly polynomial;
    Poly cofactor;
};

/// Degree-bounded Darboux search:
///  - one variable: complete, via factor extraction from the component
///    (every irreducible Darboux polynomial of f d/dx divides f);
///  - several variables: constant-cofactor eigenpolynomials at all degrees
///    <= deg_max plus all single-monomial candidates. Every returned pair
///    is verified exactly.
inline std::vector<DarbouxPair> find_darboux(const VectorFieldDerivation& D, unsigned deg_max) {
    auto comps = D.polynomial_components();
    const auto& vars = D.variables;
    std::vector<DarbouxPair> out;
    auto push_verified = [&](const Poly& q) {
        if (q.is_constant() || q.degree() > static_cast<int>(deg_max)) return;
        Poly qn = q.integer_primitive();
        for (const auto& p : out)
            if (p.polynomial == qn) return;
        Poly dq = apply_derivation(D, qn);
        auto cof = div_exact(dq, qn);
        if (!cof) return;
        out.push_back({qn, *cof});
    };

    if (D.dimension() == 1) {
        const std::string& x = vars[0];
        const Poly& f = comps[0];
        if (f.is_zero() || f.is_constant()) return out;
        for (const auto& part : squarefree_decompose(f, x)) {
            Poly rest = part.factor;
            for (const auto& [root, mult] : rational_roots(part.factor, x)) {
                Poly lin = Poly::variable(x, vars) - Poly::constant(root, vars);
                push_verified(lin);
                for (unsigned k = 0; k < mult; ++k) rest = divrem_univar(rest, lin, x).first;
            }
            if (rest.degree_in(x) >= 1) push_verified(rest);
        }
        std::sort(out.begin(), out.end(),
                  [](const DarbouxPair& a, const DarbouxPair& b) { return a.polynomial < b.polynomial; });
        return out;
    }

    unsigned e = D.max_component_degree();
    unsigned img_deg = deg_max + (e > 0 ? e - 1 : 0);
    auto dom = detail::MonomialSpace::up_to(vars, deg_max);
    auto img = detail::MonomialSpace::up_to(vars, std::max(img_deg, deg_max));
    auto M = detail::twisted_derivation_matrix(D, Poly::zero(vars), dom, img);
    auto E = detail::inclusion_matrix(dom, img);

    std::vector<BigRat> lambdas = detail::pencil_candidates(M, E);
    lambdas.push_back(BigRat(0));
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    for (const auto& l : lambdas)
        for (const auto& q : detail::pencil_kernel_polys(M, E, l, dom)) push_verified(q);

    // Single monomials with arbitrary cofactor degree.
    for (const auto& mexp : dom.list) {
        if (total_degree(mexp) == 0) continue;
        Poly m(vars);
        m.add_term(mexp, BigRat(1));
        push_verified(m);
    }

    std::sort(out.begin(), out.end(),
              [](const DarbouxPair& a, const DarbouxPair& b) { return a.polynomial < b.polynomial; });
    return out;
}

// ---------------------------------------------------------------------------
// New-constant searches
// ---------------------------------------------------------------------------

enum class WitnessKind { FirstIntegral, Additive, Eigen };

inline std::string to_string(WitnessKind k) {
    switch (k) {
        case WitnessKind::FirstIntegral: return "FirstIntegral";
        case WitnessKind::Additive: return "Additive";
        default: return "Eigen";
    }
}

/// z not in Q with Dz = 0, Dz = 1, or Dz = cz; verified exactly on return.
struct ConstantWitness {
    WitnessKind kind;
    RationalFunction z;
    std::optional<BigRat> c;
};

namespace detail {

inline void verify_witness(const VectorFieldDerivation& D, const ConstantWitness& w) {
    if (w.z.is_constant()) throw std::logic_error("constant witness is itself a constant");
    RationalFunction dz = apply_derivation(D, w.z);
    switch (w.kind) {
        case WitnessKind::FirstIntegral:
            if (!dz.is_zero()) throw std::logic_error("first-integral witness failed Dz = 0");
            break;
        case WitnessKind::Additive:
            if (dz != RationalFunction::one(D.variables))
                throw std::logic_error("additive witness failed Dz = 1");
            break;
        case WitnessKind::Eigen:
            if (!w.c || w.c->is_zero() || dz != w.z * *w.c)
                throw std::logic_error("eigen witness failed Dz = cz");
            break;
    }
}

}  // namespace detail

/// Degree-bounded polynomial witness search: Dz = 0 and Dz = 1 as exact
/// linear systems, Dz = cz via rational eigenvalues of the rectangular
/// pencil; the graded-first witness is returned.
inline std::optional<ConstantWitness> poly_constant_search(const VectorFieldDerivation& D,
                                                           unsigned deg_max) {
    D.polynomial_components();  // reject non-polynomial components up front
    const auto& vars = D.variables;
    unsigned e = D.max_component_degree();
    unsigned img_deg = deg_max + (e > 0 ? e - 1 : 0);
    auto dom = detail::MonomialSpace::up_to(vars, deg_max);
    auto img = detail::MonomialSpace::up_to(vars, std::max(img_deg, deg_max));
    auto M = detail::twisted_derivation_matrix(D, Poly::zero(vars), dom, img);
    auto E = detail::inclusion_matrix(dom, img);

    // Dz = 0: nonconstant kernel element.
    for (const auto& p : detail::pencil_kernel_polys(M, E, BigRat(0), dom)) {
        ConstantWitness w{WitnessKind::FirstIntegral, RationalFunction(p), std::nullopt};
        detail::verify_witness(D, w);
        return w;
    }

    // Dz = 1.
    {
        auto rhs = img.coords(Poly::one(vars));
        auto sol = solve_linear(M, rhs, BigRat(0));
        if (sol) {
            Poly p = dom.poly(*sol);
            ConstantWitness w{WitnessKind::Additive, RationalFunction(p), std::nullopt};
            detail::verify_witness(D, w);
            return w;
        }
    }

    // Dz = cz for rational nonzero c.
    for (const auto& c : detail::pencil_candidates(M, E)) {
        if (c.is_zero()) continue;
        auto polys = detail::pencil_kernel_polys(M, E, c, dom);
        if (polys.empty()) continue;
        ConstantWitness w{WitnessKind::Eigen, RationalFunction(polys.front()), c};
        detail::verify_witness(D, w);
        return w;
    }
    return std::nullopt;
}

/// Rational witnesses z = P/Q^d with denominators built from Darboux
/// polynomials (per-factor powers <= pow_max) and deg P <= deg_max.
inline std::optional<ConstantWitness> rational_constant_search(const VectorFieldDerivation& D,
                                                               unsigned deg_max, unsigned pow_max) {
    D.polynomial_components();  // reject non-polynomial components up front
    const auto& vars = D.variables;
    auto pairs = find_darboux(D, deg_max);
    if (pairs.size() > 8) pairs.resize(8);  // graded order keeps the simplest bases
    if (pairs.empty()) return std::nullopt;

    // Candidate denominators: exponent tuples, graded by the denominator degree.
    struct Cand {
        Poly q;
        Poly cof;
        std::vector<unsigned> exps;
    };
    std::vector<Cand> cands;
    std::vector<unsigned> exps(pairs.size(), 0);
    const std::size_t limit = 20000;
    struct Gen {
        static void rec(std::vector<Cand>& out, std::vector<unsigned>& e, std::size_t pos,
                        const std::vector<DarbouxPair>& pairs, const std::vector<std::string>& vars,
                        unsigned pow_max, std::size_t limit) {
            if (out.size() >= limit) return;
            if (pos == e.size()) {
                bool all0 = true;
                for (auto x : e) all0 &= (x == 0);
                if (all0) return;
                Poly q = Poly::one(vars), cof = Poly::zero(vars);
                for (std::size_t i = 0; i < e.size(); ++i) {
                    if (e[i] == 0) continue;
                    q = q * pairs[i].polynomial.pow(e[i]);
                    cof = cof + BigRat(static_cast<long>(e[i])) * pairs[i].cofactor;
                }
                out.push_back({q, cof, e});
                return;
            }
            for (unsigned k = 0; k <= pow_max; ++k) {
                e[pos] = k;
                rec(out, e, pos + 1, pairs, vars, pow_max, limit);
            }
            e[pos] = 0;
        }
    };
    Gen::rec(cands, exps, 0, pairs, vars, pow_max, limit);
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.q.degree() != b.q.degree()) return a.q.degree() < b.q.degree();
        return a.exps < b.exps;
    });

    unsigned e_deg = D.max_component_degree();
    auto dom = detail::MonomialSpace::up_to(vars, deg_max);

    for (const auto& cand : cands) {
        unsigned img_deg = deg_max + std::max({e_deg > 0 ? e_deg - 1 : 0,
                                               static_cast<unsigned>(std::max(0, cand.cof.degree())),
                                               0u});
        img_deg = std::max(img_deg, static_cast<unsigned>(std::max(0, cand.q.degree())));
        auto img = detail::MonomialSpace::up_to(vars, img_deg);
        auto M = detail::twisted_derivation_matrix(D, cand.cof, dom, img);
        auto E = detail::inclusion_matrix(dom, img);

        // Dz = 0 with z = P/Q: D(P) - cof*P = 0, z nonconstant. A zero
        // cofactor would make P and Q both first integrals, so z adds
        // nothing beyond the polynomial search; skip that branch.
        if (!cand.cof.is_zero()) {
            for (const auto& p : detail::pencil_kernel_polys(M, E, BigRat(0), dom)) {
                RationalFunction z(p, cand.q);
                if (z.is_constant() || z.is_polynomial()) continue;
                ConstantWitness w{WitnessKind::FirstIntegral, z, std::nullopt};
                detail::verify_witness(D, w);
                return w;
            }
        }

        // Dz = 1: D(P) - cof*P = Q.
        {
            auto sol = solve_linear(M, img.coords(cand.q), BigRat(0));
            if (sol) {
                Poly p = dom.poly(*sol);
                RationalFunction z(p, cand.q);
                if (!z.is_polynomial()) {
                    ConstantWitness w{WitnessKind::Additive, z, std::nullopt};
                    detail::verify_witness(D, w);
                    return w;
                }
            }
        }

        // Dz = cz: D(P) - cof*P = cP.
        for (const auto& c : detail::pencil_candidates(M, E)) {
            if (c.is_zero()) continue;
            for (const auto& p : detail::pencil_kernel_polys(M, E, c, dom)) {
                RationalFunction z(p, cand.q);
                if (z.is_constant() || z.is_polynomial()) continue;
                ConstantWitness w{WitnessKind::Eigen, z, c};
                detail::verify_witness(D, w);
                return w;
            }
        }
    }
    return std::nullopt;
}

/// Bundled verdict for the three alternatives Dz in {0, 1, cz}.
struct EjVerdict {
    bool found = false;
    std::optional<ConstantWitness> witness;
    unsigned deg_max = 0, pow_max = 0;
};

/// Yes(witness) when a bounded search succeeds; otherwise a bounded
/// negative, which is explicitly not a nonexistence proof.
inline EjVerdict ej_classify(const VectorFieldDerivation& D, unsigned deg_max, unsigned pow_max) {
    EjVerdict v;
    v.deg_max = deg_max;
    v.pow_max = pow_max;
    if (auto w = poly_constant_search(D, deg_max)) {
        v.found = true;
        v.witness = std::move(w);
        return v;
    }
    if (auto w = rational_constant_search(D, deg_max, pow_max)) {
        v.found = true;
        v.witness = std::move(w);
        return v;
    }
    return v;
}

}  // namespace dalg
