#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dalg/bigrat.hpp"

namespace dalg {

using Exponents = std::vector<std::uint32_t>;

inline unsigned total_degree(const Exponents& e) {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
}

/// Graded lexicographic order: total degree first, then lex with the
/// first listed variable most significant.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return a.size() < b.size();
    }
};

/// Multivariate polynomial over the rationals with a fixed, ordered
/// variable list. No zero coefficients are stored.
class Poly {
  public:
    using TermMap = std::map<Exponents, BigRat, GradedLexLess>;

    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly zero(std::vector<std::string> vars) { return Poly(std::move(vars)); }

    static Poly constant(const BigRat& c, std::vector<std::string> vars) {
        Poly p(std::move(vars));
        if (!c.is_zero()) p.terms_[Exponents(p.vars_.size(), 0)] = c;
        return p;
    }

    static Poly one(std::vector<std::string> vars) { return constant(BigRat(1), std::move(vars)); }

    static Poly variable(const std::string& name, std::vector<std::string> vars) {
        Poly p(std::move(vars));
        auto it = std::find(p.vars_.begin(), p.vars_.end(), name);
        if (it == p.vars_.end()) throw std::invalid_argument("Poly: unknown variable " + name);
        Exponents e(p.vars_.size(), 0);
        e[static_cast<std::size_t>(it - p.vars_.begin())] = 1;
        p.terms_[e] = BigRat(1);
        return p;
    }

    static Poly monomial(const BigRat& c, const Exponents& e, std::vector<std::string> vars) {
        Poly p(std::move(vars));
        if (e.size() != p.vars_.size()) throw std::invalid_argument("Poly: exponent arity mismatch");
        if (!c.is_zero()) p.terms_[e] = c;
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
    }

    BigRat constant_value() const {
        if (terms_.empty()) return BigRat(0);
        if (!is_constant()) throw std::domain_error("Poly: not a constant");
        return terms_.begin()->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        if (terms_.empty()) return -1;
        return static_cast<int>(total_degree(terms_.rbegin()->first));
    }

    int degree_in(const std::string& var) const {
        std::size_t i = var_index(var);
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
        return d;
    }

    /// Variables that actually occur.
    std::set<std::string> support_vars() const {
        std::set<std::string> s;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) s.insert(vars_[i]);
        return s;
    }

    const Exponents& leading_monomial() const {
        if (terms_.empty()) throw std::domain_error("Poly: leading term of zero");
        return terms_.rbegin()->first;
    }

    const BigRat& leading_coeff() const {
        if (terms_.empty()) throw std::domain_error("Poly: leading term of zero");
        return terms_.rbegin()->second;
    }

    BigRat coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigRat(0) : it->second;
    }

    void add_term(const Exponents& e, const BigRat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        auto [x, y] = unify(a, b);
        Poly r(x.vars_);
        r.terms_ = x.terms_;
        for (const auto& [e, c] : y.terms_) r.add_term(e, c);
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        auto [x, y] = unify(a, b);
        Poly r(x.vars_);
        for (const auto& [ea, ca] : x.terms_)
            for (const auto& [eb, cb] : y.terms_) {
                Exponents e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend Poly operator*(const Poly& a, const BigRat& s) {
        Poly r(a.vars_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = c * s;
        return r;
    }
    friend Poly operator*(const BigRat& s, const Poly& a) { return a * s; }

    Poly pow(unsigned e) const {
        Poly r = one(vars_), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        auto [x, y] = unify(a, b);
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Deterministic order for containers: by variable list, then terms
    /// compared under graded lex from the top.
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.vars_ != b.vars_) return a.vars_ < b.vars_;
        auto ia = a.terms_.rbegin(), ib = b.terms_.rbegin();
        GradedLexLess lt;
        for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
            if (lt(ia->first, ib->first)) return true;
            if (lt(ib->first, ia->first)) return false;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return ia == a.terms_.rend() && ib != b.terms_.rend();
    }

    Poly derivative(const std::string& var) const {
        std::size_t i = var_index(var);
        Poly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d(e);
            d[i] -= 1;
            r.add_term(d, c * BigRat(static_cast<long>(e[i])));
        }
        return r;
    }

    BigRat eval(const std::map<std::string, BigRat>& point) const {
        BigRat acc(0);
        for (const auto& [e, c] : terms_) {
            BigRat t = c;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                auto it = point.find(vars_[i]);
                if (it == point.end()) throw std::invalid_argument("Poly: eval missing " + vars_[i]);
                t *= it->second.pow(e[i]);
            }
            acc += t;
        }
        return acc;
    }

    /// Substitutes a rational value for one variable; stays in the same ring.
    Poly eval_partial(const std::string& var, const BigRat& value) const {
        std::size_t i = var_index(var);
        Poly r(vars_);
        for (const auto& [e, c] : terms_) {
            Exponents d(e);
            d[i] = 0;
            r.add_term(d, c * value.pow(e[i]));
        }
        return r;
    }

    /// Re-embeds over a superset variable list.
    Poly embed(const std::vector<std::string>& new_vars) const {
        std::vector<std::size_t> where(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
            if (it == new_vars.end())
                throw std::invalid_argument("Poly: embed drops variable " + vars_[i]);
            where[i] = static_cast<std::size_t>(it - new_vars.begin());
        }
        Poly r(new_vars);
        for (const auto& [e, c] : terms_) {
            Exponents d(new_vars.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) d[where[i]] += e[i];
            r.terms_[d] = c;
        }
        return r;
    }

    /// Embeds both operands over the sorted union of their variables.
    static std::pair<Poly, Poly> unify(const Poly& a, const Poly& b) {
        if (a.vars_ == b.vars_) return {a, b};
        std::set<std::string> u(a.vars_.begin(), a.vars_.end());
        u.insert(b.vars_.begin(), b.vars_.end());
        std::vector<std::string> vars(u.begin(), u.end());
        return {a.embed(vars), b.embed(vars)};
    }

    std::size_t var_index(const std::string& var) const {
        auto it = std::find(vars_.begin(), vars_.end(), var);
        if (it == vars_.end()) throw std::invalid_argument("Poly: unknown variable " + var);
        return static_cast<std::size_t>(it - vars_.begin());
    }

    bool is_univariate_in(const std::string& var) const {
        auto s = support_vars();
        if (s.empty()) return true;
        return s.size() == 1 && *s.begin() == var;
    }

    /// The single variable this polynomial effectively uses, if any.
    std::optional<std::string> sole_variable() const {
        auto s = support_vars();
        if (s.size() == 1) return *s.begin();
        return std::nullopt;
    }

    /// Dense coefficient list c0..cd for an effectively univariate polynomial.
    std::vector<BigRat> dense_coeffs(const std::string& var) const {
        if (!is_univariate_in(var)) throw std::domain_error("Poly: not univariate in " + var);
        std::size_t i = var_index(var);
        std::vector<BigRat> c(static_cast<std::size_t>(std::max(0, degree_in(var)) + 1), BigRat(0));
        for (const auto& [e, v] : terms_) c[e[i]] = v;
        if (is_zero()) c.assign(1, BigRat(0));
        return c;
    }

    static Poly from_dense(const std::vector<BigRat>& c, const std::string& var,
                           std::vector<std::string> vars) {
        Poly p(std::move(vars));
        std::size_t i = p.var_index(var);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            Exponents e(p.vars_.size(), 0);
            e[i] = static_cast<std::uint32_t>(k);
            p.terms_[e] = c[k];
        }
        return p;
    }

    /// Coefficients of var^0..var^d, each a Poly in the same ring.
    std::vector<Poly> coeffs_in(const std::string& var) const {
        std::size_t i = var_index(var);
        int d = degree_in(var);
        std::vector<Poly> out(static_cast<std::size_t>(std::max(0, d) + 1), Poly(vars_));
        for (const auto& [e, c] : terms_) {
            Exponents r(e);
            std::uint32_t k = r[i];
            r[i] = 0;
            out[k].add_term(r, c);
        }
        return out;
    }

    static Poly from_coeffs_in(const std::vector<Poly>& coeffs, const std::string& var) {
        if (coeffs.empty()) throw std::invalid_argument("Poly: empty coefficient list");
        Poly acc(coeffs.front().vars());
        std::size_t i = acc.var_index(var);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            for (const auto& [e, c] : coeffs[k].terms_) {
                Exponents d(e);
                d[i] += static_cast<std::uint32_t>(k);
                acc.add_term(d, c);
            }
        return acc;
    }

    /// Scales so all coefficients are coprime integers with positive
    /// graded-lex leading coefficient.
    Poly integer_primitive() const {
        if (is_zero()) return *this;
        mpz_class l(1), g(0);
        for (const auto& [e, c] : terms_) {
            mpz_class t;
            mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
            l = t;
        }
        for (const auto& [e, c] : terms_) {
            mpz_class n = c.num() * (l / c.den());
            mpz_class t;
            mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
            g = t;
        }
        BigRat scale = BigRat(mpz_class(l)) / BigRat(mpz_class(g));
        Poly r = *this * scale;
        if (r.leading_coeff().is_negative()) r = -r;
        return r;
    }

    std::string to_string() const;

  private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Univariate division, gcd, extended gcd
// ---------------------------------------------------------------------------

/// Quotient and remainder in Q[var] (dense, field coefficients).
inline std::pair<Poly, Poly> divrem_univar(const Poly& a, const Poly& b, const std::string& var) {
    if (b.is_zero()) throw std::domain_error("divrem: division by zero polynomial");
    auto ac = a.dense_coeffs(var);
    auto bc = b.dense_coeffs(var);
    while (bc.size() > 1 && bc.back().is_zero()) bc.pop_back();
    std::vector<BigRat> q(ac.size(), BigRat(0));
    std::vector<BigRat> r = ac;
    const std::size_t db = bc.size() - 1;
    const BigRat lb = bc.back();
    while (r.size() >= bc.size() && !(r.size() == 1 && r[0].is_zero())) {
        while (r.size() > 1 && r.back().is_zero()) r.pop_back();
        if (r.size() < bc.size()) break;
        std::size_t k = r.size() - 1 - db;
        BigRat f = r.back() / lb;
        q[k] = f;
        for (std::size_t i = 0; i <= db; ++i) r[k + i] -= f * bc[i];
        r.pop_back();
    }
    return {Poly::from_dense(q, var, a.vars()), Poly::from_dense(r, var, a.vars())};
}

/// Monic gcd in Q[var].
inline Poly gcd_univar(Poly a, Poly b, const std::string& var) {
    auto monic = [&](const Poly& p) {
        if (p.is_zero()) return p;
        auto c = p.dense_coeffs(var);
        return p * c.back().inverse();
    };
    while (!b.is_zero()) {
        Poly r = divrem_univar(a, b, var).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// (g, s, t) with s*a + t*b = g, g the monic gcd.
inline std::tuple<Poly, Poly, Poly> extended_gcd_univar(const Poly& a, const Poly& b,
                                                        const std::string& var) {
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(a.vars()), s1 = Poly::zero(a.vars());
    Poly t0 = Poly::zero(a.vars()), t1 = Poly::one(a.vars());
    while (!r1.is_zero()) {
        auto [q, r] = divrem_univar(r0, r1, var);
        Poly s = s0 - q * s1, t = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s);
        t0 = std::move(t1); t1 = std::move(t);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    BigRat lc = r0.dense_coeffs(var).back();
    BigRat inv = lc.inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
}

// ---------------------------------------------------------------------------
// Exact and pseudo division, multivariate gcd
// ---------------------------------------------------------------------------

/// Exact multivariate quotient, or nullopt when b does not divide a.
inline std::optional<Poly> div_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("div_exact: division by zero");
    auto [x, y] = Poly::unify(a, b);
    Poly r = x, q(x.vars());
    const Exponents& lmb = y.leading_monomial();
    const BigRat& lcb = y.leading_coeff();
    while (!r.is_zero()) {
        const Exponents& lmr = r.leading_monomial();
        Exponents d(lmr.size());
        for (std::size_t i = 0; i < lmr.size(); ++i) {
            if (lmr[i] < lmb[i]) return std::nullopt;
            d[i] = lmr[i] - lmb[i];
        }
        BigRat c = r.leading_coeff() / lcb;
        Poly m = Poly::monomial(c, d, x.vars());
        q = q + m;
        r = r - m * y;
    }
    return q;
}

inline bool divides(const Poly& b, const Poly& a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    return div_exact(a, b).has_value();
}

namespace detail {

/// Pseudo-remainder of a by b, both viewed in var with Poly coefficients.
inline Poly pseudo_rem(const Poly& a, const Poly& b, const std::string& var) {
    int db = b.degree_in(var);
    if (db < 0) throw std::domain_error("pseudo_rem: zero divisor");
    auto bc = b.coeffs_in(var);
    Poly lb = bc.back();
    Poly r = a;
    int dr = r.degree_in(var);
    while (!r.is_zero() && dr >= db) {
        Poly lr = r.coeffs_in(var).back();
        // r <- lb*r - lr*var^(dr-db)*b
        Poly t = Poly::variable(var, r.vars()).pow(static_cast<unsigned>(dr - db));
        r = lb * r - lr * t * b;
        int nd = r.degree_in(var);
        if (nd >= dr && !r.is_zero()) throw std::logic_error("pseudo_rem: no progress");
        dr = nd;
    }
    return r;
}

Poly gcd_impl(const Poly& a, const Poly& b);

/// Content of p w.r.t. var: gcd of its Poly coefficients.
inline Poly content_in(const Poly& p, const std::string& var) {
    auto cs = p.coeffs_in(var);
    Poly g(p.vars());
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_impl(g, c);
    }
    return g;
}

inline Poly gcd_impl(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Poly::one(a.vars());

    auto sa = a.support_vars();
    auto sb = b.support_vars();
    std::set<std::string> all(sa.begin(), sa.end());
    all.insert(sb.begin(), sb.end());

    if (all.size() == 1) {
        const std::string v = *all.begin();
        return gcd_univar(a, b, v);
    }

    // Recurse on the last canonical variable present.
    const std::string var = *all.rbegin();
    Poly ca = content_in(a, var), cb = content_in(b, var);
    Poly pa = *div_exact(a, ca), pb = *div_exact(b, cb);
    Poly cg = gcd_impl(ca, cb);

    // Primitive PRS on the primitive parts.
    Poly u = pa, v = pb;
    if (u.degree_in(var) < v.degree_in(var)) std::swap(u, v);
    while (!v.is_zero()) {
        Poly r = pseudo_rem(u, v, var);
        u = std::move(v);
        if (r.is_zero()) { v = r; break; }
        Poly cr = content_in(r, var);
        v = *div_exact(r, cr);
    }
    Poly pg = *div_exact(u, content_in(u, var));
    Poly g = cg * pg;
    return g * g.leading_coeff().inverse();
}

}  // namespace detail

/// Gcd for any number of variables. Univariate results are monic; in
/// general the graded-lex leading coefficient is normalized to 1.
inline Poly gcd(const Poly& a, const Poly& b) {
    auto [x, y] = Poly::unify(a, b);
    Poly g = detail::gcd_impl(x, y);
    if (g.is_zero()) return g;
    return g * g.leading_coeff().inverse();
}

/// Spec surface: univariate monic gcd, rejecting variable mismatch.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    auto va = a.sole_variable(), vb = b.sole_variable();
    if (!a.is_constant() && !b.is_constant() && va && vb && *va != *vb)
        throw std::invalid_argument("poly_gcd: variable mismatch (" + *va + " vs " + *vb + ")");
    if ((!a.is_constant() && !va) || (!b.is_constant() && !vb))
        throw std::invalid_argument("poly_gcd: inputs must be univariate");
    return gcd(a, b);
}

// ---------------------------------------------------------------------------
// Squarefree decomposition (Yun)
// ---------------------------------------------------------------------------

struct SquarefreePart {
    Poly factor;
    unsigned multiplicity;
};

/// Yun's algorithm. Factors are monic, pairwise coprime, squarefree;
/// the product of factor^multiplicity equals the input up to a constant.
inline std::vector<SquarefreePart> squarefree_decompose(const Poly& p, const std::string& var) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_decompose: zero input");
    if (!p.is_univariate_in(var)) throw std::invalid_argument("squarefree_decompose: not univariate");
    std::vector<SquarefreePart> out;
    if (p.degree_in(var) <= 0) return out;

    Poly a = p * p.dense_coeffs(var).back().inverse();
    Poly d = a.derivative(var);
    Poly g = gcd_univar(a, d, var);
    Poly b = divrem_univar(a, g, var).first;
    Poly c = divrem_univar(d, g, var).first;
    Poly z = c - b.derivative(var);
    unsigned i = 1;
    while (!(b.degree_in(var) <= 0)) {
        Poly f = gcd_univar(b, z, var);
        if (f.degree_in(var) > 0) out.push_back({f, i});
        b = divrem_univar(b, f, var).first;
        z = divrem_univar(z, f, var).first - b.derivative(var);
        ++i;
    }
    return out;
}

/// The monic radical: product of the distinct squarefree factors.
inline Poly squarefree_part(const Poly& p, const std::string& var) {
    Poly r = Poly::one(p.vars());
    for (const auto& part : squarefree_decompose(p, var)) r = r * part.factor;
    return r;
}

// ---------------------------------------------------------------------------
// Resultant
// ---------------------------------------------------------------------------

namespace detail {

/// Bareiss fraction-free determinant over the polynomial ring.
inline Poly det_bareiss(std::vector<std::vector<Poly>> m, const std::vector<std::string>& vars) {
    const std::size_t n = m.size();
    if (n == 0) return Poly::one(vars);
    int sign = 1;
    Poly prev = Poly::one(vars);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t s = k + 1;
            while (s < n && m[s][k].is_zero()) ++s;
            if (s == n) return Poly::zero(vars);
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto q = div_exact(num, prev);
                if (!q) throw std::logic_error("det_bareiss: inexact division");
                m[i][j] = *q;
            }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace detail

/// Sylvester resultant with respect to var. Coefficients may involve
/// other variables; the result is free of var.
inline Poly resultant(const Poly& a, const Poly& b, const std::string& var) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("resultant: zero input");
    auto [x, y] = Poly::unify(a, b);
    int da = x.degree_in(var), db = y.degree_in(var);
    auto ac = x.coeffs_in(var);
    auto bc = y.coeffs_in(var);
    if (da == 0 && db == 0) return Poly::one(x.vars());
    if (da == 0) return x.pow(static_cast<unsigned>(db));
    if (db == 0) return y.pow(static_cast<unsigned>(da));

    const std::size_t n = static_cast<std::size_t>(da + db);
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly::zero(x.vars())));
    for (int r = 0; r < db; ++r)
        for (int j = 0; j <= da; ++j) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] = ac[static_cast<std::size_t>(da - j)];
    for (int r = 0; r < da; ++r)
        for (int j = 0; j <= db; ++j) m[static_cast<std::size_t>(db + r)][static_cast<std::size_t>(r + j)] = bc[static_cast<std::size_t>(db - j)];
    return detail::det_bareiss(std::move(m), x.vars());
}

// ---------------------------------------------------------------------------
// Rational roots
// ---------------------------------------------------------------------------

namespace detail {

/// Trial-division factorization; a composite cofactor above the bound is
/// kept as a single pseudo-prime entry, which enumerating code treats as
/// one more divisor candidate.
inline std::vector<std::pair<mpz_class, unsigned>> factor_trial(mpz_class n) {
    std::vector<std::pair<mpz_class, unsigned>> f;
    if (n < 0) n = -n;
    if (n <= 1) return f;
    auto push = [&](const mpz_class& p, unsigned e) { f.emplace_back(p, e); };
    unsigned e2 = 0;
    while (n % 2 == 0) { n /= 2; ++e2; }
    if (e2) push(2, e2);
    mpz_class d = 3;
    while (d * d <= n && d < 1000000) {
        unsigned e = 0;
        while (n % d == 0) { n /= d; ++e; }
        if (e) push(d, e);
        d += 2;
    }
    if (n > 1) push(n, 1);
    return f;
}

inline void all_divisors(const std::vector<std::pair<mpz_class, unsigned>>& f, std::vector<mpz_class>& out) {
    out.assign(1, mpz_class(1));
    for (const auto& [p, e] : f) {
        std::size_t sz = out.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
        if (out.size() > 100000) throw std::runtime_error("rational_roots: divisor explosion");
    }
}

}  // namespace detail

/// Rational roots with multiplicities, in increasing order.
inline std::vector<std::pair<BigRat, unsigned>> rational_roots(const Poly& p, const std::string& var) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<std::pair<BigRat, unsigned>> roots;
    auto c = p.dense_coeffs(var);
    while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    if (c.size() == 1) return roots;

    // Strip the root at zero.
    unsigned zero_mult = 0;
    while (c.size() > 1 && c.front().is_zero()) {
        c.erase(c.begin());
        ++zero_mult;
    }
    if (zero_mult) roots.emplace_back(BigRat(0), zero_mult);
    if (c.size() == 1) return roots;

    // Clear denominators to integer coefficients.
    mpz_class l(1);
    for (const auto& x : c) {
        mpz_class t;
        mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
        l = t;
    }
    std::vector<mpz_class> ic;
    ic.reserve(c.size());
    for (const auto& x : c) ic.push_back(x.num() * (l / x.den()));

    std::vector<mpz_class> ps, qs;
    detail::all_divisors(detail::factor_trial(ic.front()), ps);
    detail::all_divisors(detail::factor_trial(ic.back()), qs);

    Poly cur = Poly::from_dense(c, var, p.vars());
    std::vector<BigRat> candidates;
    for (const auto& pp : ps)
        for (const auto& qq : qs) {
            candidates.push_back(BigRat(mpq_class(pp, qq)));
            candidates.push_back(BigRat(mpq_class(-pp, qq)));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& cand : candidates) {
        if (cur.degree_in(var) <= 0) break;
        unsigned mult = 0;
        for (;;) {
            std::map<std::string, BigRat> pt{{var, cand}};
            if (!cur.eval(pt).is_zero()) break;
            Poly lin = Poly::variable(var, p.vars()) - Poly::constant(cand, p.vars());
            cur = divrem_univar(cur, lin, var).first;
            ++mult;
        }
        if (mult) roots.emplace_back(cand, mult);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// p(var + a): univariate Taylor rebase.
inline Poly shift_univar(const Poly& p, const std::string& var, const BigRat& a) {
    auto c = p.dense_coeffs(var);
    // Synthetic division by (var - (-a)) repeatedly: classic Horner rebasing.
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
        for (std::size_t i = c.size() - 1; i >= k + 1; --i) c[i - 1] += a * c[i];
    return Poly::from_dense(c, var, p.vars());
}

inline std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        BigRat a = c;
        if (first) {
            if (a.is_negative()) { os << "-"; a = -a; }
        } else {
            os << (a.is_negative() ? " - " : " + ");
            if (a.is_negative()) a = -a;
        }
        first = false;
        bool has_vars = total_degree(e) > 0;
        if (!has_vars) {
            os << a.to_string();
            continue;
        }
        bool printed = false;
        if (!a.is_one()) {
            os << a.to_string();
            printed = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
            printed = true;
        }
    }
    return os.str();
}

}  // namespace dalg
