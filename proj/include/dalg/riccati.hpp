#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/operator.hpp"

namespace dalg {

/// Differential polynomial in w, w', w'', ... with rational-function
/// coefficients; the monomial key holds one exponent per derivative order.
class RiccatiPolynomial {
  public:
    using TermMap = std::map<Exponents, RationalFunction, GradedLexLess>;

    RiccatiPolynomial() = default;
    explicit RiccatiPolynomial(std::size_t slots, std::string var = "t")
        : slots_(slots), var_(std::move(var)) {}

    std::size_t slots() const { return slots_; }
    const std::string& var() const { return var_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Largest derivative order that actually occurs.
    int max_derivative_order() const {
        int k = -1;
        for (const auto& [e, c] : terms_)
            for (std::size_t j = 0; j < e.size(); ++j)
                if (e[j] > 0) k = std::max(k, static_cast<int>(j));
        return k;
    }

    void add_term(const Exponents& e, const RationalFunction& c) {
        if (e.size() != slots_) throw std::invalid_argument("RiccatiPolynomial: arity mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend RiccatiPolynomial operator+(const RiccatiPolynomial& a, const RiccatiPolynomial& b) {
        RiccatiPolynomial r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend RiccatiPolynomial operator*(const RiccatiPolynomial& a, const RationalFunction& s) {
        RiccatiPolynomial r(a.slots_, a.var_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, c * s);
        return r;
    }

    /// Multiplies by the indeterminate w.
    RiccatiPolynomial times_w() const {
        RiccatiPolynomial r(slots_, var_);
        for (const auto& [e, c] : terms_) {
            Exponents up(e);
            up[0] += 1;
            r.add_term(up, c);
        }
        return r;
    }

    /// Total derivative: coefficients via d/dvar, monomials via the
    /// product rule w^(j) -> w^(j+1).
    RiccatiPolynomial derivative() const {
        RiccatiPolynomial r(slots_, var_);
        for (const auto& [e, c] : terms_) {
            r.add_term(e, c.derivative(var_));
            for (std::size_t j = 0; j < e.size(); ++j) {
                if (e[j] == 0) continue;
                if (j + 1 >= slots_)
                    throw std::logic_error("RiccatiPolynomial: derivative overflows slots");
                Exponents up(e);
                up[j] -= 1;
                up[j + 1] += 1;
                r.add_term(up, c * BigRat(static_cast<long>(e[j])));
            }
        }
        return r;
    }

    friend bool operator==(const RiccatiPolynomial& a, const RiccatiPolynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib) {
            Exponents ea = ia->first, eb = ib->first;
            std::size_t m = std::max(ea.size(), eb.size());
            ea.resize(m, 0);
            eb.resize(m, 0);
            if (ea != eb || ia->second != ib->second) return false;
        }
        return true;
    }
    friend bool operator!=(const RiccatiPolynomial& a, const RiccatiPolynomial& b) { return !(a == b); }

    /// Substitution weight: each w^(j) factor counts j+1.
    static unsigned weight(const Exponents& e) {
        unsigned s = 0;
        for (std::size_t j = 0; j < e.size(); ++j) s += e[j] * static_cast<unsigned>(j + 1);
        return s;
    }

    /// Evaluates at a series value of w.
    TruncatedSeries eval(const TruncatedSeries& w) const {
        int k = max_derivative_order();
        if (k >= 0 && w.truncation() <= static_cast<std::size_t>(k))
            throw std::domain_error("riccati_eval: insufficient truncation");
        std::vector<TruncatedSeries> dw;  // w, w', ..., w^(k)
        dw.push_back(w);
        for (int j = 1; j <= k; ++j) dw.push_back(dw.back().derivative());
        TruncatedSeries acc = TruncatedSeries::zero(w.truncation(), w.point());
        for (const auto& [e, c] : terms_) {
            TruncatedSeries term =
                TruncatedSeries::expand(c, var_, w.point(), w.truncation());
            for (std::size_t j = 0; j < e.size(); ++j)
                for (std::uint32_t p = 0; p < e[j]; ++p) term = term * dw[j];
            acc = acc + term;
        }
        return acc;
    }

    std::string to_string() const;

  private:
    std::size_t slots_ = 1;
    std::string var_ = "t";
    TermMap terms_;
};

/// The Riccati equation of a monic operator, via P_0 = 1,
/// P_{i+1} = P_i' + w P_i, R = P_n + sum a_i P_i. Solutions are exactly
/// the logarithmic derivatives w = y'/y of solutions of L(y) = 0.
/// Note the recurrence yields the w^3 term at order 3 (the full cubic
/// expansion), which some compressed write-ups drop.
inline RiccatiPolynomial riccati_of(const LinearDifferentialOperator& L) {
    if (L.order() < 1) throw std::invalid_argument("riccati_of: operator order must be >= 1");
    auto M = L.monic();
    const std::size_t n = static_cast<std::size_t>(M.order());
    RiccatiPolynomial P(n, L.var());
    P.add_term(Exponents(n, 0), RationalFunction::one({L.var()}));

    RiccatiPolynomial R(n, L.var());
    for (std::size_t i = 0; i <= n; ++i) {
        if (i == n) {
            R = R + P;
        } else if (!M.coeff(i).is_zero()) {
            R = R + P * M.coeff(i);
        }
        if (i < n) P = P.derivative() + P.times_w();
    }
    return R;
}

inline TruncatedSeries riccati_eval(const RiccatiPolynomial& R, const TruncatedSeries& w) {
    return R.eval(w);
}

inline std::string RiccatiPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    // Weight-descending; ties broken by the higher derivative order first.
    std::vector<std::pair<Exponents, RationalFunction>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        unsigned wa = weight(a.first), wb = weight(b.first);
        if (wa != wb) return wa > wb;
        for (std::size_t j = a.first.size(); j-- > 0;)
            if (a.first[j] != b.first[j]) return a.first[j] > b.first[j];
        return false;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : ts) {
        std::string cs = c.to_string();
        bool atomic = c.is_polynomial() && c.num().num_terms() <= 1;
        bool neg = atomic && !cs.empty() && cs[0] == '-';
        if (first) {
            first = false;
            if (neg) { os << "-"; cs = cs.substr(1); }
        } else {
            if (neg) { os << " - "; cs = cs.substr(1); }
            else os << " + ";
        }
        bool has_monomial = total_degree(e) > 0;
        if (!has_monomial) {
            os << (atomic ? cs : "(" + cs + ")");
            continue;
        }
        bool printed = false;
        if (!(atomic && cs == "1")) {
            os << (atomic ? cs : "(" + cs + ")");
            printed = true;
        }
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            if (printed) os << "*";
            os << "w";
            if (j <= 3) {
                for (std::size_t q = 0; q < j; ++q) os << "'";
            } else {
                os << "^(" << j << ")";
            }
            if (e[j] > 1) os << "^" << e[j];
            printed = true;
        }
    }
    return os.str();
}

}  // namespace dalg
