#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/linalg.hpp"
#include "dalg/series.hpp"

namespace dalg {

/// Element of k[D] over k = Q(t) with t' = 1 (extra variables in the
/// coefficients are treated as transcendental constants). Composition
/// follows D*a = a*D + a'.
class LinearDifferentialOperator {
  public:
    LinearDifferentialOperator() = default;

    LinearDifferentialOperator(std::vector<RationalFunction> coeffs, std::string var = "t")
        : a_(std::move(coeffs)), var_(std::move(var)) {
        trim();
    }

    static LinearDifferentialOperator zero(const std::string& var = "t") {
        return LinearDifferentialOperator({}, var);
    }

    static LinearDifferentialOperator from_scalar(const RationalFunction& c,
                                                  const std::string& var = "t") {
        return LinearDifferentialOperator({c}, var);
    }

    /// The bare derivation D.
    static LinearDifferentialOperator derivation(const std::string& var = "t") {
        RationalFunction z = RationalFunction::zero({var});
        return LinearDifferentialOperator({z, RationalFunction::one({var})}, var);
    }

    const std::string& var() const { return var_; }
    bool is_zero() const { return a_.empty(); }
    int order() const { return static_cast<int>(a_.size()) - 1; }

    RationalFunction coeff(std::size_t i) const {
        if (i < a_.size()) return a_[i];
        return a_.empty() ? RationalFunction::zero({var_}) : a_[0].zero_like();
    }

    bool is_monic() const {
        if (a_.empty()) return false;
        return a_.back() == a_.back().one_like();
    }

    LinearDifferentialOperator monic() const {
        if (a_.empty()) throw std::domain_error("operator: monic of zero");
        std::vector<RationalFunction> c;
        c.reserve(a_.size());
        for (const auto& x : a_) c.push_back(x / a_.back());
        return LinearDifferentialOperator(std::move(c), var_);
    }

    friend LinearDifferentialOperator operator+(const LinearDifferentialOperator& A,
                                                const LinearDifferentialOperator& B) {
        A.check_var(B);
        std::vector<RationalFunction> c(std::max(A.a_.size(), B.a_.size()),
                                        RationalFunction::zero({A.var_}));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = A.coeff(i) + B.coeff(i);
        return LinearDifferentialOperator(std::move(c), A.var_);
    }

    friend LinearDifferentialOperator operator-(const LinearDifferentialOperator& A,
                                                const LinearDifferentialOperator& B) {
        return A + (-B);
    }

    LinearDifferentialOperator operator-() const {
        std::vector<RationalFunction> c;
        c.reserve(a_.size());
        for (const auto& x : a_) c.push_back(-x);
        return LinearDifferentialOperator(std::move(c), var_);
    }

    /// Noncommutative product: (A*B)(y) = A(B(y)).
    friend LinearDifferentialOperator operator*(const LinearDifferentialOperator& A,
                                                const LinearDifferentialOperator& B) {
        A.check_var(B);
        if (A.is_zero() || B.is_zero()) return zero(A.var_);
        std::vector<RationalFunction> c(A.a_.size() + B.a_.size() - 1,
                                        RationalFunction::zero({A.var_}));
        for (std::size_t i = 0; i < A.a_.size(); ++i) {
            if (A.a_[i].is_zero()) continue;
            for (std::size_t j = 0; j < B.a_.size(); ++j) {
                if (B.a_[j].is_zero()) continue;
                RationalFunction bjm = B.a_[j];  // m-th derivative of b_j
                for (std::size_t m = 0; m <= i; ++m) {
                    c[j + i - m] = c[j + i - m] + A.a_[i] * binomial(static_cast<unsigned>(i),
                                                                    static_cast<unsigned>(m)) * bjm;
                    bjm = bjm.derivative(A.var_);
                }
            }
        }
        return LinearDifferentialOperator(std::move(c), A.var_);
    }

    friend LinearDifferentialOperator operator*(const RationalFunction& s,
                                                const LinearDifferentialOperator& A) {
        return from_scalar(s, A.var_) * A;
    }

    LinearDifferentialOperator pow(unsigned e) const {
        LinearDifferentialOperator r = from_scalar(RationalFunction::one({var_}), var_);
        LinearDifferentialOperator b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    /// Coefficient-wise equality after monic normalization.
    friend bool operator==(const LinearDifferentialOperator& A,
                           const LinearDifferentialOperator& B) {
        if (A.is_zero() || B.is_zero()) return A.is_zero() == B.is_zero();
        if (A.order() != B.order()) return false;
        auto ma = A.monic(), mb = B.monic();
        for (std::size_t i = 0; i < ma.a_.size(); ++i)
            if (ma.a_[i] != mb.a_[i]) return false;
        return true;
    }
    friend bool operator!=(const LinearDifferentialOperator& A,
                           const LinearDifferentialOperator& B) {
        return !(A == B);
    }

    /// Sum a_i(t) y^(i) as a series; the result loses order() truncation steps.
    TruncatedSeries apply(const TruncatedSeries& y) const {
        if (is_zero()) return TruncatedSeries::zero(y.truncation(), y.point());
        if (static_cast<int>(y.truncation()) <= order())
            throw std::domain_error("operator: series truncation below operator order");
        std::optional<TruncatedSeries> acc;
        TruncatedSeries yk = y;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (!a_[i].is_zero()) {
                TruncatedSeries ci = TruncatedSeries::expand(a_[i], var_, y.point(), y.truncation());
                TruncatedSeries term = ci * yk;
                acc = acc ? *acc + term : term;
            }
            if (i + 1 < a_.size()) yk = yk.derivative();
        }
        return *acc;
    }

    /// True when no normalized coefficient has a pole at the point.
    bool is_ordinary_point(const BigRat& point) const {
        if (is_zero()) return true;
        auto m = monic();
        for (const auto& c : m.a_) {
            std::map<std::string, BigRat> pt{{var_, point}};
            if (c.den().eval(pt).is_zero()) return false;
        }
        return true;
    }

    /// Smallest non-negative integer ordinary point.
    BigRat default_expansion_point() const {
        for (long k = 0;; ++k) {
            BigRat p(k);
            if (is_ordinary_point(p)) return p;
            if (k > 1000) throw std::runtime_error("operator: no small ordinary point found");
        }
    }

    /// Canonical solution basis at an ordinary point: n series with unit
    /// initial segments, each annihilated to truncation N - n.
    std::vector<TruncatedSeries> series_solutions(const BigRat& point, std::size_t N) const {
        if (is_zero() || order() < 1)
            throw std::invalid_argument("series_solutions: operator order must be >= 1");
        for (const auto& c : a_) {
            auto sv = c.num().support_vars();
            auto sd = c.den().support_vars();
            sv.insert(sd.begin(), sd.end());
            for (const auto& v : sv)
                if (v != var_)
                    throw std::invalid_argument("series_solutions: symbolic coefficient " +
                                                c.to_string());
        }
        auto m = monic();
        const std::size_t n = static_cast<std::size_t>(m.order());
        if (N < n + 1) throw std::invalid_argument("series_solutions: truncation too small");
        for (const auto& c : m.a_) {
            std::map<std::string, BigRat> pt{{var_, point}};
            if (c.den().eval(pt).is_zero())
                throw std::domain_error("series_solutions: singular point " + point.to_string() +
                                        " (pole of coefficient " + c.to_string() + ")");
        }
        std::vector<TruncatedSeries> coeff_series;
        coeff_series.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            coeff_series.push_back(TruncatedSeries::expand(m.a_[i], var_, point, N));

        std::vector<TruncatedSeries> basis;
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<BigRat> y(N, BigRat(0));
            y[b] = BigRat(1);
            // y^(n) = -sum a_i y^(i); match coefficients of s^m.
            for (std::size_t mth = 0; n + mth < N; ++mth) {
                BigRat rhs(0);
                for (std::size_t i = 0; i < n; ++i) {
                    // s^m coefficient of a_i * y^(i)
                    for (std::size_t j = 0; j <= mth; ++j) {
                        std::size_t yi = mth - j + i;  // index into y for y^(i) coeff (m-j)
                        if (yi >= N) continue;
                        BigRat deriv_factor = factorial(static_cast<unsigned>(yi)) /
                                              factorial(static_cast<unsigned>(mth - j));
                        rhs += coeff_series[i][j] * y[yi] * deriv_factor;
                    }
                }
                BigRat lead = factorial(static_cast<unsigned>(n + mth)) /
                              factorial(static_cast<unsigned>(mth));
                y[n + mth] = -rhs / lead;
            }
            basis.emplace_back(std::move(y), point);
        }
        return basis;
    }

    std::string to_string() const;

  private:
    void trim() {
        while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
    }
    void check_var(const LinearDifferentialOperator& o) const {
        if (var_ != o.var_)
            throw std::invalid_argument("operator: mixed base variables " + var_ + "/" + o.var_);
    }

    std::vector<RationalFunction> a_;
    std::string var_ = "t";
};

inline std::string LinearDifferentialOperator::to_string() const {
    if (a_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = a_.size(); k-- > 0;) {
        if (a_[k].is_zero()) continue;
        std::string cs = a_[k].to_string();
        bool neg = !cs.empty() && cs[0] == '-';
        bool atomic = a_[k].is_polynomial() && a_[k].num().num_terms() <= 1;
        if (first) {
            first = false;
            if (neg && atomic) { os << "-"; cs = cs.substr(1); neg = false; }
        } else {
            if (neg && atomic) { os << " - "; cs = cs.substr(1); }
            else os << " + ";
        }
        if (k == 0) {
            os << (atomic ? cs : "(" + cs + ")");
            continue;
        }
        if (!(atomic && cs == "1")) os << (atomic ? cs : "(" + cs + ")") << "*";
        os << "D";
        if (k > 1) os << "^" << k;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// Symmetric power
// ---------------------------------------------------------------------------

namespace detail {

/// State for derivative closure: a k-linear combination of degree-d
/// monomials in y, y', ..., y^(n-1), reduced via y^(n) = -sum a_i y^(i).
using SymVector = std::map<Exponents, RationalFunction, GradedLexLess>;

inline void sym_add(SymVector& v, const Exponents& e, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = v.emplace(e, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) v.erase(it);
    }
}

inline SymVector sym_derivative(const SymVector& v, const std::vector<RationalFunction>& monic_a,
                                const std::string& var) {
    const std::size_t n = monic_a.size();  // order; slots 0..n-1
    SymVector out;
    for (const auto& [e, c] : v) {
        sym_add(out, e, c.derivative(var));
        for (std::size_t j = 0; j < n; ++j) {
            if (e[j] == 0) continue;
            RationalFunction f = c * BigRat(static_cast<long>(e[j]));
            Exponents base(e);
            base[j] -= 1;
            if (j + 1 < n) {
                Exponents up(base);
                up[j + 1] += 1;
                sym_add(out, up, f);
            } else {
                // y^(n) = -sum_i a_i y^(i)
                for (std::size_t i = 0; i < n; ++i) {
                    if (monic_a[i].is_zero()) continue;
                    Exponents up(base);
                    up[i] += 1;
                    sym_add(out, up, -(f * monic_a[i]));
                }
            }
        }
    }
    return out;
}

}  // namespace detail

/// Minimal monic operator annihilating all d-fold products of solutions,
/// found by differentiating the generic d-th power until the first linear
/// dependence over k.
inline LinearDifferentialOperator sym_power(const LinearDifferentialOperator& L, unsigned d) {
    if (L.order() < 1) throw std::invalid_argument("sym_power: operator order must be >= 1");
    if (d < 1) throw std::invalid_argument("sym_power: d must be positive");
    auto M = L.monic();
    const std::size_t n = static_cast<std::size_t>(M.order());
    std::vector<RationalFunction> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(M.coeff(i));

    // Basis of degree-d monomials in graded-lex order.
    std::vector<Exponents> basis;
    Exponents cur(n, 0);
    struct Gen {
        static void rec(std::vector<Exponents>& out, Exponents& e, std::size_t pos, unsigned left) {
            if (pos + 1 == e.size()) {
                e[pos] = left;
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
    Gen::rec(basis, cur, 0, d);
    std::sort(basis.begin(), basis.end(), GradedLexLess{});
    std::map<Exponents, std::size_t, GradedLexLess> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    const std::size_t dim = basis.size();

    detail::SymVector z;
    Exponents start(n, 0);
    start[0] = d;
    z[start] = RationalFunction::one({L.var()});

    RationalFunction sample = RationalFunction::zero({L.var()});
    std::vector<std::vector<RationalFunction>> rows;  // z^(0), z^(1), ...
    for (std::size_t m = 0;; ++m) {
        std::vector<RationalFunction> row(dim, sample.zero_like());
        for (const auto& [e, c] : z) row[index.at(e)] = c;
        if (m > 0) {
            Matrix<RationalFunction> A(dim, m, sample.zero_like());
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t i = 0; i < dim; ++i) A.at(i, j) = rows[j][i];
            auto sol = solve_linear(A, row, sample);
            if (sol) {
                std::vector<RationalFunction> coeffs(m + 1, sample.zero_like());
                for (std::size_t j = 0; j < m; ++j) coeffs[j] = -(*sol)[j];
                coeffs[m] = sample.one_like();
                return LinearDifferentialOperator(std::move(coeffs), L.var());
            }
        }
        rows.push_back(std::move(row));
        if (m > dim) throw std::logic_error("sym_power: no dependence found");
        z = detail::sym_derivative(z, a, L.var());
    }
}

}  // namespace dalg
