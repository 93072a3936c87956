#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dalg/poly.hpp"

namespace dalg {

/// Reduced quotient of two polynomials: gcd(num, den) = 1 and the
/// denominator's graded-lex leading coefficient is 1.
class RationalFunction {
  public:
    RationalFunction() = default;

    explicit RationalFunction(Poly num)
        : num_(std::move(num)), den_(Poly::one(num_.vars())) {}

    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        std::tie(num_, den_) = Poly::unify(num_, den_);
        reduce();
    }

    static RationalFunction constant(const BigRat& c, std::vector<std::string> vars) {
        return RationalFunction(Poly::constant(c, std::move(vars)));
    }

    static RationalFunction variable(const std::string& name, std::vector<std::string> vars) {
        return RationalFunction(Poly::variable(name, std::move(vars)));
    }

    static RationalFunction zero(std::vector<std::string> vars) {
        return RationalFunction(Poly::zero(std::move(vars)));
    }

    static RationalFunction one(std::vector<std::string> vars) {
        return RationalFunction(Poly::one(std::move(vars)));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const std::vector<std::string>& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    BigRat constant_value() const {
        if (!is_constant()) throw std::domain_error("RationalFunction: not a constant");
        if (num_.is_zero()) return BigRat(0);
        return num_.constant_value() / den_.constant_value();
    }

    Poly as_polynomial() const {
        if (!is_polynomial()) throw std::domain_error("RationalFunction: has a denominator");
        return num_ * den_.constant_value().inverse();
    }

    RationalFunction zero_like() const { return zero(vars()); }
    RationalFunction one_like() const { return one(vars()); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const BigRat& s) {
        return RationalFunction(a.num_ * s, a.den_);
    }
    friend RationalFunction operator*(const BigRat& s, const RationalFunction& a) { return a * s; }

    RationalFunction inverse() const {
        if (is_zero()) throw std::domain_error("RationalFunction: inverse of zero");
        return RationalFunction(den_, num_);
    }

    RationalFunction pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        RationalFunction r = one(vars()), b = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k > 0) {
            if (k & 1) r = r * b;
            if (k >>= 1) b = b * b;
        }
        return r;
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    friend bool operator<(const RationalFunction& a, const RationalFunction& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    /// d/dvar by the quotient rule, exact.
    RationalFunction derivative(const std::string& var) const {
        Poly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
        return RationalFunction(n, den_ * den_);
    }

    BigRat eval(const std::map<std::string, BigRat>& point) const {
        BigRat d = den_.eval(point);
        if (d.is_zero()) throw std::domain_error("RationalFunction: pole at evaluation point");
        return num_.eval(point) / d;
    }

    RationalFunction embed(const std::vector<std::string>& new_vars) const {
        return RationalFunction(num_.embed(new_vars), den_.embed(new_vars));
    }

    /// Polynomial part and proper remainder (univariate): f = poly + rem/den.
    std::pair<Poly, RationalFunction> split_proper(const std::string& var) const {
        if (is_polynomial()) return {as_polynomial(), zero(vars())};
        auto [q, r] = divrem_univar(num_, den_, var);
        return {q, RationalFunction(r, den_)};
    }

    std::string to_string() const {
        if (is_polynomial()) return as_polynomial().to_string();
        std::string n = num_.num_terms() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
        std::string d = den_.num_terms() > 1 ? "(" + den_.to_string() + ")" : den_.to_string();
        return n + "/" + d;
    }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly::one(num_.vars());
            return;
        }
        Poly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *div_exact(num_, g);
            den_ = *div_exact(den_, g);
        }
        BigRat lc = den_.leading_coeff();
        if (!lc.is_one()) {
            BigRat inv = lc.inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_{std::vector<std::string>{}};
    Poly den_ = Poly::one({});
};

inline RationalFunction zero_like(const RationalFunction& f) { return f.zero_like(); }
inline RationalFunction one_like(const RationalFunction& f) { return f.one_like(); }
inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

}  // namespace dalg
