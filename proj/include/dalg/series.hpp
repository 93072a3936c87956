#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/rational_function.hpp"

namespace dalg {

/// Power series in (var - point) known modulo (var - point)^N; arithmetic
/// results carry the minimum truncation order of their inputs.
class TruncatedSeries {
  public:
    TruncatedSeries() = default;
    TruncatedSeries(std::vector<BigRat> coeffs, BigRat point = BigRat(0))
        : c_(std::move(coeffs)), point_(std::move(point)) {
        if (c_.empty()) throw std::invalid_argument("TruncatedSeries: empty coefficient list");
    }

    static TruncatedSeries constant(const BigRat& v, std::size_t N, BigRat point = BigRat(0)) {
        std::vector<BigRat> c(N, BigRat(0));
        if (N == 0) throw std::invalid_argument("TruncatedSeries: zero truncation");
        c[0] = v;
        return TruncatedSeries(std::move(c), std::move(point));
    }

    static TruncatedSeries zero(std::size_t N, BigRat point = BigRat(0)) {
        return constant(BigRat(0), N, std::move(point));
    }

    /// Unit-vector initial segment: coefficient 1 at index i.
    static TruncatedSeries unit(std::size_t i, std::size_t N, BigRat point = BigRat(0)) {
        std::vector<BigRat> c(N, BigRat(0));
        if (i >= N) throw std::invalid_argument("TruncatedSeries: unit index beyond truncation");
        c[i] = BigRat(1);
        return TruncatedSeries(std::move(c), std::move(point));
    }

    /// Expansion of a univariate rational function at an ordinary point.
    static TruncatedSeries expand(const RationalFunction& f, const std::string& var,
                                  const BigRat& point, std::size_t N) {
        Poly n = shift_univar(f.num(), var, point);
        Poly d = shift_univar(f.den(), var, point);
        auto nc = n.dense_coeffs(var);
        auto dc = d.dense_coeffs(var);
        if (dc[0].is_zero())
            throw std::domain_error("TruncatedSeries: pole of " + f.to_string() + " at " +
                                    point.to_string());
        nc.resize(N, BigRat(0));
        dc.resize(N, BigRat(0));
        return TruncatedSeries(nc, point) / TruncatedSeries(dc, point);
    }

    std::size_t truncation() const { return c_.size(); }
    const BigRat& point() const { return point_; }
    const BigRat& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<BigRat>& coeffs() const { return c_; }

    bool is_zero_to_truncation() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    TruncatedSeries truncate(std::size_t N) const {
        if (N == 0 || N > c_.size()) throw std::invalid_argument("TruncatedSeries: bad truncate");
        return TruncatedSeries(std::vector<BigRat>(c_.begin(), c_.begin() + N), point_);
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::size_t n = a.common(b);
        std::vector<BigRat> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = a.c_[i] + b.c_[i];
        return TruncatedSeries(std::move(c), a.point_);
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a + (-b);
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::size_t n = a.common(b);
        std::vector<BigRat> c(n, BigRat(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return TruncatedSeries(std::move(c), a.point_);
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const BigRat& s) {
        TruncatedSeries r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }
    friend TruncatedSeries operator*(const BigRat& s, const TruncatedSeries& a) { return a * s; }

    /// Division; the divisor must be a unit (nonzero constant term).
    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::size_t n = a.common(b);
        if (b.c_[0].is_zero()) throw std::domain_error("TruncatedSeries: division by non-unit");
        std::vector<BigRat> c(n, BigRat(0));
        BigRat inv = b.c_[0].inverse();
        for (std::size_t k = 0; k < n; ++k) {
            BigRat acc = a.c_[k];
            for (std::size_t j = 0; j < k; ++j) acc -= c[j] * b.c_[k - j];
            c[k] = acc * inv;
        }
        return TruncatedSeries(std::move(c), a.point_);
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.point_ == b.point_ && a.c_ == b.c_;
    }

    /// Termwise derivative; truncation drops by one.
    TruncatedSeries derivative() const {
        if (c_.size() < 2) throw std::domain_error("TruncatedSeries: truncation too small to differentiate");
        std::vector<BigRat> c(c_.size() - 1);
        for (std::size_t i = 0; i + 1 < c_.size(); ++i)
            c[i] = c_[i + 1] * BigRat(static_cast<long>(i + 1));
        return TruncatedSeries(std::move(c), point_);
    }

    TruncatedSeries derivative(unsigned k) const {
        TruncatedSeries r = *this;
        for (unsigned i = 0; i < k; ++i) r = r.derivative();
        return r;
    }

    std::string to_string(const std::string& var = "t") const {
        std::ostringstream os;
        std::string base = point_.is_zero() ? var : "(" + var + " - " + point_.to_string() + ")";
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            BigRat a = c_[i];
            if (first) {
                if (a.is_negative()) { os << "-"; a = -a; }
            } else {
                os << (a.is_negative() ? " - " : " + ");
                if (a.is_negative()) a = -a;
            }
            first = false;
            if (i == 0) { os << a.to_string(); continue; }
            if (!a.is_one()) os << a.to_string() << "*";
            os << base;
            if (i > 1) os << "^" << i;
        }
        if (first) os << "0";
        os << " + O(" << base << "^" << c_.size() << ")";
        return os.str();
    }

  private:
    std::size_t common(const TruncatedSeries& o) const {
        if (point_ != o.point_)
            throw std::invalid_argument("TruncatedSeries: mixed expansion points");
        return std::min(c_.size(), o.c_.size());
    }

    std::vector<BigRat> c_;
    BigRat point_;
};

/// Wronskian determinant of m series to the available truncation.
inline TruncatedSeries wronskian(const std::vector<TruncatedSeries>& basis) {
    if (basis.empty()) throw std::invalid_argument("wronskian: empty basis");
    const std::size_t m = basis.size();
    for (const auto& y : basis)
        if (y.truncation() < m)
            throw std::domain_error("wronskian: truncation too small for the derivative matrix");
    // Derivative matrix rows 0..m-1; cofactor expansion avoids division.
    std::vector<std::vector<TruncatedSeries>> mat(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) mat[i].push_back(basis[j].derivative(static_cast<unsigned>(i)));

    struct Rec {
        static TruncatedSeries det(const std::vector<std::vector<TruncatedSeries>>& a,
                                   std::vector<std::size_t> cols, std::size_t row) {
            if (cols.size() == 1) return a[row][cols[0]];
            TruncatedSeries acc = a[row][cols[0]] * BigRat(0);
            bool init = false;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                std::vector<std::size_t> sub;
                for (std::size_t j = 0; j < cols.size(); ++j)
                    if (j != k) sub.push_back(cols[j]);
                TruncatedSeries term = a[row][cols[k]] * det(a, sub, row + 1);
                if (k % 2) term = -term;
                acc = init ? acc + term : term;
                init = true;
            }
            return acc;
        }
    };
    std::vector<std::size_t> cols(m);
    for (std::size_t j = 0; j < m; ++j) cols[j] = j;
    return Rec::det(mat, cols, 0);
}

}  // namespace dalg
