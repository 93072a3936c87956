#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dalg {

/// Exact rational number over arbitrary-precision integers.
/// Always reduced; the denominator is positive; zero is 0/1.
class BigRat {
  public:
    BigRat() : v_(0) {}
    BigRat(long n) : v_(n) {}
    BigRat(int n) : v_(static_cast<long>(n)) {}
    BigRat(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("BigRat: zero denominator");
        v_.canonicalize();
    }
    explicit BigRat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit BigRat(const mpz_class& z) : v_(z) {}

    /// Parses "p", "-p" or "p/q".
    static BigRat from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("BigRat: cannot parse '" + s + "'");
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("BigRat: zero denominator in '" + s + "'");
        return BigRat(q);
    }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_negative() const { return v_ < 0; }

    /// Exact conversion; throws unless the value is an integer fitting a long.
    long to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            throw std::domain_error("BigRat: not a machine integer");
        return v_.get_num().get_si();
    }

    BigRat operator-() const { return BigRat(mpq_class(-v_)); }
    BigRat& operator+=(const BigRat& o) { v_ += o.v_; return *this; }
    BigRat& operator-=(const BigRat& o) { v_ -= o.v_; return *this; }
    BigRat& operator*=(const BigRat& o) { v_ *= o.v_; return *this; }
    BigRat& operator/=(const BigRat& o) {
        if (o.is_zero()) throw std::domain_error("BigRat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
    friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
    friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
    friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }

    friend bool operator==(const BigRat& a, const BigRat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const BigRat& a, const BigRat& b) { return a.v_ != b.v_; }
    friend bool operator<(const BigRat& a, const BigRat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const BigRat& a, const BigRat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const BigRat& a, const BigRat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const BigRat& a, const BigRat& b) { return a.v_ >= b.v_; }

    BigRat inverse() const {
        if (is_zero()) throw std::domain_error("BigRat: inverse of zero");
        return BigRat(mpq_class(1) / v_);
    }

    BigRat abs() const { return v_ < 0 ? -*this : *this; }

    BigRat pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpq_class r(1), b(v_);
        long k = e;
        while (k > 0) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return BigRat(r);
    }

    std::string to_string() const { return v_.get_str(); }

  private:
    mpq_class v_;
};

inline BigRat zero_like(const BigRat&) { return BigRat(0); }
inline BigRat one_like(const BigRat&) { return BigRat(1); }
inline bool is_zero(const BigRat& x) { return x.is_zero(); }

/// n! as an exact rational (series recurrences need ratios of factorials).
inline BigRat factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return BigRat(r);
}

inline BigRat binomial(unsigned n, unsigned k) {
    if (k > n) return BigRat(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return BigRat(r);
}

}  // namespace dalg
