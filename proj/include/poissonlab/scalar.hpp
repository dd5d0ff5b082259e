#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace poissonlab {

class ArithmeticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Element of Q(i). Both parts are kept canonical by mpq_class.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(const mpq_class& re, const mpq_class& im = 0) : re_(re), im_(im) {
        re_.canonicalize();
        im_.canonicalize();
    }
    GaussianRational(long num, long den) : re_(num, den) { re_.canonicalize(); }

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
    static GaussianRational parse(const std::string& s);  // "3", "-3/2"

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    GaussianRational inverse() const;
    GaussianRational pow(long e) const;
    GaussianRational conj() const { return {re_, -im_}; }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Total order used only for canonical sorting (re first, then im).
    int compare(const GaussianRational& o) const;

    // "3", "-3/2", "2*i", "(1/2+3*i)"; the parenthesised form is used when both parts are nonzero.
    std::string str() const;
    // True when str() needs no parentheses inside a product.
    bool is_atomic() const { return sgn(re_) == 0 || sgn(im_) == 0; }
    // Sign of the "leading" part (re if nonzero, else im).
    int lead_sign() const { return sgn(re_) != 0 ? sgn(re_) : sgn(im_); }

    std::size_t hash() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

}  // namespace poissonlab
