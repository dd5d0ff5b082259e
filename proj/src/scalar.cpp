#include "poissonlab/scalar.hpp"

#include <sstream>

namespace poissonlab {

GaussianRational GaussianRational::parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ArithmeticError("bad rational literal: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw ArithmeticError("zero denominator: " + s);
    return GaussianRational(q);
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    im_ = i;
    return *this;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    if (sgn(im_) == 0) return GaussianRational(mpq_class(1) / re_);
    mpq_class n = re_ * re_ + im_ * im_;
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
}

GaussianRational GaussianRational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    GaussianRational result(1), base(*this);
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

int GaussianRational::compare(const GaussianRational& o) const {
    int c = cmp(re_, o.re_);
    if (c != 0) return c < 0 ? -1 : 1;
    c = cmp(im_, o.im_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = im_.get_str() + "*i";
    if (sgn(re_) == 0) return imag;
    std::ostringstream os;
    os << "(" << re_.get_str();
    if (sgn(im_) > 0) os << "+";
    os << imag << ")";
    return os.str();
}

std::size_t GaussianRational::hash() const {
    std::hash<std::string> h;
    return h(re_.get_str()) * 31u + h(im_.get_str());
}

}  // namespace poissonlab
