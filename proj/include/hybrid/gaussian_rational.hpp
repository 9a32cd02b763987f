#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace hybrid {

/// Exact complex rational a + b*i with arbitrary-precision components.
/// This is the base field for every symbolic computation in the library;
/// no floating point enters the algebra anywhere.
class GaussRat {
 public:
  GaussRat() : re_(0), im_(0) {}
  GaussRat(long n) : re_(n), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    // mpq_class(n, d) does not canonicalize; all internal arithmetic assumes
    // canonical form, so normalize at this boundary.
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRat i() { return GaussRat(0, 1); }
  static GaussRat rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("GaussRat: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return GaussRat(q);
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussRat conj() const { return GaussRat(re_, -im_); }

  /// |z|^2 as an exact rational.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  GaussRat operator-() const { return GaussRat(-re_, -im_); }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_zero()) throw std::domain_error("GaussRat: division by zero");
    mpq_class n = o.norm2();
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  GaussRat inverse() const {
    GaussRat one(1);
    return one /= *this;
  }

  double to_double() const { return re_.get_d(); }

  /// Parseable form: "2", "-2/3", "i", "-i", "2*i", "(1/2 + 3*i)".
  std::string to_string() const;

 private:
  mpq_class re_, im_;
};

inline std::string GaussRat::to_string() const {
  auto rat_str = [](const mpq_class& q) { return q.get_str(); };
  if (im_ == 0) return rat_str(re_);
  std::string imag;
  if (im_ == 1)
    imag = "i";
  else if (im_ == -1)
    imag = "-i";
  else
    imag = rat_str(im_) + "*i";
  if (re_ == 0) return imag;
  std::string sep = (im_ > 0) ? " + " : " - ";
  std::string imag_abs = (im_ > 0) ? imag : imag.substr(1);
  return "(" + rat_str(re_) + sep + imag_abs + ")";
}

}  // namespace hybrid
