#pragma once

#include <map>
#include <string>

#include "hybrid/param_poly.hpp"

namespace hybrid {

/// Element of the fraction field of ParamPoly: num/den in canonical reduced
/// form (gcd(num,den) = 1, den monic under the fixed monomial order). Two
/// equal values always have identical stored form, so operator== is syntactic.
class ParamScalar {
 public:
  ParamScalar() : num_(), den_(ParamPoly::one()) {}
  ParamScalar(long n) : num_(GaussRat(n)), den_(ParamPoly::one()) {}  // NOLINT
  explicit ParamScalar(GaussRat c) : num_(ParamPoly(std::move(c))), den_(ParamPoly::one()) {}
  ParamScalar(ParamPoly num, ParamPoly den);

  static ParamScalar i() { return ParamScalar(GaussRat::i()); }
  static ParamScalar parameter(Param p) {
    return ParamScalar(ParamPoly::variable(p), ParamPoly::one());
  }
  static ParamScalar rational(long num, long den) {
    return ParamScalar(GaussRat::rational(num, den));
  }

  const ParamPoly& num() const { return num_; }
  const ParamPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == ParamPoly::one() && den_ == ParamPoly::one(); }
  bool is_constant() const { return num_.is_constant() && den_ == ParamPoly::one(); }
  /// Value when is_constant().
  GaussRat constant_value() const { return num_.constant_value(); }

  ParamScalar operator-() const;
  ParamScalar conj() const;

  ParamScalar& operator+=(const ParamScalar& o);
  ParamScalar& operator-=(const ParamScalar& o);
  ParamScalar& operator*=(const ParamScalar& o);
  ParamScalar& operator/=(const ParamScalar& o);

  friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
  friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
  friend ParamScalar operator*(ParamScalar a, const ParamScalar& b) { return a *= b; }
  friend ParamScalar operator/(ParamScalar a, const ParamScalar& b) { return a /= b; }

  ParamScalar inverse() const;

  friend bool operator==(const ParamScalar& a, const ParamScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const ParamScalar& a, const ParamScalar& b) { return !(a == b); }
  friend bool operator<(const ParamScalar& a, const ParamScalar& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  /// Partial evaluation. Throws std::domain_error if the denominator vanishes
  /// at the bindings (invalid parameter choice, e.g. a zero mass).
  ParamScalar substitute(const std::map<Param, mpq_class>& bindings) const;

  /// Parseable form, e.g. "1/2*i", "(m + M)/(m*M)".
  std::string to_string() const;

 private:
  void reduce();

  ParamPoly num_, den_;
};

}  // namespace hybrid
