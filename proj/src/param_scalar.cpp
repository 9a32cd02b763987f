#include "hybrid/param_scalar.hpp"

#include <stdexcept>

namespace hybrid {

ParamScalar::ParamScalar(ParamPoly num, ParamPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("ParamScalar: zero denominator");
  reduce();
}

void ParamScalar::reduce() {
  if (num_.is_zero()) {
    den_ = ParamPoly::one();
    return;
  }
  if (!den_.is_constant()) {
    ParamPoly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  // Make the denominator monic; constants are absorbed into the numerator.
  GaussRat lc = den_.leading_coefficient();
  if (!lc.is_one()) {
    GaussRat inv = lc.inverse();
    num_.scale(inv);
    den_.scale(inv);
  }
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

ParamScalar ParamScalar::conj() const { return ParamScalar(num_.conj(), den_.conj()); }

ParamScalar& ParamScalar::operator+=(const ParamScalar& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  reduce();
  return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
  }
  reduce();
  return *this;
}

ParamScalar& ParamScalar::operator*=(const ParamScalar& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  reduce();
  return *this;
}

ParamScalar& ParamScalar::operator/=(const ParamScalar& o) {
  if (o.is_zero()) throw std::domain_error("ParamScalar: division by zero");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  reduce();
  return *this;
}

ParamScalar ParamScalar::inverse() const {
  if (is_zero()) throw std::domain_error("ParamScalar: inverse of zero");
  return ParamScalar(den_, num_);
}

ParamScalar ParamScalar::substitute(const std::map<Param, mpq_class>& bindings) const {
  ParamPoly d = den_.substitute(bindings);
  if (d.is_zero())
    throw std::domain_error("ParamScalar: denominator vanishes at parameter binding");
  return ParamScalar(num_.substitute(bindings), std::move(d));
}

std::string ParamScalar::to_string() const {
  std::string num_str =
      num_.terms().size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
  if (den_ == ParamPoly::one()) return num_str;
  // a one-term denominator without '*' (like m or M^2) binds correctly bare;
  // anything else needs parentheses to survive re-parsing
  std::string den_str = den_.to_string();
  if (den_.terms().size() > 1 || den_str.find('*') != std::string::npos)
    den_str = "(" + den_str + ")";
  return num_str + "/" + den_str;
}

}  // namespace hybrid
