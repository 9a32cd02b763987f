#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "hybrid/gaussian_rational.hpp"

namespace hybrid {

/// Symbolic parameters available to coefficients: masses, and the boost time.
enum class Param : int { m = 0, M = 1, m1 = 2, m2 = 3, M1 = 4, M2 = 5, t = 6 };

inline constexpr int kParamCount = 7;

const char* param_name(Param p);
std::optional<Param> param_from_name(const std::string& name);

/// Exponent vector of a parameter monomial, compared lexicographically
/// (this fixed order is what "leading term" and "monic" refer to).
using ParamExponents = std::array<std::uint32_t, kParamCount>;

/// Multivariate polynomial over GaussRat in the fixed parameter set.
/// Stored canonically: sorted monomial map with no zero coefficients.
class ParamPoly {
 public:
  using TermMap = std::map<ParamExponents, GaussRat>;

  ParamPoly() = default;
  explicit ParamPoly(GaussRat c);
  static ParamPoly variable(Param p);
  static ParamPoly one() { return ParamPoly(GaussRat(1)); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term; the whole value when is_constant().
  GaussRat constant_value() const;

  int total_degree() const;
  int degree_in(Param p) const;
  bool depends_on(Param p) const { return degree_in(p) > 0; }

  /// Leading (maximal) monomial under the fixed lex order. Poly must be nonzero.
  const ParamExponents& leading_exponents() const;
  const GaussRat& leading_coefficient() const;

  ParamPoly operator-() const;
  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

  void scale(const GaussRat& c);
  ParamPoly conj() const;

  /// Partial evaluation; unbound parameters stay symbolic.
  ParamPoly substitute(const std::map<Param, mpq_class>& bindings) const;

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }
  friend bool operator<(const ParamPoly& a, const ParamPoly& b);

  std::string to_string() const;

  void add_term(const ParamExponents& e, const GaussRat& c);

 private:
  TermMap terms_;
};

/// Exact quotient a/b, or nullopt when b does not divide a.
std::optional<ParamPoly> divide_exact(const ParamPoly& a, const ParamPoly& b);

/// GCD in the polynomial ring over the Gaussian rationals, normalized monic
/// under the fixed monomial order. gcd(0,0) = 0.
ParamPoly poly_gcd(ParamPoly a, ParamPoly b);

}  // namespace hybrid
