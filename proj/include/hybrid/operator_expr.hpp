#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "hybrid/generator.hpp"

namespace hybrid {

/// Normal-ordered power product of generators: factors strictly ascending in
/// the fixed generator order, all exponents >= 1. The empty product is the
/// identity operator.
class Monomial {
 public:
  using Factor = std::pair<Generator, int>;

  Monomial() = default;
  explicit Monomial(const Generator& g) : factors_{{g, 1}} {}
  /// Factors must already be ascending with positive exponents.
  explicit Monomial(std::vector<Factor> factors);

  static const Monomial& identity();

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_identity() const { return factors_.empty(); }

  int total_degree() const;
  int degree_of(const Generator& g) const;
  int degree_of_kind(GenKind kind) const;
  bool touches_sector(Sector s) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }
  friend bool operator<(const Monomial& a, const Monomial& b);

  std::string to_string() const;
  std::string display() const;

 private:
  std::vector<Factor> factors_;
};

/// Element of the operator algebra: finite sum of normal-ordered monomials
/// with ParamScalar coefficients, stored canonically (no zero coefficients),
/// so equality of abstract operators is equality of stored form. All
/// operations are pure; values are safe to share across threads.
class OperatorExpr {
 public:
  OperatorExpr() = default;
  OperatorExpr(long n) : OperatorExpr(ParamScalar(n)) {}  // NOLINT
  explicit OperatorExpr(const ParamScalar& scalar);
  explicit OperatorExpr(const Generator& g);
  OperatorExpr(const Monomial& mono, const ParamScalar& coeff);

  static OperatorExpr identity() { return OperatorExpr(ParamScalar(1)); }

  const std::map<Monomial, ParamScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the expression is a multiple of the identity.
  bool is_scalar() const;
  /// Coefficient of the identity monomial.
  ParamScalar scalar_part() const;
  ParamScalar coefficient(const Monomial& m) const;

  int total_degree() const;
  bool is_hermitian() const;

  OperatorExpr operator-() const;
  OperatorExpr& operator+=(const OperatorExpr& o);
  OperatorExpr& operator-=(const OperatorExpr& o);
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  OperatorExpr& operator*=(const OperatorExpr& o) { return *this = *this * o; }

  OperatorExpr scaled(const ParamScalar& c) const;

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const OperatorExpr& a, const OperatorExpr& b) { return !(a == b); }

  /// Parseable ASCII form; "0" for the zero operator.
  std::string to_string() const;
  /// Human-readable form with unicode subscripts and the 𝟙 symbol.
  std::string display() const;

  void add_term(const Monomial& m, const ParamScalar& c);

 private:
  std::map<Monomial, ParamScalar> terms_;
};

/// Normal order of an arbitrary generator word times a coefficient, rewriting
/// with the table's central brackets. Words may repeat generators and appear
/// in any order; every swap x·y -> y·x + [x,y]·1 strictly reduces disorder.
OperatorExpr normal_form(const std::vector<Generator>& word, const ParamScalar& coeff,
                         const CommutationTable& table = CommutationTable::standard());

/// Normal order of a power-product word given as (generator, exponent) runs.
OperatorExpr normal_form_powers(const std::vector<Monomial::Factor>& word,
                                const ParamScalar& coeff,
                                const CommutationTable& table = CommutationTable::standard());

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

/// Coefficient-conjugating, order-reversing involution; the identity on every
/// generator. adjoint(a*b) = adjoint(b)*adjoint(a).
OperatorExpr adjoint(const OperatorExpr& a);

/// Evaluates coefficients at the bindings; unbound parameters stay symbolic.
/// Throws std::domain_error when a coefficient denominator vanishes.
OperatorExpr substitute_params(const OperatorExpr& a,
                               const std::map<Param, mpq_class>& bindings);

}  // namespace hybrid
