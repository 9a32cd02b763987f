#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "hybrid/operator_expr.hpp"

namespace hybrid {

/// Index of a classical phase-space coordinate (q or p component). Two
/// classical sectors, three axes.
struct PhaseVar {
  Sector sector;  // Classical or Classical2
  GenKind kind;   // Position or Momentum
  int axis;       // 1..3

  int index() const {
    int s = (sector == Sector::Classical) ? 0 : 1;
    int k = (kind == GenKind::Position) ? 0 : 1;
    return s * 6 + k * 3 + (axis - 1);
  }
  static PhaseVar from_index(int i);
  Generator generator() const { return Generator(sector, kind, axis); }
};

inline constexpr int kPhaseVarCount = 12;

/// Commutative polynomial in the classical phase-space coordinates with
/// ParamScalar coefficients: a classical Hamiltonian function H_c(q, p).
/// Deliberately separate from OperatorExpr; promotion to operators happens
/// only inside liouvillian_from_hamiltonian.
class PhaseSpacePoly {
 public:
  using Exponents = std::array<std::uint32_t, kPhaseVarCount>;

  PhaseSpacePoly() = default;
  explicit PhaseSpacePoly(const ParamScalar& c);
  static PhaseSpacePoly coordinate(const PhaseVar& v);

  const std::map<Exponents, ParamScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  PhaseSpacePoly operator-() const;
  PhaseSpacePoly& operator+=(const PhaseSpacePoly& o);
  PhaseSpacePoly& operator-=(const PhaseSpacePoly& o);
  friend PhaseSpacePoly operator+(PhaseSpacePoly a, const PhaseSpacePoly& b) { return a += b; }
  friend PhaseSpacePoly operator-(PhaseSpacePoly a, const PhaseSpacePoly& b) { return a -= b; }
  friend PhaseSpacePoly operator*(const PhaseSpacePoly& a, const PhaseSpacePoly& b);

  PhaseSpacePoly scaled(const ParamScalar& c) const;
  PhaseSpacePoly derivative(const PhaseVar& v) const;

  friend bool operator==(const PhaseSpacePoly& a, const PhaseSpacePoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Multiplicative-operator promotion: each coordinate becomes the
  /// corresponding position/momentum generator.
  OperatorExpr to_operator() const;

  /// Inverse view: accepts only expressions built from classical position and
  /// momentum generators (which all commute). Returns nullopt otherwise.
  static std::optional<PhaseSpacePoly> from_operator(const OperatorExpr& e);

  std::string to_string() const;

  void add_term(const Exponents& e, const ParamScalar& c);

 private:
  std::map<Exponents, ParamScalar> terms_;
};

/// Canonical Poisson bracket sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i), over
/// both classical sectors.
PhaseSpacePoly poisson_bracket(const PhaseSpacePoly& f, const PhaseSpacePoly& g);

/// The Hermitian generator of classical evolution for Hamiltonian function
/// H_c: grad_p H_c · lambda_q - grad_q H_c · lambda_p, with the derivative
/// coefficients promoted to multiplicative operators in normal order.
OperatorExpr liouvillian_from_hamiltonian(const PhaseSpacePoly& hc);

}  // namespace hybrid
