#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hybrid/representation.hpp"

namespace hybrid {

/// Search space for covariant interaction terms. The building blocks are
/// r, q, k, p and lambda_p components; lambda_q is excluded unless explicitly
/// opted in (couplings through it make the classical velocity unobservable).
/// The lambda_p degree cap reflects that the classical acceleration must stay
/// free of unobservable operators.
struct ClassificationConfig {
  int max_degree = 2;
  int max_lambda_p_degree = 1;
  bool include_lambda_q = false;
  bool require_hermitian = true;
  bool require_momentum_conservation = false;
  // Generic masses used for the numeric kernel pass; the result is
  // reconstructed and re-verified with fully symbolic masses afterwards.
  long numeric_quantum_mass = 2;
  long numeric_classical_mass = 3;
};

struct InvariantElement {
  OperatorExpr op;  // symbolic in M and m
  bool conserves_total_momentum = false;
  bool commutes_with_q = false;
  bool commutes_with_p = false;
  /// Name of the matching closed form, when the element is a scalar multiple
  /// of one of the known forms modulo the identity.
  std::string matched_form;
};

struct InvariantBasis {
  ClassificationConfig config;
  std::vector<InvariantElement> elements;
  int dimension = 0;
};

/// Building-block generators selected by the config (fixed order).
std::vector<Generator> building_blocks(const ClassificationConfig& config);

/// All normal-ordered monomials over the building blocks within the degree
/// caps, identity included, ordered by total degree then lexicographically.
std::vector<Monomial> invariant_monomial_basis(const ClassificationConfig& config);

/// The nine covariance constraints (translations, boosts, rotations) as a
/// linear system over the monomial basis: rows are commutator coefficients,
/// columns are candidate monomials. Masses are fixed to the config's generic
/// rationals and boosts are evaluated at t = 0 (legitimate once the
/// translation rows are imposed: the t-dependent boost part is -t times the
/// translation constraint). Throws on degenerate mass choices.
struct ConstraintSystem {
  std::vector<Monomial> basis;           // column labels
  std::vector<std::string> row_labels;   // "[P1, .]" style, per row
  std::vector<std::vector<GaussRat>> rows;
};

ConstraintSystem build_constraint_system(const std::vector<Monomial>& basis,
                                         const ClassificationConfig& config);

/// Exact kernel of the constraint system, reconstructed with symbolic masses
/// and re-verified against the fully symbolic (t included) hybrid algebra.
/// Optionally intersected with total-momentum conservation, Hermitized, and
/// matched against the known closed forms.
InvariantBasis solve_invariant_space(const ClassificationConfig& config);

/// Recomputes the conservation/back-reaction flags on the basis elements.
InvariantBasis conservation_flags(InvariantBasis basis);

/// Classical acceleration produced by an interaction term:
/// a_i = (i/mass)[p_i, H_int]. Also reports whether any unobservable lambda
/// operator survives in the result.
struct AccelerationResult {
  std::array<OperatorExpr, 3> components;
  bool contains_lambda = false;
};
AccelerationResult acceleration_operator(
    const OperatorExpr& interaction,
    const ParamScalar& classical_mass = ParamScalar::parameter(Param::m));

/// The known covariant scalar forms (identity, squared relative position,
/// squared relative velocity, their cross product, and the two lambda_p
/// couplings), built symbolically.
std::vector<std::pair<std::string, OperatorExpr>> known_invariant_forms();

}  // namespace hybrid
