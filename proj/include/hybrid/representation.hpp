#pragma once

#include <array>
#include <string>
#include <vector>

#include "hybrid/operator_expr.hpp"

namespace hybrid {

/// A unitary realization of the kinematical algebra: translation, rotation
/// and boost triples plus the time-translation generator, together with the
/// central scalar appearing in the boost-translation bracket.
struct Representation {
  std::string name;
  std::array<OperatorExpr, 3> translations;
  std::array<OperatorExpr, 3> rotations;
  std::array<OperatorExpr, 3> boosts;
  OperatorExpr hamiltonian;
  ParamScalar central_charge;
};

/// One checked bracket relation: computed vs expected and the exact residual.
struct RelationCheck {
  std::string label;
  OperatorExpr computed;
  OperatorExpr expected;
  OperatorExpr residual;
  bool pass = false;
};

struct AlgebraReport {
  std::string representation;
  ParamScalar central_charge;
  std::vector<RelationCheck> entries;
  bool all_pass = true;

  const RelationCheck* find(const std::string& label) const;
};

int levi_civita(int i, int j, int k);

/// Free quantum particle: T = k, J = r x k, G = mass*r - t*k,
/// H = k^2/(2*mass); the central scalar equals the mass.
Representation quantum_representation(
    const ParamScalar& mass = ParamScalar::parameter(Param::M));

/// Classical (phase-space) particle: T = lq, J_i = eps_ijk (q_j lq_k + p_j lp_k),
/// G = -t*lq - mass*lp, H = (1/mass) p·lq; the central scalar is zero.
Representation classical_representation(
    const ParamScalar& mass = ParamScalar::parameter(Param::m));

/// Tensor-product hybrid: componentwise sums of the quantum and classical
/// representations, with H = H_Q + H_cl + interaction. The central scalar is
/// the quantum mass alone. The interaction must be Hermitian.
Representation hybrid_representation(
    const ParamScalar& quantum_mass = ParamScalar::parameter(Param::M),
    const ParamScalar& classical_mass = ParamScalar::parameter(Param::m),
    const OperatorExpr& interaction = OperatorExpr());

/// Two quantum particles with interaction potential V; total generators, and
/// central scalar M1 + M2.
Representation two_particle_quantum_representation(
    const ParamScalar& mass1 = ParamScalar::parameter(Param::M1),
    const ParamScalar& mass2 = ParamScalar::parameter(Param::M2),
    const OperatorExpr& potential = OperatorExpr());

/// All generator components and the central charge evaluated at bindings.
Representation substitute_params(const Representation& rep,
                                 const std::map<Param, mpq_class>& bindings);

/// Checks every bracket family of the algebra against the representation's
/// own central charge:
///   [T,T]=0, [G,G]=0, [J_i,J_j]=i eps J, [J,T]=i eps T, [J,G]=i eps G,
///   [G_i,T_j]=i delta_ij charge, [J,H]=0, [T,H]=0, [G_i,H]=i T_i.
/// Failures are report entries, never exceptions.
AlgebraReport verify_algebra(const Representation& rep);

/// Builds the two-quantum-particle representation with Hermitian potential V
/// and verifies the full algebra (total-momentum conservation is the [T,H]
/// family). V restricted to relative coordinates passes; e.g. V = r1^2 fails.
AlgebraReport two_particle_quantum_check(const OperatorExpr& potential);

}  // namespace hybrid
