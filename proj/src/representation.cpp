#include "hybrid/representation.hpp"

#include <stdexcept>

namespace hybrid {

namespace {

const ParamScalar kI = ParamScalar::i();
const ParamScalar kT = ParamScalar::parameter(Param::t);

OperatorExpr gen(Sector s, GenKind k, int axis) { return OperatorExpr(Generator(s, k, axis)); }

std::array<OperatorExpr, 3> rotation_triple(Sector s, GenKind pos_kind, GenKind mom_kind,
                                            Sector s2 = Sector::Quantum, bool two = false) {
  // eps_ijk x_j y_k summed over the listed (position,momentum) pair(s)
  std::array<OperatorExpr, 3> out;
  for (int i = 1; i <= 3; ++i) {
    OperatorExpr acc;
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        int eps = levi_civita(i, j, k);
        if (eps == 0) continue;
        ParamScalar c(eps);
        acc += (gen(s, pos_kind, j) * gen(s, mom_kind, k)).scaled(c);
        if (two) acc += (gen(s2, pos_kind, j) * gen(s2, mom_kind, k)).scaled(c);
      }
    out[i - 1] = acc;
  }
  return out;
}

void require_nonzero_mass(const ParamScalar& mass, const char* what) {
  if (mass.is_zero()) throw std::invalid_argument(std::string(what) + ": mass must be nonzero");
}

}  // namespace

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (1,2,3)
  if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) ||
      (i == 3 && j == 1 && k == 2))
    return 1;
  return -1;
}

const RelationCheck* AlgebraReport::find(const std::string& label) const {
  for (const auto& e : entries)
    if (e.label == label) return &e;
  return nullptr;
}

Representation quantum_representation(const ParamScalar& mass) {
  require_nonzero_mass(mass, "quantum_representation");
  Representation rep;
  rep.name = "quantum";
  rep.central_charge = mass;
  for (int i = 1; i <= 3; ++i) {
    rep.translations[i - 1] = gen(Sector::Quantum, GenKind::Momentum, i);
    rep.boosts[i - 1] = gen(Sector::Quantum, GenKind::Position, i).scaled(mass) -
                        gen(Sector::Quantum, GenKind::Momentum, i).scaled(kT);
    OperatorExpr k = gen(Sector::Quantum, GenKind::Momentum, i);
    rep.hamiltonian += (k * k).scaled(ParamScalar(1) / (ParamScalar(2) * mass));
  }
  rep.rotations = rotation_triple(Sector::Quantum, GenKind::Position, GenKind::Momentum);
  return rep;
}

Representation classical_representation(const ParamScalar& mass) {
  require_nonzero_mass(mass, "classical_representation");
  Representation rep;
  rep.name = "classical";
  rep.central_charge = ParamScalar(0);
  for (int i = 1; i <= 3; ++i) {
    rep.translations[i - 1] = gen(Sector::Classical, GenKind::LambdaQ, i);
    rep.boosts[i - 1] = gen(Sector::Classical, GenKind::LambdaQ, i).scaled(-kT) -
                        gen(Sector::Classical, GenKind::LambdaP, i).scaled(mass);
    rep.hamiltonian += (gen(Sector::Classical, GenKind::Momentum, i) *
                        gen(Sector::Classical, GenKind::LambdaQ, i))
                           .scaled(ParamScalar(1) / mass);
  }
  // J_i = eps_ijk (q_j lq_k + p_j lp_k)
  std::array<OperatorExpr, 3> jq =
      rotation_triple(Sector::Classical, GenKind::Position, GenKind::LambdaQ);
  std::array<OperatorExpr, 3> jp =
      rotation_triple(Sector::Classical, GenKind::Momentum, GenKind::LambdaP);
  for (int i = 0; i < 3; ++i) rep.rotations[i] = jq[i] + jp[i];
  return rep;
}

Representation hybrid_representation(const ParamScalar& quantum_mass,
                                     const ParamScalar& classical_mass,
                                     const OperatorExpr& interaction) {
  if (!interaction.is_zero() && !interaction.is_hermitian())
    throw std::invalid_argument("hybrid_representation: interaction must be Hermitian");
  Representation q = quantum_representation(quantum_mass);
  Representation c = classical_representation(classical_mass);
  Representation rep;
  rep.name = "hybrid";
  // The quantum mass alone remains the central scalar of the coupled algebra.
  rep.central_charge = quantum_mass;
  for (int i = 0; i < 3; ++i) {
    rep.translations[i] = q.translations[i] + c.translations[i];
    rep.rotations[i] = q.rotations[i] + c.rotations[i];
    rep.boosts[i] = q.boosts[i] + c.boosts[i];
  }
  rep.hamiltonian = q.hamiltonian + c.hamiltonian + interaction;
  return rep;
}

Representation two_particle_quantum_representation(const ParamScalar& mass1,
                                                   const ParamScalar& mass2,
                                                   const OperatorExpr& potential) {
  require_nonzero_mass(mass1, "two_particle_quantum_representation");
  require_nonzero_mass(mass2, "two_particle_quantum_representation");
  Representation rep;
  rep.name = "two-particle-quantum";
  rep.central_charge = mass1 + mass2;
  for (int i = 1; i <= 3; ++i) {
    OperatorExpr k1 = gen(Sector::Quantum, GenKind::Momentum, i);
    OperatorExpr k2 = gen(Sector::Quantum2, GenKind::Momentum, i);
    rep.translations[i - 1] = k1 + k2;
    rep.boosts[i - 1] = gen(Sector::Quantum, GenKind::Position, i).scaled(mass1) +
                        gen(Sector::Quantum2, GenKind::Position, i).scaled(mass2) -
                        (k1 + k2).scaled(kT);
    rep.hamiltonian += (k1 * k1).scaled(ParamScalar(1) / (ParamScalar(2) * mass1)) +
                       (k2 * k2).scaled(ParamScalar(1) / (ParamScalar(2) * mass2));
  }
  rep.rotations = rotation_triple(Sector::Quantum, GenKind::Position, GenKind::Momentum,
                                  Sector::Quantum2, /*two=*/true);
  rep.hamiltonian += potential;
  return rep;
}

Representation substitute_params(const Representation& rep,
                                 const std::map<Param, mpq_class>& bindings) {
  Representation out;
  out.name = rep.name;
  out.central_charge = rep.central_charge.substitute(bindings);
  for (int i = 0; i < 3; ++i) {
    out.translations[i] = substitute_params(rep.translations[i], bindings);
    out.rotations[i] = substitute_params(rep.rotations[i], bindings);
    out.boosts[i] = substitute_params(rep.boosts[i], bindings);
  }
  out.hamiltonian = substitute_params(rep.hamiltonian, bindings);
  return out;
}

namespace {

void check(AlgebraReport& report, std::string label, const OperatorExpr& computed,
           const OperatorExpr& expected) {
  RelationCheck entry;
  entry.label = std::move(label);
  entry.computed = computed;
  entry.expected = expected;
  entry.residual = computed - expected;
  entry.pass = entry.residual.is_zero();
  report.all_pass = report.all_pass && entry.pass;
  report.entries.push_back(std::move(entry));
}

std::string idx(const char* fam, int i, int j = 0) {
  std::string s = fam;
  s += "[" + std::to_string(i);
  if (j > 0) s += "," + std::to_string(j);
  s += "]";
  return s;
}

}  // namespace

AlgebraReport verify_algebra(const Representation& rep) {
  AlgebraReport report;
  report.representation = rep.name;
  report.central_charge = rep.central_charge;
  const auto& T = rep.translations;
  const auto& J = rep.rotations;
  const auto& G = rep.boosts;
  const auto& H = rep.hamiltonian;

  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      check(report, idx("[T,T]", i, j), commutator(T[i - 1], T[j - 1]), OperatorExpr());
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      check(report, idx("[G,G]", i, j), commutator(G[i - 1], G[j - 1]), OperatorExpr());
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      OperatorExpr expected;
      for (int k = 1; k <= 3; ++k) {
        int eps = levi_civita(i, j, k);
        if (eps != 0) expected += J[k - 1].scaled(kI * ParamScalar(eps));
      }
      check(report, idx("[J,J]", i, j), commutator(J[i - 1], J[j - 1]), expected);
    }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      OperatorExpr expected;
      for (int k = 1; k <= 3; ++k) {
        int eps = levi_civita(i, j, k);
        if (eps != 0) expected += T[k - 1].scaled(kI * ParamScalar(eps));
      }
      check(report, idx("[J,T]", i, j), commutator(J[i - 1], T[j - 1]), expected);
    }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      OperatorExpr expected;
      for (int k = 1; k <= 3; ++k) {
        int eps = levi_civita(i, j, k);
        if (eps != 0) expected += G[k - 1].scaled(kI * ParamScalar(eps));
      }
      check(report, idx("[J,G]", i, j), commutator(J[i - 1], G[j - 1]), expected);
    }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      OperatorExpr expected =
          (i == j) ? OperatorExpr(kI * rep.central_charge) : OperatorExpr();
      check(report, idx("[G,T]", i, j), commutator(G[i - 1], T[j - 1]), expected);
    }
  for (int i = 1; i <= 3; ++i)
    check(report, idx("[J,H]", i), commutator(J[i - 1], H), OperatorExpr());
  for (int i = 1; i <= 3; ++i)
    check(report, idx("[T,H]", i), commutator(T[i - 1], H), OperatorExpr());
  for (int i = 1; i <= 3; ++i)
    check(report, idx("[G,H]", i), commutator(G[i - 1], H), T[i - 1].scaled(kI));
  return report;
}

AlgebraReport two_particle_quantum_check(const OperatorExpr& potential) {
  if (!potential.is_zero() && !potential.is_hermitian())
    throw std::invalid_argument("two_particle_quantum_check: potential must be Hermitian");
  return verify_algebra(two_particle_quantum_representation(
      ParamScalar::parameter(Param::M1), ParamScalar::parameter(Param::M2), potential));
}

}  // namespace hybrid
