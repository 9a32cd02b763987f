#include "hybrid/classify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hybrid/exact_linalg.hpp"

namespace hybrid {

namespace {

const ParamScalar kI = ParamScalar::i();
const ParamScalar kM = ParamScalar::parameter(Param::M);
const ParamScalar km = ParamScalar::parameter(Param::m);

OperatorExpr op(const Generator& g) { return OperatorExpr(g); }

void validate(const ClassificationConfig& config) {
  if (config.max_degree < 0 || config.max_lambda_p_degree < 0)
    throw std::invalid_argument("classification: degree bounds must be nonnegative");
  long Mq = config.numeric_quantum_mass;
  long mc = config.numeric_classical_mass;
  if (Mq == 0 || mc == 0 || Mq == mc)
    throw std::invalid_argument("classification: generic masses must be nonzero and distinct");
}

/// The 9 covariance generators plus (optionally) the 3 total-momentum
/// components, for the given masses at t = 0 or symbolic t.
std::vector<std::pair<std::string, OperatorExpr>> constraint_ops(
    const ParamScalar& quantum_mass, const ParamScalar& classical_mass, bool zero_t,
    bool with_momentum) {
  Representation rep = hybrid_representation(quantum_mass, classical_mass);
  if (zero_t) rep = substitute_params(rep, {{Param::t, 0}});
  std::vector<std::pair<std::string, OperatorExpr>> ops;
  for (int i = 0; i < 3; ++i)
    ops.emplace_back("[P" + std::to_string(i + 1) + ",.]", rep.translations[i]);
  for (int i = 0; i < 3; ++i)
    ops.emplace_back("[G" + std::to_string(i + 1) + ",.]", rep.boosts[i]);
  for (int i = 0; i < 3; ++i)
    ops.emplace_back("[J" + std::to_string(i + 1) + ",.]", rep.rotations[i]);
  if (with_momentum) {
    for (int i = 1; i <= 3; ++i)
      ops.emplace_back("[k" + std::to_string(i) + "+p" + std::to_string(i) + ",.]",
                       op(gen_k(i)) + op(gen_p(i)));
  }
  return ops;
}

}  // namespace

std::vector<Generator> building_blocks(const ClassificationConfig& config) {
  std::vector<Generator> blocks;
  for (int axis = 1; axis <= 3; ++axis) blocks.push_back(gen_r(axis));
  for (int axis = 1; axis <= 3; ++axis) blocks.push_back(gen_k(axis));
  for (int axis = 1; axis <= 3; ++axis) blocks.push_back(gen_q(axis));
  for (int axis = 1; axis <= 3; ++axis) blocks.push_back(gen_p(axis));
  if (config.include_lambda_q)
    for (int axis = 1; axis <= 3; ++axis) blocks.push_back(gen_lq(axis));
  for (int axis = 1; axis <= 3; ++axis) blocks.push_back(gen_lp(axis));
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

std::vector<Monomial> invariant_monomial_basis(const ClassificationConfig& config) {
  validate(config);
  std::vector<Generator> blocks = building_blocks(config);
  std::vector<Monomial> out;
  // Blocks are ascending and repeated picks merge, so every emitted factor
  // list is already a normal-ordered power product.
  std::vector<Monomial::Factor> stack;
  auto emit = [&]() {
    std::vector<Monomial::Factor> merged;
    for (const auto& f : stack) {
      if (!merged.empty() && merged.back().first == f.first)
        merged.back().second += f.second;
      else
        merged.push_back(f);
    }
    out.emplace_back(std::move(merged));
  };
  auto gen_rec = [&](auto&& self, size_t next, int degree_left, int lp_left) -> void {
    emit();
    for (size_t b = next; b < blocks.size(); ++b) {
      if (degree_left == 0) break;
      bool is_lp = blocks[b].kind() == GenKind::LambdaP;
      if (is_lp && lp_left == 0) continue;
      stack.emplace_back(blocks[b], 1);
      self(self, b, degree_left - 1, lp_left - (is_lp ? 1 : 0));
      stack.pop_back();
    }
  };
  gen_rec(gen_rec, 0, config.max_degree, config.max_lambda_p_degree);

  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConstraintSystem build_constraint_system(const std::vector<Monomial>& basis,
                                         const ClassificationConfig& config) {
  validate(config);
  auto ops = constraint_ops(ParamScalar(GaussRat(config.numeric_quantum_mass)),
                            ParamScalar(GaussRat(config.numeric_classical_mass)),
                            /*zero_t=*/true, config.require_momentum_conservation);

  ConstraintSystem sys;
  sys.basis = basis;
  std::map<std::pair<size_t, Monomial>, size_t> row_of;  // (op index, monomial) -> row
  for (size_t col = 0; col < basis.size(); ++col) {
    OperatorExpr b(basis[col], ParamScalar(1));
    for (size_t o = 0; o < ops.size(); ++o) {
      OperatorExpr c = commutator(ops[o].second, b);
      for (const auto& [mono, coeff] : c.terms()) {
        if (!coeff.is_constant())
          throw std::logic_error("constraint system: non-constant coefficient");
        auto key = std::make_pair(o, mono);
        auto it = row_of.find(key);
        if (it == row_of.end()) {
          it = row_of.emplace(key, sys.rows.size()).first;
          sys.rows.emplace_back(basis.size(), GaussRat(0));
          sys.row_labels.push_back(ops[o].first + " -> " + mono.to_string());
        }
        sys.rows[it->second][col] = coeff.constant_value();
      }
    }
  }
  return sys;
}

namespace {

/// Solves the same constraints with fully symbolic masses, restricted to the
/// support columns, and returns the unique (up to scale) solution.
OperatorExpr symbolic_reconstruction(const std::vector<Monomial>& support,
                                     bool with_momentum) {
  auto ops = constraint_ops(kM, km, /*zero_t=*/true, with_momentum);
  std::vector<std::vector<ParamScalar>> rows;
  std::map<std::pair<size_t, Monomial>, size_t> row_of;
  for (size_t col = 0; col < support.size(); ++col) {
    OperatorExpr b(support[col], ParamScalar(1));
    for (size_t o = 0; o < ops.size(); ++o) {
      OperatorExpr c = commutator(ops[o].second, b);
      for (const auto& [mono, coeff] : c.terms()) {
        auto key = std::make_pair(o, mono);
        auto it = row_of.find(key);
        if (it == row_of.end()) {
          it = row_of.emplace(key, rows.size()).first;
          rows.emplace_back(support.size(), ParamScalar(0));
        }
        rows[it->second][col] = coeff;
      }
    }
  }
  DenseMatrix<ParamScalar> mat(std::max<size_t>(rows.size(), 1), support.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < support.size(); ++c) mat.at(r, c) = rows[r][c];
  auto kernel = mat.nullspace();
  if (kernel.size() != 1)
    throw std::logic_error(
        "classification: symbolic reconstruction expected a one-dimensional space, got " +
        std::to_string(kernel.size()));
  OperatorExpr e;
  for (size_t c = 0; c < support.size(); ++c) e.add_term(support[c], kernel[0][c]);
  return e;
}

std::string match_known_form(const OperatorExpr& e) {
  for (const auto& [name, form] : known_invariant_forms()) {
    // e == alpha*form + beta*1 with scalar alpha != 0, beta
    const Monomial* probe = nullptr;
    for (const auto& [m, c] : form.terms())
      if (!m.is_identity()) {
        probe = &m;
        break;
      }
    if (probe == nullptr) {
      // the identity form
      if (e.is_scalar() && !e.is_zero()) return name;
      continue;
    }
    ParamScalar fc = form.coefficient(*probe);
    ParamScalar ec = e.coefficient(*probe);
    if (ec.is_zero()) continue;
    ParamScalar alpha = ec / fc;
    OperatorExpr diff = e - form.scaled(alpha);
    if (diff.is_scalar()) return name;
  }
  return "";
}

}  // namespace

std::vector<std::pair<std::string, OperatorExpr>> known_invariant_forms() {
  std::vector<std::pair<std::string, OperatorExpr>> forms;
  OperatorExpr rel_pos_sq, rel_vel_sq, cross, pos_lp, vel_lp;
  for (int i = 1; i <= 3; ++i) {
    OperatorExpr d = op(gen_r(i)) - op(gen_q(i));
    OperatorExpr u = op(gen_k(i)).scaled(ParamScalar(1) / kM) -
                     op(gen_p(i)).scaled(ParamScalar(1) / km);
    OperatorExpr lp = op(gen_lp(i));
    rel_pos_sq += d * d;
    rel_vel_sq += u * u;
    cross += (d * u + u * d).scaled(ParamScalar::rational(1, 2));
    pos_lp += d * lp;
    vel_lp += (u * lp + lp * u).scaled(ParamScalar::rational(1, 2));
  }
  forms.emplace_back("1", OperatorExpr::identity());
  forms.emplace_back("(r-q)^2", rel_pos_sq);
  forms.emplace_back("(k/M-p/m)^2", rel_vel_sq);
  forms.emplace_back("(r-q).(k/M-p/m)", cross);
  forms.emplace_back("(r-q).lp", pos_lp);
  forms.emplace_back("(k/M-p/m).lp", vel_lp);
  return forms;
}

InvariantBasis solve_invariant_space(const ClassificationConfig& config) {
  validate(config);
  std::vector<Monomial> basis = invariant_monomial_basis(config);
  ConstraintSystem sys = build_constraint_system(basis, config);

  DenseMatrix<GaussRat> mat(std::max<size_t>(sys.rows.size(), 1), basis.size());
  for (size_t r = 0; r < sys.rows.size(); ++r)
    for (size_t c = 0; c < basis.size(); ++c) mat.at(r, c) = sys.rows[r][c];
  auto kernel = mat.nullspace();

  // Reduce the kernel basis itself so supports are canonical and minimal.
  if (!kernel.empty()) {
    DenseMatrix<GaussRat> kb(kernel.size(), basis.size());
    for (size_t r = 0; r < kernel.size(); ++r)
      for (size_t c = 0; c < basis.size(); ++c) kb.at(r, c) = kernel[r][c];
    kb.rref();
    for (size_t r = 0; r < kernel.size(); ++r)
      for (size_t c = 0; c < basis.size(); ++c) kernel[r][c] = kb.at(r, c);
  }

  InvariantBasis result;
  result.config = config;

  auto symbolic_ops_full_t = constraint_ops(kM, km, /*zero_t=*/false, false);

  for (const auto& vec : kernel) {
    std::vector<Monomial> support;
    for (size_t c = 0; c < basis.size(); ++c)
      if (!vec[c].is_zero()) support.push_back(basis[c]);
    OperatorExpr e =
        symbolic_reconstruction(support, config.require_momentum_conservation);

    // normalize: unit coefficient on the lowest-order support monomial
    ParamScalar lead = e.coefficient(support.front());
    if (lead.is_zero()) throw std::logic_error("classification: lost support pivot");
    e = e.scaled(lead.inverse());

    if (config.require_hermitian) {
      OperatorExpr sym = (e + adjoint(e)).scaled(ParamScalar::rational(1, 2));
      if (!sym.is_zero()) e = sym;
    }

    // full symbolic re-verification, t included
    for (const auto& [label, x] : symbolic_ops_full_t) {
      if (!commutator(x, e).is_zero())
        throw std::logic_error("classification: symbolic residual nonzero for " + label);
    }
    if (config.require_momentum_conservation) {
      for (int i = 1; i <= 3; ++i)
        if (!commutator(op(gen_k(i)) + op(gen_p(i)), e).is_zero())
          throw std::logic_error("classification: momentum filter violated symbolically");
    }

    InvariantElement elem;
    elem.op = e;
    elem.matched_form = match_known_form(e);
    result.elements.push_back(std::move(elem));
  }
  result.dimension = static_cast<int>(result.elements.size());
  return conservation_flags(std::move(result));
}

InvariantBasis conservation_flags(InvariantBasis basis) {
  for (auto& elem : basis.elements) {
    bool conserves = true, with_q = true, with_p = true;
    for (int i = 1; i <= 3; ++i) {
      if (!commutator(op(gen_k(i)) + op(gen_p(i)), elem.op).is_zero()) conserves = false;
      if (!commutator(op(gen_q(i)), elem.op).is_zero()) with_q = false;
      if (!commutator(op(gen_p(i)), elem.op).is_zero()) with_p = false;
    }
    elem.conserves_total_momentum = conserves;
    elem.commutes_with_q = with_q;
    elem.commutes_with_p = with_p;
  }
  return basis;
}

AccelerationResult acceleration_operator(const OperatorExpr& interaction,
                                         const ParamScalar& classical_mass) {
  if (!interaction.is_zero() && !interaction.is_hermitian())
    throw std::invalid_argument("acceleration_operator: interaction must be Hermitian");
  if (classical_mass.is_zero())
    throw std::invalid_argument("acceleration_operator: mass must be nonzero");
  AccelerationResult res;
  ParamScalar factor = kI / classical_mass;
  for (int i = 1; i <= 3; ++i) {
    OperatorExpr a = commutator(op(gen_p(i)), interaction).scaled(factor);
    for (const auto& [mono, c] : a.terms()) {
      if (mono.degree_of_kind(GenKind::LambdaQ) > 0 ||
          mono.degree_of_kind(GenKind::LambdaP) > 0)
        res.contains_lambda = true;
    }
    res.components[i - 1] = std::move(a);
  }
  return res;
}

}  // namespace hybrid
