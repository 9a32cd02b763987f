#pragma once

// Function-space oracle: realizes every generator as a multiplication or
// derivative operator on polynomials (position representation for the quantum
// sectors, phase-space representation for the classical ones):
//   r -> x*          k -> -i d/dx
//   q -> q*          p -> p*
//   lq -> -i d/dq    lp -> -i d/dp
// Completely independent of the normal-ordering engine; an OperatorExpr is
// zero iff it annihilates all polynomial test functions up to its derivative
// order.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "hybrid/operator_expr.hpp"
#include "hybrid/phase_space.hpp"

namespace polyrep {

using hybrid::GenKind;
using hybrid::Generator;
using hybrid::OperatorExpr;
using hybrid::ParamScalar;
using hybrid::Sector;

inline constexpr int kVarCount = 18;

/// Coordinate slot a generator multiplies by / differentiates along.
inline int var_index(const Generator& g) {
  int axis = g.axis() - 1;
  switch (g.sector()) {
    case Sector::Quantum: return 0 + axis;
    case Sector::Quantum2: return 3 + axis;
    case Sector::Classical:
      return (g.kind() == GenKind::Position || g.kind() == GenKind::LambdaQ) ? 6 + axis
                                                                             : 9 + axis;
    case Sector::Classical2:
      return (g.kind() == GenKind::Position || g.kind() == GenKind::LambdaQ) ? 12 + axis
                                                                             : 15 + axis;
  }
  return -1;
}

inline bool is_derivative(const Generator& g) {
  if (hybrid::sector_is_quantum(g.sector())) return g.kind() == GenKind::Momentum;
  return g.kind() == GenKind::LambdaQ || g.kind() == GenKind::LambdaP;
}

/// Sparse polynomial test function with exact coefficients.
class PolyFn {
 public:
  using Exps = std::array<std::uint32_t, kVarCount>;

  static PolyFn one() {
    PolyFn f;
    Exps e{};
    e.fill(0);
    f.terms_[e] = ParamScalar(1);
    return f;
  }
  static PolyFn monomial(const Exps& e) {
    PolyFn f;
    f.terms_[e] = ParamScalar(1);
    return f;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exps, ParamScalar>& terms() const { return terms_; }

  void add(const Exps& e, const ParamScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PolyFn mul_var(int v) const {
    PolyFn out;
    for (const auto& [e, c] : terms_) {
      Exps w = e;
      ++w[v];
      out.add(w, c);
    }
    return out;
  }

  PolyFn derivative(int v) const {
    PolyFn out;
    for (const auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      Exps w = e;
      --w[v];
      out.add(w, c * ParamScalar(static_cast<long>(e[v])));
    }
    return out;
  }

  PolyFn scaled(const ParamScalar& c) const {
    PolyFn out;
    if (c.is_zero()) return out;
    for (const auto& [e, v] : terms_) out.terms_[e] = v * c;
    return out;
  }

  PolyFn& operator+=(const PolyFn& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }

  friend bool operator==(const PolyFn& a, const PolyFn& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Exps, ParamScalar> terms_;
};

inline PolyFn apply_generator(const Generator& g, const PolyFn& f) {
  int v = var_index(g);
  if (is_derivative(g)) return f.derivative(v).scaled(-ParamScalar::i());
  return f.mul_var(v);
}

inline PolyFn apply(const OperatorExpr& op, const PolyFn& f) {
  PolyFn out;
  for (const auto& [mono, coeff] : op.terms()) {
    PolyFn acc = f;
    // rightmost factor acts first
    const auto& fs = mono.factors();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it)
      for (int rep = 0; rep < it->second; ++rep) acc = apply_generator(it->first, acc);
    out += acc.scaled(coeff);
  }
  return out;
}

/// Highest derivative order of any monomial in the expression.
inline int derivative_order(const OperatorExpr& op) {
  int d = 0;
  for (const auto& [mono, coeff] : op.terms()) {
    int o = 0;
    for (const auto& [g, e] : mono.factors())
      if (is_derivative(g)) o += e;
    d = std::max(d, o);
  }
  return d;
}

/// Exhaustive zero test: applies the operator to every monomial in the given
/// variables up to the operator's derivative order. A normal-ordered operator
/// that kills all of them is the zero operator (triangularity in the symbol).
inline bool annihilates_all(const OperatorExpr& op, const std::vector<int>& vars) {
  int order = derivative_order(op);
  std::vector<PolyFn::Exps> tests;
  PolyFn::Exps zero{};
  zero.fill(0);
  tests.push_back(zero);
  for (int step = 0; step < order; ++step) {
    size_t n = tests.size();
    std::vector<PolyFn::Exps> next(tests.begin(), tests.end());
    for (size_t i = 0; i < n; ++i)
      for (int v : vars) {
        PolyFn::Exps e = tests[i];
        ++e[v];
        next.push_back(e);
      }
    tests = std::move(next);
  }
  for (const auto& e : tests)
    if (!apply(op, PolyFn::monomial(e)).is_zero()) return false;
  return true;
}

/// All coordinate slots touched by the expression (multiplications and the
/// conjugate coordinates of its derivative generators).
inline std::vector<int> variables_of(const OperatorExpr& op) {
  std::array<bool, kVarCount> used{};
  for (const auto& [mono, coeff] : op.terms())
    for (const auto& [g, e] : mono.factors()) used[var_index(g)] = true;
  std::vector<int> vars;
  for (int v = 0; v < kVarCount; ++v)
    if (used[v]) vars.push_back(v);
  return vars;
}

inline bool is_zero_operator(const OperatorExpr& op) {
  if (op.is_zero()) return true;
  return annihilates_all(op, variables_of(op));
}

/// Embedding of a classical Hamiltonian function as a test function.
inline PolyFn from_phase_poly(const hybrid::PhaseSpacePoly& p) {
  PolyFn out;
  for (const auto& [e, c] : p.terms()) {
    PolyFn::Exps w{};
    w.fill(0);
    for (int i = 0; i < hybrid::kPhaseVarCount; ++i) {
      if (e[i] == 0) continue;
      w[var_index(hybrid::PhaseVar::from_index(i).generator())] = e[i];
    }
    out.add(w, c);
  }
  return out;
}

}  // namespace polyrep
