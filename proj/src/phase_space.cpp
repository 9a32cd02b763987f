#include "hybrid/phase_space.hpp"

#include <stdexcept>

namespace hybrid {

PhaseVar PhaseVar::from_index(int i) {
  if (i < 0 || i >= kPhaseVarCount) throw std::out_of_range("PhaseVar index");
  Sector s = (i / 6 == 0) ? Sector::Classical : Sector::Classical2;
  GenKind k = ((i % 6) / 3 == 0) ? GenKind::Position : GenKind::Momentum;
  return PhaseVar{s, k, i % 3 + 1};
}

PhaseSpacePoly::PhaseSpacePoly(const ParamScalar& c) {
  if (!c.is_zero()) {
    Exponents e{};
    e.fill(0);
    terms_[e] = c;
  }
}

PhaseSpacePoly PhaseSpacePoly::coordinate(const PhaseVar& v) {
  PhaseSpacePoly r;
  Exponents e{};
  e.fill(0);
  e[v.index()] = 1;
  r.terms_[e] = ParamScalar(1);
  return r;
}

void PhaseSpacePoly::add_term(const Exponents& e, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhaseSpacePoly PhaseSpacePoly::operator-() const {
  PhaseSpacePoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

PhaseSpacePoly& PhaseSpacePoly::operator+=(const PhaseSpacePoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

PhaseSpacePoly& PhaseSpacePoly::operator-=(const PhaseSpacePoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

PhaseSpacePoly operator*(const PhaseSpacePoly& a, const PhaseSpacePoly& b) {
  PhaseSpacePoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      PhaseSpacePoly::Exponents e;
      for (int i = 0; i < kPhaseVarCount; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

PhaseSpacePoly PhaseSpacePoly::scaled(const ParamScalar& c) const {
  PhaseSpacePoly r;
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
  return r;
}

PhaseSpacePoly PhaseSpacePoly::derivative(const PhaseVar& v) const {
  PhaseSpacePoly r;
  int idx = v.index();
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents d = e;
    d[idx] -= 1;
    r.add_term(d, c * ParamScalar(static_cast<long>(e[idx])));
  }
  return r;
}

OperatorExpr PhaseSpacePoly::to_operator() const {
  OperatorExpr out;
  for (const auto& [e, c] : terms_) {
    std::vector<Monomial::Factor> factors;
    for (int i = 0; i < kPhaseVarCount; ++i)
      if (e[i] > 0) factors.emplace_back(PhaseVar::from_index(i).generator(),
                                         static_cast<int>(e[i]));
    out += normal_form_powers(factors, c);
  }
  return out;
}

std::optional<PhaseSpacePoly> PhaseSpacePoly::from_operator(const OperatorExpr& e) {
  PhaseSpacePoly out;
  for (const auto& [m, c] : e.terms()) {
    Exponents exps{};
    exps.fill(0);
    for (const auto& [g, exp] : m.factors()) {
      if (sector_is_quantum(g.sector())) return std::nullopt;
      if (g.kind() != GenKind::Position && g.kind() != GenKind::Momentum) return std::nullopt;
      exps[PhaseVar{g.sector(), g.kind(), g.axis()}.index()] =
          static_cast<std::uint32_t>(exp);
    }
    out.add_term(exps, c);
  }
  return out;
}

std::string PhaseSpacePoly::to_string() const { return to_operator().to_string(); }

PhaseSpacePoly poisson_bracket(const PhaseSpacePoly& f, const PhaseSpacePoly& g) {
  PhaseSpacePoly out;
  for (Sector s : {Sector::Classical, Sector::Classical2}) {
    for (int axis = 1; axis <= 3; ++axis) {
      PhaseVar q{s, GenKind::Position, axis};
      PhaseVar p{s, GenKind::Momentum, axis};
      out += f.derivative(q) * g.derivative(p) - f.derivative(p) * g.derivative(q);
    }
  }
  return out;
}

OperatorExpr liouvillian_from_hamiltonian(const PhaseSpacePoly& hc) {
  OperatorExpr out;
  for (Sector s : {Sector::Classical, Sector::Classical2}) {
    for (int axis = 1; axis <= 3; ++axis) {
      PhaseVar q{s, GenKind::Position, axis};
      PhaseVar p{s, GenKind::Momentum, axis};
      OperatorExpr lam_q{Generator(s, GenKind::LambdaQ, axis)};
      OperatorExpr lam_p{Generator(s, GenKind::LambdaP, axis)};
      out += hc.derivative(p).to_operator() * lam_q;
      out -= hc.derivative(q).to_operator() * lam_p;
    }
  }
  return out;
}

}  // namespace hybrid
