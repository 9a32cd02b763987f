#include "hybrid/param_poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hybrid {

namespace {

const char* kParamNames[kParamCount] = {"m", "M", "m1", "m2", "M1", "M2", "t"};

ParamExponents zero_exponents() {
  ParamExponents e{};
  e.fill(0);
  return e;
}

}  // namespace

const char* param_name(Param p) { return kParamNames[static_cast<int>(p)]; }

std::optional<Param> param_from_name(const std::string& name) {
  for (int i = 0; i < kParamCount; ++i)
    if (name == kParamNames[i]) return static_cast<Param>(i);
  return std::nullopt;
}

ParamPoly::ParamPoly(GaussRat c) {
  if (!c.is_zero()) terms_[zero_exponents()] = std::move(c);
}

ParamPoly ParamPoly::variable(Param p) {
  ParamPoly r;
  ParamExponents e = zero_exponents();
  e[static_cast<int>(p)] = 1;
  r.terms_[e] = GaussRat(1);
  return r;
}

bool ParamPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == zero_exponents();
}

GaussRat ParamPoly::constant_value() const {
  auto it = terms_.find(zero_exponents());
  return it == terms_.end() ? GaussRat(0) : it->second;
}

int ParamPoly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += static_cast<int>(x);
    d = std::max(d, s);
  }
  return d;
}

int ParamPoly::degree_in(Param p) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[static_cast<int>(p)]));
  return d;
}

const ParamExponents& ParamPoly::leading_exponents() const {
  if (terms_.empty()) throw std::logic_error("ParamPoly: leading term of zero");
  return terms_.rbegin()->first;
}

const GaussRat& ParamPoly::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("ParamPoly: leading term of zero");
  return terms_.rbegin()->second;
}

void ParamPoly::add_term(const ParamExponents& e, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      ParamExponents e;
      for (int i = 0; i < kParamCount; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

void ParamPoly::scale(const GaussRat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return;
  }
  for (auto& [e, v] : terms_) v *= c;
}

ParamPoly ParamPoly::conj() const {
  ParamPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = c.conj();
  return r;
}

ParamPoly ParamPoly::substitute(const std::map<Param, mpq_class>& bindings) const {
  ParamPoly r;
  for (const auto& [e, c] : terms_) {
    ParamExponents rest = e;
    GaussRat coeff = c;
    for (const auto& [p, value] : bindings) {
      int idx = static_cast<int>(p);
      for (std::uint32_t k = 0; k < e[idx]; ++k) coeff *= GaussRat(value);
      rest[idx] = 0;
    }
    r.add_term(rest, coeff);
  }
  return r;
}

bool operator<(const ParamPoly& a, const ParamPoly& b) {
  return std::lexicographical_compare(
      a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
      [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        if (x.second.re() != y.second.re()) return x.second.re() < y.second.re();
        return x.second.im() < y.second.im();
      });
}

std::string ParamPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    std::string term;
    bool has_vars = e != zero_exponents();
    if (c.is_one() && has_vars) {
      // elide the unit coefficient
    } else if (c == GaussRat(-1) && has_vars) {
      term = "-";
    } else {
      term = c.to_string();
    }
    for (int i = 0; i < kParamCount; ++i) {
      if (e[i] == 0) continue;
      if (!term.empty() && term != "-") term += "*";
      term += kParamNames[i];
      if (e[i] > 1) term += "^" + std::to_string(e[i]);
    }
    if (out.empty()) {
      out = term;
    } else if (!term.empty() && term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

std::optional<ParamPoly> divide_exact(const ParamPoly& a, const ParamPoly& b) {
  if (b.is_zero()) return std::nullopt;
  ParamPoly rem = a;
  ParamPoly quot;
  const ParamExponents& lb = b.leading_exponents();
  const GaussRat& cb = b.leading_coefficient();
  while (!rem.is_zero()) {
    const ParamExponents& lr = rem.leading_exponents();
    ParamExponents q;
    for (int i = 0; i < kParamCount; ++i) {
      if (lr[i] < lb[i]) return std::nullopt;
      q[i] = lr[i] - lb[i];
    }
    GaussRat qc = rem.leading_coefficient() / cb;
    ParamPoly step;
    step.add_term(q, qc);
    quot += step;
    rem -= step * b;
  }
  return quot;
}

namespace {

// Univariate view of a poly in variable v: coefficients are polys in the rest.
std::vector<ParamPoly> coeffs_in(const ParamPoly& p, int v) {
  std::vector<ParamPoly> out(static_cast<size_t>(p.degree_in(static_cast<Param>(v))) + 1);
  for (const auto& [e, c] : p.terms()) {
    ParamExponents rest = e;
    std::uint32_t d = rest[v];
    rest[v] = 0;
    out[d].add_term(rest, c);
  }
  return out;
}

ParamPoly from_coeffs(const std::vector<ParamPoly>& cs, int v) {
  ParamPoly out;
  for (size_t d = 0; d < cs.size(); ++d) {
    for (const auto& [e, c] : cs[d].terms()) {
      ParamExponents full = e;
      full[v] = static_cast<std::uint32_t>(d);
      out.add_term(full, c);
    }
  }
  return out;
}

ParamPoly monic(ParamPoly p) {
  if (p.is_zero()) return p;
  p.scale(p.leading_coefficient().inverse());
  return p;
}

int top_variable(const ParamPoly& a, const ParamPoly& b) {
  for (int v = kParamCount - 1; v >= 0; --v)
    if (a.degree_in(static_cast<Param>(v)) > 0 || b.degree_in(static_cast<Param>(v)) > 0) return v;
  return -1;
}

ParamPoly content_of(const std::vector<ParamPoly>& cs) {
  ParamPoly g;
  for (const auto& c : cs) g = poly_gcd(g, c);
  return g;
}

}  // namespace

ParamPoly poly_gcd(ParamPoly a, ParamPoly b) {
  if (a.is_zero()) return monic(std::move(b));
  if (b.is_zero()) return monic(std::move(a));
  int v = top_variable(a, b);
  if (v < 0) return ParamPoly::one();  // nonzero constants

  // Primitive Euclidean algorithm in the top variable.
  auto ca = coeffs_in(a, v);
  auto cb = coeffs_in(b, v);
  ParamPoly cont_a = content_of(ca);
  ParamPoly cont_b = content_of(cb);
  ParamPoly cont = poly_gcd(cont_a, cont_b);

  auto primitive = [&](const ParamPoly& p, const ParamPoly& c) {
    auto q = divide_exact(p, c);
    if (!q) throw std::logic_error("poly_gcd: content does not divide");
    return *q;
  };
  ParamPoly pa = primitive(a, cont_a);
  ParamPoly pb = primitive(b, cont_b);

  while (!pb.is_zero()) {
    // Pseudo-remainder of pa by pb in v, then reduce to primitive part.
    auto A = coeffs_in(pa, v);
    auto B = coeffs_in(pb, v);
    while (!A.empty() && A.size() >= B.size()) {
      // lcB*A - lcA*x^shift*B; the top coefficients cancel by construction.
      ParamPoly lcA = A.back();
      ParamPoly lcB = B.back();
      size_t shift = A.size() - B.size();
      std::vector<ParamPoly> next(A.size() - 1);
      for (size_t i = 0; i + 1 < A.size(); ++i) next[i] = A[i] * lcB;
      for (size_t i = 0; i + 1 < B.size(); ++i) next[i + shift] -= B[i] * lcA;
      while (!next.empty() && next.back().is_zero()) next.pop_back();
      A = std::move(next);
    }
    ParamPoly rem = from_coeffs(A, v);
    pa = std::move(pb);
    if (rem.is_zero()) {
      pb = ParamPoly();
    } else {
      ParamPoly c = content_of(coeffs_in(rem, v));
      pb = primitive(rem, c);
    }
  }
  return monic(cont * pa);
}

}  // namespace hybrid
