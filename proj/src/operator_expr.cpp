#include "hybrid/operator_expr.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hybrid {

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].second <= 0)
      throw std::invalid_argument("Monomial: exponents must be positive");
    if (i > 0 && !(factors_[i - 1].first < factors_[i].first))
      throw std::invalid_argument("Monomial: factors must be strictly ascending");
  }
}

const Monomial& Monomial::identity() {
  static const Monomial id;
  return id;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [g, e] : factors_) d += e;
  return d;
}

int Monomial::degree_of(const Generator& g) const {
  for (const auto& [h, e] : factors_)
    if (h == g) return e;
  return 0;
}

int Monomial::degree_of_kind(GenKind kind) const {
  int d = 0;
  for (const auto& [g, e] : factors_)
    if (g.kind() == kind) d += e;
  return d;
}

bool Monomial::touches_sector(Sector s) const {
  for (const auto& [g, e] : factors_)
    if (g.sector() == s) return true;
  return false;
}

bool operator<(const Monomial& a, const Monomial& b) {
  return std::lexicographical_compare(
      a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
      [](const Monomial::Factor& x, const Monomial::Factor& y) {
        if (!(x.first == y.first)) return x.first < y.first;
        return x.second < y.second;
      });
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [g, e] : factors_) {
    if (!out.empty()) out += "*";
    out += g.name();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string Monomial::display() const {
  static const char* kSup[] = {"", "", "²", "³", "⁴", "⁵", "⁶",
                               "⁷", "⁸", "⁹"};
  if (factors_.empty()) return "\U0001d7d9";  // 𝟙
  std::string out;
  for (const auto& [g, e] : factors_) {
    out += g.display_name();
    if (e > 1) out += (e <= 9 ? kSup[e] : "^" + std::to_string(e));
  }
  return out;
}

OperatorExpr::OperatorExpr(const ParamScalar& scalar) {
  if (!scalar.is_zero()) terms_[Monomial::identity()] = scalar;
}

OperatorExpr::OperatorExpr(const Generator& g) { terms_[Monomial(g)] = ParamScalar(1); }

OperatorExpr::OperatorExpr(const Monomial& mono, const ParamScalar& coeff) {
  if (!coeff.is_zero()) terms_[mono] = coeff;
}

bool OperatorExpr::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_identity());
}

ParamScalar OperatorExpr::scalar_part() const { return coefficient(Monomial::identity()); }

ParamScalar OperatorExpr::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ParamScalar(0) : it->second;
}

int OperatorExpr::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

bool OperatorExpr::is_hermitian() const { return *this == adjoint(*this); }

void OperatorExpr::add_term(const Monomial& m, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OperatorExpr OperatorExpr::operator-() const {
  OperatorExpr r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

OperatorExpr OperatorExpr::scaled(const ParamScalar& c) const {
  OperatorExpr r;
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
  return r;
}

namespace {

// Worklist item: a power-product word, not necessarily ordered.
struct PendingWord {
  std::vector<Monomial::Factor> factors;
  ParamScalar coeff;
};

void merge_adjacent(std::vector<Monomial::Factor>& fs) {
  size_t w = 0;
  for (size_t i = 0; i < fs.size(); ++i) {
    if (w > 0 && fs[w - 1].first == fs[i].first) {
      fs[w - 1].second += fs[i].second;
    } else {
      fs[w++] = fs[i];
    }
  }
  fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(w), fs.end());
}

// Central-bracket power swap:
//   x^a y^b = sum_j j! C(a,j) C(b,j) [x,y]^j y^{b-j} x^{a-j}   (x > y in order)
// Every term either lowers the total degree or fixes the adjacent inversion,
// so the rewriting terminates.
void expand_inversion(const PendingWord& item, size_t pos, const ParamScalar& bracket,
                      std::vector<PendingWord>& out) {
  const auto [x, a] = item.factors[pos];
  const auto [y, b] = item.factors[pos + 1];
  int jmax = std::min(a, b);
  ParamScalar comb(1);  // j! C(a,j) C(b,j) [x,y]^j, built incrementally
  for (int j = 0; j <= jmax; ++j) {
    if (j > 0) {
      // multiply by (a-j+1)(b-j+1)/j * [x,y]
      comb *= ParamScalar::rational(static_cast<long>(a - j + 1) * (b - j + 1), j);
      comb *= bracket;
    }
    PendingWord next;
    next.coeff = item.coeff * comb;
    next.factors.reserve(item.factors.size());
    next.factors.assign(item.factors.begin(), item.factors.begin() + pos);
    if (b - j > 0) next.factors.emplace_back(y, b - j);
    if (a - j > 0) next.factors.emplace_back(x, a - j);
    next.factors.insert(next.factors.end(), item.factors.begin() + pos + 2,
                        item.factors.end());
    out.push_back(std::move(next));
  }
}

}  // namespace

OperatorExpr normal_form_powers(const std::vector<Monomial::Factor>& word,
                                const ParamScalar& coeff, const CommutationTable& table) {
  OperatorExpr result;
  if (coeff.is_zero()) return result;
  std::vector<PendingWord> work;
  work.push_back({word, coeff});
  while (!work.empty()) {
    PendingWord item = std::move(work.back());
    work.pop_back();
    merge_adjacent(item.factors);
    size_t inv = item.factors.size();
    for (size_t i = 0; i + 1 < item.factors.size(); ++i) {
      if (item.factors[i + 1].first < item.factors[i].first) {
        inv = i;
        break;
      }
    }
    if (inv == item.factors.size()) {
      result.add_term(Monomial(std::move(item.factors)), item.coeff);
      continue;
    }
    ParamScalar c = table.bracket(item.factors[inv].first, item.factors[inv + 1].first);
    if (c.is_zero()) {
      std::swap(item.factors[inv], item.factors[inv + 1]);
      work.push_back(std::move(item));
    } else {
      expand_inversion(item, inv, c, work);
    }
  }
  return result;
}

OperatorExpr normal_form(const std::vector<Generator>& word, const ParamScalar& coeff,
                         const CommutationTable& table) {
  std::vector<Monomial::Factor> runs;
  runs.reserve(word.size());
  for (const auto& g : word) {
    if (!runs.empty() && runs.back().first == g)
      ++runs.back().second;
    else
      runs.emplace_back(g, 1);
  }
  return normal_form_powers(runs, coeff, table);
}

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr result;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      std::vector<Monomial::Factor> word = ma.factors();
      word.insert(word.end(), mb.factors().begin(), mb.factors().end());
      result += normal_form_powers(word, ca * cb);
    }
  }
  return result;
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) {
  return a * b - b * a;
}

OperatorExpr adjoint(const OperatorExpr& a) {
  OperatorExpr result;
  for (const auto& [m, c] : a.terms()) {
    std::vector<Monomial::Factor> reversed(m.factors().rbegin(), m.factors().rend());
    result += normal_form_powers(reversed, c.conj());
  }
  return result;
}

OperatorExpr substitute_params(const OperatorExpr& a,
                               const std::map<Param, mpq_class>& bindings) {
  OperatorExpr result;
  for (const auto& [m, c] : a.terms()) result.add_term(m, c.substitute(bindings));
  return result;
}

std::string OperatorExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (m.is_identity()) {
      out += c.to_string();
    } else if (c.is_one()) {
      out += m.to_string();
    } else {
      out += c.to_string() + "*" + m.to_string();
    }
  }
  return out;
}

std::string OperatorExpr::display() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string coeff;
    bool suppress = false;
    if (c.is_one() && !m.is_identity()) {
      suppress = true;
    } else if (c.is_constant() && c.constant_value() == GaussRat(-1) && !m.is_identity()) {
      coeff = "-";
    } else {
      coeff = c.to_string();
    }
    std::string term = suppress ? "" : coeff;
    if (!m.is_identity()) {
      if (!suppress && coeff != "-") term += "·";  // ·
      term += m.display();
    } else if (!suppress) {
      term += "·" + Monomial::identity().display();
    }
    if (out.empty()) {
      out += term;
    } else if (!term.empty() && term[0] == '-') {
      out += " − " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace hybrid
