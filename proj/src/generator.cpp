#include "hybrid/generator.hpp"

#include <stdexcept>

namespace hybrid {

Generator::Generator(Sector sector, GenKind kind, int axis)
    : sector_(sector), kind_(kind), axis_(axis) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("Generator: axis must be 1..3");
  if (sector_is_quantum(sector) && kind != GenKind::Position && kind != GenKind::Momentum)
    throw std::invalid_argument("Generator: quantum sectors have position and momentum only");
}

std::optional<Generator> Generator::from_id(int id) {
  if (id < 0 || id >= kIdCount) return std::nullopt;
  auto sector = static_cast<Sector>(id / 12);
  auto kind = static_cast<GenKind>((id % 12) / 3);
  int axis = id % 3 + 1;
  if (sector_is_quantum(sector) && kind != GenKind::Position && kind != GenKind::Momentum)
    return std::nullopt;
  return Generator(sector, kind, axis);
}

std::string Generator::base_name() const {
  std::string base;
  if (sector_is_quantum(sector_)) {
    base = (kind_ == GenKind::Position) ? "r" : "k";
  } else {
    switch (kind_) {
      case GenKind::Position: base = "q"; break;
      case GenKind::Momentum: base = "p"; break;
      case GenKind::LambdaQ: base = "lq"; break;
      case GenKind::LambdaP: base = "lp"; break;
    }
  }
  if (sector_ == Sector::Quantum2 || sector_ == Sector::Classical2) base += "2";
  return base;
}

std::optional<std::pair<Sector, GenKind>> Generator::base_from_name(const std::string& base) {
  std::string stem = base;
  bool second = false;
  if (!stem.empty() && stem.back() == '2') {
    second = true;
    stem.pop_back();
  }
  Sector qs = second ? Sector::Quantum2 : Sector::Quantum;
  Sector cs = second ? Sector::Classical2 : Sector::Classical;
  if (stem == "r") return std::make_pair(qs, GenKind::Position);
  if (stem == "k") return std::make_pair(qs, GenKind::Momentum);
  if (stem == "q") return std::make_pair(cs, GenKind::Position);
  if (stem == "p") return std::make_pair(cs, GenKind::Momentum);
  if (stem == "lq") return std::make_pair(cs, GenKind::LambdaQ);
  if (stem == "lp") return std::make_pair(cs, GenKind::LambdaP);
  return std::nullopt;
}

std::string Generator::name() const {
  return base_name() + "[" + std::to_string(axis_) + "]";
}

std::string Generator::display_name() const {
  static const char* kSub[] = {"₁", "₂", "₃"};
  std::string base = base_name();
  std::string out;
  if (base[0] == 'l') {
    out = "λ";  // λ
    out += base.substr(1);
  } else {
    out = base;
  }
  return out + kSub[axis_ - 1];
}

Generator gen_r(int axis) { return Generator(Sector::Quantum, GenKind::Position, axis); }
Generator gen_k(int axis) { return Generator(Sector::Quantum, GenKind::Momentum, axis); }
Generator gen_q(int axis) { return Generator(Sector::Classical, GenKind::Position, axis); }
Generator gen_p(int axis) { return Generator(Sector::Classical, GenKind::Momentum, axis); }
Generator gen_lq(int axis) { return Generator(Sector::Classical, GenKind::LambdaQ, axis); }
Generator gen_lp(int axis) { return Generator(Sector::Classical, GenKind::LambdaP, axis); }

void CommutationTable::set_bracket(const Generator& a, const Generator& b, ParamScalar c) {
  if (a.sector() != b.sector() && !c.is_zero())
    throw std::invalid_argument("CommutationTable: cross-sector brackets must vanish");
  if (a.id() == b.id()) throw std::invalid_argument("CommutationTable: [a,a] is always zero");
  std::pair<int, int> key{std::min(a.id(), b.id()), std::max(a.id(), b.id())};
  if (b.id() < a.id()) c = -c;
  entries_[key] = std::move(c);
}

ParamScalar CommutationTable::bracket(const Generator& a, const Generator& b) const {
  if (a.id() == b.id()) return ParamScalar(0);
  auto it = entries_.find({std::min(a.id(), b.id()), std::max(a.id(), b.id())});
  if (it == entries_.end()) return ParamScalar(0);
  return a.id() < b.id() ? it->second : -it->second;
}

const CommutationTable& CommutationTable::standard() {
  static const CommutationTable table = [] {
    CommutationTable t;
    const ParamScalar i = ParamScalar::i();
    for (Sector s : {Sector::Quantum, Sector::Quantum2}) {
      for (int axis = 1; axis <= 3; ++axis)
        t.set_bracket(Generator(s, GenKind::Position, axis),
                      Generator(s, GenKind::Momentum, axis), i);
    }
    for (Sector s : {Sector::Classical, Sector::Classical2}) {
      for (int axis = 1; axis <= 3; ++axis) {
        t.set_bracket(Generator(s, GenKind::Position, axis),
                      Generator(s, GenKind::LambdaQ, axis), i);
        t.set_bracket(Generator(s, GenKind::Momentum, axis),
                      Generator(s, GenKind::LambdaP, axis), i);
      }
    }
    return t;
  }();
  return table;
}

}  // namespace hybrid
