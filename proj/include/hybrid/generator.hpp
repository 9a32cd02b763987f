#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "hybrid/param_scalar.hpp"

namespace hybrid {

/// Independent tensor factors of the total Hilbert space. Quantum sectors
/// carry a canonical (position, momentum) pair; classical sectors carry the
/// phase-space coordinates plus the two auxiliary translation generators.
enum class Sector : std::uint8_t { Quantum = 0, Quantum2 = 1, Classical = 2, Classical2 = 3 };

enum class GenKind : std::uint8_t { Position = 0, Momentum = 1, LambdaQ = 2, LambdaP = 3 };

inline bool sector_is_quantum(Sector s) { return s == Sector::Quantum || s == Sector::Quantum2; }

/// One canonical generator. The (sector, kind, axis) triple induces the fixed
/// global total order used for normal ordering.
class Generator {
 public:
  Generator(Sector sector, GenKind kind, int axis);

  Sector sector() const { return sector_; }
  GenKind kind() const { return kind_; }
  int axis() const { return axis_; }

  /// Position in the fixed total order; also a dense array index.
  int id() const {
    return static_cast<int>(sector_) * 12 + static_cast<int>(kind_) * 3 + (axis_ - 1);
  }
  static constexpr int kIdCount = 48;
  static std::optional<Generator> from_id(int id);

  friend bool operator==(const Generator& a, const Generator& b) { return a.id() == b.id(); }
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
    return a.id() <=> b.id();
  }

  /// ASCII name as accepted by the expression language: r[1], lq2[3], ...
  std::string name() const;
  /// Display name with subscripts (λq₁, r₂, ...); console output only.
  std::string display_name() const;

  /// Base spelling without the axis: "r", "k", "q", "p", "lq", "lp",
  /// with a "2" suffix for second-particle sectors.
  std::string base_name() const;
  static std::optional<std::pair<Sector, GenKind>> base_from_name(const std::string& base);

 private:
  Sector sector_;
  GenKind kind_;
  int axis_;
};

// Convenience factories for the common sectors.
Generator gen_r(int axis);   // quantum position
Generator gen_k(int axis);   // quantum momentum
Generator gen_q(int axis);   // classical position
Generator gen_p(int axis);   // classical momentum
Generator gen_lq(int axis);  // classical translation generator (position side)
Generator gen_lp(int axis);  // classical translation generator (momentum side)

/// Central commutation data: [a,b] = c(a,b)·1 with c a ParamScalar. Only
/// same-sector pairs may be nonzero; the canonical table has
/// [position, momentum] = i in quantum sectors and [q,lq] = [p,lp] = i in
/// classical sectors, everything else zero.
class CommutationTable {
 public:
  /// The canonical table shared by the whole library.
  static const CommutationTable& standard();

  /// Empty table (everything commutes); entries can be added for tests.
  CommutationTable() = default;

  /// Sets [a,b] = c (and [b,a] = -c). Cross-sector entries are rejected.
  void set_bracket(const Generator& a, const Generator& b, ParamScalar c);

  /// [a,b] as a central scalar; zero when no entry exists.
  ParamScalar bracket(const Generator& a, const Generator& b) const;

 private:
  // Keyed by (min id, max id); the stored value is for the ascending order.
  std::map<std::pair<int, int>, ParamScalar> entries_;
};

}  // namespace hybrid
