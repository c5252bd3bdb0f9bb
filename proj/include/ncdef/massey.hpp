#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncdef/hochschild.hpp"

namespace ncdef {

/// Cochains alpha(i, j), 0 <= i < j < r, along a chain of family members
/// M_{modules[0]}, ..., M_{modules[r-1]}; alpha(i, j) maps into
/// Hom(M_{modules[i]}, M_{modules[j]}). The corner (0, r-1) is left open.
struct DefiningSystem {
  std::vector<std::size_t> modules;
  std::map<std::pair<std::size_t, std::size_t>, Cochain> alpha;

  std::size_t length() const { return modules.size(); }
  bool has(std::size_t i, std::size_t j) const { return alpha.count({i, j}) > 0; }
  const Cochain& at(std::size_t i, std::size_t j) const { return alpha.at({i, j}); }
  /// Every slot except the corner is filled.
  bool complete() const;
};

/// Starts a system from the consecutive cocycles alpha(i, i+1). Throws
/// ScenarioError "EndpointMismatch" or "NotACocycle".
DefiningSystem start_system(const Complex& cx, std::vector<std::size_t> modules, std::vector<Cochain> consecutive);

/// sum_{i<l<j} alpha(i, l) . alpha(l, j)
Cochain defining_sum(const Complex& cx, const DefiningSystem& sys, std::size_t i, std::size_t j);

/// The cocycle alpha~(i, j) that failed, with its class coordinates.
struct Obstruction {
  std::size_t order = 0;  // number of consecutive classes involved (j - i)
  std::size_t i = 0, j = 0;
  Vector classes;
  Cochain witness;
};

struct ExtendResult {
  DefiningSystem system;
  std::optional<Obstruction> obstruction;
  bool adjusted = false;  // some cochain was shifted by a cocycle
};

/// Fills diagonals j - i = 2, 3, ... by primitives. When a diagonal of order
/// >= 3 is blocked and search_indeterminacy is set, the previous diagonal is
/// shifted by combinations of Ext^1 representatives to clear the classes.
ExtendResult extend_system(const Complex& cx, ClassRegistry& reg, DefiningSystem partial,
                           bool search_indeterminacy = false);

/// Shifts diagonal (gap - 1) by cocycles so that alpha~(i, j) is a coboundary
/// for every (i, j) in targets (all on diagonal gap). Returns false when no
/// shift works; the system is untouched then.
bool clear_by_indeterminacy(const Complex& cx, ClassRegistry& reg, DefiningSystem& sys, std::size_t gap,
                            const std::vector<std::pair<std::size_t, std::size_t>>& targets);

struct MasseyValue {
  std::size_t src = 0, tgt = 0;
  Cochain witness;            // alpha~(0, r-1)
  Vector defining_class;      // class of alpha~(0, r-1)
  Vector obstruction_class;   // (-1)^(r+1) defining_class
  /// The one selected by Conventions::massey_sign.
  const Vector& reported(const Conventions& c) const {
    return c.massey_sign == "defining" ? defining_class : obstruction_class;
  }
  bool vanishes() const;
};

MasseyValue massey_value(const Complex& cx, ClassRegistry& reg, const DefiningSystem& sys);

}  // namespace ncdef
