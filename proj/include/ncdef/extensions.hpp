#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncdef/hochschild.hpp"
#include "ncdef/massey.hpp"

namespace ncdef {

/// Chain M_{modules[0]}, ..., M_{modules[r-1]} with cochains psi(i, j),
/// 0 <= i < j < r. Missing entries are zero.
struct CofiltrationSpec {
  std::vector<std::size_t> modules;
  std::map<std::pair<std::size_t, std::size_t>, Cochain> psi;
};

/// E = M_1 + ... + M_r with block upper-triangular action:
/// rho_E(a) has rho_i(a) on the diagonal and psi(i, j)(a) in block (i, j).
/// The blocks i >= k span a submodule for every k.
struct IteratedExtension {
  CofiltrationSpec spec;
  ModuleRep module;
  std::vector<std::size_t> offsets;
  /// Ext^1 coordinates of psi(i, i+1).
  std::vector<Vector> induced;
  /// dim of the submodule spanned by blocks k..r-1, for k = 0..r-1.
  std::vector<std::size_t> flag_dims;
};

/// Checks -d(psi(i, j)) = sum_l psi(i, l) . psi(l, j) for every i < j (valid
/// pairs only) and builds E. Throws ScenarioError "NotAssociativeAction"
/// naming the first failing (i, j), 1-based.
IteratedExtension build(const Complex& cx, const CofiltrationSpec& spec);

/// alpha(i, j) = (-1)^(j-i+1) psi(i, j), including the corner.
DefiningSystem alpha_from_psi(const Complex& cx, const CofiltrationSpec& spec);
CofiltrationSpec psi_from_alpha(const DefiningSystem& sys);

/// d(alpha(0, r-1)) equals the defining sum at the corner, i.e. the Massey
/// value of the system is zero with alpha(0, r-1) as primitive.
bool corner_bounds(const Complex& cx, const DefiningSystem& sys);

struct VanishingResult {
  bool constructible = false;
  DefiningSystem system;  // complete, corner included, when constructible
  std::optional<IteratedExtension> extension;
  bool adjusted = false;  // indeterminacy search shifted some alpha
  // when obstructed:
  std::size_t order = 0;  // number of consecutive classes in the blocked product
  std::size_t i = 0, j = 0;
  std::size_t src = 0, tgt = 0;  // family indices of the obstructed pair
  Vector classes;  // registry coordinates, sign per Conventions::massey_sign
};

/// Tries to complete the defining system for the consecutive cocycles and
/// builds the iterated extension when the full Massey value vanishes.
VanishingResult massey_vanishing_check(const Complex& cx, ClassRegistry& reg, const std::vector<std::size_t>& modules,
                                       const std::vector<Cochain>& consecutive, bool search_indeterminacy);

struct AnnihilationReport {
  bool annihilates = false;     // E . K = 0
  bool modules_vanish = false;  // M_i . K = 0 along the chain
  bool alpha_vanish = false;    // alpha(i, j)(K) = 0 for all i < j
};

/// Throws ScenarioError "NotAnIdeal" when K is not a two-sided ideal.
AnnihilationReport annihilation_check(const Complex& cx, const IteratedExtension& e, const Subspace& k);

}  // namespace ncdef
