#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ncdef/algebra.hpp"
#include "ncdef/hochschild.hpp"
#include "ncdef/hull.hpp"

namespace ncdef {

/// Basis element w (x) E_pq of H_ij (x) Hom_k(M_i, M_j).
struct Label {
  std::size_t word = 0;  // path index in the hull table
  std::size_t src = 0, tgt = 0;
  std::size_t p = 0, q = 0;
  std::size_t degree = 0;
};

struct ObservablesAlg {
  Algebra algebra;
  std::vector<Label> labels;
  std::vector<std::size_t> dims;  // module dimensions
  bool truncated = false;         // hull did not stabilize
  /// Rows: labels; columns: flattened blocks of (+) End_k(M_i).
  Matrix projection;

  std::size_t block_dim(std::size_t i, std::size_t j) const;
};

ObservablesAlg assemble(const ProCouple& pro, const std::vector<std::size_t>& module_dims, const Field& f);

struct VersalMorphism {
  Matrix eta;  // dim A x dim O, row b = eta(b_b)
  Subspace kernel;
  Subspace image;
};

/// Throws HypothesisViolation "TruncatedAlgebra" for presented algebras and
/// InvariantBreach "NotAHomomorphism" when the lift is wrong.
VersalMorphism versal_morphism(const Complex& cx, const ProCouple& pro, const ObservablesAlg& obs);

struct BlockForm {
  std::size_t i = 0, j = 0;
  std::size_t dim = 0;       // dim of the image component
  std::size_t full_dim = 0;  // dim H_ij * d_i * d_j
  std::string descriptor;
  Matrix basis;              // RREF rows over the block's labels
};

struct StandardForm {
  std::vector<BlockForm> blocks;
  std::string summary;  // "k^3", "diag(k, K)", ...
};

StandardForm standard_form(const ProCouple& pro, const ObservablesAlg& obs, const VersalMorphism& eta);

struct BurnsideReport {
  std::vector<std::size_t> end_dims;
  std::vector<std::string> certificates;
  bool classical_surjective = false;
  bool eta_injective = false;
  bool eta_surjective = false;
  bool gr0_iso = false;
  bool gr1_iso = false;
  std::size_t dim_A = 0, dim_O = 0, ker_dim = 0, im_dim = 0;
  std::size_t rad_dim = 0;
  std::size_t gr1_A = 0, gr1_O = 0, gr1_rank = 0;
  bool stabilized = false;
  StandardForm standard;
  /// "isomorphism", "injective", or "not injective"
  std::string verdict() const;
};

BurnsideReport burnside_report(const Complex& cx, const ProCouple& pro);

/// Family M_i viewed as modules over O(M) through the projection to End_k(M_i).
std::vector<ModuleRep> family_over_observables(const ObservablesAlg& obs);

struct ClosureReport {
  std::size_t dim_B = 0;
  std::vector<std::string> certificates;  // over B
  bool eta_bijective = false;
  std::size_t ker_dim = 0, im_dim = 0;
  std::vector<std::size_t> graded_dims_A, graded_dims_B;
  bool stabilized = false;
};

/// Throws HypothesisViolation "HypothesisViolated" when some End_A(M_i) is
/// larger than k.
ClosureReport closure_check(const Complex& cx, std::size_t degree_cap);

}  // namespace ncdef
