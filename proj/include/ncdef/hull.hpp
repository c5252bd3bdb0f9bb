#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncdef/hochschild.hpp"
#include "ncdef/paths.hpp"

namespace ncdef {

/// One obstruction relation f, tied to the registered class it comes from.
struct HullRelation {
  std::size_t src = 0, tgt = 0;
  std::size_t cls = 0;  // index in the registry slot (src, tgt)
  std::string name;     // "f12", "f11_2", ...
  Poly poly;
};

/// H_n = T / a_n with a_n containing all paths of degree >= n: the normal
/// words have degree <= n - 1 and carry the versal action psi_w.
struct HullLevel {
  std::size_t n = 2;
  std::vector<HullRelation> relations;
  std::vector<std::size_t> normal;        // path indices, increasing
  std::map<std::size_t, Cochain> action;  // path index -> psi_w
  /// Relations that appeared at this step, rendered.
  std::vector<std::string> rendered;
  std::vector<std::size_t> graded_dims;   // per degree 0..n-1
};

struct LevelRecord {
  std::size_t n = 0;
  std::vector<std::string> relations;  // "f12 = ..."
  std::vector<std::size_t> graded_dims;
};

struct ProCouple {
  Quiver quiver;  // hull quiver, arrows t_ij(l) ordered by (i, j, l)
  std::vector<std::vector<std::size_t>> ext1_dims;
  std::size_t degree_cap = 0;
  /// Degree of the path table the final level lives in; paths of larger
  /// degree are zero in H.
  std::size_t top_degree = 1;
  bool stabilized = false;
  HullLevel level;
  std::vector<LevelRecord> history;
  std::vector<std::string> class_names;
  /// dim K_n for n = 1, 2, ... (finite-dimensional algebras only)
  std::vector<std::size_t> kernel_chain;

  PathTable table() const { return PathTable(quiver, top_degree); }
  /// Graded dimension of H per degree.
  const std::vector<std::size_t>& graded_dims() const { return level.graded_dims; }
  std::size_t dim_block(std::size_t i, std::size_t j) const;
  std::size_t dim() const;
};

/// Builds the hull level by level for one (algebra, family) pair. Owns the
/// obstruction registry, so Massey computations can share class names.
class HullEngine {
 public:
  explicit HullEngine(const Complex& cx);

  const Complex& complex() const { return *cx_; }
  ClassRegistry& registry() { return reg_; }
  const Quiver& quiver() const { return quiver_; }

  HullLevel tangent_level();
  /// Computes the degree-n relations and lifts the action to H_{n+1}.
  /// Throws ScenarioError "DegreeCapExceeded" past the cap given at run().
  HullLevel obstruction_step(const HullLevel& level);
  ProCouple run(std::size_t degree_cap);

 private:
  const Complex* cx_;
  ClassRegistry reg_;
  Quiver quiver_;
  std::vector<std::vector<std::size_t>> dims_;
  std::size_t cap_ = 0;
};

ProCouple run_hull(const Complex& cx, std::size_t degree_cap);

/// K_n = {a : rho(a) = 0, psi_w(a) = 0 for normal words w of degree < n}.
/// Returns K_1, K_2, ... until the chain is constant and all normal degrees
/// are used.
std::vector<Subspace> kernel_chain(const Complex& cx, const ProCouple& pro);

/// "t12_1", or "t22" when Ext^1(M_i, M_j) is one-dimensional.
std::string arrow_name(std::size_t i, std::size_t j, std::size_t l, std::size_t count);

}  // namespace ncdef
