#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncdef/linalg.hpp"
#include "ncdef/paths.hpp"

namespace ncdef {

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

/// Finite-dimensional associative algebra given by structure constants
/// b_i * b_j = sum_k c_ijk b_k.
///
/// Algebras coming from a truncated presentation also carry a word degree per
/// basis element and the truncation degree. Products whose degrees add up
/// beyond the cap vanish only because of the truncation, so equations that
/// must hold in the untruncated algebra are imposed on "valid" pairs only.
class Algebra {
 public:
  Algebra() = default;
  Algebra(Field field, std::vector<std::string> names, Vector unit, std::vector<SparseVec> table);
  /// c[i][j] is the coordinate vector of b_i * b_j.
  static Algebra from_dense(Field field, std::vector<std::string> names, Vector unit,
                            const std::vector<std::vector<Vector>>& c);

  const Field& field() const { return field_; }
  std::size_t dim() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  const Vector& unit() const { return unit_; }
  const SparseVec& product(std::size_t a, std::size_t b) const { return table_[a * dim() + b]; }
  Scalar coefficient(std::size_t a, std::size_t b, std::size_t k) const;
  Vector multiply(std::span<const Scalar> x, std::span<const Scalar> y) const;
  Vector basis_vector(std::size_t i) const;

  void set_grading(std::vector<std::size_t> degrees, std::size_t cap);
  std::size_t degree(std::size_t i) const { return degrees_.empty() ? 0 : degrees_[i]; }
  std::optional<std::size_t> support_cap() const { return cap_; }
  bool valid_pair(std::size_t a, std::size_t b) const {
    return !cap_ || degree(a) + degree(b) <= *cap_;
  }
  bool valid_triple(std::size_t a, std::size_t b, std::size_t c) const {
    return !cap_ || degree(a) + degree(b) + degree(c) <= *cap_;
  }

 private:
  Field field_;
  std::vector<std::string> names_;
  Vector unit_;
  std::vector<SparseVec> table_;
  std::vector<std::size_t> degrees_;
  std::optional<std::size_t> cap_;
};

/// Throws ScenarioError "NotAssociative" or "BadUnit".
void validate(const Algebra& a);

/// Right module: m . b = m * action[b] (row vectors).
struct ModuleRep {
  std::string name;
  std::size_t dim = 0;
  std::vector<Matrix> action;  // one dim x dim matrix per basis element of A
};

Matrix act(const ModuleRep& m, std::span<const Scalar> a, const Field& f);
/// rho(1) = 1 and rho(b_i) rho(b_j) = rho(b_i b_j) on valid pairs.
/// Throws ScenarioError "BadModule".
void validate_module(const Algebra& a, const ModuleRep& m);

/// Right regular module.
ModuleRep regular_module(const Algebra& a);
/// Flattened d x d matrices, row-major.
Vector flatten(const Matrix& m);
Matrix unflatten(std::span<const Scalar> v, std::size_t rows, std::size_t cols, const Field& f);

bool is_two_sided_ideal(const Algebra& a, const Subspace& s);
/// Smallest k with s^k = 0, or nullopt when the powers stabilize at a nonzero
/// subspace.
std::optional<std::size_t> nilpotency_index(const Algebra& a, const Subspace& s);

/// ker(rho_1 + ... + rho_r). Throws HypothesisViolation "NotNilpotent" when
/// the kernel is not nilpotent (the family cannot be the complete simple family).
Subspace radical(const Algebra& a, const std::vector<ModuleRep>& family);

/// Matrices commuting with every rho(b), as rows of flattened matrices (RREF).
Subspace commutant(const ModuleRep& m, const Field& f);
/// End_A(M) with structure constants in the commutant basis.
Algebra end_algebra(const ModuleRep& m, const Field& f);

struct SimplicityCertificate {
  enum class Verdict { SplitSimple, SpinChecked, Reducible, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::size_t end_dim = 0;
  std::size_t image_dim = 0;  // dim rho(A)
  std::optional<Subspace> witness;
};

std::string to_string(SimplicityCertificate::Verdict v);
SimplicityCertificate simplicity_certificate(const Algebra& a, const ModuleRep& m);

/// Span of v under the action (smallest invariant subspace containing v).
Subspace spin(const Algebra& a, const ModuleRep& m, std::span<const Scalar> v);

/// Quiver algebra kQ/(relations) truncated at paths of length degree_cap + 1.
struct MatricPresentation {
  Quiver quiver;
  std::vector<std::string> relations;
  std::size_t degree_cap = 8;
};

class PresentedAlgebra {
 public:
  PresentedAlgebra(const Field& field, const MatricPresentation& p);

  const Algebra& algebra() const { return algebra_; }
  const PathTable& table() const { return table_; }
  const std::vector<Poly>& relations() const { return relations_; }
  const Subspace& ideal() const { return ideal_; }
  std::size_t cap() const { return table_.max_degree(); }
  /// Path index of each algebra basis element.
  const std::vector<std::size_t>& basis_paths() const { return basis_paths_; }
  std::optional<std::size_t> basis_of_path(std::size_t path) const;

  /// Reduced form of a path (or combination) in the normal-word basis.
  /// Throws ScenarioError "DegreeCapExceeded" past the cap.
  Poly normal_form(const Path& word) const;
  Poly normal_form(const Poly& p) const;
  Vector coordinates(const Poly& p) const;

  /// Module given by rho(e_i) and rho(arrow) matrices; checks the relations
  /// and that words of length cap + 1 act as zero.
  ModuleRep module(std::string name, std::size_t dim, const std::vector<Matrix>& points,
                   const std::vector<Matrix>& arrows) const;

 private:
  Field field_;
  PathTable table_;
  std::vector<Poly> relations_;
  Subspace ideal_;
  std::vector<std::size_t> basis_paths_;
  std::vector<std::ptrdiff_t> path_basis_;
  Algebra algebra_;
};

}  // namespace ncdef
