#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncdef/algebra.hpp"
#include "ncdef/linalg.hpp"

namespace ncdef {

/// Choices that pin representatives. Defaults reproduce the published tables.
struct Conventions {
  /// "generators-first": Ext^1 complements prefer degree-1 coordinates, then
  /// degree 0, then higher degrees. "basis": plain basis order.
  std::string ext1_column_order = "generators-first";
  /// "degree-descending": primitives prefer duals of long normal words.
  /// "basis": plain basis order.
  std::string cochain_column_order = "degree-descending";
  /// "obstruction": Massey values are reported as the obstruction to the
  /// iterated extension, (-1)^(r+1) times the defining-system class.
  /// "defining": the class of the defining-system sum itself.
  std::string massey_sign = "obstruction";

  void check() const;
  friend bool operator==(const Conventions&, const Conventions&) = default;
};

/// Hochschild n-cochains A^{(x)n} -> Hom_k(M_src, M_tgt), stored as one
/// dim(M_src) x dim(M_tgt) matrix per basis n-tuple (row-major tuple index).
struct Cochain {
  std::size_t degree = 1;
  std::size_t src = 0;
  std::size_t tgt = 0;
  std::vector<Matrix> values;

  bool is_zero() const;
  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  Cochain& operator*=(const Scalar& c);
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Scalar& c, Cochain a) { return a *= c; }
  friend bool operator==(const Cochain& a, const Cochain& b);
};

/// Sign s in d(alpha . beta) = d(alpha) . beta + s * alpha . d(beta) for a
/// 1-cochain alpha. Pinned by the Leibniz test.
inline constexpr int kLeibnizSign = -1;

/// Cochain complex HC^0..3(A, Hom_k(M_i, M_j)) for a fixed algebra and family.
class Complex {
 public:
  Complex(Algebra a, std::vector<ModuleRep> family, Conventions conv = {});

  const Algebra& algebra() const { return a_; }
  const std::vector<ModuleRep>& family() const { return family_; }
  const Conventions& conventions() const { return conv_; }
  std::size_t size() const { return family_.size(); }
  std::size_t mdim(std::size_t i) const { return family_[i].dim; }
  const Field& field() const { return a_.field(); }
  const Matrix& rho(std::size_t i, std::size_t b) const { return family_[i].action[b]; }

  Cochain zero(std::size_t degree, std::size_t i, std::size_t j) const;

  Cochain d0(std::size_t i, std::size_t j, const Matrix& phi) const;
  Cochain d1(const Cochain& psi) const;
  Cochain d2(const Cochain& c) const;
  /// d2(c) == 0 on valid triples, without materializing d2(c).
  bool is_cocycle(const Cochain& c) const;
  /// d1(psi) == 0 on valid pairs.
  bool is_derivation(const Cochain& psi) const;

  /// (alpha . beta)(a, b) = alpha(a) beta(b), and the mixed 1x2 / 2x1 products
  /// into 3-cochains. Throws ScenarioError "EndpointMismatch".
  Cochain cup(const Cochain& alpha, const Cochain& beta) const;

  // coordinates: 1-cochains on all basis elements, 2-cochains on valid pairs
  std::size_t coord_length(std::size_t degree, std::size_t i, std::size_t j) const;
  Vector coords(const Cochain& c) const;
  Cochain from_coords(std::size_t degree, std::size_t i, std::size_t j, std::span<const Scalar> v) const;
  const std::vector<std::pair<std::size_t, std::size_t>>& valid_pairs() const { return pairs_; }

  struct Ext1 {
    std::size_t i = 0, j = 0;
    std::vector<Cochain> reps;
    /// Ext^1 coordinates of a derivation. Throws InvariantBreach when psi is
    /// not a derivation.
    Vector coordinates(const Cochain& psi) const;

    const Complex* owner = nullptr;
    std::vector<std::size_t> perm;  // permuted position -> cochain coordinate
    QuotientBasis quotient;
    Subspace derivations;
  };
  const Ext1& ext1(std::size_t i, std::size_t j) const;

  /// Position of 1-cochain unit (basis b, entry p, q) in preference order for
  /// primitives (first = most preferred).
  const std::vector<std::size_t>& primitive_order(std::size_t i, std::size_t j) const;

 private:
  Algebra a_;
  std::vector<ModuleRep> family_;
  Conventions conv_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::ptrdiff_t> pair_index_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<Ext1>> ext_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> order_;
};

/// Lazily accumulated obstruction classes ("s*") per pair (i, j). A 2-cocycle
/// that is not a coboundary plus a combination of registered classes becomes
/// a new class represented by itself.
class ClassRegistry {
 public:
  explicit ClassRegistry(const Complex& cx) : cx_(&cx) {}

  struct Solution {
    Vector classes;    // coordinates on the registered classes of (i, j)
    Cochain primitive; // d1(primitive) = c - sum classes[l] * rep_l
    bool registered = false;
  };

  /// Throws InvariantBreach "NotACocycle". With register_new = false an
  /// unknown class yields nullopt instead of a new coordinate.
  std::optional<Solution> solve(const Cochain& c, bool register_new = true);
  Solution solve_coboundary(const Cochain& c) { return *solve(c, true); }

  std::size_t count(std::size_t i, std::size_t j) const;
  const std::vector<Cochain>& reps(std::size_t i, std::size_t j) const;
  std::string class_name(std::size_t i, std::size_t j, std::size_t l) const;
  /// Total across all pairs, for reports.
  std::size_t total() const;

 private:
  struct Slot {
    SpanSolver solver;
    std::vector<std::size_t> unit_of_generator;  // generator -> 1-cochain coordinate
    std::vector<Cochain> reps;
    std::size_t units = 0;
  };
  Slot& slot(std::size_t i, std::size_t j);

  const Complex* cx_;
  std::map<std::pair<std::size_t, std::size_t>, Slot> slots_;
};

}  // namespace ncdef
