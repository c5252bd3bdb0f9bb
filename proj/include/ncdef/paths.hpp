#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncdef/linalg.hpp"

namespace ncdef {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

struct Quiver {
  std::size_t points = 0;
  std::vector<Arrow> arrows;

  std::optional<std::size_t> arrow_index(std::string_view name) const;
};

/// A path e_source -> ... -> e_target; the empty path is the idempotent e_source.
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  std::size_t degree() const { return arrows.size(); }
  friend bool operator==(const Path&, const Path&) = default;
};

/// All paths of a quiver up to a degree bound, indexed in the monomial order:
/// degree first, then lexicographic on arrow indices (idempotents by point).
/// Extending the bound appends indices, so existing indices stay valid.
class PathTable {
 public:
  PathTable() = default;
  PathTable(Quiver quiver, std::size_t max_degree);

  const Quiver& quiver() const { return quiver_; }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t size() const { return paths_.size(); }
  const Path& path(std::size_t idx) const { return paths_[idx]; }
  std::optional<std::size_t> index(const Path& p) const;
  std::size_t idempotent(std::size_t point) const { return point; }
  /// Index range [begin, end) of the degree-d paths.
  std::size_t degree_begin(std::size_t d) const { return degree_start_[d]; }
  std::size_t degree_end(std::size_t d) const { return degree_start_[d + 1]; }

  void extend_to(std::size_t max_degree);
  /// Concatenation; nullopt when endpoints do not match or the degree bound
  /// is exceeded.
  std::optional<std::size_t> concat(std::size_t a, std::size_t b) const;

  /// "x*v*z", "u*z^2", "e1".
  std::string render(std::size_t idx) const;

 private:
  Quiver quiver_;
  std::size_t max_degree_ = 0;
  std::vector<Path> paths_;
  std::vector<std::size_t> degree_start_;
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> lookup_;
};

/// Linear combination of paths, keyed by path index (so iteration follows the
/// monomial order).
using Poly = std::map<std::size_t, Scalar>;

void poly_add(Poly& p, std::size_t path, const Scalar& c);
Vector poly_to_vector(const Poly& p, std::size_t length, const Field& f);
Poly vector_to_poly(std::span<const Scalar> v);
std::size_t poly_min_degree(const Poly& p, const PathTable& t);
/// Renders with terms in monomial order, e.g. "t11_1*t12_2 - 2*t12_2*t22".
std::string render_poly(const Poly& p, const PathTable& t);

/// Parses "y*u - x*v + 2*v*z + u*z^2" against the quiver. All terms must be
/// endpoint-consistent paths sharing one source and one target.
Poly parse_poly(std::string_view text, PathTable& table, const Field& f);

/// Span of the truncated two-sided ideal generated by `gens` inside the path
/// space of `table`: all u*g*v that fit under the degree bound. When
/// `proper_multiples_only` is set, only u*g*v with |u|+|v| >= 1 are taken.
Subspace ideal_span(const PathTable& table, const std::vector<Poly>& gens, const Field& f,
                    bool proper_multiples_only = false);

/// Paths that are not leading words (pivots) of the subspace.
std::vector<std::size_t> normal_words(const Subspace& ideal);

}  // namespace ncdef
