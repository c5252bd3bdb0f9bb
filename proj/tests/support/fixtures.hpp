#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncdef/algebra.hpp"
#include "ncdef/hochschild.hpp"

namespace fx {

using namespace ncdef;

struct Instance {
  std::string label;
  Algebra algebra;
  std::vector<ModuleRep> family;  // complete simple family unless stated
};

Field rational();
Field prime(std::uint64_t p);
Matrix scalar1(const Field& f, long v);

/// k[x]/(x^n), basis 1, x, ..., x^{n-1}; family {k}.
Instance truncated_poly(const Field& f, std::size_t n);
/// Upper-triangular n x n matrices, basis e_ij (i <= j); family S_1..S_n.
Instance upper_triangular(const Field& f, std::size_t n);
/// k^r; family the r coordinate characters.
Instance split_semisimple(const Field& f, std::size_t r);
/// k[Z_n] with the characters given as roots of unity (one module each).
Instance cyclic_group(const Field& f, std::size_t n, const std::vector<long>& roots);
/// Q[Z_3] with M (trivial) and N (the 2-dim rotation module).
Instance z3_rational();
/// k[x]/(x^2) x k with only the simple of the second factor.
Instance product_partial(const Field& f);

/// The two-point quiver algebra with loops x, y at 1, arrows u, v: 1 -> 2 and
/// a loop z at 2, relations y*u - x*v + 2*v*z + u*z^2 and x*y - y*x;
/// family the two vertex simples.
Instance worked_example(std::size_t cap);

/// b'_i = sum_j P_ij b_j for a random invertible P; modules follow.
Instance rebase(const Instance& in, std::mt19937_64& rng);
Matrix random_matrix(std::size_t r, std::size_t c, const Field& f, std::mt19937_64& rng, long range = 3);
Matrix random_invertible(std::size_t n, const Field& f, std::mt19937_64& rng);
Cochain random_cochain(const Complex& cx, std::size_t degree, std::size_t i, std::size_t j, std::mt19937_64& rng);

/// Fixture battery used by property suites: every fixture over the given field.
std::vector<Instance> battery(const Field& f);

/// Graded dimensions (degrees 0..cap) of the closed-form hull of the worked
/// example, counted by brute-force elimination mod a prime. Independent of the
/// library's linear algebra.
std::vector<std::size_t> closed_form_graded_dims(std::size_t cap);

}  // namespace fx
