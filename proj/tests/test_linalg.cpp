#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "ncdef/linalg.hpp"

using namespace ncdef;

namespace {

Matrix rows(const Field& f, std::vector<std::vector<long>> v) {
  Matrix m(v.size(), v.empty() ? 0 : v[0].size(), f);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v[i].size(); ++j) m(i, j) = f.from_int(v[i][j]);
  return m;
}

const Field Q = fx::rational();
const Field F3 = fx::prime(3);

}  // namespace

TEST(Scalar, PrimeFieldValidation) {
  EXPECT_THROW(FieldSpec::prime(4), std::invalid_argument);
  EXPECT_THROW(FieldSpec::prime(1), std::invalid_argument);
  EXPECT_NO_THROW(FieldSpec::prime(7));
}

TEST(Scalar, ExactArithmetic) {
  const Scalar a = Q.parse("3/2"), b = Q.parse("-5/7");
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a.str(), "3/2");
  const Field f7 = fx::prime(7);
  EXPECT_EQ(f7.from_int(3) * f7.from_int(5), f7.from_int(1));
  EXPECT_EQ(f7.parse("1/2"), f7.from_int(4));
  EXPECT_EQ(f7.from_int(6).str(), "-1");
  EXPECT_THROW(Q.zero().inverse(), std::domain_error);
}

TEST(Rref, Identity) {
  const auto r = rref(Matrix::identity(3, Q));
  EXPECT_EQ(r.reduced, Matrix::identity(3, Q));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, Zero) {
  const auto r = rref(Matrix(2, 3, Q));
  EXPECT_TRUE(r.reduced.is_zero());
  EXPECT_TRUE(r.pivots.empty());
}

TEST(Rref, HandElimination) {
  const auto r = rref(rows(Q, {{2, 4}, {1, 2}}));
  EXPECT_EQ(r.reduced, rows(Q, {{1, 2}, {0, 0}}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel(Matrix::identity(3, Q)).dim(), 0u);
  EXPECT_EQ(kernel(Matrix(3, 3, Q)).dim(), 3u);
  const Subspace k = kernel(rows(F3, {{1, 1}}));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_EQ(k.basis().row_vector(0), (Vector{F3.one(), F3.from_int(2)}));
}

TEST(Solve, Examples) {
  const Matrix b = rows(Q, {{3}, {-1}});
  EXPECT_EQ(*solve(Matrix::identity(2, Q), b), b);
  EXPECT_FALSE(solve(rows(Q, {{1, 0}, {0, 0}}), rows(Q, {{0}, {1}})).has_value());
  const auto x = solve(rows(Q, {{2}}), rows(Q, {{3}}));
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)(0, 0), Q.parse("3/2"));
}

TEST(QuotientBasis, Examples) {
  const Subspace full = Subspace::full(2, Q);
  EXPECT_EQ(quotient_basis(full, full).complement.rows(), 0u);
  const auto q0 = quotient_basis(Subspace(2, Q), full);
  EXPECT_EQ(q0.complement, Matrix::identity(2, Q));
  const auto q1 = quotient_basis(Subspace::span(rows(Q, {{1, 1}})), full);
  EXPECT_EQ(q1.complement, rows(Q, {{0, 1}}));
  const auto [sub, coords] = q1.project(Vector{Q.from_int(2), Q.from_int(5)});
  EXPECT_EQ(sub, (Vector{Q.from_int(2), Q.from_int(2)}));
  EXPECT_EQ(coords, (Vector{Q.from_int(3)}));
  EXPECT_THROW(quotient_basis(full, Subspace::span(rows(Q, {{1, 0}}))), NotASubspace);
}

TEST(SpanSolver, ExpressesOnGenerators) {
  SpanSolver s(3, Q);
  EXPECT_TRUE(s.add(Vector{Q.one(), Q.one(), Q.zero()}));
  EXPECT_FALSE(s.add(Vector{Q.from_int(2), Q.from_int(2), Q.zero()}));
  EXPECT_TRUE(s.add(Vector{Q.zero(), Q.one(), Q.one()}));
  const auto c = s.express(Vector{Q.one(), Q.from_int(3), Q.from_int(2)});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (Vector{Q.one(), Q.zero(), Q.from_int(2)}));
  EXPECT_FALSE(s.express(Vector{Q.zero(), Q.zero(), Q.one()}));
}

class LinalgProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(LinalgProperties, RankNullityIdempotenceSolve) {
  const Field f = GetParam() ? fx::prime(GetParam()) : fx::rational();
  std::mt19937_64 rng(17 + GetParam());
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = dim(rng), c = dim(rng);
    const Matrix m = fx::random_matrix(r, c, f, rng, 2);
    EXPECT_EQ(rank(m) + kernel(m).dim(), c);
    const auto once = rref(m);
    EXPECT_EQ(rref(once.reduced).reduced, once.reduced);
    const Subspace k = kernel(m);
    if (k.dim() > 0) EXPECT_TRUE((m * k.basis().transpose()).is_zero());
    const Matrix x = fx::random_matrix(c, 1, f, rng);
    const auto y = solve(m, m * x);
    ASSERT_TRUE(y);
    EXPECT_EQ(m * *y, m * x);
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, LinalgProperties, ::testing::Values(0u, 2u, 3u, 7u));
