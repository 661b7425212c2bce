#include <gtest/gtest.h>

#include <random>

#include "fck/linalg.hpp"

using namespace fck;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Ring ring, std::size_t r, std::size_t c, int lo = -3, int hi = 3, int density = 60) {
  std::uniform_int_distribution<int> val(lo, hi), pct(0, 99);
  MatrixBuilder b(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pct(rng) < density) b.add(i, j, Rational(val(rng)));
  return std::move(b).build();
}

// Entrywise product definition.
std::vector<Rational> naive_product(const Matrix& a, const Matrix& b) {
  std::vector<Rational> out(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational s;
      for (std::size_t k = 0; k < a.cols(); ++k) s = s + a.at(i, k) * b.at(k, j);
      out[i * b.cols() + j] = s;
    }
  return out;
}

// Largest r with a nonzero r x r minor, by cofactor expansion.
Rational minor_det(const std::vector<std::vector<Rational>>& m) {
  if (m.size() == 1) return m[0][0];
  Rational s;
  for (std::size_t j = 0; j < m.size(); ++j) {
    std::vector<std::vector<Rational>> sub;
    for (std::size_t i = 1; i < m.size(); ++i) {
      std::vector<Rational> row;
      for (std::size_t c = 0; c < m.size(); ++c)
        if (c != j) row.push_back(m[i][c]);
      sub.push_back(row);
    }
    Rational t = m[0][j] * minor_det(sub);
    s = (j % 2) ? s - t : s + t;
  }
  return s;
}

std::size_t minor_rank(const Matrix& m) {
  std::size_t best = 0;
  const std::size_t R = m.rows(), C = m.cols();
  for (std::uint32_t rs = 1; rs < (1u << R); ++rs)
    for (std::uint32_t cs = 1; cs < (1u << C); ++cs) {
      std::size_t k = static_cast<std::size_t>(__builtin_popcount(rs));
      if (k != static_cast<std::size_t>(__builtin_popcount(cs)) || k <= best) continue;
      std::vector<std::vector<Rational>> sub;
      for (std::size_t i = 0; i < R; ++i) {
        if (!(rs >> i & 1)) continue;
        std::vector<Rational> row;
        for (std::size_t j = 0; j < C; ++j)
          if (cs >> j & 1) row.push_back(m.at(i, j));
        sub.push_back(row);
      }
      if (!minor_det(sub).is_zero()) best = k;
    }
  return best;
}

Matrix diag_of(const std::vector<Rational>& d, std::size_t r, std::size_t c) {
  MatrixBuilder b(Ring::integers(), r, c);
  for (std::size_t i = 0; i < d.size(); ++i) b.add(i, i, d[i]);
  return std::move(b).build();
}

}  // namespace

TEST(Rational, ArithmeticAndPromotion) {
  Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(Rational(4, -6), Rational(-2, 3));
  Rational big = Rational(INT64_MAX) * Rational(INT64_MAX);
  EXPECT_FALSE(big.is_small());
  EXPECT_EQ(big / Rational(INT64_MAX), Rational(INT64_MAX));
  EXPECT_TRUE((big / Rational(INT64_MAX)).is_small());
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational(INT64_MIN) - Rational(1) + Rational(1), Rational(INT64_MIN));
}

TEST(Ring, PrimeFieldReduction) {
  Ring f7 = Ring::prime_field(7);
  EXPECT_EQ(f7.reduce(Rational(-1)), Rational(6));
  EXPECT_EQ(f7.reduce(Rational(1, 3)), Rational(5));
  EXPECT_EQ(f7.mul(Rational(3), f7.inv(Rational(3))), Rational(1));
  EXPECT_THROW(Ring::prime_field(9), RingError);
  EXPECT_THROW(f7.reduce(Rational(1, 7)), RingError);
  EXPECT_THROW(Ring::integers().reduce(Rational(1, 2)), RingError);
  EXPECT_EQ(Ring::parse("fp:5"), Ring::prime_field(5));
}

TEST(MatMul, IdentityAndScalar) {
  std::mt19937_64 rng(1);
  Matrix m = random_matrix(rng, Ring::rationals(), 3, 4);
  EXPECT_EQ(Matrix::identity(Ring::rationals(), 3) * m, m);
  EXPECT_EQ(Matrix::from_ints(Ring::integers(), 1, 1, {2}) * Matrix::from_ints(Ring::integers(), 1, 1, {3}),
            Matrix::from_ints(Ring::integers(), 1, 1, {6}));
}

TEST(MatMul, MatchesTripleLoop) {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 50; ++it) {
    Matrix a = random_matrix(rng, Ring::rationals(), 4, 5);
    Matrix b = random_matrix(rng, Ring::rationals(), 5, 3);
    auto expect = naive_product(a, b);
    EXPECT_EQ((a * b).to_dense(), expect);
  }
}

TEST(MatMul, Errors) {
  EXPECT_THROW(Matrix(Ring::rationals(), 2, 3) * Matrix(Ring::rationals(), 2, 3), DimensionError);
  EXPECT_THROW(Matrix(Ring::rationals(), 2, 2) * Matrix(Ring::integers(), 2, 2), RingError);
}

TEST(Rank, Basics) {
  EXPECT_EQ(rank(Matrix::zero(Ring::rationals(), 3, 3)), 0u);
  EXPECT_EQ(rank(Matrix::identity(Ring::rationals(), 4)), 4u);
  Matrix m = Matrix::from_ints(Ring::rationals(), 2, 2, {1, 2, 2, 4});
  EXPECT_EQ(minor_rank(m), 1u);
  EXPECT_EQ(rank(m), 1u);
  EXPECT_THROW(rank(Matrix::identity(Ring::integers(), 2)), RingError);
}

TEST(Rank, MatchesMinorOracle) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    Matrix m = random_matrix(rng, Ring::rationals(), 1 + rng() % 4, 1 + rng() % 5, -2, 2, 40);
    EXPECT_EQ(rank(m), minor_rank(m)) << m.to_string();
  }
}

TEST(Rank, TransposeInvariant) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 500; ++it) {
    Ring ring = it % 2 ? Ring::rationals() : Ring::prime_field(it % 4 == 0 ? 2 : 5);
    Matrix m = random_matrix(rng, ring, 1 + rng() % 8, 1 + rng() % 8);
    EXPECT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST(Kernel, Basics) {
  EXPECT_EQ(kernel_basis(Matrix::identity(Ring::rationals(), 2)).cols(), 0u);
  Matrix k = kernel_basis(Matrix::zero(Ring::rationals(), 2, 3));
  EXPECT_EQ(k.cols(), 3u);
  EXPECT_EQ(rank(k), 3u);
}

TEST(Kernel, F2EnumerationOracle) {
  Ring f2 = Ring::prime_field(2);
  Matrix m = Matrix::from_ints(f2, 1, 2, {1, 1});
  // Nonzero vectors of F_2^2 annihilated by m.
  std::vector<std::vector<int>> null;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if ((a + b) % 2 == 0 && (a || b)) null.push_back({a, b});
  ASSERT_EQ(null.size(), 1u);
  Matrix k = kernel_basis(m);
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(k.at(0, 0), Rational(null[0][0]));
  EXPECT_EQ(k.at(1, 0), Rational(null[0][1]));
}

TEST(Kernel, RandomProperties) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    Ring ring = it % 2 ? Ring::rationals() : Ring::prime_field(3);
    Matrix m = random_matrix(rng, ring, 1 + rng() % 6, 1 + rng() % 7);
    Matrix k = kernel_basis(m);
    EXPECT_EQ(k.cols(), m.cols() - rank(m));
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(rank(k), k.cols());
  }
  EXPECT_THROW(kernel_basis(Matrix::identity(Ring::integers(), 1)), RingError);
}

TEST(Smith, Examples) {
  Ring z = Ring::integers();
  EXPECT_EQ(smith_normal_form(Matrix::from_ints(z, 1, 1, {2})).factors, std::vector<Rational>{2});
  EXPECT_EQ(smith_normal_form(Matrix::identity(z, 3)).factors, (std::vector<Rational>{1, 1, 1}));
  // diag(a, b) has factors gcd(a, b), lcm(a, b).
  long long a = 6, b = 4;
  long long g = std::gcd(a, b), l = a / g * b;
  EXPECT_EQ(smith_normal_form(Matrix::from_ints(z, 2, 2, {a, 0, 0, b})).factors, (std::vector<Rational>{g, l}));
  EXPECT_THROW(smith_normal_form(Matrix::identity(Ring::rationals(), 1)), RingError);
}

TEST(Smith, RandomReassembly) {
  std::mt19937_64 rng(6);
  Ring z = Ring::integers();
  for (int it = 0; it < 300; ++it) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix m = random_matrix(rng, z, r, c, -6, 6, 70);
    SmithForm s = smith_normal_form(m);
    EXPECT_EQ(s.u * m * s.v, diag_of(s.factors, r, c));
    Rational du = determinant(s.u), dv = determinant(s.v);
    EXPECT_TRUE(du == Rational(1) || du == Rational(-1));
    EXPECT_TRUE(dv == Rational(1) || dv == Rational(-1));
    for (std::size_t i = 0; i < s.factors.size(); ++i) {
      EXPECT_GE(s.factors[i].sign(), 0);
      if (i + 1 == s.factors.size()) continue;
      if (s.factors[i].is_zero()) {
        EXPECT_TRUE(s.factors[i + 1].is_zero());
      } else {
        EXPECT_TRUE(Rational::int_remainder(s.factors[i + 1], s.factors[i]).is_zero());
      }
    }
    std::size_t nz = 0;
    for (auto& f : s.factors) nz += !f.is_zero();
    EXPECT_EQ(nz, rank_over_rationals(m));
  }
}
