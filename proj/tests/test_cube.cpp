#include <gtest/gtest.h>

#include "fck/homology.hpp"
#include "fck/random.hpp"
#include "printers.hpp"

using namespace fck;

namespace {

const Ring Q = Ring::rationals();
const Ring Z = Ring::integers();

CubicalDiagram one_cube(const ChainMap& f) {
  return CubicalDiagram(
      f.ring(), 1, [&](Subset t) { return t.bits ? f.target() : f.source(); }, [&](Subset, unsigned) { return f; });
}

CubicalDiagram constant_cube(const ChainComplex& x, unsigned n) {
  ChainMap id = ChainMap::identity(x);
  return CubicalDiagram(
      x.ring(), n, [&](Subset) { return x; }, [&](Subset, unsigned) { return id; });
}

ChainComplex acyclic_piece(Ring ring) {
  return ChainComplex::from(ring, {{1, 1}, {0, 1}}, {{1, Matrix::from_ints(ring, 1, 1, {1})}});
}

}  // namespace

TEST(Subset, Encoding) {
  Subset t = Subset::parse("101");
  EXPECT_EQ(t.bits, 5u);
  EXPECT_TRUE(t.contains(1));
  EXPECT_FALSE(t.contains(2));
  EXPECT_TRUE(t.contains(3));
  EXPECT_EQ(t.to_string(), "101");
  EXPECT_EQ(sgn_sigma(t, 2), 1u);
  EXPECT_EQ(sgn_sigma(t, 3), 0u);
}

TEST(Cube, ValidatorCatchesNonCommutingSquare) {
  ChainComplex r = ChainComplex::concentrated(Q, 0, 1);
  ChainMap id = ChainMap::identity(r), two = id.scaled(Rational(2));
  CubicalDiagram x(
      Q, 2, [&](Subset) { return r; }, [&](Subset t, unsigned i) { return t.bits == 0 && i == 1 ? two : id; });
  EXPECT_EQ(validate(x).size(), 1u);
  Rng rng(30);
  for (int it = 0; it < 100; ++it) EXPECT_TRUE(validate(random_cube(rng, Q, 1 + it % 3)).empty());
}

TEST(Cube, Faces) {
  Rng rng(31);
  ChainMap f = random_chain_map(rng, Q);
  CubicalDiagram c = one_cube(f);
  EXPECT_EQ(face(c, 1, 0).vertex({0, 0}), f.source());
  EXPECT_EQ(face(c, 1, 1).vertex({0, 0}), f.target());
  EXPECT_THROW(face(c, 2, 0), PreconditionError);
  for (int it = 0; it < 20; ++it) {
    CubicalDiagram x = random_cube(rng, Q, 3);
    for (unsigned i = 1; i <= 3; ++i)
      for (int side = 0; side < 2; ++side) EXPECT_TRUE(validate(face(x, i, side)).empty());
    // face(i=1,0) then face(j=2 in the smaller cube, 1) = face(j=3,1) then face(1,0).
    CubicalDiagram a = face(face(x, 1, 0), 2, 1), b = face(face(x, 3, 1), 1, 0);
    for (std::uint32_t t = 0; t < 2; ++t) EXPECT_EQ(a.vertex({1, t}), b.vertex({1, t}));
    EXPECT_EQ(a.edge({1, 0}, 1), b.edge({1, 0}, 1));
  }
}

TEST(Ifiber, OneCubeIsHofib) {
  Rng rng(32);
  for (int it = 0; it < 50; ++it) {
    ChainMap f = random_chain_map(rng, it % 2 ? Q : Z);
    CubicalDiagram c = one_cube(f);
    EXPECT_EQ(ifiber_closed(c), hofib(f).fiber);
    EXPECT_EQ(ifiber_recursive(c).complex, hofib(f).fiber);
  }
}

TEST(Ifiber, SquareMatchesWrittenDifferential) {
  Rng rng(33);
  for (int it = 0; it < 50; ++it) {
    CubicalDiagram x = random_cube(rng, Q, 2);
    const ChainComplex& a = x.vertex({2, 0});
    const ChainComplex& b = x.vertex({2, 1});
    const ChainComplex& c = x.vertex({2, 2});
    const ChainComplex& d = x.vertex({2, 3});
    const ChainMap& f = x.edge({2, 0}, 1);
    const ChainMap& alpha = x.edge({2, 0}, 2);
    const ChainMap& beta = x.edge({2, 1}, 2);
    const ChainMap& g = x.edge({2, 2}, 1);
    // d(a,b,c,d) = (d_A a, -f a - d_B b, -alpha a - d_C c, -beta b + g c + d_D d)
    // on A_k + B_{k+1} + C_{k+1} + D_{k+2}.
    Layout l(Q, {{a, 0}, {b, -1}, {c, -1}, {d, -2}});
    ChainComplex expect = l.build([&](int k, MatrixBuilder& m) {
      l.put(m, 0, k - 1, l, 0, k, a.d(k));
      l.put(m, 1, k - 1, l, 0, k, f.at(k), -1);
      l.put(m, 1, k - 1, l, 1, k, b.d(k + 1), -1);
      l.put(m, 2, k - 1, l, 0, k, alpha.at(k), -1);
      l.put(m, 2, k - 1, l, 2, k, c.d(k + 1), -1);
      l.put(m, 3, k - 1, l, 1, k, beta.at(k + 1), -1);
      l.put(m, 3, k - 1, l, 2, k, g.at(k + 1));
      l.put(m, 3, k - 1, l, 3, k, d.d(k + 2));
    });
    EXPECT_EQ(ifiber_closed(x), expect);
  }
}

TEST(Ifiber, ConstantCubeIsAcyclic) {
  Rng rng(34);
  for (int it = 0; it < 20; ++it) {
    ChainComplex x = random_complex(rng, Q);
    for (unsigned n = 1; n <= 3; ++n) EXPECT_TRUE(is_acyclic(ifiber_closed(constant_cube(x, n))));
  }
}

TEST(Ifiber, ZeroCube) {
  CubicalDiagram z = constant_cube(ChainComplex::zero(Q), 3);
  EXPECT_TRUE(ifiber_closed(z).is_zero());
  EXPECT_TRUE(ifiber_recursive(z).complex.is_zero());
}

TEST(Ifiber, ClosedEqualsRecursive) {
  Rng rng(35);
  for (unsigned n = 1; n <= 4; ++n)
    for (int it = 0; it < (n == 4 ? 10 : 30); ++it) {
      CubicalDiagram x = random_cube(rng, it % 2 ? Q : Z, n);
      ChainComplex closed = ifiber_closed(x);
      EXPECT_TRUE(validate(closed).empty());
      RecursiveFiber rec = ifiber_recursive(x);
      EXPECT_EQ(reorder_ifiber(x, closed, rec.order), rec.complex);
    }
}

TEST(Ifiber, AcyclicDirection) {
  Rng rng(36);
  for (int it = 0; it < 30; ++it) {
    unsigned n = 1 + it % 3;
    CubicalDiagram y = random_cube(rng, Q, n - 1 == 0 ? 1 : n - 1);
    auto [sum, inc] = direct_sum(y, tensor(random_cube(rng, Q, y.n()), acyclic_piece(Q)));
    CubicalDiagram x = cube_from_map(inc);
    EXPECT_TRUE(validate(x).empty());
    EXPECT_TRUE(is_acyclic(ifiber_closed(x)));
  }
}

TEST(Ifiber, HomotopyInvariance) {
  Rng rng(37);
  for (int it = 0; it < 30; ++it) {
    CubicalDiagram x = random_cube(rng, Q, 1 + it % 3);
    CubicalDiagram e = tensor(random_cube(rng, Q, x.n()), acyclic_piece(Q));
    auto [sum, inc] = direct_sum(x, e);
    EXPECT_TRUE(validate(inc).empty());
    ChainMap m = ifiber_map(inc);
    EXPECT_TRUE(is_valid(m));
    EXPECT_TRUE(is_quasi_iso(m));
  }
}

TEST(Tfiber, Examples) {
  CubicalDiagram z = constant_cube(ChainComplex::zero(Q), 2);
  EXPECT_TRUE(tfiber_square(z).complex.is_zero());
  Rng rng(38);
  ChainComplex x = random_complex(rng, Q);
  CubicalDiagram id = constant_cube(x, 2);
  EXPECT_TRUE(is_acyclic(tfiber_square(id).complex));
  ChainMap iso = tfiber_ifiber_iso(id);
  EXPECT_TRUE(is_valid(iso));
  EXPECT_THROW(tfiber_square(random_cube(rng, Q, 3)), PreconditionError);
}

TEST(Tfiber, IsomorphicToIfiber) {
  Rng rng(39);
  for (int it = 0; it < 100; ++it) {
    CubicalDiagram x = random_cube(rng, it % 2 ? Q : Z, 2);
    TotalFiber t = tfiber_square(x);
    ChainComplex i = ifiber_closed(x);
    EXPECT_TRUE(validate(t.complex).empty());
    EXPECT_EQ(t.complex.ranks(), i.ranks());
    ChainMap iso = tfiber_ifiber_iso(x, t.complex, i);
    EXPECT_TRUE(is_valid(iso));
    for (int k : t.complex.degrees()) {
      EXPECT_TRUE(iso.at(k).is_square());
      EXPECT_TRUE(iso.at(k).is_signed_monomial());
    }
  }
}
