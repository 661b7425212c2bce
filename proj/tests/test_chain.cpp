#include <gtest/gtest.h>

#include "fck/homology.hpp"
#include "fck/random.hpp"
#include "printers.hpp"

using namespace fck;

namespace {

const Ring Q = Ring::rationals();
const Ring Z = Ring::integers();

ChainComplex point(Ring ring, int k = 0) { return ChainComplex::concentrated(ring, k, 1); }

// R_k -c-> R_{k-1}.
ChainComplex two_term(Ring ring, int k, long long c) {
  return ChainComplex::from(ring, {{k, 1}, {k - 1, 1}}, {{k, Matrix::from_ints(ring, 1, 1, {c})}});
}

ChainMap scalar_map(const ChainComplex& x, long long c) {
  std::map<int, Matrix> comps;
  for (int k : x.degrees()) comps.emplace(k, Matrix::identity(x.ring(), x.rank(k)).scaled(Rational(c)));
  return ChainMap(x, x, std::move(comps));
}

std::size_t betti(const ChainComplex& x, int k) { return homology(x, k).free_rank; }

}  // namespace

TEST(Validate, Complexes) {
  EXPECT_TRUE(validate(two_term(Q, 1, 3)).empty());
  // d_0 d_1 = [[1]] in a three-term complex.
  ChainComplex bad = ChainComplex::from(Q, {{0, 1}, {1, 1}, {-1, 1}},
                                        {{1, Matrix::from_ints(Q, 1, 1, {1})}, {0, Matrix::from_ints(Q, 1, 1, {1})}});
  auto v = validate(bad);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("degree 1"), std::string::npos);
}

TEST(Validate, ShapeErrors) {
  EXPECT_THROW(ChainComplex::from(Q, {{0, 1}, {1, 2}}, {{1, Matrix::from_ints(Q, 1, 1, {1})}}), DimensionError);
  EXPECT_THROW(ChainMap(point(Q), point(Q), {{0, Matrix::identity(Q, 2)}}), DimensionError);
  EXPECT_THROW(ChainMap(point(Q), point(Z)), RingError);
}

TEST(Shift, Examples) {
  ChainComplex r = point(Q);
  ChainComplex om = loop(r);
  EXPECT_EQ(om.rank(-1), 1u);
  EXPECT_EQ(om.rank(0), 0u);
  Rng rng(11);
  for (int it = 0; it < 100; ++it) {
    ChainComplex x = random_complex(rng, Q);
    EXPECT_EQ(shift(x, 0), x);
    EXPECT_EQ(shift(shift(x, 1), -1), x);
    ChainComplex ox = loop(x);
    for (int k = -4; k <= 4; ++k) EXPECT_EQ(betti(ox, k), betti(x, k + 1));
    EXPECT_TRUE(validate(shift(x, 3)).empty());
  }
}

TEST(DirectSum, Examples) {
  EXPECT_TRUE(direct_sum(Q, {}).sum.is_zero());
  Rng rng(12);
  for (int it = 0; it < 100; ++it) {
    ChainComplex x = random_complex(rng, Q), y = random_complex(rng, Q);
    EXPECT_EQ(direct_sum_complex(Q, {x, ChainComplex::zero(Q)}), x);
    DirectSum s = direct_sum(Q, {x, y});
    EXPECT_TRUE(validate(s.sum).empty());
    for (int k = -3; k <= 3; ++k) EXPECT_EQ(betti(s.sum, k), betti(x, k) + betti(y, k));
    for (const auto& m : s.inclusions) EXPECT_TRUE(is_valid(m));
    for (const auto& m : s.projections) EXPECT_TRUE(is_valid(m));
    EXPECT_EQ(s.projections[0] * s.inclusions[0], ChainMap::identity(x));
    EXPECT_TRUE((s.projections[1] * s.inclusions[0]).is_zero());
  }
}

TEST(Tensor, Examples) {
  Rng rng(13);
  for (int it = 0; it < 50; ++it) {
    ChainComplex x = random_complex(rng, Q);
    EXPECT_EQ(tensor(point(Q), x), x);
  }
  ChainComplex e = two_term(Z, 1, 1);
  ChainComplex ee = tensor(e, e);
  // Smith form of each differential: acyclic iff every H_k over Z is zero.
  for (int k = -1; k <= 3; ++k) EXPECT_TRUE(homology(ee, k).is_zero()) << k;
  for (int it = 0; it < 50; ++it) {
    ChainComplex x = random_complex(rng, Q), y = random_complex(rng, Q);
    ChainComplex t = tensor(x, y);
    EXPECT_TRUE(validate(t).empty());
    for (int k = -4; k <= 6; ++k) {
      std::size_t conv = 0;
      for (int i = -4; i <= 6; ++i) conv += x.rank(i) * y.rank(k - i);
      EXPECT_EQ(t.rank(k), conv);
    }
  }
}

TEST(Tensor, MapsAreFunctorial) {
  Rng rng(14);
  for (int it = 0; it < 30; ++it) {
    ChainComplex a = random_complex(rng, Q), b = random_complex(rng, Q), c = random_complex(rng, Q);
    ChainMap f = random_chain_map(rng, a, b), g = random_chain_map(rng, b, c);
    ChainMap tf = tensor(f, f), tg = tensor(g, g);
    EXPECT_TRUE(is_valid(tf));
    EXPECT_EQ(tensor(g * f, g * f), tg * tf);
  }
}

TEST(Cone, Examples) {
  ChainComplex r = point(Q);
  EXPECT_TRUE(is_acyclic(cone(ChainMap::identity(r)).cone));
  Rng rng(15);
  ChainComplex y = random_complex(rng, Q);
  EXPECT_EQ(cone(ChainMap(ChainComplex::zero(Q), y)).cone, y);
}

TEST(Cone, LongExactSequence) {
  Rng rng(16);
  for (int it = 0; it < 200; ++it) {
    ChainMap f = random_chain_map(rng, Q);
    Cone c = cone(f);
    EXPECT_TRUE(validate(c.cone).empty());
    EXPECT_TRUE(is_valid(c.inclusion));
    EXPECT_TRUE(is_valid(c.projection));
    for (int k = -3; k <= 4; ++k) {
      std::size_t coker = betti(f.target(), k) - induced_rank(f, k);
      std::size_t ker = betti(f.source(), k - 1) - induced_rank(f, k - 1);
      EXPECT_EQ(betti(c.cone, k), coker + ker);
    }
  }
}

TEST(Cone, MatchesShiftedFiberUpToSign) {
  Rng rng(17);
  for (int it = 0; it < 100; ++it) {
    ChainMap f = random_chain_map(rng, Q);
    ChainComplex c = cone(f).cone;
    ChainComplex h = shift(hofib(f).fiber, 1);
    ASSERT_EQ(c.ranks(), h.ranks());
    Layout l(Q, {{f.source(), 1}, {f.target(), 0}});
    auto sign = [&](int k) {
      MatrixBuilder b(Q, l.rank(k), l.rank(k));
      l.put_identity(b, 0, k, l, 0, k);
      l.put_identity(b, 1, k, l, 1, k, -1);
      return std::move(b).build();
    };
    for (int k : c.degrees()) {
      if (c.rank(k - 1)) { EXPECT_EQ(sign(k - 1) * c.d(k) * sign(k), h.d(k)); }
    }
  }
}

TEST(Cylinder, Examples) {
  Rng rng(18);
  for (int it = 0; it < 100; ++it) {
    ChainComplex x = random_complex(rng, Q);
    Cylinder cyl = cylinder(ChainMap::identity(x));
    EXPECT_EQ(betti_numbers(cyl.cylinder), betti_numbers(x));
    EXPECT_TRUE(is_quasi_iso(cyl.projection));
    ChainMap f = random_chain_map(rng, Q);
    Cylinder c = cylinder(f);
    EXPECT_TRUE(validate(c.cylinder).empty());
    EXPECT_TRUE(is_valid(c.source_end));
    EXPECT_TRUE(is_valid(c.target_end));
    EXPECT_TRUE(is_valid(c.projection));
    EXPECT_TRUE(is_quasi_iso(c.projection));
    EXPECT_EQ(c.projection * c.source_end, f);
    EXPECT_EQ(c.projection * c.target_end, ChainMap::identity(f.target()));
    // Degreewise split: the source end is a coordinate inclusion.
    for (int k : f.source().degrees()) EXPECT_TRUE(c.source_end.at(k).is_signed_monomial());
  }
  ChainComplex y = random_complex(rng, Q);
  EXPECT_EQ(cylinder(ChainMap(ChainComplex::zero(Q), y)).cylinder.ranks(), y.ranks());
}

TEST(PathObject, IdentityOfPoint) {
  ChainComplex r = point(Q);
  PathObject p = path_object(ChainMap::identity(r));
  // P_k = U_k + V_{k+1} + V_k.
  EXPECT_EQ(p.path.rank(0), 2u);
  EXPECT_EQ(p.path.rank(-1), 1u);
  EXPECT_EQ(betti_numbers(p.path), betti_numbers(r));
}

TEST(PathObject, ZeroMap) {
  Rng rng(19);
  for (int it = 0; it < 50; ++it) {
    ChainComplex u = random_complex(rng, Q), v = random_complex(rng, Q);
    PathObject p = path_object(ChainMap(u, v));
    EXPECT_EQ(betti_numbers(p.path), betti_numbers(u));
  }
}

TEST(PathObject, Proposition) {
  Rng rng(20);
  for (int it = 0; it < 200; ++it) {
    Ring ring = it % 2 ? Q : Z;
    ChainMap f = random_chain_map(rng, ring);
    PathObject p = path_object(f);
    EXPECT_TRUE(validate(p.path).empty());
    EXPECT_TRUE(is_valid(p.alpha));
    EXPECT_TRUE(is_valid(p.beta));
    EXPECT_EQ(p.beta * p.alpha, f);
    for (int k : f.target().degrees()) {
      if (f.target().rank(k)) { EXPECT_EQ(rank_over_rationals(p.beta.at(k)), f.target().rank(k)); }
    }
    EXPECT_TRUE(is_quasi_iso(p.alpha));
    Subcomplex ker = kernel_complex(p.beta);
    HomotopyFiber h = hofib(f);
    EXPECT_EQ(ker.complex, h.fiber);
  }
}

TEST(Hofib, Examples) {
  ChainComplex r = point(Q);
  EXPECT_TRUE(is_acyclic(hofib(ChainMap::identity(r)).fiber));
  Rng rng(21);
  ChainComplex v = random_complex(rng, Q, {-1, 2, 4, 6, 1, true});
  ChainComplex h = hofib(ChainMap(ChainComplex::zero(Q), v)).fiber;
  ChainComplex om = loop(v);
  // The V-block carries -d_V, which is exactly the differential of Omega V.
  EXPECT_EQ(h, om);
  for (int k : h.degrees()) {
    if (h.rank(k - 1)) { EXPECT_EQ(h.d(k), -v.d(k + 1)); }
  }
  ChainComplex rz = point(Z);
  ChainComplex h2 = hofib(scalar_map(rz, 2)).fiber;
  EXPECT_EQ(homology(h2, -1), (HomologyGroup{0, {Rational(2)}}));
  EXPECT_TRUE(homology(h2, 0).is_zero());
}

TEST(Hofib, ExactSequence) {
  Rng rng(22);
  for (int it = 0; it < 200; ++it) {
    ChainMap f = random_chain_map(rng, it % 3 ? Q : Ring::prime_field(5));
    ChainComplex h = hofib(f).fiber;
    EXPECT_TRUE(validate(h).empty());
    for (int k = -3; k <= 3; ++k) {
      std::size_t ker = betti(f.source(), k) - induced_rank(f, k);
      std::size_t coker = betti(f.target(), k + 1) - induced_rank(f, k + 1);
      EXPECT_EQ(betti(h, k), ker + coker);
    }
  }
}

TEST(Homology, Examples) {
  EXPECT_EQ(homology(point(Q), 0).free_rank, 1u);
  EXPECT_TRUE(is_acyclic(two_term(Q, 1, 1)));
  ChainComplex z2 = two_term(Z, 1, -2);
  EXPECT_EQ(homology(z2, 0), (HomologyGroup{0, {Rational(2)}}));
  EXPECT_TRUE(homology(z2, 1).is_zero());
  EXPECT_EQ(homology(two_term(Ring::prime_field(2), 1, -2), 0).free_rank, 1u);
}

TEST(QuasiIso, Examples) {
  Rng rng(23);
  for (int it = 0; it < 100; ++it) {
    ChainComplex x = random_complex(rng, Q);
    EXPECT_TRUE(is_quasi_iso(ChainMap::identity(x)));
    // Projection off an acyclic summand.
    ChainComplex a = tensor(two_term(Q, 1, 1), random_complex(rng, Q));
    DirectSum s = direct_sum(Q, {x, a});
    EXPECT_TRUE(is_quasi_iso(s.projections[0]));
  }
  EXPECT_FALSE(is_quasi_iso(scalar_map(point(Z), 2)));
  EXPECT_TRUE(is_quasi_iso(scalar_map(point(Q), 2)));
}
