#include <gtest/gtest.h>

#include "bar_oracle.hpp"
#include "fck/homology.hpp"
#include "fck/random.hpp"
#include "fck/tower.hpp"
#include "printers.hpp"

using namespace fck;

namespace {

const Ring Q = Ring::rationals();

ChainComplex line(int degree) { return ChainComplex::from(Q, {{degree, 1}}, {}); }

std::map<int, std::size_t> all_betti(const ChainComplex& x) {
  std::map<int, std::size_t> out;
  for (int k = x.min_degree(); k <= x.max_degree(); ++k)
    if (std::size_t b = homology(x, k).free_rank) out[k] = b;
  return out;
}

std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& m) {
  std::map<int, std::size_t> out;
  for (auto [k, b] : m)
    if (b) out[k] = b;
  return out;
}

}  // namespace

TEST(Bar, SimplicialIdentities) {
  auto ctx = based_context(Q);
  EtaObject r = based_object(ctx, line(0));
  for (const char* spec : {"identity", "constant", "tensor:2"})
    for (unsigned n : {1u, 2u}) {
      SimplicialChainComplex s = bar_construction(make_functor(spec, Q), n, r, 2);
      EXPECT_EQ(check_simplicial_identities(s), std::vector<std::string>{}) << spec << " n=" << n;
    }
}

TEST(Bar, SimplicialIdentitiesNonBased) {
  ChainComplex a = line(0), b = line(0);
  auto ctx = make_context(ChainMap(a, b, {{0, Matrix::identity(Q, 1)}}));
  EtaObject x = cofibrant_replace(make_object(ctx, direct_sum_complex(Q, {b, line(1)}),
                                              ChainMap(a, direct_sum_complex(Q, {b, line(1)}), {{0, Matrix::identity(Q, 1)}}),
                                              ChainMap(direct_sum_complex(Q, {b, line(1)}), b, {{0, Matrix::identity(Q, 1)}})))
                    .object;
  for (const char* spec : {"structure_fiber", "tensor:2"}) {
    SimplicialChainComplex s = bar_construction(make_functor(spec, Q), 1, x, 2);
    EXPECT_EQ(check_simplicial_identities(s), std::vector<std::string>{}) << spec;
  }
}

TEST(Bar, BrokenFaceIsDetected) {
  auto ctx = based_context(Q);
  SimplicialChainComplex s = bar_construction(make_functor("tensor:2", Q), 1, based_object(ctx, line(0)), 2);
  s.faces[2][1] = s.faces[2][1].scaled(Rational(2));
  EXPECT_FALSE(check_simplicial_identities(s).empty());
}

TEST(Gamma, TensorSquareMatchesOracle) {
  auto ctx = based_context(Q);
  EtaObject r = based_object(ctx, line(0));
  for (unsigned big_n : {2u, 3u}) {
    GammaResult g = gamma_n(make_functor("tensor:2", Q), 1, r, big_n);
    EXPECT_TRUE(is_valid(g.gamma));
    EXPECT_TRUE(is_valid(g.epsilon_hat));
    EXPECT_EQ(all_betti(g.gamma), nonzero(bar_oracle::gamma_betti(2, 2, big_n))) << "N=" << big_n;
    for (int k = 0; k <= static_cast<int>(big_n) - 2; ++k) EXPECT_EQ(homology(g.gamma, k).free_rank, 0u) << k;
  }
}

TEST(Gamma, LowerDegreeFunctorIsItsOwnApproximation) {
  auto ctx = based_context(Q);
  EtaObject r = based_object(ctx, line(0));
  GammaResult g0 = gamma_n(make_functor("constant", Q), 0, r, 3);
  EXPECT_TRUE(is_quasi_iso(g0.p));
  GammaResult g1 = gamma_n(make_functor("identity", Q), 1, r, 3);
  EXPECT_TRUE(is_quasi_iso(g1.p));
  GammaResult g2 = gamma_n(make_functor("tensor:2", Q), 2, r, 2);
  EXPECT_TRUE(is_quasi_iso(g2.p));
  EXPECT_EQ(all_betti(g2.gamma), nonzero(bar_oracle::gamma_betti(2, 3, 2)));
}

TEST(Gamma, TruncationStability) {
  auto ctx = based_context(Q);
  EtaObject r = based_object(ctx, line(0));
  const unsigned big_n = 2;
  ChainComplex a = gamma_n(make_functor("tensor:2", Q), 1, r, big_n).gamma;
  ChainComplex b = gamma_n(make_functor("tensor:2", Q), 1, r, big_n + 1).gamma;
  for (int k = -2; k <= static_cast<int>(big_n) - 1; ++k) EXPECT_EQ(homology(a, k), homology(b, k)) << k;
}

TEST(Degree, Check) {
  auto ctx = based_context(Q);
  std::vector<EtaObject> extra{based_object(ctx, line(0)), based_object(ctx, line(1))};
  Window w{-3, 4};
  EXPECT_TRUE(degree_check(make_functor("identity", Q), 1, degree_samples(ctx, 2, extra), w).pass);
  EXPECT_FALSE(degree_check(make_functor("tensor:2", Q), 1, degree_samples(ctx, 2, extra), w).pass);
  EXPECT_TRUE(degree_check(make_functor("tensor:2", Q), 2, degree_samples(ctx, 3, extra), w).pass);
  EXPECT_TRUE(degree_check(make_functor("constant", Q), 0, degree_samples(ctx, 1, extra), w).pass);
}

TEST(Deloop, DegreeOne) {
  ChainComplex a(Q), b = line(0);
  auto ctx = make_context(ChainMap(a, b));
  ChainComplex bx = direct_sum_complex(Q, {b, line(1)});
  std::vector<EtaObject> extra{make_object(ctx, bx, ChainMap(a, bx), ChainMap(bx, b, {{0, Matrix::identity(Q, 1)}}))};
  DeloopReport ok = deloop_degree1(make_functor("structure_fiber", Q), ctx, extra, {-3, 3});
  EXPECT_TRUE(ok.precondition);
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(nonzero(ok.lhs), (std::map<int, std::size_t>{{-1, 1}}));
  DeloopReport bad = deloop_degree1(make_functor("tensor:2", Q), ctx, extra, {-3, 3});
  EXPECT_FALSE(bad.precondition);
  EXPECT_FALSE(bad.pass);
}

TEST(Deloop, Excisive) {
  ChainComplex a(Q), b = line(0);
  auto ctx = make_context(ChainMap(a, b));
  EtaObject x = make_object(ctx, direct_sum_complex(Q, {b, line(2)}), ChainMap(a, direct_sum_complex(Q, {b, line(2)})),
                            ChainMap(direct_sum_complex(Q, {b, line(2)}), b, {{0, Matrix::identity(Q, 1)}}));
  for (unsigned m : {1u, 2u, 3u}) {
    DeloopReport ok = deloop_excisive(make_functor("structure_fiber", Q), x, m, {-4, 4});
    EXPECT_TRUE(ok.precondition) << m;
    EXPECT_TRUE(ok.pass) << m;
  }
  DeloopReport bad = deloop_excisive(make_functor("tensor:2", Q), x, 1, {-4, 4});
  EXPECT_FALSE(bad.precondition);
  EXPECT_FALSE(bad.pass);
  // Square hypothesis alone, with reducedness out of the picture.
  EXPECT_FALSE(is_acyclic(tfiber_square(suspension_square(make_functor("tensor:2", Q), x)).complex));
}
