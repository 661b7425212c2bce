#pragma once

// Seeded generators of random complexes, chain maps and functorial cubes.

#include <cstdint>
#include <random>
#include <vector>

#include "fck/cube.hpp"
#include "fck/linalg.hpp"

namespace fck {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
  std::uint64_t next() { return gen_(); }

  /// A nonzero scalar of the ring with small representative.
  Rational nonzero(const Ring& ring, int bound = 3) {
    for (;;) {
      Rational v = ring.reduce(Rational(uniform(-bound, bound)));
      if (!v.is_zero()) return v;
    }
  }
  Rational scalar(const Ring& ring, int bound = 3) { return ring.reduce(Rational(uniform(-bound, bound))); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

struct RandomComplexOptions {
  int lo = -1;
  int hi = 2;
  int max_pieces = 4;
  int max_rank = 6;
  int min_pieces = 0;
  /// Conjugate each degree by a random unimodular change of basis.
  bool conjugate = true;
};

namespace detail {

/// Random unimodular matrix as a product of elementary matrices, with its
/// inverse.
inline std::pair<Matrix, Matrix> random_unimodular(Rng& rng, const Ring& ring, std::size_t n) {
  Matrix p = Matrix::identity(ring, n), q = Matrix::identity(ring, n);
  if (n < 2) return {p, q};
  const int steps = rng.uniform(0, static_cast<int>(2 * n));
  for (int s = 0; s < steps; ++s) {
    std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 2));
    if (j >= i) ++j;
    Rational c = rng.nonzero(ring, 2);
    MatrixBuilder e(ring, n, n), ei(ring, n, n);
    e.add_identity(0, 0, n);
    ei.add_identity(0, 0, n);
    e.add(i, j, c);
    ei.add(i, j, ring.neg(c));
    p = std::move(e).build() * p;
    q = q * std::move(ei).build();
  }
  return {p, q};
}

}  // namespace detail

/// An isomorphic copy of x (basis changed by unimodular matrices) with the
/// isomorphism x -> copy and its inverse.
struct Conjugate {
  ChainComplex complex;
  ChainMap iso;
  ChainMap inverse;
};

inline Conjugate conjugate(Rng& rng, const ChainComplex& x) {
  const Ring& ring = x.ring();
  std::map<int, Matrix> p, q;
  for (int k : x.degrees()) {
    auto [a, b] = detail::random_unimodular(rng, ring, x.rank(k));
    p.emplace(k, std::move(a));
    q.emplace(k, std::move(b));
  }
  std::map<int, std::size_t> ranks = x.ranks();
  std::map<int, Matrix> diffs;
  for (int k : x.degrees())
    if (x.rank(k - 1) && x.rank(k)) diffs.emplace(k, p.at(k - 1) * x.d(k) * q.at(k));
  ChainComplex y = ChainComplex::from(ring, ranks, std::move(diffs));
  std::map<int, Matrix> pf, qf;
  for (int k : x.degrees())
    if (x.rank(k)) {
      pf.emplace(k, p.at(k));
      qf.emplace(k, q.at(k));
    }
  return {y, ChainMap(x, y, std::move(pf)), ChainMap(y, x, std::move(qf))};
}

/// Direct sum of pieces R (one degree) and R -c-> R (two adjacent degrees),
/// optionally conjugated.
inline ChainComplex random_complex(Rng& rng, const Ring& ring, const RandomComplexOptions& opt = {}) {
  struct Piece {
    int k;
    bool pair;
    Rational c;
  };
  std::vector<Piece> pieces;
  const int count = rng.uniform(opt.min_pieces, opt.max_pieces);
  std::map<int, std::size_t> ranks;
  for (int i = 0; i < count; ++i) {
    int k = rng.uniform(opt.lo, opt.hi);
    bool pair = k > opt.lo && rng.chance(0.5);
    if (ranks[k] + 1 > static_cast<std::size_t>(opt.max_rank)) continue;
    if (pair && ranks[k - 1] + 1 > static_cast<std::size_t>(opt.max_rank)) pair = false;
    Rational c = pair ? rng.nonzero(ring, 3) : Rational(0);
    pieces.push_back({k, pair, c});
    ranks[k] += 1;
    if (pair) ranks[k - 1] += 1;
  }
  std::map<int, std::size_t> fill;
  std::map<int, MatrixBuilder> builders;
  for (const auto& [k, r] : ranks)
    if (r && ranks.count(k - 1) && ranks[k - 1]) builders.emplace(k, MatrixBuilder(ring, ranks[k - 1], r));
  for (const auto& pc : pieces) {
    std::size_t col = fill[pc.k]++;
    if (pc.pair) {
      std::size_t row = fill[pc.k - 1]++;
      builders.at(pc.k).add(row, col, pc.c);
    }
  }
  std::map<int, Matrix> diffs;
  for (auto& [k, b] : builders) diffs.emplace(k, std::move(b).build());
  ChainComplex x = ChainComplex::from(ring, ranks, std::move(diffs));
  if (!opt.conjugate) return x;
  return conjugate(rng, x).complex;
}

/// Random chain map x -> y: a random combination of a basis of the solution
/// space of d f = f d. Over Z the combination is computed over Q and cleared
/// of denominators.
inline ChainMap random_chain_map(Rng& rng, const ChainComplex& x, const ChainComplex& y, int bound = 2) {
  const Ring& ring = x.ring();
  const bool over_z = !ring.is_field();
  const Ring work = over_z ? Ring::rationals() : ring;
  // Unknowns: entries of f_k for each degree in the joint support.
  std::vector<int> degs;
  std::map<int, std::size_t> var_off;
  std::size_t nvars = 0;
  for (int k : x.degrees())
    if (y.rank(k) && x.rank(k)) {
      degs.push_back(k);
      var_off[k] = nvars;
      nvars += y.rank(k) * x.rank(k);
    }
  if (nvars == 0) return ChainMap(x, y);
  auto var = [&](int k, std::size_t r, std::size_t c) { return var_off.at(k) + r * x.rank(k) + c; };
  // Equations: (d^y_k f_k - f_{k-1} d^x_k)_{r,c} = 0 for r < rank y_{k-1}, c < rank x_k.
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> eqs;
  std::size_t neq = 0;
  int klo = x.is_zero() ? 0 : x.min_degree(), khi = x.is_zero() ? -1 : x.max_degree() + 1;
  for (int k = klo; k <= khi; ++k) {
    const std::size_t rows = y.rank(k - 1), cols = x.rank(k);
    if (rows == 0 || cols == 0) continue;
    const Matrix dy = y.d(k).over(work);
    const Matrix dx = x.d(k).over(work);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t e = neq++;
        if (y.rank(k)) {
          auto cs = dy.row_cols(r);
          auto vs = dy.row_values(r);
          for (std::size_t t = 0; t < cs.size(); ++t) eqs.emplace_back(e, var(k, cs[t], c), vs[t]);
        }
        if (x.rank(k - 1)) {
          for (std::size_t t = 0; t < x.rank(k - 1); ++t) {
            Rational v = dx.at(t, c);
            if (!v.is_zero()) eqs.emplace_back(e, var(k - 1, r, t), work.neg(v));
          }
        }
      }
  }
  MatrixBuilder sys(work, neq, nvars);
  for (auto& [r, c, v] : eqs) sys.add_canonical(r, c, v);
  Matrix basis = kernel_basis(std::move(sys).build());
  std::vector<Rational> sol(nvars);
  const double skip = basis.cols() > 2 ? 0.3 : 0.0;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    if (rng.chance(skip)) continue;
    Rational coef = work.reduce(Rational(rng.uniform(-bound, bound)));
    if (coef.is_zero()) continue;
    for (std::size_t i = 0; i < nvars; ++i) {
      Rational v = basis.at(i, j);
      if (!v.is_zero()) sol[i] = work.add(sol[i], work.mul(coef, v));
    }
  }
  if (over_z) {
    mpz_class l = 1;
    for (const auto& v : sol) {
      mpz_class d = v.denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    Rational lr{l};
    for (auto& v : sol) v = v * lr;
  }
  std::map<int, Matrix> comps;
  for (int k : degs) {
    MatrixBuilder b(ring, y.rank(k), x.rank(k));
    for (std::size_t r = 0; r < y.rank(k); ++r)
      for (std::size_t c = 0; c < x.rank(k); ++c) b.add(r, c, sol[var(k, r, c)]);
    comps.emplace(k, std::move(b).build());
  }
  return ChainMap(x, y, std::move(comps));
}

/// Random chain map out of a fresh random source into a fresh random target.
inline ChainMap random_chain_map(Rng& rng, const Ring& ring, const RandomComplexOptions& opt = {}) {
  ChainComplex x = random_complex(rng, ring, opt);
  ChainComplex y = random_complex(rng, ring, opt);
  return random_chain_map(rng, x, y);
}

struct RandomCubeOptions {
  int summands = 2;
  /// Options for the two ends P_i, Q_i of each one-dimensional factor.
  RandomComplexOptions factor{0, 1, 2, 2, 1, false};
  bool conjugate = true;
};

/// Functorial n-cube: a direct sum of tensor products of random chain maps
/// g_i : P_i -> Q_i (vertex T is the tensor of Q_i for i in T and P_i
/// otherwise), with each vertex conjugated by a random change of basis.
inline CubicalDiagram random_cube(Rng& rng, const Ring& ring, unsigned n, const RandomCubeOptions& opt = {}) {
  const std::uint32_t count = 1u << n;
  std::vector<std::vector<ChainComplex>> verts(count);  // per summand
  std::vector<std::vector<std::vector<ChainMap>>> edges(count, std::vector<std::vector<ChainMap>>(n));
  const int summands = rng.uniform(1, opt.summands);
  for (int s = 0; s < summands; ++s) {
    std::vector<ChainMap> g;
    for (unsigned i = 0; i < n; ++i) {
      ChainComplex p = random_complex(rng, ring, opt.factor);
      ChainComplex q = rng.chance(0.2) ? p : random_complex(rng, ring, opt.factor);
      g.push_back(p == q && rng.chance(0.5) ? ChainMap::identity(p) : random_chain_map(rng, p, q));
    }
    auto end = [&](unsigned i, bool top) { return top ? g[i].target() : g[i].source(); };
    for (std::uint32_t b = 0; b < count; ++b) {
      ChainComplex v = ChainComplex::concentrated(ring, 0, 1);
      for (unsigned i = 0; i < n; ++i) v = tensor(v, end(i, (b >> i) & 1u));
      verts[b].push_back(v);
    }
    for (std::uint32_t b = 0; b < count; ++b)
      for (unsigned i = 0; i < n; ++i) {
        if ((b >> i) & 1u) continue;
        ChainMap e = ChainMap::identity(ChainComplex::concentrated(ring, 0, 1));
        for (unsigned j = 0; j < n; ++j) {
          ChainMap m = j == i ? g[j] : ChainMap::identity(end(j, (b >> j) & 1u));
          e = tensor(e, m);
        }
        edges[b][i].push_back(e);
      }
  }
  std::vector<ChainComplex> vsum(count);
  std::vector<ChainMap> iso(count), inv(count);
  for (std::uint32_t b = 0; b < count; ++b) {
    vsum[b] = direct_sum_complex(ring, verts[b]);
    if (opt.conjugate) {
      Conjugate c = conjugate(rng, vsum[b]);
      vsum[b] = c.complex;
      iso[b] = c.iso;
      inv[b] = c.inverse;
    }
  }
  return CubicalDiagram(
      ring, n, [&](Subset t) { return vsum[t.bits]; },
      [&](Subset t, unsigned i) {
        ChainMap e = direct_sum_maps(ring, edges[t.bits][i - 1]);
        if (!opt.conjugate) return e;
        return iso[t.with(i).bits] * (e * inv[t.bits]);
      });
}

}  // namespace fck
