#pragma once

// The bar construction of the diagonal cotriple, its fat realization, the
// Taylor tower terms Gamma_n F, degree checks and delooping.

#include <map>
#include <string>
#include <vector>

#include "fck/calculus.hpp"
#include "fck/homology.hpp"

namespace fck {

struct SimplicialChainComplex {
  unsigned truncation = 0;
  std::vector<ChainComplex> levels;                 // q = 0..N
  std::vector<std::vector<ChainMap>> faces;         // faces[q][i] : level q -> q-1, q >= 1
  std::vector<std::vector<ChainMap>> degeneracies;  // degeneracies[q][i] : level q -> q+1, q < N
};

/// Every simplicial identity whose terms stay within the truncation.
inline std::vector<std::string> check_simplicial_identities(const SimplicialChainComplex& s) {
  std::vector<std::string> out;
  const unsigned big_n = s.truncation;
  auto d = [&](unsigned q, unsigned i) -> const ChainMap& { return s.faces[q][i]; };
  auto sd = [&](unsigned q, unsigned i) -> const ChainMap& { return s.degeneracies[q][i]; };
  auto where = [](const char* what, unsigned q, unsigned i, unsigned j) {
    return std::string(what) + " at q=" + std::to_string(q) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
  };
  for (unsigned q = 0; q <= big_n; ++q) {
    for (unsigned i = 0; i <= q && q >= 1; ++i)
      if (!is_valid(d(q, i))) out.push_back(where("face not a chain map", q, i, i));
    for (unsigned i = 0; i <= q && q < big_n; ++i)
      if (!is_valid(sd(q, i))) out.push_back(where("degeneracy not a chain map", q, i, i));
  }
  // d_i d_j = d_{j-1} d_i for i < j, on level q >= 2.
  for (unsigned q = 2; q <= big_n; ++q)
    for (unsigned j = 1; j <= q; ++j)
      for (unsigned i = 0; i < j; ++i)
        if (d(q - 1, i) * d(q, j) != d(q - 1, j - 1) * d(q, i)) out.push_back(where("d_i d_j", q, i, j));
  // s_i s_j = s_{j+1} s_i for i <= j, on level q with q + 2 <= N.
  for (unsigned q = 0; q + 2 <= big_n; ++q)
    for (unsigned j = 0; j <= q; ++j)
      for (unsigned i = 0; i <= j; ++i)
        if (sd(q + 1, i) * sd(q, j) != sd(q + 1, j + 1) * sd(q, i)) out.push_back(where("s_i s_j", q, i, j));
  // d_i s_j on level q with q + 1 <= N.
  for (unsigned q = 0; q + 1 <= big_n; ++q)
    for (unsigned j = 0; j <= q; ++j) {
      const ChainMap id = ChainMap::identity(s.levels[q]);
      for (unsigned i = 0; i <= q + 1; ++i) {
        const ChainMap lhs = d(q + 1, i) * sd(q, j);
        if (i < j) {
          if (lhs != sd(q - 1, j - 1) * d(q, i)) out.push_back(where("d_i s_j (i<j)", q, i, j));
        } else if (i == j || i == j + 1) {
          if (lhs != id) out.push_back(where("d_i s_j = id", q, i, j));
        } else {
          if (lhs != sd(q - 1, j) * d(q, i - 1)) out.push_back(where("d_i s_j (i>j+1)", q, i, j));
        }
      }
    }
  return out;
}

/// The tower of functors perp^{m+1} F with the structure maps of the bar
/// construction evaluated at one object.
class BarBuilder {
 public:
  BarBuilder(const Functor& f, unsigned n) : n_(n) { functors_.push_back(f); }

  /// perp^{m+1} F for m >= -1.
  Functor level_functor(int m) {
    while (static_cast<int>(functors_.size()) < m + 2) functors_.push_back(perp_functor(functors_.back(), n_));
    return functors_[static_cast<std::size_t>(m + 1)];
  }

  /// d_i = perp^i epsilon perp^{q-i} : level q -> level q-1.
  NatTrans face(unsigned q, unsigned i) {
    const int base = static_cast<int>(q) - static_cast<int>(i) - 1;
    const Functor g = level_functor(base);
    const Functor pg = level_functor(base + 1);
    NatTrans t{pg, g, [g, pg, n = n_](const EtaObject& x) { return epsilon(g, pg, n, x); }};
    for (unsigned k = 0; k < i; ++k) t = perp_nat(t, level_functor(base + 2 + static_cast<int>(k)), level_functor(base + 1 + static_cast<int>(k)), n_);
    return t;
  }

  /// s_i = perp^i delta perp^{q-i} : level q -> level q+1.
  NatTrans degeneracy(unsigned q, unsigned i) {
    const int base = static_cast<int>(q) - static_cast<int>(i) - 1;
    const Functor g = level_functor(base);
    const Functor pg = level_functor(base + 1);
    const Functor ppg = level_functor(base + 2);
    NatTrans t{pg, ppg, [g, pg, ppg, n = n_](const EtaObject& x) { return delta(g, pg, ppg, n, x); }};
    for (unsigned k = 0; k < i; ++k) t = perp_nat(t, level_functor(base + 2 + static_cast<int>(k)), level_functor(base + 3 + static_cast<int>(k)), n_);
    return t;
  }

 private:
  unsigned n_;
  std::vector<Functor> functors_;
};

/// Level q = perp_n^{q+1} F(X) for 0 <= q <= N, with all faces and the
/// degeneracies below the top level.
inline SimplicialChainComplex bar_construction(BarBuilder& b, const EtaObject& xc, unsigned big_n,
                                               bool with_degeneracies) {
  SimplicialChainComplex s;
  s.truncation = big_n;
  for (unsigned q = 0; q <= big_n; ++q) s.levels.push_back(b.level_functor(static_cast<int>(q))(xc));
  s.faces.resize(big_n + 1);
  s.degeneracies.resize(big_n + 1);
  for (unsigned q = 1; q <= big_n; ++q)
    for (unsigned i = 0; i <= q; ++i) s.faces[q].push_back(b.face(q, i).at(xc));
  if (with_degeneracies)
    for (unsigned q = 0; q < big_n; ++q)
      for (unsigned i = 0; i <= q; ++i) s.degeneracies[q].push_back(b.degeneracy(q, i).at(xc));
  return s;
}

inline SimplicialChainComplex bar_construction(const Functor& f, unsigned n, const EtaObject& x, unsigned big_n,
                                               bool with_degeneracies = true) {
  BarBuilder b(f, n);
  return bar_construction(b, ensure_cofibrant(x), big_n, with_degeneracies);
}

/// Direct-sum total complex: degree m is sum_q level(q)_{m-q}, with
/// differential (-1)^q d_internal + sum_i (-1)^i d_i.
inline ChainComplex fat_realization(const SimplicialChainComplex& s) {
  if (s.levels.empty()) throw PreconditionError("fat_realization of an empty simplicial object");
  const Ring& ring = s.levels.front().ring();
  std::vector<Layout::Part> parts;
  for (unsigned q = 0; q < s.levels.size(); ++q) parts.push_back({s.levels[q], static_cast<int>(q)});
  Layout l(ring, parts);
  return l.build([&](int m, MatrixBuilder& b) {
    for (unsigned q = 0; q < s.levels.size(); ++q) {
      const int k = m - static_cast<int>(q);
      l.put(b, q, m - 1, l, q, m, s.levels[q].d(k), q % 2 ? -1 : 1);
      if (q == 0) continue;
      for (unsigned i = 0; i <= q; ++i) l.put(b, q - 1, m - 1, l, q, m, s.faces[q][i].at(k), i % 2 ? -1 : 1);
    }
  });
}

/// The map fat realization -> level(-1) given by aug on level 0 and zero on
/// higher levels.
inline ChainMap realization_augmentation(const SimplicialChainComplex& s, const ChainComplex& fat, const ChainMap& aug) {
  const Ring& ring = fat.ring();
  std::vector<Layout::Part> parts;
  for (unsigned q = 0; q < s.levels.size(); ++q) parts.push_back({s.levels[q], static_cast<int>(q)});
  Layout l(ring, parts), lt(ring, {{aug.target(), 0}});
  return build_map(fat, aug.target(), [&](int m, MatrixBuilder& b) { lt.put(b, 0, m, l, 0, m, aug.at(m)); });
}

struct GammaResult {
  SimplicialChainComplex bar;
  ChainComplex realization;
  ChainMap epsilon_hat;  // realization -> F(X)
  ChainComplex gamma;    // cone(epsilon_hat)
  ChainMap p;            // F(X) -> gamma
};

/// Gamma_n F(X) = cone(|perp_{n+1}^{*+1} F(X)| -> F(X)), truncated at N.
inline GammaResult gamma_n(const Functor& f, unsigned n, const EtaObject& x, unsigned big_n) {
  EtaObject xc = ensure_cofibrant(x);
  GammaResult r;
  BarBuilder b(f, n + 1);
  r.bar = bar_construction(b, xc, big_n, false);
  r.realization = fat_realization(r.bar);
  ChainMap eps = b.face(0, 0).at(xc);
  r.epsilon_hat = realization_augmentation(r.bar, r.realization, eps);
  Cone c = cone(r.epsilon_hat);
  r.gamma = c.cone;
  r.p = c.inclusion;
  return r;
}

struct Window {
  int lo = -6;
  int hi = 6;
};

inline std::map<int, std::size_t> betti_in_window(const ChainComplex& x, Window w) {
  std::map<int, std::size_t> out;
  for (int k = w.lo; k <= w.hi; ++k) out[k] = homology(x, k).free_rank;
  return out;
}

struct DegreeSample {
  std::vector<EtaObject> tuple;
  std::map<int, std::size_t> betti;
  bool vanishes = true;
};

struct DegreeReport {
  unsigned n = 0;
  Window window;
  bool pass = true;
  std::vector<DegreeSample> samples;
};

/// F has degree n on the samples when cr_{n+1} F vanishes in the window.
inline DegreeReport degree_check(const Functor& f, unsigned n, const std::vector<std::vector<EtaObject>>& samples,
                                 Window w) {
  DegreeReport rep{n, w, true, {}};
  for (const auto& t : samples) {
    if (t.size() != n + 1) throw PreconditionError("degree_check samples must have n+1 entries");
    DegreeSample s{t, betti_in_window(cr_n(f, t), w), true};
    for (auto [k, b] : s.betti)
      if (b) s.vanishes = false;
    rep.pass = rep.pass && s.vanishes;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

/// Tuples of n+1 objects drawn from {A, B, extra...}, all combinations.
inline std::vector<std::vector<EtaObject>> degree_samples(const ContextPtr& ctx, unsigned size,
                                                          const std::vector<EtaObject>& extra) {
  std::vector<EtaObject> pool{initial_object(ctx), terminal_object(ctx)};
  pool.insert(pool.end(), extra.begin(), extra.end());
  std::vector<std::vector<EtaObject>> out;
  std::size_t total = 1;
  for (unsigned i = 0; i < size; ++i) total *= pool.size();
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<EtaObject> t;
    std::size_t c = code;
    for (unsigned i = 0; i < size; ++i, c /= pool.size()) t.push_back(pool[c % pool.size()]);
    out.push_back(std::move(t));
  }
  return out;
}

struct DeloopReport {
  std::string check;
  Window window;
  bool precondition = true;
  std::vector<std::string> precondition_failures;
  std::map<int, std::size_t> lhs;  // F(X)
  std::map<int, std::size_t> rhs;  // Omega^m F(...)
  bool pass = false;
};

/// F(A) against Omega F(B u_A B), for F reduced and of degree 1.
inline DeloopReport deloop_degree1(const Functor& f, const ContextPtr& ctx, const std::vector<EtaObject>& extra, Window w) {
  DeloopReport rep{"deloop-degree1", w, true, {}, {}, {}, false};
  ChainComplex fb = f(terminal_object(ctx));
  if (!is_acyclic(fb)) {
    rep.precondition = false;
    rep.precondition_failures.push_back("F(B) is not acyclic: F is not reduced");
  }
  DegreeReport deg = degree_check(f, 1, degree_samples(ctx, 2, extra), w);
  if (!deg.pass) {
    rep.precondition = false;
    rep.precondition_failures.push_back("cr_2 F does not vanish: F is not of degree 1");
  }
  rep.lhs = betti_in_window(f(initial_object(ctx)), w);
  EtaObject bb = coproduct_over_A({terminal_object(ctx), terminal_object(ctx)}).object;
  rep.rhs = betti_in_window(loop(f(bb)), w);
  rep.pass = rep.precondition && rep.lhs == rep.rhs;
  return rep;
}

/// The mapping cylinder of aug : X -> B as an object under A, with its end
/// inclusion of X.
struct AugCylinder {
  EtaObject object;
  EtaMorphism end;  // X -> Cyl
};

inline AugCylinder aug_cylinder(const EtaObject& x) {
  Cylinder c = cylinder(x.aug);
  EtaObject o{x.ctx, c.cylinder, c.source_end * x.unit, c.projection};
  return {o, {x, o, c.source_end}};
}

/// The square X -> Cyl, X -> Cyl, Cyl -> P, Cyl -> P where P is the strict
/// pushout of the two cylinders along X.
inline CubicalDiagram suspension_square(const Functor& f, const EtaObject& x) {
  const auto& ctx = x.ctx;
  const Ring& ring = ctx->ring;
  AugCylinder cy = aug_cylinder(x);
  const ChainComplex& cx = cy.object.x;
  const ChainComplex& xx = x.x;
  const ChainComplex& b = ctx->b;
  // P = X + X[-1] + B + X[-1] + B.
  Layout lp(ring, {{xx, 0}, {xx, 1}, {b, 0}, {xx, 1}, {b, 0}});
  ChainComplex p = lp.build([&](int k, MatrixBuilder& m) {
    lp.put(m, 0, k - 1, lp, 0, k, xx.d(k));
    for (std::size_t s : {1u, 3u}) {
      lp.put_identity(m, 0, k - 1, lp, s, k);
      lp.put(m, s, k - 1, lp, s, k, xx.d(k - 1), -1);
      lp.put(m, s + 1, k - 1, lp, s + 1, k, b.d(k));
      lp.put(m, s + 1, k - 1, lp, s, k, x.aug.at(k - 1), -1);
    }
  });
  Layout lc(ring, {{xx, 0}, {xx, 1}, {b, 0}}), lb(ring, {{b, 0}}), la(ring, {{ctx->a, 0}});
  ChainMap p_aug = build_map(p, b, [&](int k, MatrixBuilder& m) {
    lb.put(m, 0, k, lp, 0, k, x.aug.at(k));
    lb.put_identity(m, 0, k, lp, 2, k);
    lb.put_identity(m, 0, k, lp, 4, k);
  });
  ChainMap p_unit = build_map(ctx->a, p, [&](int k, MatrixBuilder& m) { lp.put(m, 0, k, la, 0, k, x.unit.at(k)); });
  EtaObject po{ctx, p, p_unit, p_aug};
  auto side = [&](std::size_t s) {
    ChainMap g = build_map(cx, p, [&](int k, MatrixBuilder& m) {
      lp.put_identity(m, 0, k, lc, 0, k);
      lp.put_identity(m, s, k, lc, 1, k);
      lp.put_identity(m, s + 1, k, lc, 2, k);
    });
    return EtaMorphism{cy.object, po, g};
  };
  EtaMorphism left = side(1), right = side(3);
  ChainComplex v0 = f(x), v1 = f(cy.object), v3 = f(po);
  ChainMap e1 = f(cy.end), el = f(left), er = f(right);
  return CubicalDiagram(
      ring, 2,
      [&](Subset t) {
        switch (t.bits) {
          case 0: return v0;
          case 3: return v3;
          default: return v1;
        }
      },
      [&](Subset t, unsigned) {
        if (t.bits == 0) return e1;
        return t.bits == 1 ? er : el;  // from {1} along 2, or from {2} along 1
      });
}

/// F(X) against Omega^m F(Sigma_B^m X); the hypothesis is checked on the
/// suspension squares of X, Sigma_B X, ..., Sigma_B^{m-1} X.
inline DeloopReport deloop_excisive(const Functor& f, const EtaObject& x, unsigned m, Window w) {
  DeloopReport rep{"deloop-excisive", w, true, {}, {}, {}, false};
  const auto& ctx = x.ctx;
  if (!is_acyclic(f(terminal_object(ctx)))) {
    rep.precondition = false;
    rep.precondition_failures.push_back("F(B) is not acyclic: F is not reduced");
  }
  EtaObject y = ensure_cofibrant(x);
  for (unsigned j = 0; j < m; ++j) {
    CubicalDiagram sq = suspension_square(f, y);
    if (!is_acyclic(tfiber_square(sq).complex)) {
      rep.precondition = false;
      rep.precondition_failures.push_back("suspension square " + std::to_string(j) + " is not cartesian after F");
    }
    y = ensure_cofibrant(sigma_B(y));
  }
  rep.lhs = betti_in_window(f(x), w);
  ChainComplex r = f(sigma_B_n(x, m));
  for (unsigned j = 0; j < m; ++j) r = loop(r);
  rep.rhs = betti_in_window(r, w);
  rep.pass = rep.precondition && rep.lhs == rep.rhs;
  return rep;
}

}  // namespace fck
