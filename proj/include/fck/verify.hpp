#pragma once

// Randomized verification suites with deterministic per-instance seeding.

#include <atomic>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "fck/random.hpp"
#include "fck/serialize.hpp"
#include "fck/tower.hpp"

namespace fck {

inline std::uint64_t instance_seed(std::uint64_t seed, std::size_t i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Runs `body(i)` for i < count on up to `jobs` threads; results are kept in
/// index order.
template <class T>
std::vector<T> run_instances(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& body) {
  std::vector<T> out(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = body(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          out[i] = body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

inline RandomComplexOptions small_complex_options() { return {-1, 2, 3, 4, 0, true}; }

/// A nonzero chain map between random complexes with overlapping support,
/// when the draw allows one within a few attempts.
inline ChainMap random_nonzero_map(Rng& rng, const Ring& ring) {
  const RandomComplexOptions opt{-1, 3, 4, 5, 2, true};
  ChainMap f = random_chain_map(rng, ring, opt);
  for (int attempt = 0; attempt < 8 && f.is_zero(); ++attempt) f = random_chain_map(rng, ring, opt);
  return f;
}

inline ContextPtr random_context(Rng& rng, const Ring& ring) {
  ChainComplex a = random_complex(rng, ring, small_complex_options());
  ChainComplex b = random_complex(rng, ring, small_complex_options());
  return make_context(random_chain_map(rng, a, b));
}

/// X = B + Y with unit (eta, u) and aug (id, g), where one of u, g is zero.
inline EtaObject random_eta_object(Rng& rng, const ContextPtr& ctx) {
  const Ring& ring = ctx->ring;
  ChainComplex y = random_complex(rng, ring, small_complex_options());
  if (ctx->is_based()) return based_object(ctx, y);
  ChainMap u(ctx->a, y), g(y, ctx->b);
  if (rng.chance(0.5))
    u = random_chain_map(rng, ctx->a, y);
  else
    g = random_chain_map(rng, y, ctx->b);
  DirectSum s = direct_sum(ring, {ctx->b, y});
  return make_object(ctx, s.sum, s.inclusions[0] * ctx->eta + s.inclusions[1] * u, s.projections[0] + g * s.projections[1]);
}

/// (X_1, ..., X_n) -> X_1 (x) ... (x) X_n; does not factor through the coproduct.
inline Functor external_tensor(unsigned n) {
  return {"external_tensor", n,
          [](const std::vector<EtaObject>& xs) {
            ChainComplex t = xs[0].x;
            for (std::size_t i = 1; i < xs.size(); ++i) t = tensor(t, xs[i].x);
            return t;
          },
          [](const std::vector<EtaMorphism>& fs) {
            ChainMap t = fs[0].f;
            for (std::size_t i = 1; i < fs.size(); ++i) t = tensor(t, fs[i].f);
            return t;
          }};
}

inline Functor random_functor(Rng& rng, unsigned n, const Ring& ring) {
  switch (rng.uniform(0, 4)) {
    case 0: return coproduct_functor(identity_functor(), n);
    case 1: return coproduct_functor(make_functor("tensor:2", ring), n);
    case 2: return coproduct_functor(structure_fiber(), n);
    case 3: return coproduct_functor(make_functor("constant", ring), n);
    default: return external_tensor(n);
  }
}

struct VerifyConfig {
  Ring ring = Ring::rationals();
  unsigned n = 2;
  std::size_t instances = 20;
  std::uint64_t seed = 1;
  unsigned truncation = 2;
  unsigned jobs = 1;
};

struct VerifyReport {
  std::string check;
  unsigned n = 0;
  std::size_t instances = 0;
  std::vector<std::string> failures;
  std::uint64_t seed = 0;

  [[nodiscard]] bool pass() const { return failures.empty(); }
  [[nodiscard]] Json to_json() const {
    return {{"check", check}, {"n", n}, {"instances", instances}, {"failures", failures}, {"seed", seed}};
  }
};

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"hofib",     "ifiber",        "tfiber",     "xi-chainmap", "counital",
                                              "coassoc",   "sign-identity", "simplicial", "two-routes"};
  return names;
}

namespace detail {

using Failures = std::vector<std::string>;

inline Failures check_hofib_instance(Rng& rng, const Ring& ring) {
  Failures out;
  ChainMap f = random_nonzero_map(rng, ring);
  HomotopyFiber h = hofib(f);
  if (!is_valid(h.fiber)) out.push_back("hofib: d^2 != 0");
  if (!is_valid(h.projection)) out.push_back("hofib: projection not a chain map");
  PathObject p = path_object(f);
  if (!is_valid(p.path) || !is_valid(p.alpha) || !is_valid(p.beta)) out.push_back("path object not exact");
  if (p.beta * p.alpha != f) out.push_back("beta * alpha != f");
  for (int k : f.target().degrees())
    if (f.target().rank(k) && rank_over_rationals(p.beta.at(k)) != f.target().rank(k))
      out.push_back("beta not surjective in degree " + std::to_string(k));
  if (!is_quasi_iso(p.alpha)) out.push_back("alpha not a quasi-isomorphism");
  if (kernel_complex(p.beta).complex != h.fiber) out.push_back("ker(beta) != hofib(f)");
  return out;
}

inline Failures check_ifiber_instance(Rng& rng, const Ring& ring, unsigned n) {
  Failures out;
  CubicalDiagram x = random_cube(rng, ring, n);
  for (const auto& v : validate(x)) out.push_back("cube: " + v);
  ChainComplex closed = ifiber_closed(x);
  if (!is_valid(closed)) out.push_back("ifiber: d^2 != 0");
  RecursiveFiber rec = ifiber_recursive(x);
  if (reorder_ifiber(x, closed, rec.order) != rec.complex) out.push_back("closed form != recursive fiber");
  return out;
}

inline Failures check_tfiber_instance(Rng& rng, const Ring& ring) {
  Failures out;
  CubicalDiagram x = random_cube(rng, ring, 2);
  TotalFiber t = tfiber_square(x);
  ChainComplex i = ifiber_closed(x);
  if (!is_valid(t.complex)) out.push_back("tfiber: d^2 != 0");
  ChainMap iso = tfiber_ifiber_iso(x, t.complex, i);
  if (!is_valid(iso)) out.push_back("tfiber -> ifiber not a chain map");
  for (int k : t.complex.degrees())
    if (!iso.at(k).is_square() || !iso.at(k).is_signed_monomial())
      out.push_back("tfiber -> ifiber not invertible in degree " + std::to_string(k));
  if (t.complex.ranks() != i.ranks()) out.push_back("tfiber and ifiber ranks differ");
  return out;
}

inline Failures check_cotriple_instance(Rng& rng, const Ring& ring, unsigned n, const std::string& suite) {
  auto ctx = rng.chance(0.25) ? based_context(ring) : random_context(rng, ring);
  std::vector<EtaObject> xs;
  for (unsigned i = 0; i < n; ++i) xs.push_back(random_eta_object(rng, ctx));
  Functor g = random_functor(rng, n, ring);
  TData d = t_data(g, xs, suite == "coassoc");
  CheckReport r;
  if (suite == "xi-chainmap") r = verify_xi_chain_map(d);
  if (suite == "counital") r = verify_counital(d);
  if (suite == "coassoc") r = verify_coassoc(d);
  if (suite == "two-routes") r = tt_two_routes(g, xs, d);
  Failures out;
  for (const auto& f : r.failures) out.push_back(g.name + ": " + f);
  return out;
}

inline Failures check_simplicial_instance(Rng& rng, const Ring& ring, unsigned n, unsigned big_n, std::size_t i) {
  static const char* specs[] = {"identity", "constant", "tensor:2"};
  auto ctx = based_context(ring);
  ChainComplex x = i < 3 ? ChainComplex::concentrated(ring, 0, 1)
                         : random_complex(rng, ring, {0, 1, 1, 1, 1, false});
  Functor f = make_functor(specs[i % 3], ring);
  SimplicialChainComplex s = bar_construction(f, n, based_object(ctx, x), big_n);
  Failures out;
  for (const auto& e : check_simplicial_identities(s)) out.push_back(f.name + ": " + e);
  ChainComplex fat = fat_realization(s);
  if (!is_valid(fat)) out.push_back(f.name + ": fat realization d^2 != 0");
  return out;
}

}  // namespace detail

/// Runs one suite; throws PreconditionError for an unknown suite name.
inline VerifyReport verify_suite(const std::string& suite, const VerifyConfig& cfg) {
  const auto& names = verify_suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw PreconditionError("unknown suite: " + suite);
  VerifyReport rep{suite, cfg.n, cfg.instances, {}, cfg.seed};
  if (suite == "sign-identity") {
    CheckReport r = verify_sign_identity(cfg.n);
    rep.instances = std::size_t{1} << (2 * cfg.n);
    rep.failures = r.failures;
    return rep;
  }
  auto results = run_instances<detail::Failures>(cfg.instances, cfg.jobs, [&](std::size_t i) {
    Rng rng(instance_seed(cfg.seed, i));
    if (suite == "hofib") return detail::check_hofib_instance(rng, cfg.ring);
    if (suite == "ifiber") return detail::check_ifiber_instance(rng, cfg.ring, cfg.n);
    if (suite == "tfiber") return detail::check_tfiber_instance(rng, cfg.ring);
    if (suite == "simplicial") return detail::check_simplicial_instance(rng, cfg.ring, cfg.n, cfg.truncation, i);
    return detail::check_cotriple_instance(rng, cfg.ring, cfg.n, suite);
  });
  for (std::size_t i = 0; i < results.size(); ++i)
    for (const auto& f : results[i]) rep.failures.push_back("instance " + std::to_string(i) + ": " + f);
  return rep;
}

}  // namespace fck
