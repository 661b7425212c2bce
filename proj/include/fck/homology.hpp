#pragma once

// Homology of chain complexes over Q, F_p (Betti numbers) and Z (free rank
// plus torsion invariant factors).

#include <map>
#include <string>
#include <vector>

#include "fck/constructions.hpp"
#include "fck/linalg.hpp"

namespace fck {

struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Rational> torsion;  // invariant factors > 1, ascending; empty over a field

  [[nodiscard]] bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  [[nodiscard]] std::string to_string() const {
    std::string s = std::to_string(free_rank);
    for (const auto& t : torsion) s += " + Z/" + t.to_string();
    return s;
  }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

namespace detail {

inline std::size_t diff_rank(const ChainComplex& x, int k) {
  const Matrix& d = x.d(k);
  if (d.rows() == 0 || d.cols() == 0) return 0;
  return rank_over_rationals(d);
}

}  // namespace detail

/// H_k(x). Over a field the torsion list is empty and free_rank is the Betti
/// number; over Z the torsion comes from the Smith form of d_{k+1}.
inline HomologyGroup homology(const ChainComplex& x, int k) {
  HomologyGroup h;
  const std::size_t n = x.rank(k);
  if (n == 0) return h;
  if (x.ring().is_field()) {
    h.free_rank = n - detail::diff_rank(x, k) - detail::diff_rank(x, k + 1);
    return h;
  }
  std::size_t rk = detail::diff_rank(x, k);
  const Matrix& up = x.d(k + 1);
  std::size_t rup = 0;
  if (up.rows() && up.cols()) {
    SmithForm s = smith_normal_form(up, false);
    for (const auto& f : s.factors) {
      if (f.is_zero()) continue;
      ++rup;
      if (!f.is_one()) h.torsion.push_back(f);
    }
  }
  h.free_rank = n - rk - rup;
  return h;
}

/// Homology in every degree of the support (degrees with zero homology
/// included).
inline std::map<int, HomologyGroup> homology_all(const ChainComplex& x) {
  std::map<int, HomologyGroup> out;
  if (x.is_zero()) return out;
  if (!x.ring().is_field()) {
    for (int k : x.degrees()) out[k] = homology(x, k);
    return out;
  }
  std::map<int, std::size_t> ranks;
  for (int k = x.min_degree(); k <= x.max_degree() + 1; ++k) ranks[k] = detail::diff_rank(x, k);
  for (int k : x.degrees()) out[k].free_rank = x.rank(k) - ranks[k] - ranks[k + 1];
  return out;
}

/// Betti numbers over a field (free ranks over Z), degree -> rank, nonzero only.
inline std::map<int, std::size_t> betti_numbers(const ChainComplex& x) {
  std::map<int, std::size_t> out;
  for (const auto& [k, h] : homology_all(x))
    if (h.free_rank) out[k] = h.free_rank;
  return out;
}

inline bool is_acyclic(const ChainComplex& x) {
  for (const auto& [k, h] : homology_all(x))
    if (!h.is_zero()) return false;
  return true;
}

/// True iff f induces isomorphisms on homology in every degree, decided by
/// acyclicity of cone(f) (over Z this also accounts for torsion).
inline bool is_quasi_iso(const ChainMap& f) { return is_acyclic(cone(f).cone); }

/// Rank of the map induced by f on H_k over a field.
inline std::size_t induced_rank(const ChainMap& f, int k) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  if (x.rank(k) == 0 || y.rank(k) == 0) return 0;
  const Ring& ring = f.ring();
  Matrix dx = x.d(k).rows() ? x.d(k) : Matrix(ring, 0, x.rank(k));
  Matrix cycles = kernel_basis(dx);  // x_k by z
  Matrix image = f.at(k) * cycles;   // y_k by z
  const Matrix& up = y.d(k + 1);
  std::size_t m = up.cols();
  MatrixBuilder b(ring, y.rank(k), image.cols() + m);
  b.add_block(0, 0, image);
  if (m && up.rows()) b.add_block(0, image.cols(), up);
  Matrix joined = std::move(b).build();
  std::size_t rb = (m && up.rows()) ? rank(up) : 0;
  return rank(joined) - rb;
}

}  // namespace fck
