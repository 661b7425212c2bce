#pragma once

// Degree-zero model of Gamma_{m-1}(T^d)(R): level q of the bar construction
// has a basis of d-letter words over [m]^{q+1} that use every copy at every
// position, faces delete a position, and level 0 maps every word to the single
// word of T^d(R). Ranks are computed modulo a large prime with no dependence
// on the library.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace bar_oracle {

using Row = std::vector<std::int64_t>;
constexpr std::int64_t kPrime = 2147483647;

inline std::int64_t power(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  b %= kPrime;
  for (; e; e >>= 1, b = b * b % kPrime)
    if (e & 1) r = r * b % kPrime;
  return r;
}

inline std::size_t rank(std::vector<Row> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const std::int64_t inv = power(m[r][c], kPrime - 2);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const std::int64_t f = m[i][c] * inv % kPrime;
      for (std::size_t j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % kPrime + kPrime) % kPrime;
    }
    ++r;
  }
  return r;
}

using Word = std::vector<std::vector<int>>;  // d letters, each of length q+1

inline std::vector<Word> level_basis(unsigned d, unsigned m, unsigned q) {
  std::vector<Word> out;
  const unsigned len = q + 1;
  std::size_t total = 1;
  for (unsigned i = 0; i < d * len; ++i) total *= m;
  for (std::size_t code = 0; code < total; ++code) {
    Word w(d, std::vector<int>(len));
    std::size_t c = code;
    for (unsigned a = 0; a < d; ++a)
      for (unsigned l = 0; l < len; ++l, c /= m) w[a][l] = static_cast<int>(c % m);
    bool ok = true;
    for (unsigned l = 0; l < len && ok; ++l) {
      std::vector<bool> seen(m, false);
      for (unsigned a = 0; a < d; ++a) seen[static_cast<std::size_t>(w[a][l])] = true;
      for (bool s : seen) ok = ok && s;
    }
    if (ok) out.push_back(std::move(w));
  }
  return out;
}

/// Ranks of H_k(Gamma_{m-1}(T^d)(R)) for k = 0..N+1 with truncation N.
inline std::map<int, std::size_t> gamma_betti(unsigned d, unsigned m, unsigned big_n) {
  std::vector<std::vector<Word>> levels;
  for (unsigned q = 0; q <= big_n; ++q) levels.push_back(level_basis(d, m, q));
  // D_0 = T^d(R), D_k = level k-1.
  std::vector<std::size_t> dim{1};
  for (const auto& l : levels) dim.push_back(l.size());
  // boundary[k] : D_k -> D_{k-1} as rows of the transpose (one row per source basis element).
  std::vector<std::vector<Row>> boundary(dim.size());
  boundary[1].assign(dim[1], Row(1, 1));
  for (unsigned k = 2; k < dim.size(); ++k) {
    const unsigned q = k - 1;
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < levels[q - 1].size(); ++i) index[levels[q - 1][i]] = i;
    for (const Word& w : levels[q]) {
      Row r(dim[k - 1], 0);
      for (unsigned i = 0; i <= q; ++i) {
        Word v = w;
        for (auto& letter : v) letter.erase(letter.begin() + i);
        std::int64_t& e = r[index.at(v)];
        e = ((e + (i % 2 ? -1 : 1)) % kPrime + kPrime) % kPrime;
      }
      boundary[k].push_back(std::move(r));
    }
  }
  std::map<int, std::size_t> out;
  for (std::size_t k = 0; k < dim.size(); ++k) {
    const std::size_t out_rank = k == 0 ? 0 : rank(boundary[k]);
    const std::size_t in_rank = k + 1 < dim.size() ? rank(boundary[k + 1]) : 0;
    out[static_cast<int>(k)] = dim[k] - out_rank - in_rank;
  }
  return out;
}

}  // namespace bar_oracle
