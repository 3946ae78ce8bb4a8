#pragma once

// Faithful matrix images used as word-problem oracles.
//   BS(1,2):  a -> [[1,1],[0,1]], t -> [[2,0],[0,1]]  (affine maps x -> p x + q)
//   Z2 * Z3:  x -> [[0,-1],[1,0]], y -> [[0,-1],[1,1]] in PSL(2,Z)

#include "support.hpp"

#include <array>
#include <map>

namespace oracle {

using Affine = std::array<double, 2>;  // (p, q), exact for short dyadic words
using Psl = std::array<std::int64_t, 4>;

inline Affine bs_matrix(htact::Word const& w) {
  Affine m{1, 0};
  for (auto const& l : w) {
    Affine g = l.gen == 0 ? Affine{1, static_cast<double>(l.exp)} : Affine{l.exp > 0 ? 2.0 : 0.5, 0};
    for (std::int64_t k = 1; k < std::abs(l.exp) && l.gen == 1; ++k) g[0] *= l.exp > 0 ? 2.0 : 0.5;
    m = {m[0] * g[0], m[0] * g[1] + m[1]};
  }
  return m;
}

inline Psl psl_mul(Psl const& a, Psl const& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

inline Psl psl_normalize(Psl m) {
  for (auto v : m) {
    if (v == 0) continue;
    if (v < 0)
      for (auto& e : m) e = -e;
    break;
  }
  return m;
}

inline Psl psl_matrix(htact::Word const& w) {
  Psl const x{0, -1, 1, 0}, xi{0, 1, -1, 0};
  Psl const y{0, -1, 1, 1}, yi{1, 1, -1, 0};
  Psl m{1, 0, 0, 1};
  for (auto const& l : w) {
    Psl const& g = l.gen == 0 ? (l.exp > 0 ? x : xi) : (l.exp > 0 ? y : yi);
    for (std::int64_t k = 0; k < std::abs(l.exp); ++k) m = psl_mul(m, g);
  }
  return psl_normalize(m);
}

struct Agreement {
  std::size_t words = 0;
  std::size_t classes = 0;
  std::size_t disagreements = 0;
};

// equal(u, v) agrees with the oracle on all pairs iff normal form and oracle
// key determine each other.
template <class Key, class Oracle>
Agreement agree_on_all_words(htact::Group const& g, std::size_t max_len, Oracle oracle) {
  std::map<htact::Code, Key> by_form;
  std::map<Key, htact::Code> by_key;
  Agreement out;
  for (auto const& w : support::all_words(g, max_len)) {
    ++out.words;
    auto code = g.evaluate(w);
    auto key = oracle(w);
    auto [i, fresh_form] = by_form.emplace(code, key);
    auto [j, fresh_key] = by_key.emplace(key, code);
    if (!(i->second == key) || !(j->second == code)) ++out.disagreements;
    out.classes += fresh_form;
  }
  return out;
}

}  // namespace oracle
