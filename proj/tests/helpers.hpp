#pragma once

#include <random>
#include <vector>

#include "ipa/dense_ref.hpp"

namespace ipa::test {

inline constexpr u64 kSmallQ = 97;
inline constexpr u64 kFftQ = 469762049;

inline Poly random_poly(const Field& F, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> d(0, F.q() - 1);
  Poly p(n);
  for (auto& c : p) c = elem(d(rng));
  return p;
}

inline elem random_unit(const Field& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> d(1, F.q() - 1);
  return elem(d(rng));
}

// naive long division, independent of the Newton-based divrem
inline std::pair<Poly, Poly> long_division(const Field& F, Poly f, const Poly& g) {
  std::size_t n = g.size(), m = f.size() + 1 - n;
  Poly q(m, 0);
  elem li = F.inv(g.back());
  for (std::size_t k = m; k-- > 0;) {
    elem c = F.mul(f[k + n - 1], li);
    q[k] = c;
    for (std::size_t j = 0; j < n; ++j) f[k + j] = F.sub(f[k + j], F.mul(c, g[j]));
  }
  f.resize(n - 1);
  return {q, f};
}

inline Poly slice_of(const Poly& p, std::size_t lo, std::size_t hi) {
  Poly r(hi > lo ? hi - lo : 0, 0);
  for (std::size_t i = lo; i < hi; ++i)
    if (i < p.size()) r[i - lo] = p[i];
  return r;
}

}  // namespace ipa::test
