#pragma once

#include <cstdint>

namespace ipa {

using elem = std::uint32_t;
using u64 = std::uint64_t;

struct RootOfUnity {
  elem omega = 1;
  u64 order = 1;
};

// Z/qZ for a prime q < 2^31. Immutable once built.
class Field {
 public:
  explicit Field(u64 q);

  elem q() const { return q_; }

  elem add(elem a, elem b) const {
    elem s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  elem sub(elem a, elem b) const { return a >= b ? a - b : a + q_ - b; }
  elem neg(elem a) const { return a ? q_ - a : 0; }
  elem mul(elem a, elem b) const { return reduce(u64(a) * b); }

  // x < 2^64; Barrett with m = floor(2^64 / q)
  elem reduce(u64 x) const {
    u64 e = u64((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    u64 r = x - e * q_;
    while (r >= q_) r -= q_;
    return elem(r);
  }

  // Shoup: multiply by a fixed w using its precomputed floor(w 2^32 / q)
  u64 shoup(elem w) const { return (u64(w) << 32) / q_; }
  elem mul_shoup(elem a, elem w, u64 wp) const {
    u64 t = (u64(a) * wp) >> 32;
    u64 r = u64(a) * w - t * q_;
    return elem(r >= q_ ? r - q_ : r);
  }

  elem from_int(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(q_);
    return elem(r < 0 ? r + q_ : r);
  }
  // representative in (-q/2, q/2]
  std::int64_t centered(elem a) const { return a > q_ / 2 ? std::int64_t(a) - q_ : a; }

  elem pow(elem a, u64 e) const;
  elem inv(elem a) const;  // ZeroInverse on 0
  bool is_unit_pm1(elem a) const { return a == 1 || a == q_ - 1; }

  RootOfUnity find_principal_root(u64 order) const;  // NoSuchRoot unless order | q-1
  bool is_principal_root(elem omega, u64 order) const;

  static bool is_prime(u64 n);

 private:
  elem q_;
  u64 barrett_;
};

}  // namespace ipa
