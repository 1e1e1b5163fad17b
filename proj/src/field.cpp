#include "ipa/field.hpp"

#include <vector>

#include "ipa/error.hpp"

namespace ipa {

namespace {

u64 mulmod64(u64 a, u64 b, u64 m) { return u64(static_cast<unsigned __int128>(a) * b % m); }

u64 powmod64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  for (; e; e >>= 1, a = mulmod64(a, a, m))
    if (e & 1) r = mulmod64(r, a, m);
  return r;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> ps;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

bool Field::is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) d >>= 1, ++s;
  // these bases are deterministic for all n < 3.3e24
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(u64 q) {
  require(q > 2 && q < (u64(1) << 31), Errc::NotPrime, "modulus must be an odd prime below 2^31");
  require(is_prime(q), Errc::NotPrime, "modulus is composite");
  q_ = elem(q);
  barrett_ = ~u64(0) / q;
}

elem Field::pow(elem a, u64 e) const {
  elem r = 1;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}

elem Field::inv(elem a) const {
  require(a % q_ != 0, Errc::ZeroInverse);
  // extended Euclid, cheaper than Fermat for one-off inverses
  std::int64_t r0 = q_, r1 = a % q_, s0 = 0, s1 = 1;
  while (r1) {
    std::int64_t t = r0 / r1;
    std::int64_t r2 = r0 - t * r1, s2 = s0 - t * s1;
    r0 = r1, r1 = r2, s0 = s1, s1 = s2;
  }
  return from_int(s0);
}

bool Field::is_principal_root(elem omega, u64 order) const {
  if (order == 0 || pow(omega, order) != 1) return false;
  // in a field, omega^i - 1 is a unit iff omega^i != 1, so exact order suffices
  for (u64 p : prime_factors(order))
    if (pow(omega, order / p) == 1) return false;
  return true;
}

RootOfUnity Field::find_principal_root(u64 order) const {
  require(order > 0 && (q_ - 1) % order == 0, Errc::NoSuchRoot, "order does not divide q-1");
  if (order == 1) return {1, 1};
  auto ps = prime_factors(q_ - 1);
  for (elem g = 2; g < q_; ++g) {
    bool generator = true;
    for (u64 p : ps)
      if (pow(g, (q_ - 1) / p) == 1) {
        generator = false;
        break;
      }
    if (!generator) continue;
    return {pow(g, (q_ - 1) / order), order};
  }
  throw Error(Errc::NoSuchRoot);
}

}  // namespace ipa
