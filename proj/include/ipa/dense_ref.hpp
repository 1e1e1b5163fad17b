#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ipa/arena.hpp"
#include "ipa/field.hpp"
#include "ipa/poly.hpp"

namespace ipa {

// Linear-space Karatsuba routines working on views with an explicit work region.
// Work needed is at most c * n for every routine (checked by the work functions).
struct MulKit {
  std::size_t c = 2;
  std::size_t threshold = 32;  // schoolbook below this size
  bool quasi_linear = false;

  std::size_t mul_work(std::size_t a, std::size_t b) const;
  std::size_t low_work(std::size_t n) const;
  std::size_t mid_work(std::size_t n) const;
  std::size_t inv_work(std::size_t n) const;

  // out = f*g with |out| = |f| + |g| - 1
  void mul(const View& out, const View& f, const View& g, const View& work) const;
  // out = f*g mod x^n, n = |out|; f and g are read on [0, n) (padded if shorter)
  void low(const View& out, const View& f, const View& g, const View& work) const;
  // out = (f*g) quo x^n for |f| = |g| = n, |out| = n - 1
  void upp(const View& out, const View& f, const View& g, const View& work) const;
  // out = [f*g]_{n-1}^{2n-1} for |f| = 2n - 1, |g| = |out| = n
  void mid(const View& out, const View& f, const View& g, const View& work) const;
  // out = f^-1 mod x^n, n = |out|
  void inv(const View& out, const View& f, const View& work) const;
};

const MulKit& default_kit();

Poly schoolbook_mul(const Field& F, const Poly& f, const Poly& g);
// Runs the kit in a fresh arena; fills metrics when asked.
Poly karatsuba_mul(const Field& F, const Poly& f, const Poly& g, const MulKit& kit = default_kit(),
                   SpaceMetrics* metrics = nullptr);
Poly fast_mul(const Field& F, const Poly& f, const Poly& g);

std::size_t bit_reverse(std::size_t i, unsigned k);

enum class Dir { Fwd, Inv };

// Decimation in frequency: natural order in, bit-reversed values out (and back).
void ntt(const View& v, RootOfUnity w, Dir d);
void ntt_span(const Field& F, WSpan a, elem omega, Dir d);
// Plain scratch-buffer NTT product, needs an FFT-friendly modulus.
Poly ntt_mul(const Field& F, const Poly& f, const Poly& g);

enum class PartMode { Low, Upp, Mid };
Poly partial_product(const Field& F, const Poly& f, const Poly& g, PartMode mode);

Poly series_inv(const Field& F, const Poly& f, std::size_t n);
Poly series_div(const Field& F, const Poly& f, const Poly& g, std::size_t n);
std::pair<Poly, Poly> divrem(const Field& F, const Poly& f, const Poly& g);

std::vector<elem> mp_eval_tree(const Field& F, const Poly& f, const std::vector<elem>& pts);
Poly interp_tree(const Field& F, const std::vector<elem>& pts, const std::vector<elem>& vals);

// small helpers shared by oracles
Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
elem horner(const Field& F, const Poly& f, elem x);

}  // namespace ipa
