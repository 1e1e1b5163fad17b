#pragma once

#include "ipa/arena.hpp"
#include "ipa/dense_ref.hpp"

namespace ipa {

// rw/rw contract: every operand may be modified during a call but is restored
// bit-exactly on return, except the accumulator/output. Operands must not overlap.
struct RwOpts {
  std::size_t threshold = 32;  // schoolbook at or below this size
};

// h += f*g for any sizes, |h| >= |f| + |g| - 1
void cumulative_karatsuba(const View& f, const View& g, const View& h, const RwOpts& o = {});
void cumulative_mul(const View& f, const View& g, const View& h, bool negate, const RwOpts& o = {});

// First 2^l slots of f become f(w^{[k 2^l + i]_p}), w of order 2^p; Inv undoes Fwd.
void partial_ft(const View& f, std::size_t k, unsigned l, RootOfUnity w, Dir d);
// In-place truncated transform: h_i <- h(w^{[i]_p}) for i < |h|, w of order 2^p >= |h|.
void tft(const View& h, RootOfUnity w, Dir d);

// h += f*g with transforms only; needs a 2^p-th root of unity with 2^p >= |f|+|g|-1
void cumulative_fft_mul(const View& f, const View& g, const View& h);

// h += f*g mod x^n - lambda
void cumulative_convolution(const View& f, const View& g, const View& h, elem lambda, const RwOpts& o = {});
// h += f*g mod x^n
void cumulative_lower(const View& f, const View& g, const View& h, const RwOpts& o = {});
// h += [f*g]_s^{s+r}, r = |h|
void cumulative_slice(const View& f, const View& g, const View& h, std::size_t s, bool negate = false,
                      const RwOpts& o = {});

// f = f*g mod x^n
void inplace_lower(const View& f, const View& g, const RwOpts& o = {});
// f = f/g mod x^n, or f^<- = f^<- / g^<- when reversed
void inplace_series_div(const View& f, const View& g, bool reversed = false, const RwOpts& o = {});

// r = f mod g, |f| = m+n-1, |g| = n, |r| = n-1
void remainder_rwrw(const View& f, const View& g, const View& r, const RwOpts& o = {});

enum class Way { Apply, Undo };
// Apply: f becomes [f mod g | f quo g]; Undo restores f from that layout.
void inplace_divrem(const View& f, const View& g, Way w, const RwOpts& o = {});
// r += f mod g
void cumulative_remainder(const View& f, const View& g, const View& r, const RwOpts& o = {});

// r += f*g mod p, p monic of size |r| + 1
void modular_mul(const View& f, const View& g, const View& r, const View& p, const RwOpts& o = {});
void modular_mul_any(const View& f, const View& g, const View& r, const View& p, const RwOpts& o = {});

// rotate left by k with three reversals
void rotate_left(const View& h, std::size_t k);

}  // namespace ipa
