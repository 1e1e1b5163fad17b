#pragma once

#include <functional>

#include "ipa/arena.hpp"
#include "ipa/dense_ref.hpp"

namespace ipa {

// Called after each Newton step with the current precision k.
using LadderHook = std::function<void(std::size_t k)>;

struct LadderOpts {
  LadderHook hook;
  bool check = false;  // verify the precision invariant in place at every step
};

// All routines follow the ro/rw contract: f, g read-only, outputs used as work space.
// Tail recursions are loops; every public op opens a single call frame.

// h += f*g, |f| = |g| = n, |h| = 2n-1 with h quo x^{n-1} = 0
void semi_cumulative_product(const View& f, const View& g, const View& h, const MulKit& kit = default_kit());

// h = f*g mod x^n; reversed: h = (f*g) quo x^{n-1}, the top n coefficients
void lower_product_cs(const View& f, const View& g, const View& h, bool reversed = false,
                      const MulKit& kit = default_kit());

// h +-= f*g mod x^n given h mod x^s = 0; g has size n or s
void semi_cumulative_lower(const View& f, const View& g, const View& h, std::size_t s, bool negate = false,
                           const MulKit& kit = default_kit());

// h = [f*g]_{n-1}^{m+n-1}, |f| = m+n-1, |g| = n, |h| = m
void middle_product_cs(const View& f, const View& g, const View& h, const MulKit& kit = default_kit());

// g = f^-1 mod x^n
void series_inv_cs(const View& f, const View& g, const LadderOpts& ladder = {},
                   const MulKit& kit = default_kit());
// h = f/g mod x^n
void series_div_cs(const View& f, const View& g, const View& h, const LadderOpts& ladder = {},
                   const MulKit& kit = default_kit());

// f = f/g mod x^n in place, with extra space t (|t| = s >= c+3)
void inplace_div_smallspace(const View& f, const View& g, const View& t, const MulKit& kit = default_kit());

// f = g*q + r; |f| = m+n-1, |g| = n, |q| = m >= n-1, |r| = n-1
void divrem_cs(const View& f, const View& g, const View& q, const View& r, const MulKit& kit = default_kit());

// r = f mod g with extra space t, 1 <= |t| <= n-1
void remainder_smallspace(const View& f, const View& g, const View& r, const View& t,
                          const MulKit& kit = default_kit());

// out_i = f(pts_i)
void mp_eval_cs(const View& f, const View& pts, const View& out, const MulKit& kit = default_kit());

// out = h mod x^k where g + x^s h interpolates (a_i, b_i), k = |out|, s = |g|, n - s = |a|
std::size_t partial_interp_work(std::size_t k, const MulKit& kit = default_kit());
void partial_interp(const View& g, const View& a, const View& b, const View& out, const View& work,
                    const MulKit& kit = default_kit());

// out = the size-n interpolant of (a_i, b_i)
void interp_cs(const View& a, const View& b, const View& out, const MulKit& kit = default_kit());

namespace detail {

// out = [F*G]_{K-1}^{K+L-1} for |out| = L, |G| = K, |F| = K+L-1, as balanced pieces
std::size_t mid_chunked_work(std::size_t L, std::size_t K, const MulKit& kit);
void mid_chunked(const View& out, const View& F, const View& G, const View& work, const MulKit& kit);

// x^<- /= d^<- mod x^{|x|} in place, |d| = |x|, using t as work when it is large enough
void inplace_rev_div(const View& x, const View& d, const View& t, const MulKit& kit);

// h_j = (f_j - sum_{i>=1} g_i h_{j-i}) / g_0 for j in [from, |h|); h may alias f
void naive_series_div(const View& h, const View& f, const View& g, std::size_t from);

}  // namespace detail

}  // namespace ipa
