#include "ipa/cs_rwrw.hpp"

#include <algorithm>
#include <functional>

namespace ipa {

namespace {

using i64 = std::int64_t;

unsigned log2_floor(std::size_t n) {
  unsigned k = 0;
  while ((std::size_t(2) << k) <= n) ++k;
  return k;
}

unsigned log2_ceil(std::size_t n) {
  unsigned k = 0;
  while ((std::size_t(1) << k) < n) ++k;
  return k;
}

void reverse_view(const View& h) {
  auto s = h.wspan();
  for (std::size_t i = 0, j = s.n; i + 1 < j; ++i, --j) std::swap(s[i], s[j - 1]);
}

// h[lo, hi) +-= h[lo - m, hi - m), stepping so the source is still unmodified
void shift_add(const View& h, std::size_t m, bool negate) {
  const Field& F = h.field();
  auto s = h.wspan();
  if (negate)
    for (std::size_t i = m; i < s.n; ++i) s[i] = F.sub(s[i], s[i - m]);
  else
    for (std::size_t i = s.n; i-- > m;) s[i] = F.add(s[i], s[i - m]);
  h.arena().count_ops(s.n > m ? s.n - m : 0);
}

// h += f*g, |f| = |g| = n, |h| >= 2n - 1
void kara_bal(const View& h, const View& f, const View& g, bool neg, std::size_t thr) {
  std::size_t n = f.size();
  Arena& A = h.arena();
  if (n <= thr) {
    kern::mul_acc(h.take(2 * n - 1), f, g, 0, neg);
    A.count_base_product();
    return;
  }
  CallFrame frame(A);
  std::size_t m = (n + 1) / 2, k = n - m;
  View hh = h.take(2 * n - 1);
  // pre-subtraction turns the two outer products into f0g0(1 - x^m) + f1g1 x^m (x^m - 1)
  shift_add(hh, m, true);
  kara_bal(h.take(2 * m - 1), f.take(m), g.take(m), neg, thr);
  kara_bal(h.slice(m, m + 2 * k - 1), f.drop(m), g.drop(m), neg, thr);
  shift_add(hh, m, false);
  View f0 = f.take(k), g0 = g.take(k);
  kern::add(f0, f.drop(m), true);
  kern::add(g0, g.drop(m), true);
  kara_bal(h.slice(m, 3 * m - 1), f.take(m), g.take(m), !neg, thr);
  kern::add(f0, f.drop(m));
  kern::add(g0, g.drop(m));
}

// h += f*g for any sizes; balanced chunks of the longer operand, Euclid-like on the rest
void cum_mul(View h, View f, View g, bool neg, std::size_t thr) {
  while (!f.empty() && !g.empty()) {
    if (f.size() < g.size()) std::swap(f, g);
    std::size_t a = f.size(), b = g.size();
    if (b <= thr && b < a) {
      kern::mul_acc(h.take(a + b - 1), f, g, 0, neg);
      h.arena().count_base_product();
      return;
    }
    std::size_t j = 0;
    for (; j + b <= a; j += b) kara_bal(h.slice(j, j + 2 * b - 1), f.slice(j, j + b), g, neg, thr);
    if (j == a) return;
    f = f.drop(j);
    h = h.drop(j);
  }
}

// h += f*g mod x^t, t = |h|
void cum_low(View h, View f, View g, bool neg, std::size_t thr) {
  CallFrame frame(h.arena());
  for (;;) {
    std::size_t t = h.size();
    f = f.take(std::min(f.size(), t));
    g = g.take(std::min(g.size(), t));
    if (t == 0 || f.empty() || g.empty()) return;
    if (t <= std::max<std::size_t>(thr, 1)) {
      kern::mul_acc(h, f, g, 0, neg);
      return;
    }
    std::size_t a = f.size(), b = g.size(), m = (t + 1) / 2;
    View f0 = f.take(std::min(a, m)), g0 = g.take(std::min(b, m));
    View g1 = b > m ? g.slice(m, b) : View();
    std::size_t k = g1.size();
    if (k) kern::add(g0.take(k), g1, true);
    cum_mul(h, f0, g0, neg, thr);
    if (k) {
      kern::add(g0.take(k), g1);
      View hi = h.drop(m), lo = h.take(t - m);
      kern::add(hi, lo, true);
      cum_mul(h, f0, g1, neg, thr);
      kern::add(hi, lo);
    }
    if (a <= m) return;
    h = h.drop(m);
    f = f.slice(m, a);
    g = g.take(std::min(b, t - m));
  }
}

void slice_impl(const View& f, const View& g, const View& h, std::size_t s, bool neg, std::size_t thr) {
  std::size_t m = f.size(), n = g.size(), r = h.size();
  require(r > 0 && r < m + n && s < m + n - r, Errc::BadSlice);
  CallFrame frame(h.arena());
  for (std::size_t j0 = 0; j0 < n; j0 += r) {
    std::size_t b = std::min(r, n - j0);
    View G = g.slice(j0, j0 + b);
    i64 i0 = i64(s) - i64(j0);
    // terms with u >= v
    std::size_t al = i0 < 0 ? std::size_t(-i0) : 0;
    i64 lo = std::max<i64>(i0, 0), hi = std::min<i64>(i0 + i64(r), i64(m));
    if (al < r && lo < hi)
      cum_low(h.drop(al), f.slice(std::size_t(lo), std::size_t(hi)), G.take(std::min(b, r - al)), neg, thr);
    // terms with v > u, as a lower product on reversed views
    if (b < 2 || i0 <= 0) continue;
    std::size_t U = b - 1;
    std::size_t ap = i0 > i64(m) ? std::size_t(i0) - m : 0;
    std::size_t eh = std::min<std::size_t>(U, std::size_t(i0));
    if (ap >= eh) continue;
    View fr = f.slice(std::size_t(i0) - eh, std::size_t(i0) - ap).rev();
    cum_low(h.take(U).rev().drop(ap), fr, G.rev().take(U - ap), neg, thr);
  }
}

// schoolbook in place: f = f*g mod x^n, top down
void lower_naive(const View& f, const View& g) {
  const Field& F = f.field();
  TempScope t(f.arena(), 1);
  auto fs = f.wspan();
  auto gs = g.rspan();
  std::size_t n = fs.n;
  for (std::size_t j = n; j-- > 0;) {
    elem acc = 0;
    for (std::size_t i = 0; i <= j; ++i) acc = F.add(acc, F.mul(fs[i], gs[j - i]));
    fs[j] = acc;
  }
  f.arena().count_ops(u64(n) * n);
}

void div_naive(const View& f, const View& g, elem g0inv) {
  const Field& F = f.field();
  TempScope t(f.arena(), 2);
  auto fs = f.wspan();
  auto gs = g.rspan();
  std::size_t n = fs.n;
  for (std::size_t j = 0; j < n; ++j) {
    elem acc = fs[j];
    for (std::size_t i = 1; i <= j; ++i) acc = F.sub(acc, F.mul(gs[i], fs[j - i]));
    fs[j] = F.mul(acc, g0inv);
  }
  f.arena().count_ops(u64(n) * n);
}

void lower_rec(View f, View g, std::size_t thr) {
  CallFrame frame(f.arena());
  for (;;) {
    std::size_t n = f.size();
    if (n == 0) return;
    if (n <= std::max<std::size_t>(thr, 1)) return lower_naive(f, g);
    std::size_t k = (n + 1) / 2;
    lower_rec(f.drop(k), g.take(n - k), thr);
    slice_impl(f.take(k), g.slice(1, n), f.drop(k), k - 1, false, thr);
    f = f.take(k);
    g = g.take(k);
  }
}

void div_rec(View f, View g, elem g0inv, std::size_t thr) {
  CallFrame frame(f.arena());
  for (;;) {
    std::size_t n = f.size();
    if (n == 0) return;
    if (n <= std::max<std::size_t>(thr, 1)) return div_naive(f, g, g0inv);
    std::size_t k = (n + 1) / 2;
    div_rec(f.take(k), g.take(k), g0inv, thr);
    slice_impl(f.take(k), g.slice(1, n), f.drop(k), k - 1, true, thr);
    f = f.drop(k);
    g = g.take(n - k);
  }
}

void series_div_impl(const View& f, const View& g, bool reversed, std::size_t thr) {
  require(f.size() == g.size(), Errc::LengthMismatch);
  if (f.empty()) return;
  View a = reversed ? f.rev() : f, b = reversed ? g.rev() : g;
  elem b0 = b.get(0);
  require(b0 != 0, Errc::NonUnit);
  elem inv = f.field().inv(b0);
  TempScope t(f.arena(), 1);
  div_rec(a, b, inv, thr);
}

// Tail of a node polynomial: coefficient j for j at or beyond the stored length.
using Tail = std::function<elem(std::size_t)>;

// W holds the first r coefficients of a node polynomial R of size M; tail gives the rest.
// Forward: W_i <- R(wM^{[i]}), the first r slots of its bit-reversed DFT.
void tft_rec(const View& W, std::size_t M, elem wM, const Tail& tail, Dir d) {
  std::size_t r = W.size();
  if (r == 0) return;
  const Field& F = W.field();
  Arena& A = W.arena();
  CallFrame frame(A);
  std::size_t S = std::size_t(1) << log2_ceil(r);
  elem wS = F.pow(wM, M / S);
  std::size_t fold = M / S;
  // tail of R mod x^S - 1 beyond r
  Tail tailS = fold == 1 ? tail : Tail([&](std::size_t j) {
    elem acc = 0;
    for (std::size_t t = 0; t < fold; ++t) acc = F.add(acc, tail(j + t * S));
    return acc;
  });
  auto unfold = [&](bool neg) {
    if (fold == 1) return;
    TempScope ts(A, 2);
    auto ws = W.wspan();
    for (std::size_t i = 0; i < r; ++i) {
      elem acc = 0;
      for (std::size_t t = 1; t < fold; ++t) acc = F.add(acc, tail(i + t * S));
      ws[i] = neg ? F.sub(ws[i], acc) : F.add(ws[i], acc);
    }
    A.count_ops(u64(r) * fold);
  };
  if (d == Dir::Fwd) unfold(false);
  if (r == S) {
    TempScope ts(A, 2);
    ntt_span(F, W.wspan(), wS, d);
    if (d == Dir::Inv) unfold(true);
    return;
  }
  std::size_t H = S / 2;
  elem wH = F.mul(wS, wS);
  // right child: R_hi(y) with coefficients (R_i - R_{i+H}) wS^i
  Tail tailR = [&](std::size_t j) {
    return F.mul(F.sub(W.get(j), tailS(j + H)), F.pow(wS, j));
  };
  View lo = W.take(H), hi = W.drop(H);
  if (d == Dir::Fwd) {
    {
      TempScope ts(A, 3);
      auto ws = W.wspan();
      elem tw = 1;
      for (std::size_t i = 0; i + H < r; ++i) {
        elem a = ws[i], b = ws[i + H];
        ws[i] = F.add(a, b);
        ws[i + H] = F.mul(F.sub(a, b), tw);
        tw = F.mul(tw, wS);
      }
    }
    tft_rec(hi, H, wH, tailR, d);
    {
      TempScope ts(A, 1);
      auto ws = lo.wspan();
      for (std::size_t i = r - H; i < H; ++i) ws[i] = F.add(ws[i], tailS(i + H));
    }
    TempScope ts(A, 2);
    ntt_span(F, lo.wspan(), wH, d);
  } else {
    {
      TempScope ts(A, 2);
      ntt_span(F, lo.wspan(), wH, d);
      auto ws = lo.wspan();
      for (std::size_t i = r - H; i < H; ++i) ws[i] = F.sub(ws[i], tailS(i + H));
    }
    tft_rec(hi, H, wH, tailR, d);
    {
      TempScope ts(A, 4);
      auto ws = W.wspan();
      elem winv = F.inv(wS), half = F.inv(2), tw = half;
      for (std::size_t i = 0; i + H < r; ++i) {
        elem a = F.mul(ws[i], half), b = F.mul(ws[i + H], tw);
        ws[i] = F.add(a, b);
        ws[i + H] = F.sub(a, b);
        tw = F.mul(tw, winv);
      }
    }
    unfold(true);
  }
  A.count_ops(u64(3) * r);
}

}  // namespace

void rotate_left(const View& h, std::size_t k) {
  std::size_t n = h.size();
  if (n == 0 || k % n == 0) return;
  k %= n;
  TempScope t(h.arena(), 1);
  reverse_view(h.take(k));
  reverse_view(h.drop(k));
  reverse_view(h);
}

void cumulative_mul(const View& f, const View& g, const View& h, bool negate, const RwOpts& o) {
  if (f.empty() || g.empty()) return;
  require(h.size() >= f.size() + g.size() - 1, Errc::LengthMismatch);
  CallFrame frame(h.arena());
  cum_mul(h, f, g, negate, std::max<std::size_t>(o.threshold, 1));
}

void cumulative_karatsuba(const View& f, const View& g, const View& h, const RwOpts& o) {
  require(g.size() <= f.size(), Errc::SizeOrder);
  if (g.empty()) return;
  require(h.size() == f.size() + g.size() - 1, Errc::LengthMismatch);
  cumulative_mul(f, g, h, false, o);
}

void partial_ft(const View& f, std::size_t k, unsigned l, RootOfUnity w, Dir d) {
  const Field& F = f.field();
  std::size_t L = std::size_t(1) << l, n = f.size();
  require(w.order > 0 && (w.order & (w.order - 1)) == 0, Errc::BadOrder);
  require(F.is_principal_root(w.omega, w.order), Errc::BadOrder);
  require(L <= n && (k + 1) * L <= w.order, Errc::BadParams);
  unsigned p = log2_ceil(w.order);
  Arena& A = f.arena();
  CallFrame frame(A);
  TempScope ts(A, 4);
  elem e_root = F.pow(w.omega, bit_reverse(k * L, p));  // w^e
  elem c = F.pow(e_root, L);
  elem wl = F.pow(w.omega, w.order / L);
  auto fs = f.wspan();
  std::size_t blocks = (n + L - 1) / L;
  // f_j + sum_{t>=1} c^t f_{j+tL}, streamed one block at a time
  auto fold = [&](bool sub) {
    elem ct = 1;
    for (std::size_t t = 1; t < blocks; ++t) {
      ct = F.mul(ct, c);
      u64 cp = F.shoup(ct);
      std::size_t lo = t * L, len = std::min(L, n - lo);
      for (std::size_t j = 0; j < len; ++j) {
        elem v = F.mul_shoup(fs[lo + j], ct, cp);
        fs[j] = sub ? F.sub(fs[j], v) : F.add(fs[j], v);
      }
    }
  };
  auto twist = [&](elem e) {
    u64 ep = F.shoup(e);
    elem tw = 1;
    for (std::size_t j = 0; j < L; ++j) {
      fs[j] = F.mul(fs[j], tw);
      tw = F.mul_shoup(tw, e, ep);
    }
  };
  if (d == Dir::Fwd) {
    fold(false);
    twist(e_root);
    ntt_span(F, Span<elem>{fs.p, fs.st, L}, wl, Dir::Fwd);
  } else {
    ntt_span(F, Span<elem>{fs.p, fs.st, L}, wl, Dir::Inv);
    twist(F.inv(e_root));
    fold(true);
  }
  A.count_ops(u64(2) * n + u64(3) * L * l / 2);
}

void tft(const View& h, RootOfUnity w, Dir d) {
  const Field& F = h.field();
  std::size_t r = h.size();
  if (r == 0) return;
  require(w.order >= r && (w.order & (w.order - 1)) == 0, Errc::BadOrder);
  require(F.is_principal_root(w.omega, w.order), Errc::BadOrder);
  std::size_t S = std::size_t(1) << log2_ceil(r);
  Tail zero = [](std::size_t) { return elem(0); };
  tft_rec(h, S, F.pow(w.omega, w.order / S), zero, d);
}

void cumulative_fft_mul(const View& f0, const View& g0, const View& h) {
  View f = f0, g = g0;
  if (f.empty() || g.empty()) return;
  if (f.size() > g.size()) std::swap(f, g);
  std::size_t m = f.size(), n = g.size(), r = m + n - 1;
  require(h.size() == r, Errc::LengthMismatch);
  const Field& F = h.field();
  Arena& A = h.arena();
  unsigned p = log2_ceil(r);
  RootOfUnity w = F.find_principal_root(u64(1) << p);
  CallFrame frame(A);
  tft(h, w, Dir::Fwd);
  std::size_t done = 0;
  while (done < r) {
    std::size_t rem = r - done;
    unsigned l = log2_floor(std::min(rem, m));
    unsigned t = log2_floor(std::min(rem, n)) - l;
    std::size_t Lf = std::size_t(1) << l, B = std::size_t(1) << (l + t);
    std::size_t kb = done / B;
    partial_ft(g, kb, l + t, w, Dir::Fwd);
    for (std::size_t s = 0; s < (std::size_t(1) << t); ++s) {
      std::size_t kf = s + (kb << t);
      partial_ft(f, kf, l, w, Dir::Fwd);
      {
        TempScope ts(A, 1);
        auto hs = h.slice(done + s * Lf, done + (s + 1) * Lf).wspan();
        auto fs = f.take(Lf).rspan();
        auto gs = g.slice(s * Lf, (s + 1) * Lf).rspan();
        for (std::size_t i = 0; i < Lf; ++i) hs[i] = F.add(hs[i], F.mul(fs[i], gs[i]));
        A.count_ops(2 * Lf);
      }
      partial_ft(f, kf, l, w, Dir::Inv);
    }
    partial_ft(g, kb, l + t, w, Dir::Inv);
    done += B;
  }
  tft(h, w, Dir::Inv);
}

void cumulative_convolution(const View& f, const View& g, const View& h, elem lambda, const RwOpts& o) {
  std::size_t n = h.size();
  require(f.size() == n && g.size() == n, Errc::LengthMismatch);
  require(lambda % h.field().q() != 0, Errc::LambdaZero);
  if (n == 0) return;
  const Field& F = h.field();
  std::size_t thr = std::max<std::size_t>(o.threshold, 1);
  std::size_t m = (n + 1) / 2, s = n % 2;
  CallFrame frame(h.arena());
  View f0 = f.take(m), f1 = f.drop(m), g0 = g.take(m), g1 = g.drop(m);
  cum_mul(h.take(2 * m - 1), f0, g0, false, thr);
  kern::scale(h, F.inv(lambda));
  cum_mul(h.slice(s, n - 1 + (n == 1)), f1, g1, false, thr);
  kern::scale(h.drop(m), lambda);
  // h[m,n) || h[0,m) receives the cross terms x^m (f0 g1 + f1 g0)
  rotate_left(h, m);
  cum_mul(h, f0, g1, false, thr);
  cum_mul(h, f1, g0, false, thr);
  rotate_left(h, n - m);
  kern::scale(h.take(m), lambda);
}

void cumulative_lower(const View& f, const View& g, const View& h, const RwOpts& o) {
  cum_low(h, f, g, false, std::max<std::size_t>(o.threshold, 1));
}

void cumulative_slice(const View& f, const View& g, const View& h, std::size_t s, bool negate,
                      const RwOpts& o) {
  slice_impl(f, g, h, s, negate, std::max<std::size_t>(o.threshold, 1));
}

void inplace_lower(const View& f, const View& g, const RwOpts& o) {
  require(f.size() == g.size(), Errc::LengthMismatch);
  lower_rec(f, g, std::max<std::size_t>(o.threshold, 1));
}

void inplace_series_div(const View& f, const View& g, bool reversed, const RwOpts& o) {
  series_div_impl(f, g, reversed, std::max<std::size_t>(o.threshold, 1));
}

void remainder_rwrw(const View& f, const View& g, const View& r, const RwOpts& o) {
  std::size_t n = g.size();
  require(n >= 1 && r.size() == n - 1 && f.size() >= n - 1, Errc::SizeContract);
  require(g.get(n - 1) != 0, Errc::NonUnitLeading);
  std::size_t m = f.size() - (n - 1), thr = std::max<std::size_t>(o.threshold, 1);
  CallFrame frame(r.arena());
  if (n == 1) return;
  std::size_t s = n - 1;
  kern::copy(r, f.slice(m, m + s));
  // r holds f[p, p+s) reduced; bring in the next block f[p-b, p) from the top
  for (std::size_t p = m; p > 0;) {
    std::size_t b = (p == m && m % s) ? m % s : std::min(s, p);
    View top = r.slice(s - b, s);
    series_div_impl(top, g.slice(n - b, n), true, thr);  // quotient block, reversed
    rotate_left(r, s - b);
    View q = r.take(b);
    if (b < s) slice_impl(g.take(s), q, r.drop(b), b, true, thr);
    lower_rec(q, g.take(b), thr);
    kern::negate(q);
    kern::add(q, f.slice(p - b, p));
    p -= b;
  }
}

void inplace_divrem(const View& f, const View& g, Way way, const RwOpts& o) {
  std::size_t n = g.size();
  require(n >= 1 && f.size() >= n - 1, Errc::SizeContract);
  require(g.get(n - 1) != 0, Errc::NonUnitLeading);
  std::size_t m = f.size() - (n - 1), thr = std::max<std::size_t>(o.threshold, 1);
  if (m == 0) return;
  CallFrame frame(f.arena());
  std::size_t b0 = m % n ? m % n : n;  // top block
  std::size_t full = (m - b0) / n;
  auto step = [&](std::size_t p, std::size_t b) {
    View Q = f.slice(p + n - 1, p + n - 1 + b);
    if (way == Way::Apply) {
      series_div_impl(Q, g.slice(n - b, n), true, thr);
      if (n > 1) cum_low(f.slice(p, p + n - 1), g.take(n - 1), Q, true, thr);
    } else {
      if (n > 1) cum_low(f.slice(p, p + n - 1), g.take(n - 1), Q, false, thr);
      lower_rec(Q.rev(), g.slice(n - b, n).rev(), thr);
    }
  };
  if (way == Way::Apply) {
    step(full * n, b0);
    for (std::size_t i = full; i-- > 0;) step(i * n, n);
  } else {
    for (std::size_t i = 0; i < full; ++i) step(i * n, n);
    step(full * n, b0);
  }
}

void cumulative_remainder(const View& f, const View& g, const View& r, const RwOpts& o) {
  std::size_t n = g.size();
  require(n >= 1 && r.size() == n - 1, Errc::SizeContract);
  inplace_divrem(f, g, Way::Apply, o);
  kern::add(r, f.take(n - 1));
  inplace_divrem(f, g, Way::Undo, o);
}

namespace {

View strip(View v) {
  std::size_t k = v.size();
  while (k > 0 && v.get(k - 1) == 0) --k;
  return v.take(k);
}

void modmul_core(View f, View g, const View& r, const View& p, std::size_t thr) {
  std::size_t n = r.size();
  f = strip(f);
  g = strip(g);
  if (f.empty() || g.empty()) return;
  if (f.size() < g.size()) std::swap(f, g);
  std::size_t l = f.size(), m = g.size();
  cum_low(r, f, g, false, thr);
  if (l + m - 1 <= n) return;
  std::size_t d = l + m - 1 - n;
  View Fh = f.slice(n - m + 1, l), Gh = g.slice(n - l + 1, m), P = p.slice(n + 1 - d, n + 1);
  // Fh <- (f*g) quo x^n, then the quotient by p; both leading entries are units
  lower_rec(Fh.rev(), Gh.rev(), thr);
  series_div_impl(Fh, P, true, thr);
  cum_low(r, Fh, p.take(n), true, thr);
  lower_rec(Fh.rev(), P.rev(), thr);
  series_div_impl(Fh, Gh, true, thr);
}

}  // namespace

void modular_mul(const View& f, const View& g, const View& r, const View& p, const RwOpts& o) {
  std::size_t n = r.size();
  require(n >= 1 && p.size() == n + 1 && f.size() == n && g.size() == n, Errc::LengthMismatch);
  require(p.get(n) == 1, Errc::NonMonicModulus);
  CallFrame frame(r.arena());
  modmul_core(f, g, r, p, std::max<std::size_t>(o.threshold, 1));
}

void modular_mul_any(const View& f, const View& g, const View& r, const View& p, const RwOpts& o) {
  std::size_t n = r.size();
  require(n >= 1 && p.size() == n + 1, Errc::LengthMismatch);
  require(p.get(n) == 1, Errc::NonMonicModulus);
  CallFrame frame(r.arena());
  bool rf = f.size() > n, rg = g.size() > n;
  if (rf) inplace_divrem(f, p, Way::Apply, o);
  if (rg) inplace_divrem(g, p, Way::Apply, o);
  modmul_core(rf ? f.take(n) : f, rg ? g.take(n) : g, r, p, std::max<std::size_t>(o.threshold, 1));
  if (rg) inplace_divrem(g, p, Way::Undo, o);
  if (rf) inplace_divrem(f, p, Way::Undo, o);
}

}  // namespace ipa
