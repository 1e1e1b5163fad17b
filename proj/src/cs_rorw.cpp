#include "ipa/cs_rorw.hpp"

#include <algorithm>

#include "ipa/poly.hpp"

namespace ipa {

namespace {

using i64 = std::int64_t;

void require_prefix_zero(const View& h, std::size_t lo, std::size_t hi, Errc e) {
  for (std::size_t i = lo; i < hi; ++i) require(h.get(i) == 0, e);
}

// Constant-space evaluation at one point.
elem horner_view(const View& f, elem x) {
  const Field& F = f.field();
  TempScope t(f.arena(), 1);
  elem acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f.get(i));
  f.arena().count_ops(2 * f.size());
  return acc;
}

// m = prod (x - a_j) over the points of a, |m| = |a| + 1
void build_vanishing(const View& m, const View& a) {
  const Field& F = m.field();
  std::size_t k = a.size();
  kern::zero(m);
  m.set(0, 1);
  for (std::size_t j = 0; j < k; ++j) {
    elem aj = a.get(j);
    // multiply the size-(j+1) prefix by (x - aj), top down
    for (std::size_t i = j + 1; i > 0; --i) m.set(i, F.sub(m.get(i - 1), F.mul(aj, m.get(i))));
    m.set(0, F.neg(F.mul(aj, m.get(0))));
  }
  m.arena().count_ops(2 * k * k);
}

void check_distinct(const View& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) require(a.get(i) != a.get(j), Errc::DuplicatePoint);
}

// Values at the points of a, in place, become the coefficients of the interpolant.
void newton_interp_inplace(const View& c, const View& a) {
  const Field& F = c.field();
  std::size_t k = c.size();
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = k - 1; i >= j; --i)
      c.set(i, F.mul(F.sub(c.get(i), c.get(i - 1)), F.inv(F.sub(a.get(i), a.get(i - j)))));
  // Newton basis to monomials
  for (std::size_t i = k - 1; i-- > 0;)
    for (std::size_t j = i; j + 1 < k; ++j) c.set(j, F.sub(c.get(j), F.mul(a.get(i), c.get(j + 1))));
  c.arena().count_ops(4 * k * k);
}

void check_ladder(const View& f, const View& g, std::size_t k, const LadderOpts& ladder) {
  if (ladder.check) {
    const Field& F = g.field();
    TempScope t(g.arena(), 1);
    for (std::size_t j = 0; j < k; ++j) {
      elem acc = 0;
      for (std::size_t i = 0; i <= j; ++i) acc = F.add(acc, F.mul(f.get(j - i), g.get(i)));
      require(acc == (j == 0 ? 1 : 0), Errc::BadParams, "ladder invariant broken");
    }
  }
  if (ladder.hook) ladder.hook(k);
}

void check_ladder_div(const View& f, const View& g, const View& h, std::size_t k, const LadderOpts& ladder) {
  if (ladder.check) {
    const Field& F = h.field();
    TempScope t(h.arena(), 1);
    for (std::size_t j = 0; j < k; ++j) {
      elem acc = 0;
      for (std::size_t i = 0; i <= j; ++i) acc = F.add(acc, F.mul(g.get(i), h.get(j - i)));
      require(acc == f.get(j), Errc::BadParams, "ladder invariant broken");
    }
  }
  if (ladder.hook) ladder.hook(k);
}

void lower_loop(View f, View g, View h, const MulKit& kit) {
  const std::size_t c = kit.c;
  for (std::size_t n = h.size(); n > 0;) {
    std::size_t k = n / (c + 3);
    if (k == 0) return kern::mul_set(h, f.window(0, n), g.window(0, n));
    std::size_t l = (n + k - 1) / k, r = k * l - n;
    View fp = f.window(0, k * l), gp = g.window(-i64(r), k * l);
    View top = h.slice(n - k, n), T = h.take(k), W = h.slice(k, n - k);
    kern::zero(top);
    for (std::size_t i = 0; i < l; ++i) {
      kit.low(T, fp.slice(k * i, k * i + k), gp.slice(k * (l - 1 - i), k * (l - i)), W);
      kern::add(top, T);
    }
    View U = h.take(k - 1);
    for (std::size_t i = 0; i + 1 < l; ++i) {
      kit.upp(U, fp.slice(k * i, k * i + k), gp.slice(k * (l - 2 - i), k * (l - 1 - i)), W);
      kern::add(top, U);
    }
    n -= k;
    f = f.window(0, n);
    g = g.window(0, n);
    h = h.take(n);
  }
}

}  // namespace

namespace detail {

std::size_t mid_chunked_work(std::size_t L, std::size_t K, const MulKit& kit) {
  return K <= L ? kit.mid_work(L) : L + kit.mid_work(L);
}

void mid_chunked(const View& out, const View& F, const View& G, const View& work, const MulKit& kit) {
  std::size_t L = out.size(), K = G.size();
  if (L == 0) return;
  if (K == 0) return kern::zero(out);
  require(F.size() + 1 == K + L, Errc::BadLength, "chunked middle product sizes");
  require(work.size() >= mid_chunked_work(L, K, kit), Errc::ScratchTooSmall);
  for (std::size_t j0 = 0; j0 < K; j0 += L) {
    View W = F.window(i64(K) - i64(L) - i64(j0), 2 * L - 1);
    View Gj = G.window(i64(j0), L);
    if (j0 == 0) {
      kit.mid(out, W, Gj, work);
    } else {
      View t = work.take(L);
      kit.mid(t, W, Gj, work.drop(L));
      kern::add(out, t);
    }
  }
}

void naive_series_div(const View& h, const View& f, const View& g, std::size_t from) {
  const Field& F = h.field();
  TempScope t(h.arena(), 2);
  elem g0i = F.inv(g.get(0));
  for (std::size_t j = from; j < h.size(); ++j) {
    elem acc = f.get(j);
    for (std::size_t i = 1; i <= j && i < g.size(); ++i) acc = F.sub(acc, F.mul(g.get(i), h.get(j - i)));
    h.set(j, F.mul(acc, g0i));
    h.arena().count_ops(2 * j + 1);
  }
}

void inplace_rev_div(const View& x, const View& d, const View& t, const MulKit& kit) {
  require(d.get(d.size() - 1) != 0, Errc::NonUnitLeading);
  if (t.size() >= kit.c + 3)
    inplace_div_smallspace(x.rev(), d.rev(), t, kit);
  else
    naive_series_div(x.rev(), x.rev(), d.rev(), 0);
}

}  // namespace detail

void semi_cumulative_product(const View& f0, const View& g0, const View& h0, const MulKit& kit) {
  std::size_t n = f0.size();
  require(g0.size() == n && h0.size() + 1 == 2 * n, Errc::LengthMismatch);
  if (n == 0) return;
  require_prefix_zero(h0, n - 1, 2 * n - 1, Errc::PreconditionTopNonzero);
  CallFrame frame(h0.arena());
  View f = f0, g = g0, h = h0;
  for (;;) {
    std::size_t k = (n + 1) / (kit.c + 3);
    if (k == 0) return kern::mul_acc(h, f, g);
    View fr = h.slice(n + k - 1, 2 * n - 1);
    View P = fr.take(2 * k - 1), W = fr.drop(2 * k - 1);
    View fb = f.take(k), gb = g.take(k), ft = f.drop(k), gt = g.drop(k);
    std::size_t lim = n + k - 1;
    for (std::size_t j0 = 0; j0 < n; j0 += k) {
      kit.mul(P, fb, g.window(i64(j0), k), W);
      kern::add(h.slice(j0, std::min(j0 + 2 * k - 1, lim)), P);
    }
    for (std::size_t i0 = 0; i0 < n - k; i0 += k) {
      kit.mul(P, ft.window(i64(i0), k), gb, W);
      kern::add(h.slice(k + i0, std::min(k + i0 + 2 * k - 1, lim)), P);
    }
    kern::zero(fr);
    f = ft;
    g = gt;
    h = h.drop(2 * k);
    n -= k;
  }
}

void lower_product_cs(const View& f, const View& g, const View& h, bool reversed, const MulKit& kit) {
  std::size_t n = h.size();
  require(f.size() == n && g.size() == n, Errc::LengthMismatch);
  if (n == 0) return;
  CallFrame frame(h.arena());
  if (reversed)
    lower_loop(f.rev(), g.rev(), h.rev(), kit);
  else
    lower_loop(f, g, h, kit);
}

void semi_cumulative_lower(const View& f, const View& g, const View& h, std::size_t s, bool negate,
                           const MulKit& kit) {
  std::size_t n = h.size();
  require(f.size() == n && g.size() <= n && g.size() >= std::min(s, n), Errc::LengthMismatch);
  require(s >= 1 && s <= n, Errc::BadParams, "need 1 <= s <= n");
  require_prefix_zero(h, 0, s, Errc::PreconditionLowNonzero);
  CallFrame frame(h.arena());
  std::size_t w = s / (kit.c + 2);
  if (w == 0) {
    kern::mul_acc(h.drop(s), f, g, s, negate);
    kern::mul_acc(h.take(s), f, g, 0, negate);
    return;
  }
  for (std::size_t d0 = s; d0 < n; d0 += w) {
    std::size_t len = std::min(w, n - d0);
    std::size_t J = std::min(g.size(), d0 + len);
    View o = h.take(len);
    detail::mid_chunked(o, f.window(i64(d0) - i64(J) + 1, J + len - 1), g.take(J), h.slice(len, s), kit);
    kern::add(h.slice(d0, d0 + len), o, negate);
  }
  lower_loop(f.take(s), g.window(0, s), h.take(s), kit);
  if (negate) kern::negate(h.take(s));
}

void middle_product_cs(const View& f0, const View& g, const View& h0, const MulKit& kit) {
  std::size_t n = g.size(), m = h0.size();
  require(n >= 1 && f0.size() + 1 == m + n, Errc::LengthMismatch);
  if (m == 0) return;
  CallFrame frame(h0.arena());
  View f = f0, h = h0;
  for (;;) {
    std::size_t k = m / (kit.c + 2);
    if (k == 0) return kern::mul_set(h, f, g, n - 1);
    detail::mid_chunked(h.take(k), f.take(n - 1 + k), g, h.drop(k), kit);
    f = f.drop(k);
    h = h.drop(k);
    m -= k;
  }
}

void series_inv_cs(const View& f, const View& g, const LadderOpts& ladder, const MulKit& kit) {
  std::size_t n = g.size();
  if (n == 0) return;
  require(f.size() >= 1 && f.get(0) != 0, Errc::NonUnitConstant);
  CallFrame frame(g.arena());
  const Field& F = g.field();
  View fn = f.window(0, n);
  g.set(0, F.inv(f.get(0)));
  std::size_t k = 1, l = std::min<std::size_t>(1, (n - 1) / (kit.c + 2));
  check_ladder(fn, g, k, ladder);
  while (l > 0) {
    View e = g.slice(n - l, n);
    detail::mid_chunked(e, fn.window(1, k + l - 1), g.take(k), g.slice(k, n - l), kit);
    View nxt = g.slice(k, k + l);
    kit.low(nxt, g.take(l), e, g.slice(k + l, n - l));
    kern::negate(nxt);
    k += l;
    l = std::min(k, (n - k) / (kit.c + 2));
    check_ladder(fn, g, k, ladder);
  }
  if (k < n) {
    // last few coefficients: g_j = -g_0 sum_{i>=1} f_i g_{j-i}
    TempScope t(g.arena(), 2);
    elem g0 = g.get(0);
    for (std::size_t j = k; j < n; ++j) {
      elem acc = 0;
      for (std::size_t i = 1; i <= j; ++i) acc = F.add(acc, F.mul(fn.get(i), g.get(j - i)));
      g.set(j, F.neg(F.mul(acc, g0)));
      g.arena().count_ops(2 * j + 1);
    }
    check_ladder(fn, g, n, ladder);
  }
}

void series_div_cs(const View& f, const View& g, const View& h, const LadderOpts& ladder, const MulKit& kit) {
  std::size_t n = h.size();
  if (n == 0) return;
  require(g.size() >= 1 && g.get(0) != 0, Errc::NonUnitConstant);
  CallFrame frame(h.arena());
  View fn = f.window(0, n), gn = g.window(0, n);
  std::size_t k = n / (kit.c + 2);
  if (k > 0) {
    // inverse of g mod x^k, stored reversed at the top of h
    View inv = h.slice(n - k, n).rev();
    kit.inv(inv, gn.take(k), h.take(n - k));
    kit.low(h.take(k), fn.take(k), inv, h.slice(k, n - k));
    check_ladder_div(fn, gn, h, k, ladder);
    for (std::size_t l = (n - k) / (kit.c + 3); l > 0; l = (n - k) / (kit.c + 3)) {
      View T = h.slice(n - 2 * l, n - l);
      detail::mid_chunked(T, gn.window(1, k + l - 1), h.take(k), h.slice(k, n - 2 * l), kit);
      kern::negate(T);
      kern::add(T, fn.slice(k, k + l));
      kit.low(h.slice(k, k + l), T, h.slice(n - l, n).rev(), h.slice(k + l, n - 2 * l));
      k += l;
      check_ladder_div(fn, gn, h, k, ladder);
    }
  }
  if (k < n) {
    detail::naive_series_div(h, fn, gn, k);
    check_ladder_div(fn, gn, h, n, ladder);
  }
}

void inplace_div_smallspace(const View& f, const View& g, const View& t, const MulKit& kit) {
  std::size_t n = f.size(), s = t.size();
  require(s >= kit.c + 3, Errc::ScratchTooSmall, "small-space division needs |t| >= 5");
  if (n == 0) return;
  require(g.size() >= 1 && g.get(0) != 0, Errc::NonUnitConstant);
  CallFrame frame(f.arena());
  View gn = g.window(0, n);
  std::size_t L = s / (kit.c + 3), l = std::min(L, n);
  View inv = t.take(l);
  kit.inv(inv, gn.take(l), t.drop(l));
  View acc = t.slice(l, 2 * l);
  kit.low(acc, f.take(l), inv, t.drop(2 * l));
  kern::copy(f.take(l), acc);
  for (std::size_t k = l; (l = std::min(L, n - k)) > 0; k += l) {
    acc = t.slice(l, 2 * l);
    detail::mid_chunked(acc, gn.window(1, k + l - 1), f.take(k), t.drop(2 * l), kit);
    kern::negate(acc);
    kern::add(acc, f.slice(k, k + l));
    kit.low(f.slice(k, k + l), acc, t.take(l), t.drop(2 * l));
  }
}

void divrem_cs(const View& f, const View& g, const View& q, const View& r, const MulKit& kit) {
  std::size_t n = g.size(), m = q.size();
  require(n >= 1 && f.size() + 1 == m + n && r.size() + 1 == n, Errc::LengthMismatch);
  require(g.get(n - 1) != 0, Errc::NonUnitLeading);
  require(m + 1 >= n, Errc::SizeContract, "quotient must be at least size(g) - 1");
  CallFrame frame(q.arena());
  std::size_t K = m / n, L = m % n;
  View prev;
  bool have = false;
  if (L > 0) {
    View top = q.slice(K * n, m);
    kern::copy(top, f.slice(m + n - 1 - L, m + n - 1));
    detail::inplace_rev_div(top, g.slice(n - L, n), r, kit);
    prev = top;
    have = true;
  }
  for (std::size_t j = K; j-- > 0;) {
    View qj = q.slice(j * n, j * n + n);
    if (have && n > 1) {
      lower_product_cs(g.take(n - 1), prev.window(0, n - 1), qj.drop(1), false, kit);
      kern::negate(qj.drop(1));
      qj.set(0, 0);
    } else {
      kern::zero(qj);
    }
    kern::add(qj, f.slice(j * n + n - 1, j * n + 2 * n - 1));
    detail::inplace_rev_div(qj, g, r, kit);
    prev = qj;
    have = true;
  }
  if (n == 1) return;
  lower_product_cs(g.take(n - 1), q.window(0, n - 1), r, false, kit);
  kern::negate(r);
  kern::add(r, f.take(n - 1));
}

void remainder_smallspace(const View& f, const View& g, const View& r, const View& t, const MulKit& kit) {
  std::size_t n = g.size(), s = t.size();
  require(n >= 2 && f.size() + 1 >= n && r.size() + 1 == n, Errc::LengthMismatch);
  require(s >= 1 && s + 1 <= n, Errc::BadScratch, "need 1 <= |t| <= n-1");
  require(g.get(n - 1) != 0, Errc::NonUnitLeading);
  CallFrame frame(r.arena());
  std::size_t m = f.size() + 1 - n;
  kern::copy(r, f.slice(m, m + n - 1));
  View gl = g.take(n - 1);
  for (std::size_t p = m; p > 0;) {
    std::size_t b = (p == m && m % s) ? m % s : s;
    View tb = t.take(b);
    kern::copy(tb, r.slice(n - 1 - b, n - 1));
    {
      auto rs = r.wspan();
      for (std::size_t w = n - 1; w-- > b;) rs[w] = rs[w - b];
    }
    detail::inplace_rev_div(tb, g.slice(n - b, n), r.take(b), kit);
    kern::zero(r.take(b));
    semi_cumulative_lower(gl, tb, r, b, true, kit);
    kern::add(r.take(b), f.slice(p - b, p));
    p -= b;
  }
}

void mp_eval_cs(const View& f, const View& pts, const View& out, const MulKit& kit) {
  std::size_t N = out.size();
  require(pts.size() == N, Errc::LengthMismatch);
  CallFrame frame(out.arena());
  for (std::size_t done = 0; done < N;) {
    std::size_t rem = N - done, k = (rem - 1) / (kit.c + 2);
    if (k == 0) {
      for (std::size_t j = done; j < N; ++j) out.set(j, horner_view(f, pts.get(j)));
      return;
    }
    View M = out.slice(done + k, done + 2 * k + 1);
    View R = out.slice(done + 2 * k + 1, done + 3 * k + 1);
    View T = out.slice(done + 3 * k + 1, done + 4 * k + 1);
    View P = pts.slice(done, done + k);
    if (f.size() > k) {
      build_vanishing(M, P);
      remainder_smallspace(f, M, R, T, kit);
    } else {
      kern::copy(R, f.window(0, k));
    }
    for (std::size_t j = 0; j < k; ++j) out.set(done + j, horner_view(R, P.get(j)));
    done += k;
  }
}

std::size_t partial_interp_work(std::size_t k, const MulKit& kit) {
  return 3 * k + 1 + std::max(k + kit.low_work(k), 2 * k);
}

void partial_interp(const View& g, const View& a, const View& b, const View& out, const View& work,
                    const MulKit& kit) {
  std::size_t k = out.size(), N = a.size(), s = g.size();
  require(b.size() == N, Errc::LengthMismatch);
  require(k >= 1 && k <= N, Errc::BadParams, "need 1 <= k <= number of points");
  require(work.size() >= partial_interp_work(k, kit), Errc::ScratchTooSmall);
  check_distinct(a);
  if (s > 0)
    for (std::size_t j = 0; j < N; ++j) require(a.get(j) != 0, Errc::ZeroPointWithShift);
  CallFrame frame(out.arena());
  const Field& F = out.field();
  View S = work.take(k), C = work.slice(k, 2 * k), Mb = work.slice(2 * k, 3 * k + 1);
  View X = work.drop(3 * k + 1), T = X.take(k), XW = X.drop(k);
  kern::zero(out);
  TempScope temps(out.arena(), 3);
  for (std::size_t i0 = 0; i0 < N; i0 += k) {
    std::size_t i1 = std::min(N, i0 + k), kb = i1 - i0;
    View Ai = a.slice(i0, i1);
    // S = prod of the other blocks' vanishing polynomials, mod x^k
    kern::zero(S);
    S.set(0, 1);
    for (std::size_t j0 = 0; j0 < N; j0 += k) {
      if (j0 == i0) continue;
      std::size_t j1 = std::min(N, j0 + k);
      View Mj = Mb.take(j1 - j0 + 1);
      build_vanishing(Mj, a.slice(j0, j1));
      kit.low(T, S, Mj.window(0, k), XW);
      kern::copy(S, T);
    }
    // the other blocks' vanishing product at this block's points; m_i vanishes there
    View Ci = C.take(kb);
    for (std::size_t j = 0; j < kb; ++j) {
      elem aj = Ai.get(j), prod = 1;
      for (std::size_t t = 0; t < N; ++t)
        if (t < i0 || t >= i1) prod = F.mul(prod, F.sub(aj, a.get(t)));
      Ci.set(j, prod);
    }
    out.arena().count_ops(2 * kb * N);
    // the known part reduced modulo m_i
    View Gm = g;
    if (s >= kb + 1) {
      View Mi = Mb.take(kb + 1);
      build_vanishing(Mi, Ai);
      Gm = X.take(kb);
      remainder_smallspace(g, Mi, Gm, X.slice(kb, 2 * kb), kit);
    }
    for (std::size_t j = 0; j < kb; ++j) {
      elem aj = Ai.get(j);
      elem d = horner_view(Gm, aj);
      elem den = F.mul(F.pow(aj, s), Ci.get(j));
      Ci.set(j, F.mul(F.sub(b.get(i0 + j), d), F.inv(den)));
    }
    newton_interp_inplace(Ci, Ai);
    kit.low(T, Ci.window(0, k), S, XW);
    kern::add(out, T);
  }
}

void interp_cs(const View& a, const View& b, const View& out, const MulKit& kit) {
  std::size_t n = out.size();
  require(a.size() == n && b.size() == n, Errc::LengthMismatch);
  check_distinct(a);
  CallFrame frame(out.arena());
  const Field& F = out.field();
  for (std::size_t s = 0; s < n;) {
    std::size_t r = n - s, k = r / (kit.c + 5);
    while (k > 0 && k + partial_interp_work(k, kit) > r) --k;
    if (k > 0) {
      partial_interp(out.take(s), a.take(r), b.take(r), out.slice(s, s + k), out.slice(s + k, n), kit);
      s += k;
      continue;
    }
    // one coefficient by Lagrange at 0: h(0) = sum_j h(a_j) prod_{l != j} a_l / (a_l - a_j)
    TempScope temps(out.arena(), 4);
    View g = out.take(s);
    elem acc = 0;
    for (std::size_t j = 0; j < r; ++j) {
      elem aj = a.get(j);
      if (s > 0) require(aj != 0, Errc::ZeroPointWithShift);
      elem hj = F.mul(F.sub(b.get(j), horner_view(g, aj)), F.inv(F.pow(aj, s)));
      elem num = 1, den = 1;
      for (std::size_t l = 0; l < r; ++l) {
        if (l == j) continue;
        num = F.mul(num, a.get(l));
        den = F.mul(den, F.sub(a.get(l), aj));
      }
      acc = F.add(acc, F.mul(hj, F.mul(num, F.inv(den))));
    }
    out.arena().count_ops(4 * r * r);
    out.set(s, acc);
    ++s;
  }
}

}  // namespace ipa
