#include "ipa/dense_ref.hpp"

#include <algorithm>

#include "ipa/error.hpp"

namespace ipa {

namespace {

// f padded or cut to exactly n coefficients
View fit(const View& f, std::size_t n) { return f.size() >= n ? f.take(n) : f.pad(0, n - f.size()); }

}  // namespace

const MulKit& default_kit() {
  static const MulKit kit{};
  return kit;
}

std::size_t MulKit::mul_work(std::size_t a, std::size_t b) const {
  if (a < b) std::swap(a, b);
  if (b <= threshold) return 0;
  std::size_t m = (a + 1) / 2;
  if (a >= 2 * b || b <= m) {
    std::size_t w = mul_work(b, b);
    if (a % b) w = std::max(w, mul_work(a % b, b));
    return 2 * b - 1 + w;
  }
  std::size_t L = a + b - 1, wm = mul_work(m, m);
  std::size_t wp = wm <= L - 2 * m ? 0 : wm;
  std::size_t wa = wm <= L - (2 * m - 1) ? 0 : wm;
  return 2 * m - 1 + std::max({wp, wa, mul_work(a - m, b - m)});
}

void MulKit::mul(const View& out, const View& f, const View& g, const View& work) const {
  std::size_t a = f.size(), b = g.size();
  if (a < b) return mul(out, g, f, work);
  if (b == 0) return kern::zero(out);
  require(out.size() == a + b - 1, Errc::BadLength, "kit mul output size");
  require(work.size() >= mul_work(a, b), Errc::ScratchTooSmall, "kit mul work");
  if (b <= threshold) return kern::mul_set(out, f, g);

  std::size_t m = (a + 1) / 2, L = a + b - 1;
  if (a >= 2 * b || b <= m) {
    // chunk f by b
    View tmp = work.take(2 * b - 1), rest = work.drop(2 * b - 1);
    mul(out.take(2 * b - 1), f.take(b), g, work);
    kern::zero(out.drop(2 * b - 1));
    for (std::size_t o = b; o < a; o += b) {
      std::size_t c = std::min(b, a - o);
      View t = tmp.take(c + b - 1);
      mul(t, f.slice(o, o + c), g, rest);
      kern::add(out.slice(o, o + c + b - 1), t);
    }
    return;
  }

  View f0 = f.take(m), f1 = f.drop(m), g0 = g.take(m), g1 = g.drop(m);
  View sf = out.slice(0, m), sg = out.slice(m, 2 * m);
  kern::copy(sf, f0);
  kern::add(sf, f1);
  kern::copy(sg, g0);
  kern::add(sg, g1);
  View P = work.take(2 * m - 1), rest = work.drop(2 * m - 1);
  std::size_t wm = mul_work(m, m);
  mul(P, sf, sg, wm <= L - 2 * m ? out.drop(2 * m) : rest);
  mul(out.take(2 * m - 1), f0, g0, wm <= L - (2 * m - 1) ? out.drop(2 * m - 1) : rest);
  mul(out.drop(2 * m), f1, g1, rest);
  out.set(2 * m - 1, 0);

  // out = A + x^m (P - A - B) + x^{2m} B with A, B already in place
  const Field& F = out.field();
  TempScope t(out.arena(), 1);
  auto o = out.wspan();
  auto p = P.rspan();
  for (std::size_t j = 0; j < m; ++j) {
    elem bj = 2 * m + j < L ? o[2 * m + j] : 0;
    elem d = F.sub(o[m + j], bj);
    o[m + j] = F.sub(F.add(d, p[j]), o[j]);
    if (2 * m + j < L) {
      elem bmj = 3 * m + j < L ? o[3 * m + j] : 0;
      elem pmj = m + j < 2 * m - 1 ? p[m + j] : 0;
      o[2 * m + j] = F.sub(F.sub(pmj, d), bmj);
    }
  }
  out.arena().count_ops(6 * m);
}

std::size_t MulKit::low_work(std::size_t n) const {
  if (n <= threshold) return 0;
  std::size_t m = (n + 1) / 2, r = n - m;
  return std::max(mul_work(m, m), r + low_work(r));
}

void MulKit::low(const View& out, const View& f0_, const View& g0_, const View& work) const {
  std::size_t n = out.size();
  if (n == 0) return;
  View f = fit(f0_, n), g = fit(g0_, n);
  require(work.size() >= low_work(n), Errc::ScratchTooSmall, "kit low work");
  if (n <= threshold) return kern::mul_set(out, f, g);
  std::size_t m = (n + 1) / 2, r = n - m;
  mul(out.take(2 * m - 1), f.take(m), g.take(m), work);
  if (2 * m - 1 < n) out.set(n - 1, 0);
  View t = work.take(r), rest = work.drop(r);
  low(t, f.take(r), g.slice(m, n), rest);
  kern::add(out.drop(m), t);
  low(t, f.slice(m, n), g.take(r), rest);
  kern::add(out.drop(m), t);
}

void MulKit::upp(const View& out, const View& f, const View& g, const View& work) const {
  std::size_t n = f.size();
  require(g.size() == n && out.size() + 1 == n, Errc::BadLength, "kit upp sizes");
  low(out.rev(), f.drop(1).rev(), g.drop(1).rev(), work);
}

std::size_t MulKit::mid_work(std::size_t n) const {
  if (n <= threshold) return 0;
  if (n % 2) return mid_work(n - 1);
  return n + mid_work(n / 2);
}

void MulKit::mid(const View& out, const View& f, const View& g, const View& work) const {
  std::size_t n = g.size();
  require(out.size() == n && f.size() + 1 == 2 * n, Errc::BadLength, "kit mid sizes");
  require(work.size() >= mid_work(n), Errc::ScratchTooSmall, "kit mid work");
  if (n <= threshold) return kern::mul_set(out, f, g, n - 1);
  if (n % 2) {
    mid(out.take(n - 1), f.slice(1, 2 * n - 2), g.take(n - 1), work);
    kern::mul_acc(out.take(n - 1), f.take(n - 1), g.slice(n - 1, n));
    kern::mul_set(out.slice(n - 1, n), f, g, 2 * n - 2);
    return;
  }
  std::size_t m = n / 2;
  View fA = f.slice(0, 2 * m - 1), fB = f.slice(m, 3 * m - 1), fC = f.slice(2 * m, 4 * m - 1);
  View g0 = g.take(m), g1 = g.drop(m);
  View S = work.take(2 * m - 1), rest = work.drop(2 * m);
  kern::copy(S, fA);
  kern::add(S, fB);
  mid(out.take(m), S, g1, rest);
  kern::copy(S, fB);
  kern::add(S, fC);
  mid(out.drop(m), S, g0, rest);
  View D = work.take(m), beta = work.slice(m, 2 * m);
  kern::copy(D, g0);
  kern::add(D, g1, true);
  mid(beta, fB, D, rest);
  kern::add(out.take(m), beta);
  kern::add(out.drop(m), beta, true);
}

std::size_t MulKit::inv_work(std::size_t n) const {
  std::size_t w = 0;
  for (std::size_t k = 1; k < n;) {
    std::size_t l = std::min(k, n - k);
    std::size_t step = l == k ? k + mid_work(k) : 2 * l + mid_work(l);
    w = std::max({w, step, l + low_work(l)});
    k += l;
  }
  return w;
}

void MulKit::inv(const View& out, const View& f, const View& work) const {
  std::size_t n = out.size();
  if (n == 0) return;
  require(f.size() > 0 && f.get(0) != 0, Errc::NonUnitConstant);
  require(work.size() >= inv_work(n), Errc::ScratchTooSmall, "kit inv work");
  const Field& F = out.field();
  out.set(0, F.inv(f.get(0)));
  for (std::size_t k = 1; k < n;) {
    std::size_t l = std::min(k, n - k);
    // e = ((f * g_k) quo x^k) mod x^l, a middle product over j < k
    View e = work.take(l);
    if (l == k) {
      mid(e, f.window(1, 2 * k - 1), out.take(k), work.drop(k));
    } else {
      kern::zero(e);
      View t = work.slice(l, 2 * l), rest = work.drop(2 * l);
      for (std::size_t j0 = 0; j0 < k; j0 += l) {
        std::int64_t lo = std::int64_t(k) - std::int64_t(j0) - std::int64_t(l) + 1;
        mid(t, f.window(lo, 2 * l - 1), out.take(k).window(std::int64_t(j0), l), rest);
        kern::add(e, t);
      }
    }
    View nxt = out.slice(k, k + l);
    low(nxt, out.take(l), e, work.drop(l));
    kern::negate(nxt);
    k += l;
  }
}

Poly schoolbook_mul(const Field& F, const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly h(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) h[i + j] = F.add(h[i + j], F.mul(f[i], g[j]));
  return h;
}

Poly karatsuba_mul(const Field& F, const Poly& f, const Poly& g, const MulKit& kit, SpaceMetrics* metrics) {
  if (f.empty() || g.empty()) {
    if (metrics) *metrics = SpaceMetrics{};
    return {};
  }
  ArenaBuilder b(F, Model::RoRw);
  auto rf = b.add(f, Perm::InputOnly);
  auto rg = b.add(g, Perm::InputOnly);
  auto rh = b.zeros(f.size() + g.size() - 1, Perm::OutputOnly);
  std::size_t w = kit.mul_work(f.size(), g.size());
  Arena a = b.build(w);
  {
    ScratchLease work(a, w);
    kit.mul(a.view(rh), a.view(rf), a.view(rg), work.view());
  }
  if (metrics) *metrics = a.metrics();
  return a.values(rh);
}

Poly fast_mul(const Field& F, const Poly& f, const Poly& g) {
  if (std::min(f.size(), g.size()) <= 32) return schoolbook_mul(F, f, g);
  return karatsuba_mul(F, f, g);
}

std::size_t bit_reverse(std::size_t i, unsigned k) {
  require(k < 64 && (k == 0 ? i == 0 : (i >> k) == 0), Errc::OutOfRange);
  std::size_t r = 0;
  for (unsigned b = 0; b < k; ++b, i >>= 1) r = (r << 1) | (i & 1);
  return r;
}

void ntt_span(const Field& F, WSpan a, elem omega, Dir d) {
  std::size_t n = a.n;
  if (n <= 1) return;
  elem* p = a.p;
  std::ptrdiff_t st = a.st;
  auto at = [&](std::size_t i) -> elem& { return p[st * std::ptrdiff_t(i)]; };
  // twiddle-major order: one Shoup constant per twiddle, reused across blocks
  if (d == Dir::Fwd) {
    for (std::size_t len = n / 2; len >= 1; len /= 2) {
      elem step = F.pow(omega, n / (2 * len)), w = 1;
      for (std::size_t j = 0; j < len; ++j) {
        u64 wp = F.shoup(w);
        for (std::size_t s = j; s < n; s += 2 * len) {
          elem u = at(s), v = at(s + len);
          at(s) = F.add(u, v);
          at(s + len) = F.mul_shoup(F.sub(u, v), w, wp);
        }
        w = F.mul(w, step);
      }
    }
  } else {
    elem winv = F.inv(omega);
    for (std::size_t len = 1; len < n; len *= 2) {
      elem step = F.pow(winv, n / (2 * len)), w = 1;
      for (std::size_t j = 0; j < len; ++j) {
        u64 wp = F.shoup(w);
        for (std::size_t s = j; s < n; s += 2 * len) {
          elem u = at(s), v = F.mul_shoup(at(s + len), w, wp);
          at(s) = F.add(u, v);
          at(s + len) = F.sub(u, v);
        }
        w = F.mul(w, step);
      }
    }
    elem ninv = F.inv(elem(n % F.q()));
    u64 np = F.shoup(ninv);
    for (std::size_t i = 0; i < n; ++i) at(i) = F.mul_shoup(at(i), ninv, np);
  }
}

void ntt(const View& v, RootOfUnity w, Dir d) {
  std::size_t n = v.size();
  require(n > 0 && (n & (n - 1)) == 0, Errc::BadLength, "ntt length must be a power of two");
  require(w.order == n && v.field().is_principal_root(w.omega, n), Errc::BadOrder);
  TempScope t(v.arena(), 2);
  ntt_span(v.field(), v.wspan(), w.omega, d);
  unsigned k = 0;
  while ((std::size_t(1) << k) < n) ++k;
  v.arena().count_ops(u64(3) * n * k / 2);
}

Poly ntt_mul(const Field& F, const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  std::size_t L = f.size() + g.size() - 1, N = 1;
  while (N < L) N *= 2;
  RootOfUnity w = F.find_principal_root(N);
  // same butterfly kernel as the in-place code, so timing ratios compare algorithms only
  std::vector<elem> A(N, 0), B(N, 0);
  std::copy(f.begin(), f.end(), A.begin());
  std::copy(g.begin(), g.end(), B.begin());
  ntt_span(F, WSpan{A.data(), 1, N}, w.omega, Dir::Fwd);
  ntt_span(F, WSpan{B.data(), 1, N}, w.omega, Dir::Fwd);
  for (std::size_t i = 0; i < N; ++i) A[i] = F.mul(A[i], B[i]);
  ntt_span(F, WSpan{A.data(), 1, N}, w.omega, Dir::Inv);
  A.resize(L);
  return A;
}

Poly partial_product(const Field& F, const Poly& f, const Poly& g, PartMode mode) {
  std::size_t m = f.size(), n = g.size();
  Poly full = fast_mul(F, f, g);
  full.resize(m + n > 0 ? m + n - 1 : 0, 0);
  switch (mode) {
    case PartMode::Low: return Poly(full.begin(), full.begin() + std::ptrdiff_t(std::min(m, full.size())));
    case PartMode::Upp:
      if (n == 0) return {};
      return Poly(full.begin() + std::ptrdiff_t(m), full.end());
    case PartMode::Mid:
      require(m >= n, Errc::SizeOrder, "Mid needs size(f) >= size(g)");
      if (n == 0) return Poly(m + 1, 0);
      return Poly(full.begin() + std::ptrdiff_t(n - 1), full.begin() + std::ptrdiff_t(m));
  }
  return {};
}

Poly series_inv(const Field& F, const Poly& f, std::size_t n) {
  require(!f.empty() && f[0] != 0, Errc::NonUnitConstant);
  Poly g{F.inv(f[0])};
  for (std::size_t k = 1; k < n; k = std::min(2 * k, n)) {
    std::size_t k2 = std::min(2 * k, n);
    Poly fk(f.begin(), f.begin() + std::ptrdiff_t(std::min(k2, f.size())));
    Poly e = fast_mul(F, fk, g);  // = 1 + x^k * err
    e.resize(k2, 0);
    e.erase(e.begin(), e.begin() + std::ptrdiff_t(k));
    Poly c = fast_mul(F, g, e);
    g.resize(k2, 0);
    for (std::size_t i = k; i < k2; ++i) g[i] = F.neg(c[i - k]);
  }
  g.resize(n, 0);
  return g;
}

Poly series_div(const Field& F, const Poly& f, const Poly& g, std::size_t n) {
  Poly h = fast_mul(F, f, series_inv(F, g, n));
  h.resize(n, 0);
  return h;
}

std::pair<Poly, Poly> divrem(const Field& F, const Poly& f, const Poly& g) {
  std::size_t n = g.size();
  require(n > 0 && g.back() != 0, Errc::NonUnitLeading);
  require(f.size() + 1 >= n, Errc::SizeContract, "size(f) must be at least size(g) - 1");
  std::size_t m = f.size() + 1 - n;  // quotient size
  Poly q;
  if (m > 0) {
    Poly fr(f.rbegin(), f.rend()), gr(g.rbegin(), g.rend());
    fr.resize(m);
    q = series_div(F, fr, gr, m);
    std::reverse(q.begin(), q.end());
  }
  Poly gq = fast_mul(F, g, q);
  Poly r(n - 1, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) r[i] = F.sub(f[i], i < gq.size() ? gq[i] : 0);
  return {q, r};
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  return r;
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  return r;
}

elem horner(const Field& F, const Poly& f, elem x) {
  elem acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

namespace {

// levels[0] = linear factors, levels.back() = full product
std::vector<std::vector<Poly>> subproduct_tree(const Field& F, const std::vector<elem>& pts) {
  std::vector<std::vector<Poly>> levels(1);
  for (elem a : pts) levels[0].push_back({F.neg(a), 1});
  while (levels.back().size() > 1) {
    auto& cur = levels.back();
    std::vector<Poly> up;
    for (std::size_t i = 0; i < cur.size(); i += 2)
      up.push_back(i + 1 < cur.size() ? fast_mul(F, cur[i], cur[i + 1]) : cur[i]);
    levels.push_back(std::move(up));
  }
  return levels;
}

Poly rem(const Field& F, const Poly& f, const Poly& g) {
  if (f.size() < g.size()) return f;
  return divrem(F, f, g).second;
}

}  // namespace

std::vector<elem> mp_eval_tree(const Field& F, const Poly& f, const std::vector<elem>& pts) {
  if (pts.empty()) return {};
  auto tree = subproduct_tree(F, pts);
  std::vector<Poly> cur{rem(F, f, tree.back()[0])};
  for (std::size_t lv = tree.size() - 1; lv-- > 0;) {
    std::vector<Poly> nxt;
    for (std::size_t i = 0; i < tree[lv].size(); ++i) nxt.push_back(rem(F, cur[i / 2], tree[lv][i]));
    cur = std::move(nxt);
  }
  std::vector<elem> out;
  for (auto& r : cur) out.push_back(r.empty() ? 0 : r[0]);
  return out;
}

Poly interp_tree(const Field& F, const std::vector<elem>& pts, const std::vector<elem>& vals) {
  require(pts.size() == vals.size(), Errc::LengthMismatch);
  std::size_t n = pts.size();
  if (n == 0) return {};
  auto sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), Errc::DuplicatePoint);
  auto tree = subproduct_tree(F, pts);
  const Poly& M = tree.back()[0];
  Poly dM(M.size() - 1);
  for (std::size_t i = 1; i < M.size(); ++i) dM[i - 1] = F.mul(M[i], elem(i % F.q()));
  auto d = mp_eval_tree(F, dM, pts);
  std::vector<Poly> cur(n);
  for (std::size_t i = 0; i < n; ++i) cur[i] = {F.mul(vals[i], F.inv(d[i]))};
  for (std::size_t lv = 0; lv + 1 < tree.size(); ++lv) {
    std::vector<Poly> up;
    for (std::size_t i = 0; i < cur.size(); i += 2) {
      if (i + 1 == cur.size()) {
        up.push_back(cur[i]);
        continue;
      }
      up.push_back(poly_add(F, fast_mul(F, cur[i], tree[lv][i + 1]), fast_mul(F, cur[i + 1], tree[lv][i])));
    }
    cur = std::move(up);
  }
  Poly f = cur[0];
  f.resize(n, 0);
  return f;
}

}  // namespace ipa
