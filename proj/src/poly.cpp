#include "ipa/poly.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ipa {

std::string format_poly(const Field& F, const Poly& p) {
  std::ostringstream os;
  os << F.q() << ';';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  return os.str();
}

namespace {

std::vector<std::int64_t> parse_ints(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string::npos) j = text.size();
    std::string tok = text.substr(i, j - i);
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return std::isspace((unsigned char)c); }),
              tok.end());
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    require(ec == std::errc() && ptr == tok.data() + tok.size() && !tok.empty(), Errc::ParseError,
            "bad coefficient");
    out.push_back(v);
    i = j + 1;
  }
  return out;
}

}  // namespace

Poly parse_coeffs(const Field& F, const std::string& text) {
  Poly p;
  for (auto v : parse_ints(text)) p.push_back(F.from_int(v));
  return p;
}

Poly parse_poly(const std::string& text, u64* q_out) {
  std::string body = text;
  if (auto semi = text.find(';'); semi != std::string::npos) {
    auto q = parse_ints(text.substr(0, semi));
    require(q.size() == 1 && q[0] > 0, Errc::ParseError, "bad modulus");
    if (q_out) *q_out = u64(q[0]);
    body = text.substr(semi + 1);
  }
  Poly p;
  for (auto v : parse_ints(body)) {
    require(v >= 0, Errc::ParseError, "negative coefficient in file format");
    p.push_back(elem(v));
  }
  return p;
}

namespace kern {

void zero(const View& h) {
  auto s = h.wspan();
  for (std::size_t i = 0; i < s.n; ++i) s[i] = 0;
}

void copy(const View& dst, const View& src) {
  auto d = dst.wspan();
  if (src.real() && src.size() >= d.n) {
    auto s = src.rspan();
    for (std::size_t i = 0; i < d.n; ++i) d[i] = s[i];
  } else {
    for (std::size_t i = 0; i < d.n; ++i) d[i] = i < src.size() ? src.get(i) : 0;
  }
}

void add(const View& dst, const View& src, bool negate) {
  const Field& F = dst.field();
  std::size_t n = std::min(dst.size(), src.size());
  std::size_t lo = std::min(src.real_lo(), n), hi = std::min(src.real_hi(), n);
  if (lo >= hi) return;
  auto d = dst.slice(lo, hi).wspan();
  auto s = src.slice(lo, hi).rspan();
  if (negate)
    for (std::size_t i = 0; i < d.n; ++i) d[i] = F.sub(d[i], s[i]);
  else
    for (std::size_t i = 0; i < d.n; ++i) d[i] = F.add(d[i], s[i]);
  dst.arena().count_ops(d.n);
}

void negate(const View& h) {
  const Field& F = h.field();
  auto s = h.wspan();
  for (std::size_t i = 0; i < s.n; ++i) s[i] = F.neg(s[i]);
}

void scale(const View& h, elem c) {
  const Field& F = h.field();
  auto s = h.wspan();
  for (std::size_t i = 0; i < s.n; ++i) s[i] = F.mul(s[i], c);
  h.arena().count_ops(s.n);
}

bool all_zero(const View& h) {
  for (std::size_t i = h.real_lo(); i < h.real_hi(); ++i)
    if (h.get(i)) return false;
  return true;
}

namespace {

// Dot products over the real parts of f and g; out[k] = (f*g)[d+k].
template <class Sink>
void convolve(const View& f, const View& g, std::size_t d, std::size_t len, Sink&& sink) {
  const Field& F = f.field();
  std::size_t flo = f.real_lo(), fhi = f.real_hi(), glo = g.real_lo(), ghi = g.real_hi();
  if (flo >= fhi || glo >= ghi) {
    for (std::size_t k = 0; k < len; ++k) sink(k, 0);
    return;
  }
  auto fs = f.slice(flo, fhi).rspan();
  auto gs = g.slice(glo, ghi).rspan();
  const u64 cap = u64(1) << 63;
  u64 ops = 0;
  for (std::size_t k = 0; k < len; ++k) {
    // pairs (i, j) with i + j = t, flo <= i < fhi, glo <= j < ghi
    std::size_t t = d + k;
    u64 acc = 0;
    if (t >= flo + glo) {
      std::size_t ilo = std::max(flo, t + 1 > ghi ? t + 1 - ghi : 0);
      std::size_t ihi = std::min(fhi, t - glo + 1);
      for (std::size_t i = ilo; i < ihi; ++i) {
        acc += u64(fs[i - flo]) * gs[t - i - glo];
        if (acc >= cap) acc = F.reduce(acc);
      }
      if (ihi > ilo) ops += 2 * (ihi - ilo);
    }
    sink(k, F.reduce(acc));
  }
  f.arena().count_ops(ops);
}

}  // namespace

void mul_acc(const View& h, const View& f, const View& g, std::size_t d, bool negate) {
  if (h.empty()) return;
  const Field& F = h.field();
  TempScope t(h.arena(), 1);
  auto hs = h.wspan();
  if (negate)
    convolve(f, g, d, hs.n, [&](std::size_t k, elem v) { hs[k] = F.sub(hs[k], v); });
  else
    convolve(f, g, d, hs.n, [&](std::size_t k, elem v) { hs[k] = F.add(hs[k], v); });
}

void mul_set(const View& h, const View& f, const View& g, std::size_t d) {
  if (h.empty()) return;
  TempScope t(h.arena(), 1);
  auto hs = h.wspan();
  convolve(f, g, d, hs.n, [&](std::size_t k, elem v) { hs[k] = v; });
}

elem dot(const View& f, const View& g) {
  const Field& F = f.field();
  std::size_t lo = std::max(f.real_lo(), g.real_lo());
  std::size_t hi = std::min(f.real_hi(), g.real_hi());
  u64 acc = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    acc += u64(f.get(i)) * g.get(i);
    if (acc >= (u64(1) << 63)) acc = F.reduce(acc);
  }
  if (hi > lo) f.arena().count_ops(2 * (hi - lo));
  return F.reduce(acc);
}

}  // namespace kern

}  // namespace ipa
