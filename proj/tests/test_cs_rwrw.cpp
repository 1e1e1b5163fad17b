#include <doctest.h>

#include <cmath>
#include <functional>

#include "helpers.hpp"
#include "ipa/cs_rwrw.hpp"
#include "lab.hpp"

using namespace ipa;
using test::Lab;
using test::random_poly;
using test::truncate;

namespace {

// Runs fn on rw/rw operands; every operand except the last `outs` must come back unchanged.
struct Rw {
  Poly out, out2;
  SpaceMetrics m;
};

Rw run(const Field& F, std::vector<Poly> ops, std::size_t outs,
       const std::function<void(std::vector<View>&)>& fn) {
  Lab L(F, Model::RwRw);
  std::vector<std::size_t> ids;
  for (auto& p : ops) ids.push_back(L.in(p));
  L.build();
  std::vector<View> vs;
  for (auto i : ids) vs.push_back(L.v(i));
  fn(vs);
  for (std::size_t i = 0; i + outs < ops.size(); ++i) CHECK(L.get(ids[i]) == ops[i]);
  Rw r;
  r.out = L.get(ids[ops.size() - outs]);
  if (outs > 1) r.out2 = L.get(ids[ops.size() - outs + 1]);
  r.m = L.metrics();
  CHECK(L.arena().depth() == 0);
  return r;
}

RwOpts thr(std::size_t t) {
  RwOpts o;
  o.threshold = t;
  return o;
}

Poly slice_oracle(const Field& F, const Poly& f, const Poly& g, std::size_t s, std::size_t r) {
  return test::slice_of(schoolbook_mul(F, f, g), s, s + r);
}

Poly conv_oracle(const Field& F, const Poly& f, const Poly& g, elem lambda) {
  std::size_t n = f.size();
  auto p = schoolbook_mul(F, f, g);
  Poly h(n, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    h[i % n] = F.add(h[i % n], i >= n ? F.mul(p[i], lambda) : p[i]);
  return h;
}

Poly rev(Poly p) {
  std::reverse(p.begin(), p.end());
  return p;
}

Poly monic(const Field& F, std::size_t n, std::mt19937_64& rng) {
  auto p = random_poly(F, n, rng);
  p.back() = 1;
  return p;
}

Poly mod_oracle(const Field& F, const Poly& a, const Poly& p) {
  if (a.size() < p.size()) return truncate(a, p.size() - 1);
  return test::long_division(F, a, p).second;
}

unsigned lg(std::size_t n) { return unsigned(std::ceil(std::log2(double(n)))); }

}  // namespace

TEST_CASE("cumulative karatsuba") {
  Field F(97);
  auto r = run(F, {{1, 2}, {3, 4}, {5, 0, 0}}, 1,
               [](auto& v) { cumulative_karatsuba(v[0], v[1], v[2]); });
  CHECK(r.out == Poly{8, 10, 8});
  CHECK(run(F, {{1, 2, 3}, {1}, {1, 1, 1}}, 1, [](auto& v) { cumulative_karatsuba(v[0], v[1], v[2]); }).out ==
        Poly{2, 3, 4});
  CHECK_THROWS_AS(run(F, {{1}, {1, 2}, {0, 0}}, 1, [](auto& v) { cumulative_karatsuba(v[0], v[1], v[2]); }),
                  Error);

  std::mt19937_64 rng(1);
  for (u64 q : {u64(97), test::kFftQ}) {
    Field G(q);
    for (auto [m, n] : {std::pair{97, 64}, {64, 64}, {5, 3}, {300, 7}, {129, 128}, {1, 1}}) {
      auto f = random_poly(G, m, rng), g = random_poly(G, n, rng), h = random_poly(G, m + n - 1, rng);
      for (std::size_t t : {1, 2, 32}) {
        auto out = run(G, {f, g, h}, 1, [&](auto& v) { cumulative_karatsuba(v[0], v[1], v[2], thr(t)); });
        CHECK(out.out == poly_add(G, h, schoolbook_mul(G, f, g)));
        CHECK(out.m.k_op() <= 2);
        CHECK(out.m.pointer_depth_highwater <= 2 * lg(m) + 4);
      }
    }
  }
}

TEST_CASE("cumulative karatsuba base product count") {
  Field F(test::kFftQ);
  std::mt19937_64 rng(2);
  for (unsigned k = 0; k <= 8; ++k) {
    std::size_t n = std::size_t(1) << k;
    auto f = random_poly(F, n, rng), g = random_poly(F, n, rng);
    auto r = run(F, {f, g, Poly(2 * n - 1, 0)}, 1,
                 [&](auto& v) { cumulative_karatsuba(v[0], v[1], v[2], thr(1)); });
    CHECK(r.out == schoolbook_mul(F, f, g));
    CHECK(r.m.base_products == u64(std::pow(3.0, k)));
  }
}

TEST_CASE("general cumulative products with negation") {
  Field F(97);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    std::size_t a = 1 + rng() % 90, b = 1 + rng() % 90;
    auto f = random_poly(F, a, rng), g = random_poly(F, b, rng), h = random_poly(F, a + b + 2, rng);
    auto r = run(F, {f, g, h}, 1, [&](auto& v) { cumulative_mul(v[0], v[1], v[2], true, thr(1 + it % 5)); });
    CHECK(r.out == poly_sub(F, h, truncate(schoolbook_mul(F, f, g), h.size())));
  }
}

TEST_CASE("partial fourier transform") {
  Field F(97);
  RootOfUnity w{22, 4};
  Poly f{3, 1, 4, 1};
  auto r = run(F, {f}, 1, [&](auto& v) { partial_ft(v[0], 0, 1, w, Dir::Fwd); });
  CHECK(r.out[0] == horner(F, f, 1));
  CHECK(r.out[1] == horner(F, f, 96));
  CHECK(r.out[2] == 4);
  CHECK(r.out[3] == 1);

  // k = 0 and full size is the plain transform
  auto full = run(F, {f}, 1, [&](auto& v) { partial_ft(v[0], 0, 2, w, Dir::Fwd); });
  auto ref = run(F, {f}, 1, [&](auto& v) { ntt(v[0], w, Dir::Fwd); });
  CHECK(full.out == ref.out);

  Field G(test::kFftQ);
  std::mt19937_64 rng(4);
  for (unsigned p = 1; p <= 6; ++p) {
    RootOfUnity wp = G.find_principal_root(u64(1) << p);
    for (int it = 0; it < 20; ++it) {
      std::size_t n = 1 + rng() % 40;
      unsigned l = unsigned(rng() % (p + 1));
      std::size_t L = std::size_t(1) << l;
      if (L > n) continue;
      std::size_t k = rng() % ((std::size_t(1) << p) / L);
      auto g = random_poly(G, n, rng);
      auto fw = run(G, {g}, 1, [&](auto& v) { partial_ft(v[0], k, l, wp, Dir::Fwd); });
      for (std::size_t i = 0; i < L; ++i)
        CHECK(fw.out[i] == horner(G, g, G.pow(wp.omega, bit_reverse(k * L + i, p))));
      for (std::size_t i = L; i < n; ++i) CHECK(fw.out[i] == g[i]);
      auto back = run(G, {g}, 1, [&](auto& v) {
        partial_ft(v[0], k, l, wp, Dir::Fwd);
        partial_ft(v[0], k, l, wp, Dir::Inv);
      });
      CHECK(back.out == g);
    }
  }
  RootOfUnity w16 = G.find_principal_root(16);
  auto g12 = random_poly(G, 12, rng);
  CHECK(run(G, {g12}, 1, [&](auto& v) {
          partial_ft(v[0], 1, 2, w16, Dir::Fwd);
          partial_ft(v[0], 1, 2, w16, Dir::Inv);
        }).out == g12);
  CHECK_THROWS_AS(run(G, {g12}, 1, [&](auto& v) { partial_ft(v[0], 0, 4, w16, Dir::Fwd); }), Error);
  CHECK_THROWS_AS(run(G, {g12}, 1, [&](auto& v) { partial_ft(v[0], 4, 2, w16, Dir::Fwd); }), Error);
}

TEST_CASE("truncated fourier transform in place") {
  Field G(test::kFftQ);
  std::mt19937_64 rng(5);
  for (std::size_t r = 1; r <= 70; ++r) {
    unsigned p = lg(r) + (r % 3 == 0);
    RootOfUnity w = G.find_principal_root(u64(1) << p);
    auto h = random_poly(G, r, rng);
    auto fw = run(G, {h}, 1, [&](auto& v) { tft(v[0], w, Dir::Fwd); });
    for (std::size_t i = 0; i < r; ++i) CHECK(fw.out[i] == horner(G, h, G.pow(w.omega, bit_reverse(i, p))));
    auto back = run(G, {fw.out}, 1, [&](auto& v) { tft(v[0], w, Dir::Inv); });
    CHECK(back.out == h);
    CHECK(back.m.extra_algebraic_highwater == 0);
  }
}

TEST_CASE("cumulative fft multiplication") {
  Field G(test::kFftQ);
  CHECK(run(G, {{1, 2}, {3, 4}, {0, 0, 0}}, 1, [](auto& v) { cumulative_fft_mul(v[0], v[1], v[2]); }).out ==
        Poly{3, 10, 8});
  CHECK(run(G, {{0, 0}, {3, 4, 5}, {1, 2, 3, 4}}, 1, [](auto& v) { cumulative_fft_mul(v[0], v[1], v[2]); })
            .out == Poly{1, 2, 3, 4});
  std::mt19937_64 rng(6);
  for (auto [m, n] : {std::pair{1000, 700}, {1, 1}, {1, 9}, {7, 1}, {33, 33}, {64, 64}, {5, 100}, {129, 200}}) {
    auto f = random_poly(G, m, rng), g = random_poly(G, n, rng), h = random_poly(G, m + n - 1, rng);
    auto r = run(G, {f, g, h}, 1, [](auto& v) { cumulative_fft_mul(v[0], v[1], v[2]); });
    CHECK(r.out == poly_add(G, h, karatsuba_mul(G, f, g)));
    CHECK(r.m.extra_algebraic_highwater <= 4);
  }
  for (int it = 0; it < 60; ++it) {
    std::size_t m = 1 + rng() % 200, n = 1 + rng() % 200;
    auto f = random_poly(G, m, rng), g = random_poly(G, n, rng), h = random_poly(G, m + n - 1, rng);
    CHECK(run(G, {f, g, h}, 1, [](auto& v) { cumulative_fft_mul(v[0], v[1], v[2]); }).out ==
          poly_add(G, h, schoolbook_mul(G, f, g)));
  }
  Field F(97);  // 97 - 1 = 96 = 32 * 3, no root of order 64
  auto f = random_poly(F, 40, rng);
  CHECK_THROWS_AS(run(F, {f, f, Poly(79, 0)}, 1, [](auto& v) { cumulative_fft_mul(v[0], v[1], v[2]); }),
                  Error);
}

TEST_CASE("cumulative convolution") {
  Field F(97);
  CHECK(run(F, {{1, 2}, {3, 4}, {0, 0}}, 1, [](auto& v) { cumulative_convolution(v[0], v[1], v[2], 1); }).out ==
        Poly{11, 10});
  CHECK(run(F, {{1, 2, 3}, {0, 1, 0}, {0, 0, 0}}, 1,
            [](auto& v) { cumulative_convolution(v[0], v[1], v[2], 1); })
            .out == Poly{3, 1, 2});
  CHECK_THROWS_AS(run(F, {{1}, {1}, {0}}, 1, [](auto& v) { cumulative_convolution(v[0], v[1], v[2], 0); }),
                  Error);
  std::mt19937_64 rng(7);
  for (u64 q : {u64(97), test::kFftQ}) {
    Field G(q);
    for (std::size_t n : {1, 2, 3, 33, 64, 100}) {
      auto f = random_poly(G, n, rng), g = random_poly(G, n, rng), h = random_poly(G, n, rng);
      elem lambda = test::random_unit(G, rng);
      auto r = run(G, {f, g, h}, 1, [&](auto& v) { cumulative_convolution(v[0], v[1], v[2], lambda, thr(2)); });
      CHECK(r.out == poly_add(G, h, conv_oracle(G, f, g, lambda)));
    }
  }
}

TEST_CASE("cumulative lower product and slices") {
  Field F(97);
  CHECK(run(F, {{1, 2}, {3, 4}, {1, 1}}, 1, [](auto& v) { cumulative_lower(v[0], v[1], v[2]); }).out ==
        Poly{4, 11});
  CHECK(run(F, {{3, 5, 2}, {4, 1}, {0, 0}}, 1, [](auto& v) { cumulative_slice(v[0], v[1], v[2], 1); }).out ==
        Poly{23, 13});
  CHECK_THROWS_AS(run(F, {{3, 5, 2}, {4, 1}, {0, 0}}, 1, [](auto& v) { cumulative_slice(v[0], v[1], v[2], 3); }),
                  Error);
  CHECK_THROWS_AS(run(F, {{3}, {4}, {0, 0}}, 1, [](auto& v) { cumulative_slice(v[0], v[1], v[2], 0); }), Error);

  std::mt19937_64 rng(8);
  for (u64 q : {u64(97), test::kFftQ}) {
    Field G(q);
    for (std::size_t n : {1, 2, 7, 129, 200}) {
      auto f = random_poly(G, n, rng), g = random_poly(G, n, rng), h = random_poly(G, n, rng);
      for (std::size_t t : {1, 32}) {
        auto r = run(G, {f, g, h}, 1, [&](auto& v) { cumulative_lower(v[0], v[1], v[2], thr(t)); });
        CHECK(r.out == poly_add(G, h, truncate(schoolbook_mul(G, f, g), n)));
      }
    }
    auto f = random_poly(G, 40, rng), g = random_poly(G, 25, rng);
    CHECK(run(G, {f, g, Poly(13, 0)}, 1, [](auto& v) { cumulative_slice(v[0], v[1], v[2], 7); }).out ==
          slice_oracle(G, f, g, 7, 13));
    for (int it = 0; it < 300; ++it) {
      std::size_t m = 1 + rng() % 60, n = 1 + rng() % 60;
      std::size_t r = 1 + rng() % (m + n - 1), s = rng() % (m + n - r);
      auto a = random_poly(G, m, rng), b = random_poly(G, n, rng), h = random_poly(G, r, rng);
      bool neg = it % 2;
      auto out = run(G, {a, b, h}, 1, [&](auto& v) { cumulative_slice(v[0], v[1], v[2], s, neg, thr(1 + it % 4)); });
      auto sl = slice_oracle(G, a, b, s, r);
      CHECK(out.out == (neg ? poly_sub(G, h, sl) : poly_add(G, h, sl)));
    }
  }
}

TEST_CASE("in-place lower product and division") {
  Field F(97);
  CHECK(run(F, {{1, 0, 0}, {5, 6, 7}}, 1, [](auto& v) { inplace_lower(v[1], v[0]); }).out == Poly{5, 6, 7});
  CHECK(run(F, {{1, 1, 0, 0}, {1, 1, 0, 0}}, 1, [](auto& v) { inplace_lower(v[1], v[0]); }).out ==
        Poly{1, 2, 1, 0});
  CHECK(run(F, {{1, 1, 0, 0}, {1, 0, 0, 0}}, 1, [](auto& v) { inplace_series_div(v[1], v[0]); }).out ==
        Poly{1, 96, 1, 96});
  CHECK(run(F, {{1}, {4}}, 1, [](auto& v) { inplace_series_div(v[1], v[0]); }).out == Poly{4});
  CHECK_THROWS_AS(run(F, {{0, 1}, {4, 4}}, 1, [](auto& v) { inplace_series_div(v[1], v[0]); }), Error);

  std::mt19937_64 rng(9);
  for (u64 q : {u64(97), test::kFftQ}) {
    Field G(q);
    for (std::size_t n : {1, 2, 3, 17, 200, 512}) {
      auto f = random_poly(G, n, rng), g = random_poly(G, n, rng);
      g[0] = test::random_unit(G, rng);
      for (std::size_t t : {1, 32}) {
        auto lo = run(G, {g, f}, 1, [&](auto& v) { inplace_lower(v[1], v[0], thr(t)); });
        CHECK(lo.out == truncate(schoolbook_mul(G, f, g), n));
        CHECK(lo.m.pointer_depth_highwater <= 2 * lg(n) + 4);
        auto dv = run(G, {g, f}, 1, [&](auto& v) { inplace_series_div(v[1], v[0], false, thr(t)); });
        CHECK(dv.out == test::naive_series_div(G, f, g, n));
        CHECK(dv.m.pointer_depth_highwater <= 2 * lg(n) + 4);
        auto rv = run(G, {rev(g), rev(f)}, 1, [&](auto& v) { inplace_series_div(v[1], v[0], true, thr(t)); });
        CHECK(rv.out == rev(dv.out));
      }
    }
  }
}

TEST_CASE("remainder and in-place euclidean division") {
  Field F(97);
  CHECK(run(F, {{1, 2, 0, 1}, {1, 1}, {0}}, 1, [](auto& v) { remainder_rwrw(v[0], v[1], v[2]); }).out ==
        Poly{95});
  CHECK(run(F, {{1, 1}, {1, 2, 0, 1}}, 1, [](auto& v) { inplace_divrem(v[1], v[0], Way::Apply); }).out ==
        Poly{95, 3, 96, 1});
  CHECK(run(F, {{5, 6}, {5, 6}}, 1, [](auto& v) { inplace_divrem(v[1], v[0], Way::Apply); }).out == Poly{0, 1});
  CHECK_THROWS_AS(run(F, {{1, 2, 0, 1}, {1, 0}, {0}}, 1, [](auto& v) { remainder_rwrw(v[0], v[1], v[2]); }),
                  Error);
  CHECK_THROWS_AS(run(F, {{1, 0}, {1, 2, 0, 1}}, 1, [](auto& v) { inplace_divrem(v[1], v[0], Way::Apply); }),
                  Error);

  std::mt19937_64 rng(10);
  for (u64 q : {u64(97), test::kFftQ}) {
    Field G(q);
    for (auto [m, n] : {std::pair{150, 33}, {64, 9}, {1, 5}, {10, 1}, {5, 5}, {7, 2}, {3, 40}}) {
      auto g = random_poly(G, n, rng);
      g.back() = test::random_unit(G, rng);
      auto f = random_poly(G, m + n - 1, rng);
      auto [qq, rr] = test::long_division(G, f, g);
      auto rem = run(G, {f, g, Poly(n - 1, 0)}, 1, [&](auto& v) { remainder_rwrw(v[0], v[1], v[2], thr(2)); });
      CHECK(rem.out == rr);
      auto ap = run(G, {g, f}, 1, [&](auto& v) { inplace_divrem(v[1], v[0], Way::Apply, thr(2)); });
      Poly layout = rr;
      layout.insert(layout.end(), qq.begin(), qq.end());
      CHECK(ap.out == layout);
      auto r0 = random_poly(G, n - 1, rng);
      auto cr = run(G, {f, g, r0}, 1, [&](auto& v) { cumulative_remainder(v[0], v[1], v[2]); });
      CHECK(cr.out == poly_add(G, r0, rr));
      auto twice = run(G, {f, g, Poly(n - 1, 0)}, 1, [&](auto& v) {
        cumulative_remainder(v[0], v[1], v[2]);
        cumulative_remainder(v[0], v[1], v[2]);
      });
      CHECK(twice.out == poly_add(G, rr, rr));
      // multiples of g leave nothing
      auto mul = schoolbook_mul(G, g, random_poly(G, m, rng));
      CHECK(run(G, {mul, g, Poly(n - 1, 0)}, 1, [&](auto& v) { remainder_rwrw(v[0], v[1], v[2]); }).out ==
            Poly(n - 1, 0));
    }
  }
}

TEST_CASE("in-place euclidean division is reversible") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    Field G(it % 2 ? 97 : test::kFftQ);
    std::size_t m = 1 + rng() % 80, n = 1 + rng() % 40;
    auto g = random_poly(G, n, rng);
    g.back() = test::random_unit(G, rng);
    auto f = random_poly(G, m + n - 1, rng);
    auto r = run(G, {g, f}, 1, [&](auto& v) {
      inplace_divrem(v[1], v[0], Way::Apply, thr(1 + it % 3));
      inplace_divrem(v[1], v[0], Way::Undo, thr(1 + it % 3));
    });
    CHECK(r.out == f);
  }
}

TEST_CASE("modular multiplication") {
  Field F(97);
  CHECK(run(F, {{0, 1}, {0, 1}, {1, 0, 1}, {0, 0}}, 1, [](auto& v) { modular_mul(v[0], v[1], v[3], v[2]); })
            .out == Poly{96, 0});
  CHECK(run(F, {{4, 5, 6}, {1, 0, 0}, {7, 8, 9, 1}, {0, 0, 0}}, 1,
            [](auto& v) { modular_mul(v[0], v[1], v[3], v[2]); })
            .out == Poly{4, 5, 6});
  CHECK_THROWS_AS(run(F, {{0, 1}, {0, 1}, {1, 0, 2}, {0, 0}}, 1,
                      [](auto& v) { modular_mul(v[0], v[1], v[3], v[2]); }),
                  Error);

  std::mt19937_64 rng(12);
  for (u64 q : {u64(97), test::kFftQ}) {
    Field G(q);
    for (std::size_t n : {1, 2, 5, 31, 64, 200}) {
      auto p = monic(G, n + 1, rng);
      for (int it = 0; it < 6; ++it) {
        auto f = random_poly(G, n, rng), g = random_poly(G, n, rng), r0 = random_poly(G, n, rng);
        if (it == 1) std::fill(f.begin() + n / 2, f.end(), 0);  // leading zeros
        if (it == 2) g = Poly(n, 0);
        auto r = run(G, {f, g, p, r0}, 1, [&](auto& v) { modular_mul(v[0], v[1], v[3], v[2], thr(1 + it)); });
        CHECK(r.out == poly_add(G, r0, mod_oracle(G, schoolbook_mul(G, f, g), p)));
        CHECK(r.m.pointer_depth_highwater <= 2 * lg(n) + 4 + 4);
      }
      for (int it = 0; it < 6; ++it) {
        std::size_t a = 1 + rng() % (3 * n), b = 1 + rng() % (3 * n);
        auto f = random_poly(G, a, rng), g = random_poly(G, b, rng), r0 = random_poly(G, n, rng);
        auto r = run(G, {f, g, p, r0}, 1, [&](auto& v) { modular_mul_any(v[0], v[1], v[3], v[2]); });
        CHECK(r.out == poly_add(G, r0, mod_oracle(G, schoolbook_mul(G, f, g), p)));
      }
      auto r = run(G, {p, random_poly(G, n, rng), p, Poly(n, 0)}, 1,
                   [&](auto& v) { modular_mul_any(v[0], v[1], v[3], v[2]); });
      CHECK(r.out == Poly(n, 0));
    }
  }
}

TEST_CASE("rw/rw constant space and pointer depth") {
  Field G(test::kFftQ);
  std::mt19937_64 rng(13);
  using Op = std::function<void(std::vector<View>&)>;
  struct Case {
    const char* name;
    int arity;
    Op op;
  };
  std::vector<Case> cases = {
      {"karatsuba", 3, [](auto& v) { cumulative_karatsuba(v[0], v[1], v[2]); }},
      {"fft", 3, [](auto& v) { cumulative_fft_mul(v[0], v[1], v[2]); }},
      {"convolution", 3, [](auto& v) { cumulative_convolution(v[0], v[1], v[2].take(v[0].size()), 3); }},
      {"lower", 3, [](auto& v) { cumulative_lower(v[0], v[1], v[2].take(v[0].size())); }},
      {"inplace lower", 2, [](auto& v) { inplace_lower(v[1], v[0]); }},
      {"inplace div", 2, [](auto& v) { inplace_series_div(v[1], v[0]); }},
      {"modular", 4, [](auto& v) { modular_mul(v[0], v[1], v[3], v[2]); }},
  };
  for (auto& c : cases) {
    std::size_t k = 0;
    for (std::size_t n : {32, 64, 128, 256, 512}) {
      auto f = random_poly(G, n, rng), g = random_poly(G, n, rng);
      g[0] = 1;
      g[n - 1] = 1;
      f[0] = 1;
      std::vector<Poly> ops{g, f};
      if (c.arity == 3) ops = {f, g, Poly(2 * n - 1, 0)};
      if (c.arity == 4) ops = {f, g, monic(G, n + 1, rng), Poly(n, 0)};
      auto r = run(G, ops, 1, c.op);
      INFO(c.name << " n=" << n);
      if (k == 0) k = r.m.k_op();
      CHECK(r.m.k_op() == k);
      CHECK(r.m.extra_algebraic_highwater == 0);
      CHECK(r.m.pointer_depth_highwater <= 2 * lg(n) + 4);
    }
  }
}
