#include "ipa/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "ipa/bilinear.hpp"
#include "ipa/cs_rorw.hpp"
#include "ipa/cs_rwrw.hpp"
#include "ipa/dense_ref.hpp"
#include "ipa/lab.hpp"

namespace ipa::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  u64 q = 469762049;
  std::string algo;
  std::string f, g, h, p, prog;
  std::string A, B, C;
  std::size_t scratch = 0, s = 0, n = 0;
  long long lambda = 1;
  bool reversed = false, karatsuba2 = false, strassen = false, two_d = false;
  u64 seed = 0;
  std::vector<std::string> ops;
  std::vector<std::size_t> sizes;
};

std::string slurp(const std::string& src) {
  if (src.empty() || src[0] != '@') return src;
  std::ifstream in(src.substr(1));
  if (!in) throw Usage("cannot read " + src.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Poly load(const Field& F, const std::string& src, const char* name) {
  if (src.empty()) throw Usage(std::string("missing --") + name);
  std::string text = slurp(src);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  if (src[0] == '@' || text.find(';') != std::string::npos) {
    u64 q = F.q();
    Poly p = parse_poly(text, &q);
    require(q == F.q(), Errc::ParseError, "modulus in operand differs from --q");
    for (auto& c : p) c %= F.q();
    return p;
  }
  return parse_coeffs(F, text);
}

Mat load_mat(const Field& F, const std::string& text) {
  Mat M;
  std::stringstream ss(text);
  for (std::string row; std::getline(ss, row, ';');) M.push_back(parse_coeffs(F, row));
  return M;
}

// Operands in one arena; with a pool, scratch leases come from its tail.
class Rig : public Lab {
 public:
  using Lab::Lab;
  std::size_t out(const Poly& p) { return Lab::out(p); }
  MatrixDense mat(std::size_t i, std::size_t n) { return MatrixDense(arena(), region(i), n); }
};

std::string metrics_line(const SpaceMetrics& m) {
  std::ostringstream os;
  os << "extra_algebraic=" << m.extra_algebraic_highwater << " pointer_depth=" << m.pointer_depth_highwater
     << " base_products=" << m.base_products;
  return os.str();
}

Poly zeros(std::size_t n) { return Poly(n, 0); }

std::size_t prod_size(const Poly& f, const Poly& g) { return f.empty() || g.empty() ? 0 : f.size() + g.size() - 1; }

using Algo = std::function<void(const Field&, const Job&, std::ostream&)>;

void print(std::ostream& out, const Field& F, const Poly& p, const char* label = nullptr) {
  if (label) out << label << ": ";
  out << format_poly(F, p) << "\n";
}

const Algo& pick(const std::map<std::string, Algo>& table, const std::string& algo, const std::string& def) {
  auto it = table.find(algo.empty() ? def : algo);
  if (it == table.end()) throw Usage("unknown --algo '" + algo + "'");
  return it->second;
}

// --- commands --------------------------------------------------------------

void cmd_mul(const Field& F, const Job& j, std::ostream& out) {
  static const std::map<std::string, Algo> table = {
      {"schoolbook", [](const Field& F, const Job& j, std::ostream& out) {
         print(out, F, schoolbook_mul(F, load(F, j.f, "f"), load(F, j.g, "g")));
       }},
      {"ntt", [](const Field& F, const Job& j, std::ostream& out) {
         print(out, F, ntt_mul(F, load(F, j.f, "f"), load(F, j.g, "g")));
       }},
      {"karatsuba-ref", [](const Field& F, const Job& j, std::ostream& out) {
         SpaceMetrics m;
         print(out, F, karatsuba_mul(F, load(F, j.f, "f"), load(F, j.g, "g"), default_kit(), &m));
         out << metrics_line(m) << "\n";
       }},
      {"semi-cumulative", [](const Field& F, const Job& j, std::ostream& out) {
         auto f = load(F, j.f, "f"), g = load(F, j.g, "g");
         std::size_t len = prod_size(f, g), n = std::max(f.size(), g.size());
         Poly h0 = j.h.empty() ? zeros(len) : load(F, j.h, "h");
         require(h0.size() == len, Errc::LengthMismatch, "|h| must be |f|+|g|-1");
         // equal sizes are required; zero padding keeps the top of h known-zero
         f.resize(n, 0), g.resize(n, 0), h0.resize(2 * n - 1, 0);
         Rig r(F, Model::RoRw);
         auto a = r.in(f), b = r.in(g), h = r.out(h0);
         r.build();
         semi_cumulative_product(r.v(a), r.v(b), r.v(h));
         auto res = r.get(h);
         res.resize(len);
         print(out, F, res);
         out << metrics_line(r.metrics()) << "\n";
       }},
  };
  auto rw = [](std::function<void(const View&, const View&, const View&)> op) {
    return [op](const Field& F, const Job& j, std::ostream& out) {
      auto f = load(F, j.f, "f"), g = load(F, j.g, "g");
      Rig r(F, Model::RwRw);
      auto a = r.in(f), b = r.in(g), h = r.out(j.h.empty() ? zeros(prod_size(f, g)) : load(F, j.h, "h"));
      r.build();
      op(r.v(a), r.v(b), r.v(h));
      print(out, F, r.get(h));
      out << metrics_line(r.metrics()) << "\n";
    };
  };
  static const std::map<std::string, Algo> rw_table = {
      {"cumulative-karatsuba", rw([](auto& f, auto& g, auto& h) {
         if (f.size() >= g.size()) cumulative_karatsuba(f, g, h);
         else cumulative_karatsuba(g, f, h);
       })},
      {"cumulative-fft", rw([](auto& f, auto& g, auto& h) { cumulative_fft_mul(f, g, h); })},
  };
  std::string algo = j.algo.empty() ? "cumulative-karatsuba" : j.algo;
  if (rw_table.count(algo)) return rw_table.at(algo)(F, j, out);
  pick(table, algo, "")(F, j, out);
}

// series ops work mod x^|f|; a shorter or longer divisor/factor is resized to match
Poly fit(Poly g, std::size_t n, bool reversed) {
  require(!reversed || g.size() == n, Errc::LengthMismatch, "reversed mode needs |g| = |f|");
  g.resize(n, 0);
  return g;
}

void cmd_lower(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f");
  auto g = fit(load(F, j.g, "g"), f.size(), j.reversed);
  std::string algo = j.algo.empty() ? "cs" : j.algo;
  if (algo == "cs") {
    Rig r(F, Model::RoRw);
    auto a = r.in(f), b = r.in(g), h = r.out(zeros(f.size()));
    r.build();
    lower_product_cs(r.v(a), r.v(b), r.v(h), j.reversed);
    print(out, F, r.get(h));
    out << metrics_line(r.metrics()) << "\n";
  } else if (algo == "cumulative") {
    Rig r(F, Model::RwRw);
    auto a = r.in(f), b = r.in(g), h = r.out(j.h.empty() ? zeros(f.size()) : load(F, j.h, "h"));
    r.build();
    cumulative_lower(r.v(a), r.v(b), r.v(h));
    print(out, F, r.get(h));
    out << metrics_line(r.metrics()) << "\n";
  } else if (algo == "inplace") {
    Rig r(F, Model::RwRw);
    auto a = r.out(f), b = r.in(g);
    r.build();
    inplace_lower(r.v(a), r.v(b));
    print(out, F, r.get(a));
    out << metrics_line(r.metrics()) << "\n";
  } else if (algo == "ref") {
    print(out, F, partial_product(F, f, g, PartMode::Low));
  } else {
    throw Usage("unknown --algo '" + algo + "'");
  }
}

void cmd_middle(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f"), g = load(F, j.g, "g");
  require(f.size() + 1 >= g.size(), Errc::SizeOrder);
  Rig r(F, Model::RoRw);
  auto a = r.in(f), b = r.in(g), h = r.out(zeros(f.size() + 1 - g.size()));
  r.build();
  middle_product_cs(r.v(a), r.v(b), r.v(h));
  print(out, F, r.get(h));
  out << metrics_line(r.metrics()) << "\n";
}

void cmd_slice(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f"), g = load(F, j.g, "g");
  Poly h0 = j.h.empty() ? zeros(j.n) : load(F, j.h, "h");
  Rig r(F, Model::RwRw);
  auto a = r.in(f), b = r.in(g), h = r.out(h0);
  r.build();
  cumulative_slice(r.v(a), r.v(b), r.v(h), j.s);
  print(out, F, r.get(h));
  out << metrics_line(r.metrics()) << "\n";
}

void cmd_conv(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f"), g = load(F, j.g, "g");
  Rig r(F, Model::RwRw);
  auto a = r.in(f), b = r.in(g), h = r.out(j.h.empty() ? zeros(f.size()) : load(F, j.h, "h"));
  r.build();
  cumulative_convolution(r.v(a), r.v(b), r.v(h), F.from_int(j.lambda));
  print(out, F, r.get(h));
  out << metrics_line(r.metrics()) << "\n";
}

void cmd_inv(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f");
  std::size_t n = j.n ? j.n : f.size();
  Rig r(F, Model::RoRw);
  auto a = r.in(f), g = r.out(zeros(n));
  r.build();
  series_inv_cs(r.v(a), r.v(g));
  print(out, F, r.get(g));
  out << metrics_line(r.metrics()) << "\n";
}

void cmd_div(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f");
  auto g = fit(load(F, j.g, "g"), f.size(), j.reversed);
  std::string algo = j.algo.empty() ? "cs" : j.algo;
  if (algo == "cs") {
    Rig r(F, Model::RoRw);
    auto a = r.in(f), b = r.in(g), h = r.out(zeros(f.size()));
    r.build();
    series_div_cs(r.v(a), r.v(b), r.v(h));
    print(out, F, r.get(h));
    out << metrics_line(r.metrics()) << "\n";
  } else if (algo == "inplace" || algo == "smallspace") {
    bool small = algo == "smallspace";
    Rig r(F, small ? Model::RoRw : Model::RwRw);
    auto a = r.out(f), b = r.in(g);
    Arena& A = r.build(small ? j.scratch : 0);
    if (small) {
      ScratchLease t(A, j.scratch);
      inplace_div_smallspace(r.v(a), r.v(b), t);
    } else
      inplace_series_div(r.v(a), r.v(b), j.reversed);
    print(out, F, r.get(a));
    out << metrics_line(r.metrics()) << "\n";
  } else {
    throw Usage("unknown --algo '" + algo + "'");
  }
}

void cmd_divrem(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f"), g = load(F, j.g, "g");
  require(!g.empty() && f.size() + 1 >= g.size(), Errc::SizeContract);
  std::size_t n = g.size(), m = f.size() + 1 - n;
  std::string algo = j.algo.empty() ? "cs" : j.algo;
  if (algo == "ref") {
    auto [q, r] = divrem(F, f, g);
    print(out, F, q, "q");
    print(out, F, r, "r");
  } else if (algo == "cs") {
    Rig r(F, Model::RoRw);
    auto a = r.in(f), b = r.in(g), q = r.out(zeros(m)), rr = r.out(zeros(n - 1));
    r.build();
    divrem_cs(r.v(a), r.v(b), r.v(q), r.v(rr));
    print(out, F, r.get(q), "q");
    print(out, F, r.get(rr), "r");
    out << metrics_line(r.metrics()) << "\n";
  } else if (algo == "inplace") {
    Rig r(F, Model::RwRw);
    auto a = r.out(f), b = r.in(g);
    r.build();
    inplace_divrem(r.v(a), r.v(b), Way::Apply);
    auto res = r.get(a);
    print(out, F, Poly(res.begin() + std::ptrdiff_t(n - 1), res.end()), "q");
    print(out, F, Poly(res.begin(), res.begin() + std::ptrdiff_t(n - 1)), "r");
    out << metrics_line(r.metrics()) << "\n";
  } else {
    throw Usage("unknown --algo '" + algo + "'");
  }
}

void cmd_rem(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f"), g = load(F, j.g, "g");
  require(!g.empty(), Errc::SizeContract);
  std::size_t n = g.size();
  std::string algo = j.algo.empty() ? "rwrw" : j.algo;
  if (algo == "ref") {
    print(out, F, divrem(F, f, g).second);
    return;
  }
  bool small = algo == "smallspace";
  if (!small && algo != "rwrw" && algo != "cumulative") throw Usage("unknown --algo '" + algo + "'");
  Rig r(F, small ? Model::RoRw : Model::RwRw);
  auto a = r.in(f), b = r.in(g);
  auto rr = r.out(algo == "cumulative" && !j.h.empty() ? load(F, j.h, "h") : zeros(n - 1));
  Arena& A = r.build(small ? j.scratch : 0);
  if (small) {
    ScratchLease t(A, j.scratch);
    remainder_smallspace(r.v(a), r.v(b), r.v(rr), t);
  } else if (algo == "rwrw")
    remainder_rwrw(r.v(a), r.v(b), r.v(rr));
  else
    cumulative_remainder(r.v(a), r.v(b), r.v(rr));
  print(out, F, r.get(rr));
  out << metrics_line(r.metrics()) << "\n";
}

void cmd_modmul(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f"), g = load(F, j.g, "g"), p = load(F, j.p, "p");
  require(p.size() >= 2, Errc::LengthMismatch, "modulus needs degree >= 1");
  std::size_t n = p.size() - 1;
  Rig r(F, Model::RwRw);
  auto a = r.in(f), b = r.in(g), pp = r.in(p), h = r.out(j.h.empty() ? zeros(n) : load(F, j.h, "h"));
  r.build();
  if (f.size() == n && g.size() == n)
    modular_mul(r.v(a), r.v(b), r.v(h), r.v(pp));
  else
    modular_mul_any(r.v(a), r.v(b), r.v(h), r.v(pp));
  print(out, F, r.get(h));
  out << metrics_line(r.metrics()) << "\n";
}

void cmd_eval(const Field& F, const Job& j, std::ostream& out) {
  auto f = load(F, j.f, "f"), pts = load(F, j.g, "g");
  if (j.algo == "tree") {
    print(out, F, mp_eval_tree(F, f, pts));
    return;
  }
  Rig r(F, Model::RoRw);
  auto a = r.in(f), b = r.in(pts), v = r.out(zeros(pts.size()));
  r.build();
  mp_eval_cs(r.v(a), r.v(b), r.v(v));
  print(out, F, r.get(v));
  out << metrics_line(r.metrics()) << "\n";
}

void cmd_interp(const Field& F, const Job& j, std::ostream& out) {
  auto pts = load(F, j.f, "f"), vals = load(F, j.g, "g");
  require(pts.size() == vals.size(), Errc::LengthMismatch);
  if (j.algo == "tree") {
    print(out, F, interp_tree(F, pts, vals));
    return;
  }
  Rig r(F, Model::RoRw);
  auto a = r.in(pts), b = r.in(vals), v = r.out(zeros(pts.size()));
  r.build();
  interp_cs(r.v(a), r.v(b), r.v(v));
  print(out, F, r.get(v));
  out << metrics_line(r.metrics()) << "\n";
}

std::size_t square_dim(std::size_t len) {
  auto n = std::size_t(std::llround(std::sqrt(double(len))));
  require(n * n == len, Errc::DimMismatch, "matrix operands are n*n row-major");
  return n;
}

void cmd_strassen(const Field& F, const Job& j, std::ostream& out) {
  auto x = load(F, j.f, "f"), y = load(F, j.g, "g");
  std::size_t n = square_dim(x.size());
  require(y.size() == x.size(), Errc::DimMismatch);
  Poly z0 = j.h.empty() ? zeros(n * n) : load(F, j.h, "h");
  require(z0.size() == x.size(), Errc::DimMismatch);
  Rig r(F, Model::RwRw);
  auto a = r.in(x), b = r.in(y), c = r.out(z0);
  r.build();
  strassen_cs(r.mat(a, n), r.mat(b, n), r.mat(c, n));
  print(out, F, r.get(c));
  out << metrics_line(r.metrics()) << "\n";
}

BilinearProgram builtin(const Field& F, const Job& j) {
  if (j.karatsuba2)
    return validate(F, to_mat(F, {{1, 0}, {0, 1}, {1, -1}}), to_mat(F, {{1, 0}, {0, 1}, {1, -1}}),
                    to_mat(F, {{1, 0, 0}, {1, 1, -1}, {0, 1, 0}}), j.two_d);
  if (j.strassen)
    return validate(F,
                    to_mat(F, {{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, -1, -1}, {0, 0, 0, 1}, {0, 0, 1, 1},
                               {-1, 0, 1, 1}, {1, 0, -1, 0}}),
                    to_mat(F, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, -1, -1, 1}, {-1, 1, 0, 0},
                               {1, -1, 0, 1}, {0, -1, 0, 1}}),
                    to_mat(F, {{1, 1, 0, 0, 0, 0, 0}, {1, 0, 1, 0, 1, 1, 0}, {1, 0, 0, -1, 0, 1, 1},
                               {1, 0, 0, 0, 1, 1, 1}}),
                    j.two_d);
  if (j.A.empty() || j.B.empty() || j.C.empty()) throw Usage("emit needs --karatsuba2, --strassen-winograd or --A/--B/--C");
  return validate(F, load_mat(F, slurp(j.A)), load_mat(F, slurp(j.B)), load_mat(F, slurp(j.C)), j.two_d);
}

void cmd_emit(const Field& F, const Job& j, std::ostream& out) {
  auto bp = builtin(F, j);
  auto p = bp.two_d ? emit_inplace_2d(F, bp) : emit_inplace(F, bp);
  out << format_program(F, p);
  auto c = count_instrs(F, p);
  out << "# products=" << c.products << " additions=" << c.additions() << " add_into=" << c.add_into
      << " scalings=" << c.scalings << "\n";
}

void cmd_exec(const Field& F, const Job& j, std::ostream& out) {
  if (j.prog.empty()) throw Usage("missing --prog");
  auto p = parse_program(F, slurp(j.prog));
  auto x = load(F, j.f, "f"), y = load(F, j.g, "g");
  Poly z0 = j.h.empty() ? zeros(p.s) : load(F, j.h, "h");
  Rig r(F, Model::RwRw);
  auto a = r.in(x), b = r.in(y), c = r.out(z0);
  r.build();
  exec_program(p, r.v(a), r.v(b), r.v(c));
  print(out, F, r.get(c));
  out << metrics_line(r.metrics()) << "\n";
}

// --- bench -------------------------------------------------------------------

struct BenchRow {
  double secs = 0;
  SpaceMetrics m;
};

Poly rand_poly(const Field& F, std::size_t n, std::mt19937_64& rng) {
  Poly p(n);
  for (auto& c : p) c = elem(rng() % F.q());
  return p;
}

template <class Fn>
double timed(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BenchRow bench_one(const Field& F, const std::string& op, std::size_t n, std::mt19937_64& rng) {
  BenchRow row;
  auto f = rand_poly(F, n, rng), g = rand_poly(F, n, rng);
  auto rw3 = [&](auto&& fn, std::size_t hs) {
    Rig r(F, Model::RwRw);
    auto a = r.in(f), b = r.in(g), h = r.out(zeros(hs));
    r.build();
    row.secs = timed([&] { fn(r.v(a), r.v(b), r.v(h)); });
    row.m = r.metrics();
  };
  if (op == "cumulative-karatsuba") {
    rw3([](auto a, auto b, auto h) { cumulative_karatsuba(a, b, h); }, 2 * n - 1);
  } else if (op == "cumulative-fft") {
    rw3([](auto a, auto b, auto h) { cumulative_fft_mul(a, b, h); }, 2 * n - 1);
  } else if (op == "cumulative-lower") {
    rw3([](auto a, auto b, auto h) { cumulative_lower(a, b, h); }, n);
  } else if (op == "karatsuba-ref") {
    row.secs = timed([&] { karatsuba_mul(F, f, g, default_kit(), &row.m); });
  } else if (op == "ntt") {
    row.secs = timed([&] { ntt_mul(F, f, g); });
  } else if (op == "schoolbook") {
    row.secs = timed([&] { schoolbook_mul(F, f, g); });
  } else if (op == "semi-cumulative") {
    Rig r(F, Model::RoRw);
    auto a = r.in(f), b = r.in(g), h = r.out(zeros(2 * n - 1));
    r.build();
    row.secs = timed([&] { semi_cumulative_product(r.v(a), r.v(b), r.v(h)); });
    row.m = r.metrics();
  } else if (op == "inplace-lower") {
    Rig r(F, Model::RwRw);
    auto a = r.out(f), b = r.in(g);
    r.build();
    row.secs = timed([&] { inplace_lower(r.v(a), r.v(b)); });
    row.m = r.metrics();
  } else if (op == "strassen-cs") {
    require(n > 0 && (n & (n - 1)) == 0, Errc::NotPowerOfTwo);
    Rig r(F, Model::RwRw);
    auto a = r.in(rand_poly(F, n * n, rng)), b = r.in(rand_poly(F, n * n, rng)), c = r.out(zeros(n * n));
    r.build();
    row.secs = timed([&] { strassen_cs(r.mat(a, n), r.mat(b, n), r.mat(c, n)); });
    row.m = r.metrics();
  } else {
    throw Usage("unknown bench op '" + op + "'");
  }
  return row;
}

void cmd_bench(const Field& F, const Job& j, std::ostream& out) {
  if (j.ops.empty()) throw Usage("bench needs --ops");
  std::mt19937_64 rng(j.seed);
  out << "op,n,wall_time_s,extra_algebraic,pointer_depth,base_products\n";
  for (auto& op : j.ops)
    for (std::size_t n : j.sizes) {
      auto row = bench_one(F, op, n, rng);
      out << op << ',' << n << ',' << row.secs << ',' << row.m.extra_algebraic_highwater << ','
          << row.m.pointer_depth_highwater << ',' << row.m.base_products << "\n";
    }
}

void common(CLI::App* c, Job& j) {
  c->add_option("--q", j.q, "prime modulus");
  c->add_option("--algo", j.algo, "algorithm variant");
  c->add_option("--f", j.f, "first operand, c0,c1,... or @file");
  c->add_option("--g", j.g, "second operand");
  c->add_option("--h", j.h, "accumulator / initial output");
  c->add_option("--p", j.p, "modulus polynomial");
  c->add_option("--scratch", j.scratch, "extra space for small-space variants");
  c->add_option("--lambda", j.lambda, "convolution twist");
  c->add_option("--s", j.s, "slice start");
  c->add_option("--n", j.n, "output size");
  c->add_flag("--reversed", j.reversed, "reversed variant");
  c->add_option("--seed", j.seed, "random seed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Job job;
  CLI::App app{"in-place polynomial arithmetic", "ipa"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  struct Cmd {
    const char* name;
    const char* help;
    void (*fn)(const Field&, const Job&, std::ostream&);
  };
  const Cmd cmds[] = {
      {"mul", "h += f*g (schoolbook, karatsuba-ref, ntt, semi-cumulative, cumulative-karatsuba, cumulative-fft)",
       cmd_mul},
      {"lower", "f*g mod x^|f| (cs, cumulative, inplace, ref); --reversed for the top half", cmd_lower},
      {"middle", "middle product of f and g", cmd_middle},
      {"slice", "h += coefficients [s, s+|h|) of f*g", cmd_slice},
      {"conv", "h += f*g mod x^n - lambda", cmd_conv},
      {"inv", "f^-1 mod x^n", cmd_inv},
      {"div", "f/g mod x^|f| (cs, inplace, smallspace)", cmd_div},
      {"divrem", "quotient and remainder (cs, inplace, ref)", cmd_divrem},
      {"rem", "f mod g (rwrw, cumulative, smallspace, ref)", cmd_rem},
      {"modmul", "h += f*g mod p", cmd_modmul},
      {"eval", "f at the points g (cs, tree)", cmd_eval},
      {"interp", "interpolant of points f and values g (cs, tree)", cmd_interp},
      {"strassen", "Z += X*Y for n x n matrices given row-major", cmd_strassen},
      {"emit", "print an in-place program for a bilinear triple", cmd_emit},
      {"exec", "run a program text on x=f, y=g, z=h", cmd_exec},
      {"bench", "CSV timings and metrics for --ops over --sizes", cmd_bench},
  };

  std::map<CLI::App*, void (*)(const Field&, const Job&, std::ostream&)> handlers;
  for (const auto& cmd : cmds) {
    std::string name = cmd.name;
    auto* c = app.add_subcommand(name, cmd.help);
    common(c, job);
    handlers[c] = cmd.fn;
    if (name == "emit") {
      c->add_flag("--karatsuba2", job.karatsuba2, "size-2 Karatsuba triple");
      c->add_flag("--strassen-winograd", job.strassen, "2x2 Strassen-Winograd triple");
      c->add_flag("--2d", job.two_d, "pair-valued products");
      c->add_option("--A", job.A, "rows separated by ';'");
      c->add_option("--B", job.B);
      c->add_option("--C", job.C);
    }
    if (name == "exec") c->add_option("--prog", job.prog, "program text or @file");
    if (name == "bench") {
      c->add_option("--ops", job.ops)->delimiter(',');
      c->add_option("--sizes", job.sizes)->delimiter(',');
    }
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return 2;
  }
  try {
    if (!Field::is_prime(job.q)) throw Error(Errc::NotPrime);
    Field F(job.q);
    for (auto* sub : app.get_subcommands()) handlers.at(sub)(F, job, out);
  } catch (const Usage& e) {
    err << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::string what = e.what(), name = e.name();
    err << "error: " << (what.rfind(name, 0) == 0 ? what : name + ": " + what) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ipa::cli
