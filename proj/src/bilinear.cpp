#include "ipa/bilinear.hpp"

#include <algorithm>
#include <sstream>

namespace ipa {

std::size_t sigma(const Mat& M) {
  std::size_t c = 0;
  for (auto& row : M) c += std::size_t(std::count_if(row.begin(), row.end(), [](elem v) { return v != 0; }));
  return c;
}

std::size_t tau(const Field& F, const Mat& M) {
  std::size_t c = 0;
  for (auto& row : M)
    for (elem v : row) c += v != 0 && !F.is_unit_pm1(v);
  return c;
}

Mat to_mat(const Field& F, const std::vector<std::vector<long long>>& M) {
  Mat out;
  for (auto& row : M) {
    out.emplace_back();
    for (long long v : row) out.back().push_back(F.from_int(v));
  }
  return out;
}

namespace {

std::size_t width(const Mat& M) {
  if (M.empty()) return 0;
  std::size_t w = M[0].size();
  for (auto& row : M) require(row.size() == w, Errc::DimMismatch, "ragged matrix");
  return w;
}

bool zero_row(const std::vector<elem>& r) {
  return std::all_of(r.begin(), r.end(), [](elem v) { return v == 0; });
}

// lowest +-1 entry if any, else lowest nonzero
std::size_t pick_pivot(const Field& F, const std::vector<elem>& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] && F.is_unit_pm1(r[i])) return i;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i]) return i;
  throw Error(Errc::ZeroRow);
}

Instr add_into(Operand d, Operand s, elem c) {
  Instr in;
  in.kind = Instr::AddInto;
  in.dst = d;
  in.src = s;
  in.coeff = c;
  return in;
}

Instr scale(Instr::Kind k, Operand d, elem c) {
  Instr in;
  in.kind = k;
  in.dst = d;
  in.coeff = c;
  return in;
}

struct Pivot {
  std::size_t idx;
  elem div;       // the pivot, or 1 when folded into the sign
  elem factor;    // applied to the other coefficients
  int sign;
};

Pivot pivot_of(const Field& F, const std::vector<elem>& r, std::size_t idx) {
  elem a = r[idx];
  if (F.is_unit_pm1(a)) return {idx, 1, a, a == 1 ? 1 : -1};
  return {idx, a, 1, 1};
}

// x_i <- (row . x) / sign, or its inverse
void emit_combine(const Field& F, std::vector<Instr>& out, Reg reg, const std::vector<elem>& row,
                  const Pivot& p, bool undo) {
  Operand d{reg, p.idx};
  if (!undo && p.div != 1) out.push_back(scale(Instr::ScaleBy, d, p.div));
  for (std::size_t l = 0; l < row.size(); ++l) {
    if (l == p.idx || !row[l]) continue;
    elem c = F.mul(row[l], p.factor);
    out.push_back(add_into(d, {reg, l}, undo ? F.neg(c) : c));
  }
  if (undo && p.div != 1) out.push_back(scale(Instr::DivBy, d, p.div));
}

std::vector<elem> column(const Mat& C, std::size_t u) {
  std::vector<elem> c;
  for (auto& row : C) c.push_back(row[u]);
  return c;
}

Program emit(const Field& F, const BilinearProgram& bp, bool two_d) {
  Program P;
  P.m = bp.m;
  P.n = bp.n;
  P.s = bp.s;
  P.two_d = two_d;
  auto& out = P.code;
  for (std::size_t u = 0; u < bp.t; ++u) {
    Pivot pa = pivot_of(F, bp.A[u], pick_pivot(F, bp.A[u]));
    Pivot pb = pivot_of(F, bp.B[u], pick_pivot(F, bp.B[u]));
    auto col = column(bp.C, u);
    // 2D needs the lowest row so no other pair writes into z_k
    std::size_t k = two_d ? std::size_t(std::find_if(col.begin(), col.end(), [](elem v) { return v; }) - col.begin())
                          : pick_pivot(F, col);
    Pivot pc = pivot_of(F, col, k);
    emit_combine(F, out, Reg::X, bp.A[u], pa, false);
    emit_combine(F, out, Reg::Y, bp.B[u], pb, false);
    auto spread = [&](std::size_t shift, bool back) {
      for (std::size_t l = 0; l < col.size(); ++l) {
        if (l == k || !col[l]) continue;
        elem c = F.mul(col[l], pc.factor);
        out.push_back(add_into({Reg::Z, l + shift}, {Reg::Z, k + shift}, back ? c : F.neg(c)));
      }
    };
    Instr prod;
    prod.kind = two_d ? Instr::Recurse : Instr::ProdAcc;
    prod.zk = k;
    prod.xi = pa.idx;
    prod.yj = pb.idx;
    prod.sign = pa.sign * pb.sign * pc.sign;
    Operand zk{Reg::Z, k}, zk1{Reg::Z, k + 1};
    if (!two_d) {
      if (pc.div != 1) out.push_back(scale(Instr::DivBy, zk, pc.div));
      spread(0, false);
      out.push_back(prod);
      spread(0, true);
      if (pc.div != 1) out.push_back(scale(Instr::ScaleBy, zk, pc.div));
    } else {
      if (pc.div != 1) out.push_back(scale(Instr::DivBy, zk, pc.div));
      spread(0, false);
      if (pc.div != 1) out.push_back(scale(Instr::DivBy, zk1, pc.div));
      spread(1, false);
      out.push_back(prod);
      spread(1, true);
      if (pc.div != 1) out.push_back(scale(Instr::ScaleBy, zk1, pc.div));
      spread(0, true);
      if (pc.div != 1) out.push_back(scale(Instr::ScaleBy, zk, pc.div));
    }
    emit_combine(F, out, Reg::Y, bp.B[u], pb, true);
    emit_combine(F, out, Reg::X, bp.A[u], pa, true);
  }
  return P;
}

}  // namespace

BilinearProgram validate(const Field& F, Mat A, Mat B, Mat C, bool two_d) {
  for (Mat* M : {&A, &B, &C})
    for (auto& row : *M)
      for (auto& v : row) v %= F.q();
  BilinearProgram bp;
  bp.t = A.size();
  bp.m = width(A);
  bp.n = width(B);
  bp.s = C.size();
  bp.two_d = two_d;
  require(B.size() == bp.t && bp.t > 0, Errc::DimMismatch, "A and B need the same number of rows");
  require(width(C) == bp.t, Errc::DimMismatch, "C needs one column per product");
  for (const Mat* M : {&A, &B, &C})
    for (auto& row : *M) require(!zero_row(row), Errc::ZeroRow);
  for (std::size_t u = 0; u < bp.t; ++u) require(!zero_row(column(C, u)), Errc::ZeroRow, "unused product");
  bp.A = std::move(A);
  bp.B = std::move(B);
  bp.C = std::move(C);
  return bp;
}

Program emit_inplace(const Field& F, const BilinearProgram& bp) { return emit(F, bp, false); }

Program emit_inplace_2d(const Field& F, const BilinearProgram& bp) {
  Program p = emit(F, bp, true);
  // every pair must fit in z_0 .. z_s
  for (auto& in : p.code)
    if (in.kind == Instr::Recurse) require(in.zk + 1 <= p.s, Errc::OverlapUnsupported);
  return p;
}

InstrCounts count_instrs(const Field& F, const Program& p) {
  InstrCounts c;
  for (auto& in : p.code) {
    switch (in.kind) {
      case Instr::ProdAcc:
      case Instr::Recurse: ++c.products; break;
      case Instr::AddInto:
        ++c.add_into;
        if (!F.is_unit_pm1(in.coeff)) ++c.scalings;
        break;
      case Instr::ScaleBy:
      case Instr::DivBy: ++c.scalings; break;
    }
  }
  return c;
}

namespace {

char reg_char(Reg r) { return r == Reg::X ? 'x' : r == Reg::Y ? 'y' : 'z'; }

std::string opnd(Operand o) { return reg_char(o.r) + std::to_string(o.i); }

Operand parse_opnd(const std::string& s) {
  require(s.size() >= 2 && (s[0] == 'x' || s[0] == 'y' || s[0] == 'z'), Errc::ParseError, "operand");
  for (std::size_t i = 1; i < s.size(); ++i) require(std::isdigit(static_cast<unsigned char>(s[i])), Errc::ParseError, "operand");
  Operand o;
  o.r = s[0] == 'x' ? Reg::X : s[0] == 'y' ? Reg::Y : Reg::Z;
  o.i = std::stoull(s.substr(1));
  return o;
}

bool is_number(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

elem parse_coeff(const Field& F, const std::string& s) {
  require(is_number(s) && s.size() < 19, Errc::ParseError, "coefficient");
  return F.from_int(std::stoll(s));
}

}  // namespace

std::string format_program(const Field& F, const Program& p) {
  std::ostringstream os;
  os << "# m=" << p.m << " n=" << p.n << " s=" << p.s << (p.two_d ? " 2d" : "") << "\n";
  for (auto& in : p.code) {
    switch (in.kind) {
      case Instr::AddInto:
        os << opnd(in.dst) << " += " << F.centered(in.coeff) << " * " << opnd(in.src) << "\n";
        break;
      case Instr::ScaleBy: os << opnd(in.dst) << " *= " << F.centered(in.coeff) << "\n"; break;
      case Instr::DivBy: os << opnd(in.dst) << " /= " << F.centered(in.coeff) << "\n"; break;
      case Instr::ProdAcc:
        os << 'z' << in.zk << (in.sign > 0 ? " += " : " -= ") << 'x' << in.xi << " * y" << in.yj << "\n";
        break;
      case Instr::Recurse:
        os << 'z' << in.zk << ",z" << in.zk + 1 << (in.sign > 0 ? " += " : " -= ") << 'x' << in.xi << " o y"
           << in.yj << "\n";
        break;
    }
  }
  return os.str();
}

Program parse_program(const Field& F, const std::string& text) {
  Program p;
  bool header = false;
  std::istringstream is(text);
  std::string line;
  std::size_t mx = 0, my = 0, mz = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (tok[0][0] == '#') {
      for (auto& w : tok) {
        if (w.rfind("m=", 0) == 0) p.m = std::stoull(w.substr(2)), header = true;
        if (w.rfind("n=", 0) == 0) p.n = std::stoull(w.substr(2));
        if (w.rfind("s=", 0) == 0) p.s = std::stoull(w.substr(2));
        if (w == "2d") p.two_d = true;
      }
      continue;
    }
    Instr in;
    auto note = [&](Operand o) {
      std::size_t& hi = o.r == Reg::X ? mx : o.r == Reg::Y ? my : mz;
      hi = std::max(hi, o.i + 1);
    };
    if (tok.size() == 3 && (tok[1] == "*=" || tok[1] == "/=")) {
      in.kind = tok[1] == "*=" ? Instr::ScaleBy : Instr::DivBy;
      in.dst = parse_opnd(tok[0]);
      in.coeff = parse_coeff(F, tok[2]);
      require(in.coeff != 0, Errc::ParseError, "zero scaling");
      note(in.dst);
    } else if (tok.size() == 5 && (tok[1] == "+=" || tok[1] == "-=")) {
      int sign = tok[1] == "+=" ? 1 : -1;
      if (tok[3] == "o") {
        auto comma = tok[0].find(',');
        require(comma != std::string::npos, Errc::ParseError, "pair");
        Operand a = parse_opnd(tok[0].substr(0, comma)), b = parse_opnd(tok[0].substr(comma + 1));
        require(a.r == Reg::Z && b.r == Reg::Z && b.i == a.i + 1, Errc::ParseError, "pair");
        Operand x = parse_opnd(tok[2]), y = parse_opnd(tok[4]);
        require(x.r == Reg::X && y.r == Reg::Y, Errc::ParseError, "product operands");
        in.kind = Instr::Recurse;
        in.zk = a.i;
        in.xi = x.i;
        in.yj = y.i;
        in.sign = sign;
        note(a);
        note(x);
        note(y);
        p.two_d = true;
      } else {
        require(tok[3] == "*", Errc::ParseError, "expected *");
        Operand d = parse_opnd(tok[0]);
        note(d);
        if (is_number(tok[2])) {
          require(sign > 0, Errc::ParseError, "use a negative coefficient");
          in.kind = Instr::AddInto;
          in.dst = d;
          in.coeff = parse_coeff(F, tok[2]);
          in.src = parse_opnd(tok[4]);
          require(in.src.r == d.r && !(in.src == d), Errc::ParseError, "additions stay within one vector");
          note(in.src);
        } else {
          Operand x = parse_opnd(tok[2]), y = parse_opnd(tok[4]);
          require(d.r == Reg::Z && x.r == Reg::X && y.r == Reg::Y, Errc::ParseError, "product operands");
          in.kind = Instr::ProdAcc;
          in.zk = d.i;
          in.xi = x.i;
          in.yj = y.i;
          in.sign = sign;
          note(x);
          note(y);
        }
      }
    } else {
      throw Error(Errc::ParseError, "ParseError: cannot read '" + line + "'");
    }
    p.code.push_back(in);
  }
  if (!header) {
    p.m = mx;
    p.n = my;
    p.s = p.two_d && mz > 0 ? mz - 1 : mz;
  }
  return p;
}

namespace {

struct Blocks {
  View x, y, z;
  std::size_t bs;
  View block(Operand o) const {
    const View& v = o.r == Reg::X ? x : o.r == Reg::Y ? y : z;
    return v.window(std::int64_t(o.i * bs), bs);
  }
};

// dst += c * src on the real part of dst; padded slots of a trailing z block stay implicit zeros
void block_axpy(const View& d, const View& s, elem c) {
  const Field& F = d.field();
  for (std::size_t i = d.real_lo(); i < d.real_hi(); ++i) d.set(i, F.add(d.get(i), F.mul(c, s.get(i))));
  d.arena().count_ops(2 * (d.real_hi() - d.real_lo()));
}

void block_scale(const View& d, elem c) {
  const Field& F = d.field();
  for (std::size_t i = d.real_lo(); i < d.real_hi(); ++i) d.set(i, F.mul(d.get(i), c));
  d.arena().count_ops(d.real_hi() - d.real_lo());
}

}  // namespace

void exec_blocks(const Program& p, const View& x, const View& y, const View& z, std::size_t bs,
                 const BlockProduct& prod) {
  std::size_t zlen = p.two_d ? p.s * bs + bs - 1 : p.s * bs;
  require(bs > 0 && x.size() == p.m * bs && y.size() == p.n * bs && z.size() == zlen, Errc::RegionMismatch);
  const Field& F = z.field();
  Blocks B{x, y, z, bs};
  std::size_t lim_x = p.m, lim_y = p.n, lim_z = p.two_d ? p.s + 1 : p.s;
  auto check = [&](Operand o) {
    std::size_t lim = o.r == Reg::X ? lim_x : o.r == Reg::Y ? lim_y : lim_z;
    require(o.i < lim, Errc::RegionMismatch, "operand outside its region");
  };
  CallFrame frame(z.arena());
  TempScope t(z.arena(), 1);
  for (auto& in : p.code) {
    switch (in.kind) {
      case Instr::AddInto:
        check(in.dst);
        check(in.src);
        block_axpy(B.block(in.dst), B.block(in.src), in.coeff);
        break;
      case Instr::ScaleBy:
        check(in.dst);
        block_scale(B.block(in.dst), in.coeff);
        break;
      case Instr::DivBy:
        check(in.dst);
        block_scale(B.block(in.dst), F.inv(in.coeff));
        break;
      case Instr::ProdAcc:
      case Instr::Recurse: {
        check({Reg::X, in.xi});
        check({Reg::Y, in.yj});
        check({Reg::Z, in.zk});
        View zw = in.kind == Instr::Recurse ? z.window(std::int64_t(in.zk * bs), 2 * bs - 1) : B.block({Reg::Z, in.zk});
        if (in.kind == Instr::Recurse) require(in.zk < p.s, Errc::RegionMismatch);
        prod(zw, B.block({Reg::X, in.xi}), B.block({Reg::Y, in.yj}), in.sign);
        break;
      }
    }
  }
}

void exec_program(const Program& p, const View& x, const View& y, const View& z) {
  exec_blocks(p, x, y, z, 1, [](const View& zw, const View& a, const View& b, int sign) {
    const Field& F = zw.field();
    elem v = F.mul(a.get(0), b.get(0));
    zw.set(0, sign > 0 ? F.add(zw.get(0), v) : F.sub(zw.get(0), v));
    zw.arena().count_ops(2);
    zw.arena().count_base_product();
  });
}

MatrixDense::MatrixDense(Arena& a, Region r, std::size_t n) : a_(&a), origin_(r.lo), n_(n), ld_(n) {
  require(r.size() == n * n, Errc::DimMismatch);
}

namespace {

// D +-= S blockwise
void mat_add(const MatrixDense& D, const MatrixDense& S, bool neg) {
  const Field& F = D.arena().field();
  std::size_t n = D.dim();
  for (std::size_t i = 0; i < n; ++i) {
    auto d = D.row(i).wspan();
    auto s = S.row(i).rspan();
    if (neg)
      for (std::size_t j = 0; j < n; ++j) d[j] = F.sub(d[j], s[j]);
    else
      for (std::size_t j = 0; j < n; ++j) d[j] = F.add(d[j], s[j]);
  }
  D.arena().count_ops(u64(n) * n);
}

void sw_rec(const MatrixDense& X, const MatrixDense& Y, const MatrixDense& Z, bool neg) {
  Arena& A = Z.arena();
  if (Z.dim() == 1) {
    const Field& F = A.field();
    TempScope t(A, 1);
    auto z = Z.row(0).wspan();
    elem v = F.mul(X.get(0, 0), Y.get(0, 0));
    z[0] = neg ? F.sub(z[0], v) : F.add(z[0], v);
    A.count_ops(2);
    A.count_base_product();
    return;
  }
  CallFrame frame(A);
  auto X00 = X.quad(0, 0), X01 = X.quad(0, 1), X10 = X.quad(1, 0), X11 = X.quad(1, 1);
  auto Y00 = Y.quad(0, 0), Y01 = Y.quad(0, 1), Y10 = Y.quad(1, 0), Y11 = Y.quad(1, 1);
  auto Z00 = Z.quad(0, 0), Z01 = Z.quad(0, 1), Z10 = Z.quad(1, 0), Z11 = Z.quad(1, 1);
  constexpr bool P = false, M = true;
  mat_add(X10, X00, M); mat_add(Y01, Y11, M); mat_add(Z10, Z11, M);
  sw_rec(X10, Y01, Z11, neg);
  mat_add(X10, X11, P); mat_add(Y01, Y00, M); mat_add(Z01, Z11, M);
  sw_rec(X10, Y01, Z11, !neg);
  mat_add(Z00, Z11, M);
  sw_rec(X00, Y00, Z11, neg);
  mat_add(Z00, Z11, P); mat_add(Y01, Y10, P); mat_add(Z10, Z11, P);
  sw_rec(X11, Y01, Z10, neg);
  mat_add(Y01, Y11, P); mat_add(Y01, Y10, M); mat_add(X10, X01, M);
  sw_rec(X10, Y11, Z01, !neg);
  mat_add(X10, X01, P); mat_add(X10, X00, P);
  sw_rec(X10, Y01, Z11, neg);
  mat_add(Z01, Z11, P); mat_add(Y01, Y00, P); mat_add(X10, X11, M);
  sw_rec(X01, Y10, Z00, neg);
}

}  // namespace

void strassen_cs(const MatrixDense& X, const MatrixDense& Y, const MatrixDense& Z) {
  std::size_t n = Z.dim();
  require(X.dim() == n && Y.dim() == n, Errc::DimMismatch);
  require(n > 0 && (n & (n - 1)) == 0, Errc::NotPowerOfTwo);
  sw_rec(X, Y, Z, false);
}

}  // namespace ipa
