#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ipa/arena.hpp"

namespace ipa {

using Mat = std::vector<std::vector<elem>>;

// z += C((Ax) . (By)); in 2D mode product u lands on the pair (z_k, z_{k+1}) with weight C[k][u].
struct BilinearProgram {
  Mat A, B, C;
  std::size_t t = 0, m = 0, n = 0, s = 0;
  bool two_d = false;
};

std::size_t sigma(const Mat& M);
std::size_t tau(const Field& F, const Mat& M);

BilinearProgram validate(const Field& F, Mat A, Mat B, Mat C, bool two_d = false);
// signed integer entries, reduced into F
Mat to_mat(const Field& F, const std::vector<std::vector<long long>>& M);

enum class Reg : std::uint8_t { X, Y, Z };
struct Operand {
  Reg r = Reg::X;
  std::size_t i = 0;
  bool operator==(const Operand&) const = default;
};

struct Instr {
  enum Kind : std::uint8_t { AddInto, ScaleBy, DivBy, ProdAcc, Recurse } kind = AddInto;
  Operand dst, src;  // AddInto: dst += coeff * src; ScaleBy/DivBy: dst
  elem coeff = 1;
  std::size_t zk = 0, xi = 0, yj = 0;  // ProdAcc / Recurse
  int sign = 1;
  bool operator==(const Instr&) const = default;
};

struct Program {
  std::size_t m = 0, n = 0, s = 0;
  bool two_d = false;
  std::vector<Instr> code;
};

struct InstrCounts {
  std::size_t products = 0, add_into = 0, scalings = 0;
  // each cumulative product z += x*y carries one addition
  std::size_t additions() const { return add_into + products; }
};
InstrCounts count_instrs(const Field& F, const Program& p);

Program emit_inplace(const Field& F, const BilinearProgram& bp);
Program emit_inplace_2d(const Field& F, const BilinearProgram& bp);

std::string format_program(const Field& F, const Program& p);
Program parse_program(const Field& F, const std::string& text);

// scalar execution; a Recurse pair gets (x*y, 0)
void exec_program(const Program& p, const View& x, const View& y, const View& z);

// zwin is z_k (1D) or the window over (z_k, z_{k+1}) of size 2*bs - 1 (2D)
using BlockProduct = std::function<void(const View& zwin, const View& x, const View& y, int sign)>;
// x_i, y_j, z_k are blocks of bs entries; in 2D z carries a trailing block of bs - 1
void exec_blocks(const Program& p, const View& x, const View& y, const View& z, std::size_t bs,
                 const BlockProduct& prod);

// Square n x n window over arena registers, row-major with leading dimension ld.
class MatrixDense {
 public:
  MatrixDense(Arena& a, std::size_t origin, std::size_t n, std::size_t ld)
      : a_(&a), origin_(origin), n_(n), ld_(ld) {}
  MatrixDense(Arena& a, Region r, std::size_t n);
  std::size_t dim() const { return n_; }
  Arena& arena() const { return *a_; }
  View row(std::size_t i) const { return a_->view(origin_ + i * ld_, origin_ + i * ld_ + n_); }
  MatrixDense quad(std::size_t i, std::size_t j) const {
    std::size_t h = n_ / 2;
    return MatrixDense(*a_, origin_ + i * h * ld_ + j * h, h, ld_);
  }
  elem get(std::size_t i, std::size_t j) const { return a_->read(origin_ + i * ld_ + j); }

 private:
  Arena* a_;
  std::size_t origin_, n_, ld_;
};

// Z += X*Y in constant space; X and Y are restored
void strassen_cs(const MatrixDense& X, const MatrixDense& Y, const MatrixDense& Z);

}  // namespace ipa
