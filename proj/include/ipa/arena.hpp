#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ipa/error.hpp"
#include "ipa/field.hpp"

namespace ipa {

enum class Perm : std::uint8_t { InputOnly, OutputOnly, InOut, Scratch };
enum class Model : std::uint8_t { RoRw, RwRw };

const char* perm_name(Perm p);

struct SpaceMetrics {
  std::size_t extra_algebraic_highwater = 0;  // distinct Scratch registers written
  std::size_t temp_highwater = 0;             // declared scalar temporaries live at once
  std::size_t pointer_depth_highwater = 0;
  u64 base_products = 0;
  u64 field_ops = 0;

  // per-op constant: must not grow with n for constant-space routines
  std::size_t k_op() const { return extra_algebraic_highwater + temp_highwater; }
};

// Strided raw window, obtained after a single range/permission check.
template <class T>
struct Span {
  T* p = nullptr;
  std::ptrdiff_t st = 1;
  std::size_t n = 0;
  T& operator[](std::size_t i) const { return p[st * std::ptrdiff_t(i)]; }
  std::size_t size() const { return n; }
};
using WSpan = Span<elem>;
using RSpan = Span<const elem>;

class View;
class ScratchLease;

struct Region {
  std::size_t lo = 0, hi = 0;
  std::size_t size() const { return hi - lo; }
};

class Arena {
 public:
  Arena(const Field& F, std::vector<elem> values, std::vector<Perm> perms, Model model,
        std::size_t scratch_pool = 0);
  Arena(const Arena&) = delete;
  Arena& operator=(const Arena&) = delete;

  const Field& field() const { return F_; }
  Model model() const { return model_; }
  std::size_t size() const { return regs_.size(); }
  Perm perm(std::size_t i) const { return perms_.at(i); }

  elem read(std::size_t i) const {
    if (i >= regs_.size()) throw Error(Errc::OutOfRange);
    return regs_[i];
  }
  void write(std::size_t i, elem v) {
    if (i >= regs_.size()) throw Error(Errc::OutOfRange);
    check_one(i);
    regs_[i] = v;
  }

  // Range-checked raw access. Write spans are permission-checked and mark scratch.
  elem* raw_write(std::size_t lo, std::size_t hi);
  const elem* raw_read(std::size_t lo, std::size_t hi) const;

  View view(std::size_t lo, std::size_t hi);
  View view(Region r);
  std::vector<elem> values(Region r) const;
  std::vector<elem> values(std::size_t lo, std::size_t hi) const;

  ScratchLease scratch(std::size_t k);
  std::size_t scratch_available() const { return pool_hi_ - pool_top_; }

  const SpaceMetrics& metrics() const { return m_; }
  void reset_metrics();

  void enter_call() {
    if (++depth_ > m_.pointer_depth_highwater) m_.pointer_depth_highwater = depth_;
  }
  void exit_call() {
    if (depth_ == 0) throw Error(Errc::UnderflowExit);
    --depth_;
  }
  std::size_t depth() const { return depth_; }

  void temps_acquire(std::size_t k) {
    temps_ += k;
    if (temps_ > m_.temp_highwater) m_.temp_highwater = temps_;
  }
  void temps_release(std::size_t k) { temps_ -= k; }

  void count_ops(u64 k) { m_.field_ops += k; }
  void count_base_product() { ++m_.base_products; }

  std::string dump() const;

 private:
  friend class ScratchLease;

  void check_one(std::size_t i) {
    Perm p = perms_[i];
    if (p == Perm::InputOnly && model_ == Model::RoRw) throw Error(Errc::PermissionDenied);
    if (p == Perm::Scratch && !touched_[i]) {
      touched_[i] = 1;
      ++m_.extra_algebraic_highwater;
    }
  }

  const Field& F_;
  Model model_;
  std::vector<elem> regs_;
  std::vector<Perm> perms_;
  std::vector<std::uint8_t> touched_;
  std::vector<std::size_t> input_prefix_, scratch_prefix_;
  std::size_t pool_lo_ = 0, pool_top_ = 0, pool_hi_ = 0;
  std::size_t depth_ = 0, temps_ = 0;
  SpaceMetrics m_;
};

// Window into an arena: logical index i maps to register origin + step*i.
// Logical indices outside [rlo, rhi) are fake padding: they read as 0 and reject writes.
class View {
 public:
  View() = default;
  View(Arena* a, std::size_t lo, std::size_t hi)
      : a_(a), origin_(std::int64_t(lo)), len_(hi - lo), rlo_(0), rhi_(hi - lo) {}

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }
  bool real() const { return rlo_ == 0 && rhi_ == len_; }
  std::size_t real_lo() const { return rlo_; }
  std::size_t real_hi() const { return rhi_; }
  int step() const { return step_; }
  Arena& arena() const { return *a_; }
  const Field& field() const { return a_->field(); }

  elem get(std::size_t i) const {
    if (i >= rlo_ && i < rhi_) return a_->read(reg(i));
    if (i >= len_) throw Error(Errc::OutOfRange);
    return 0;
  }
  elem operator[](std::size_t i) const { return get(i); }

  void set(std::size_t i, elem v) const {
    if (i >= rlo_ && i < rhi_) return a_->write(reg(i), v);
    throw Error(i >= len_ ? Errc::OutOfRange : Errc::PaddingWrite);
  }
  void add(std::size_t i, elem v) const { set(i, field().add(get(i), v)); }
  void sub(std::size_t i, elem v) const { set(i, field().sub(get(i), v)); }

  View slice(std::size_t lo, std::size_t hi) const;
  View take(std::size_t n) const { return slice(0, n); }
  View drop(std::size_t k) const { return slice(k, len_); }
  View rev() const;
  View pad(std::size_t front, std::size_t back) const;
  // logical window [lo, lo+len) with padding wherever it leaves [0, size)
  View window(std::int64_t lo, std::size_t len) const;

  // Raw spans need a fully real view.
  WSpan wspan() const;
  RSpan rspan() const;

  std::vector<elem> to_vector() const;
  // register index of a logical position (may be virtual for padding)
  std::int64_t reg_of(std::size_t i) const { return origin_ + step_ * std::int64_t(i); }

 private:
  std::size_t reg(std::size_t i) const { return std::size_t(origin_ + step_ * std::int64_t(i)); }

  Arena* a_ = nullptr;
  std::int64_t origin_ = 0;
  int step_ = 1;
  std::size_t len_ = 0;
  std::size_t rlo_ = 0, rhi_ = 0;
};

// Stack-ordered lease on the arena's scratch pool.
class ScratchLease {
 public:
  ScratchLease(Arena& a, std::size_t k);
  ~ScratchLease();
  ScratchLease(const ScratchLease&) = delete;
  ScratchLease& operator=(const ScratchLease&) = delete;
  const View& view() const { return v_; }
  operator const View&() const { return v_; }

 private:
  Arena& a_;
  std::size_t lo_, k_;
  View v_;
};

struct CallFrame {
  explicit CallFrame(Arena& a) : a_(a) { a_.enter_call(); }
  ~CallFrame() { a_.exit_call(); }
  CallFrame(const CallFrame&) = delete;
  CallFrame& operator=(const CallFrame&) = delete;
  Arena& a_;
};

// Declares k scalar field temporaries for the current scope.
struct TempScope {
  TempScope(Arena& a, std::size_t k) : a_(a), k_(k) { a_.temps_acquire(k); }
  ~TempScope() { a_.temps_release(k_); }
  TempScope(const TempScope&) = delete;
  TempScope& operator=(const TempScope&) = delete;
  Arena& a_;
  std::size_t k_;
};

// Lays out named regions then builds the arena.
class ArenaBuilder {
 public:
  ArenaBuilder(const Field& F, Model model) : F_(F), model_(model) {}
  Region add(const std::vector<elem>& vals, Perm p);
  Region zeros(std::size_t n, Perm p) { return add(std::vector<elem>(n, 0), p); }
  Arena build(std::size_t scratch_pool = 0);

 private:
  const Field& F_;
  Model model_;
  std::vector<elem> vals_;
  std::vector<Perm> perms_;
};

}  // namespace ipa
