#include "ipa/arena.hpp"

#include <algorithm>
#include <sstream>

namespace ipa {

const char* perm_name(Perm p) {
  switch (p) {
    case Perm::InputOnly: return "InputOnly";
    case Perm::OutputOnly: return "OutputOnly";
    case Perm::InOut: return "InOut";
    case Perm::Scratch: return "Scratch";
  }
  return "?";
}

Arena::Arena(const Field& F, std::vector<elem> values, std::vector<Perm> perms, Model model,
             std::size_t scratch_pool)
    : F_(F), model_(model), regs_(std::move(values)), perms_(std::move(perms)) {
  require(regs_.size() == perms_.size(), Errc::LengthMismatch);
  for (auto& v : regs_) v %= F_.q();
  pool_lo_ = regs_.size();
  regs_.resize(regs_.size() + scratch_pool, 0);
  perms_.resize(regs_.size(), Perm::Scratch);
  // an existing trailing run of Scratch registers joins the pool
  while (pool_lo_ > 0 && perms_[pool_lo_ - 1] == Perm::Scratch) --pool_lo_;
  pool_top_ = pool_lo_;
  pool_hi_ = regs_.size();
  touched_.assign(regs_.size(), 0);
  input_prefix_.assign(regs_.size() + 1, 0);
  scratch_prefix_.assign(regs_.size() + 1, 0);
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    input_prefix_[i + 1] = input_prefix_[i] + (perms_[i] == Perm::InputOnly);
    scratch_prefix_[i + 1] = scratch_prefix_[i] + (perms_[i] == Perm::Scratch);
  }
}

elem* Arena::raw_write(std::size_t lo, std::size_t hi) {
  if (lo > hi || hi > regs_.size()) throw Error(Errc::OutOfRange);
  if (model_ == Model::RoRw && input_prefix_[hi] != input_prefix_[lo])
    throw Error(Errc::PermissionDenied);
  if (scratch_prefix_[hi] != scratch_prefix_[lo])
    for (std::size_t i = lo; i < hi; ++i)
      if (perms_[i] == Perm::Scratch && !touched_[i]) {
        touched_[i] = 1;
        ++m_.extra_algebraic_highwater;
      }
  return regs_.data() + lo;
}

const elem* Arena::raw_read(std::size_t lo, std::size_t hi) const {
  if (lo > hi || hi > regs_.size()) throw Error(Errc::OutOfRange);
  return regs_.data() + lo;
}

View Arena::view(std::size_t lo, std::size_t hi) {
  if (lo > hi || hi > regs_.size()) throw Error(Errc::BadRange);
  return View(this, lo, hi);
}

View Arena::view(Region r) { return view(r.lo, r.hi); }

std::vector<elem> Arena::values(std::size_t lo, std::size_t hi) const {
  if (lo > hi || hi > regs_.size()) throw Error(Errc::BadRange);
  return {regs_.begin() + std::ptrdiff_t(lo), regs_.begin() + std::ptrdiff_t(hi)};
}

std::vector<elem> Arena::values(Region r) const { return values(r.lo, r.hi); }

ScratchLease Arena::scratch(std::size_t k) { return ScratchLease(*this, k); }

void Arena::reset_metrics() {
  m_ = SpaceMetrics{};
  std::fill(touched_.begin(), touched_.end(), 0);
  depth_ = 0;
  temps_ = 0;
}

std::string Arena::dump() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < regs_.size(); ++i)
    os << i << '\t' << perm_name(perms_[i]) << '\t' << regs_[i] << '\n';
  return os.str();
}

ScratchLease::ScratchLease(Arena& a, std::size_t k) : a_(a), lo_(a.pool_top_), k_(k) {
  if (a_.pool_hi_ - a_.pool_top_ < k) throw Error(Errc::ScratchExhausted);
  a_.pool_top_ += k;
  v_ = a_.view(lo_, lo_ + k);
}

ScratchLease::~ScratchLease() { a_.pool_top_ = lo_; }

View View::slice(std::size_t lo, std::size_t hi) const {
  if (lo > hi || hi > len_) throw Error(Errc::BadRange);
  View v = *this;
  v.origin_ = reg_of(lo);
  v.len_ = hi - lo;
  std::size_t a = std::max(rlo_, lo), b = std::min(rhi_, hi);
  if (a >= b) a = b = 0;
  else a -= lo, b -= lo;
  v.rlo_ = a;
  v.rhi_ = b;
  return v;
}

View View::rev() const {
  View v = *this;
  v.origin_ = reg_of(len_ == 0 ? 0 : len_ - 1);
  v.step_ = -step_;
  v.rlo_ = rhi_ > rlo_ ? len_ - rhi_ : 0;
  v.rhi_ = rhi_ > rlo_ ? len_ - rlo_ : 0;
  return v;
}

View View::pad(std::size_t front, std::size_t back) const {
  View v = *this;
  v.origin_ = origin_ - step_ * std::int64_t(front);
  v.len_ = len_ + front + back;
  if (rhi_ > rlo_) {
    v.rlo_ = rlo_ + front;
    v.rhi_ = rhi_ + front;
  }
  return v;
}

View View::window(std::int64_t lo, std::size_t len) const {
  std::int64_t n = std::int64_t(len_);
  std::int64_t a = std::clamp<std::int64_t>(lo, 0, n);
  std::int64_t b = std::clamp<std::int64_t>(lo + std::int64_t(len), 0, n);
  if (b < a) b = a;
  std::size_t front = lo < 0 ? std::size_t(std::min<std::int64_t>(-lo, std::int64_t(len))) : 0;
  View v = slice(std::size_t(a), std::size_t(b));
  return v.pad(front, len - front - v.size());
}

WSpan View::wspan() const {
  if (!real()) throw Error(Errc::PaddingWrite);
  if (len_ == 0) return {};
  std::size_t first = reg(0), last = reg(len_ - 1);
  std::size_t lo = std::min(first, last), hi = std::max(first, last) + 1;
  elem* base = a_->raw_write(lo, hi);
  return {base + (first - lo), step_, len_};
}

RSpan View::rspan() const {
  if (!real()) throw Error(Errc::BadRange);
  if (len_ == 0) return {};
  std::size_t first = reg(0), last = reg(len_ - 1);
  std::size_t lo = std::min(first, last), hi = std::max(first, last) + 1;
  const elem* base = a_->raw_read(lo, hi);
  return {base + (first - lo), step_, len_};
}

std::vector<elem> View::to_vector() const {
  std::vector<elem> out(len_);
  for (std::size_t i = 0; i < len_; ++i) out[i] = get(i);
  return out;
}

Region ArenaBuilder::add(const std::vector<elem>& vals, Perm p) {
  Region r{vals_.size(), vals_.size() + vals.size()};
  vals_.insert(vals_.end(), vals.begin(), vals.end());
  perms_.insert(perms_.end(), vals.size(), p);
  return r;
}

Arena ArenaBuilder::build(std::size_t scratch_pool) {
  return Arena(F_, vals_, perms_, model_, scratch_pool);
}

}  // namespace ipa
