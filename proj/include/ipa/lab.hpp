#pragma once

#include <optional>
#include <vector>

#include "ipa/arena.hpp"
#include "ipa/poly.hpp"

namespace ipa {

// Lays out named operands, builds one arena, hands out views.
class Lab {
 public:
  explicit Lab(const Field& F, Model m = Model::RoRw) : F_(F), m_(m) {}

  std::size_t in(const Poly& p) { return add(p, m_ == Model::RoRw ? Perm::InputOnly : Perm::InOut); }
  std::size_t out(std::size_t n) { return add(Poly(n, 0), Perm::InOut); }
  std::size_t out(const Poly& init) { return add(init, Perm::InOut); }
  std::size_t add(const Poly& p, Perm perm) {
    regs_.push_back({vals_.size(), vals_.size() + p.size()});
    vals_.insert(vals_.end(), p.begin(), p.end());
    perms_.insert(perms_.end(), p.size(), perm);
    return regs_.size() - 1;
  }
  Arena& build(std::size_t pool = 0) {
    a_.emplace(F_, vals_, perms_, m_, pool);
    return *a_;
  }

  Arena& arena() { return *a_; }
  View v(std::size_t i) { return a_->view(regs_[i]); }
  Region region(std::size_t i) const { return regs_[i]; }
  Poly get(std::size_t i) const { return a_->values(regs_[i]); }
  const SpaceMetrics& metrics() const { return a_->metrics(); }

 private:
  const Field& F_;
  Model m_;
  std::vector<elem> vals_;
  std::vector<Perm> perms_;
  std::vector<Region> regs_;
  std::optional<Arena> a_;
};

}  // namespace ipa
