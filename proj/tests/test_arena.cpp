#include <doctest.h>

#include "helpers.hpp"

using namespace ipa;

namespace {
Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ParseError;  // sentinel: nothing thrown
}
}  // namespace

TEST_CASE("arena creation and permissions") {
  Field F(97);
  Arena empty(F, {}, {}, Model::RwRw);
  CHECK(empty.size() == 0);
  CHECK(code_of([&] { Arena bad(F, {1, 2}, {Perm::InOut}, Model::RwRw); }) == Errc::LengthMismatch);

  Arena a(F, {1, 2, 3}, {Perm::InputOnly, Perm::InputOnly, Perm::OutputOnly}, Model::RoRw);
  CHECK(code_of([&] { a.write(0, 5); }) == Errc::PermissionDenied);
  CHECK(code_of([&] { a.write(1, 5); }) == Errc::PermissionDenied);
  a.write(2, 5);
  CHECK(a.read(2) == 5);
  CHECK(code_of([&] { a.read(3); }) == Errc::OutOfRange);
  CHECK(code_of([&] { a.view(0, 2).wspan(); }) == Errc::PermissionDenied);

  Arena b(F, {1, 2, 3}, {Perm::InputOnly, Perm::InputOnly, Perm::OutputOnly}, Model::RwRw);
  b.write(0, 7);
  CHECK(b.read(0) == 7);
}

TEST_CASE("scratch high-water counts distinct registers") {
  Field F(97);
  Arena a(F, {0, 0, 0, 0, 0}, {Perm::InOut, Perm::InOut, Perm::InOut, Perm::Scratch, Perm::Scratch}, Model::RoRw);
  CHECK(a.metrics().extra_algebraic_highwater == 0);
  a.write(0, 1);
  CHECK(a.metrics().extra_algebraic_highwater == 0);
  a.write(3, 1);
  a.write(3, 2);
  CHECK(a.metrics().extra_algebraic_highwater == 1);
  a.write(4, 1);
  CHECK(a.metrics().extra_algebraic_highwater == 2);
  {
    ScratchLease s(a, 2);
    CHECK(s.view().size() == 2);
    CHECK(code_of([&] { ScratchLease t(a, 1); }) == Errc::ScratchExhausted);
  }
  ScratchLease again(a, 2);
}

TEST_CASE("views: plain, reversed, padded") {
  Field F(97);
  Arena a(F, {3, 5, 2}, {Perm::InOut, Perm::InOut, Perm::InOut}, Model::RwRw);
  View v = a.view(0, 3);
  CHECK(v.to_vector() == Poly{3, 5, 2});
  CHECK(v.rev().to_vector() == Poly{2, 5, 3});
  View p = v.pad(0, 2);
  CHECK(p.to_vector() == Poly{3, 5, 2, 0, 0});
  CHECK(code_of([&] { p.set(4, 1); }) == Errc::PaddingWrite);
  CHECK(code_of([&] { p.get(5); }) == Errc::OutOfRange);
  View fp = v.pad(2, 1);
  CHECK(fp.to_vector() == Poly{0, 0, 3, 5, 2, 0});
  CHECK(fp.rev().to_vector() == Poly{0, 2, 5, 3, 0, 0});
  CHECK(fp.slice(1, 4).to_vector() == Poly{0, 3, 5});
  CHECK(fp.rev().slice(1, 3).rev().to_vector() == Poly{5, 2});
  CHECK(v.window(-2, 4).to_vector() == Poly{0, 0, 3, 5});
  CHECK(v.window(2, 3).to_vector() == Poly{2, 0, 0});
  CHECK(v.window(5, 2).to_vector() == Poly{0, 0});
  CHECK(v.window(-4, 2).to_vector() == Poly{0, 0});
  CHECK(v.rev().window(-1, 3).to_vector() == Poly{0, 2, 5});
  fp.rev().set(1, 9);
  CHECK(a.read(2) == 9);
  CHECK(code_of([&] { a.view(2, 4); }) == Errc::BadRange);
  CHECK(code_of([&] { v.slice(2, 1); }) == Errc::BadRange);
}

TEST_CASE("call depth tracking") {
  Field F(97);
  Arena a(F, {}, {}, Model::RwRw);
  CHECK(a.metrics().pointer_depth_highwater == 0);
  a.enter_call();
  a.enter_call();
  a.exit_call();
  CHECK(a.metrics().pointer_depth_highwater == 2);
  a.exit_call();
  CHECK(code_of([&] { a.exit_call(); }) == Errc::UnderflowExit);
  for (int k = 0; k < 5; ++k) a.enter_call();
  CHECK(a.metrics().pointer_depth_highwater == 5);
}

TEST_CASE("dump format") {
  Field F(97);
  Arena a(F, {4, 100}, {Perm::InputOnly, Perm::Scratch}, Model::RoRw);
  CHECK(a.dump() == "0\tInputOnly\t4\n1\tScratch\t3\n");
}

TEST_CASE("poly text format") {
  Field F(97);
  CHECK(format_poly(F, {3, 10, 8}) == "97;3,10,8");
  CHECK(parse_coeffs(F, "1,-1, 2") == Poly{1, 96, 2});
  u64 q = 0;
  CHECK(parse_poly("97;1,2", &q) == Poly{1, 2});
  CHECK(q == 97);
  CHECK_THROWS_AS(parse_coeffs(F, "1,x"), Error);
}
