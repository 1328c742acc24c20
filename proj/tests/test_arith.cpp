#include "adicomp/arith.hpp"
#include "adicomp/error.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace adicomp;

namespace {

RingSpec qxy() { return RingSpec::polynomial(RingSpec::rationals(), {"x", "y"}); }

ErrorCode code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::TaskError;
}

} // namespace

TEST_CASE("make_ring validates descriptions") {
  RingDescription z;
  CHECK(make_ring(z).kind() == RingKind::Integers);

  RingDescription base;
  base.kind = RingKind::Rationals;
  RingDescription q;
  q.kind = RingKind::Polynomial;
  q.base = std::make_shared<RingDescription>(base);
  q.vars = {"x", "y"};
  q.order = MonoOrder::GrLex;
  CHECK(make_ring(q).nvars() == 2);

  RingDescription f6;
  f6.kind = RingKind::PrimeField;
  f6.modulus = 6;
  CHECK(code_of([&] { (void)make_ring(f6); }) == ErrorCode::InvalidRing);

  q.vars = {"x", "x"};
  CHECK(code_of([&] { (void)make_ring(q); }) == ErrorCode::InvalidRing);

  CHECK(code_of([] { (void)RingSpec::power_series(RingSpec::rationals(), "t", 0); }) ==
        ErrorCode::InvalidRing);
}

TEST_CASE("elem_op normal forms") {
  RingSpec A = qxy();
  RingElem x = A.variable(0), y = A.variable(1);
  CHECK(elem_op(ElemOp::Mul, x + y, x - y) == A.parse("x^2 - y^2"));

  RingSpec S = RingSpec::power_series(RingSpec::rationals(), "t", 3);
  RingElem t = S.variable(0);
  CHECK(elem_op(ElemOp::Mul, t * t, t).is_zero());

  RingSpec Z = RingSpec::integers();
  CHECK(elem_op(ElemOp::Mul, Z.from_int(2), Z.from_int(3)) == Z.from_int(6));

  CHECK(code_of([&] { (void)elem_op(ElemOp::Add, x, t); }) == ErrorCode::ParentMismatch);
}

TEST_CASE("apply_ring_map substitutes and normalizes") {
  RingSpec Zt = integer_polynomial_ring({"t"});
  RingSpec Z = RingSpec::integers();
  RingMap f(Zt, Z, {Z.from_int(2)});
  CHECK(apply_ring_map(f, Zt.parse("t^2 + t")) == Z.from_int(6));

  RingSpec Qx = RingSpec::polynomial(RingSpec::rationals(), {"x"});
  RingMap g(Zt, Qx, {Qx.parse("x^2")});
  CHECK(apply_ring_map(g, Zt.parse("t + 1")) == Qx.parse("x^2 + 1"));

  RingMap id(Zt, Zt, {Zt.variable(0)});
  CHECK(apply_ring_map(id, Zt.variable(0)) == Zt.variable(0));
}

TEST_CASE("elem_divstep") {
  RingSpec Z = RingSpec::integers();
  DivStep d = elem_divstep(Z.from_int(7), Z.from_int(2));
  CHECK(d.quotient == Z.from_int(3));
  CHECK(d.remainder == Z.from_int(1));

  RingSpec Qx = RingSpec::polynomial(RingSpec::rationals(), {"x"});
  d = elem_divstep(Qx.parse("x^2 - 1"), Qx.parse("x - 1"));
  CHECK(d.quotient == Qx.parse("x + 1"));
  CHECK(d.remainder.is_zero());

  CHECK(code_of([&] { (void)elem_divstep(Qx.variable(0), Qx.zero()); }) ==
        ErrorCode::DivisionByZero);
  CHECK(code_of([] {
          RingSpec A = qxy();
          (void)elem_divstep(A.variable(0), A.variable(1));
        }) == ErrorCode::UnsupportedRing);
}

TEST_CASE("divstep remainder is smaller (property)") {
  testgen::Rng r(11);
  RingSpec Z = RingSpec::integers();
  RingSpec F5x = RingSpec::polynomial(RingSpec::prime_field(5), {"x"});
  for (int it = 0; it < 200; ++it) {
    for (const RingSpec &R : {Z, F5x}) {
      RingElem a = testgen::random_elem(r, R, 4, 4, 50);
      RingElem b = testgen::random_elem(r, R, 2, 3, 9);
      if (b.is_zero()) continue;
      DivStep d = elem_divstep(a, b);
      CHECK(d.quotient * b + d.remainder == a);
      CHECK(euclidean_size(d.remainder) < euclidean_size(b));
    }
  }
}

TEST_CASE("ring axioms on random elements (property)") {
  testgen::Rng r(7);
  std::vector<RingSpec> rings = {
      RingSpec::integers(), RingSpec::prime_field(7), qxy(),
      RingSpec::polynomial(RingSpec::prime_field(5), {"x", "y"}, MonoOrder::Lex),
      RingSpec::power_series(RingSpec::rationals(), "t", 4),
      RingSpec::quotient(integer_polynomial_ring({"x", "y"}), std::vector<std::string>{"2*x", "y^2 - x"}),
  };
  for (const auto &R : rings) {
    for (int it = 0; it < 60; ++it) {
      RingElem a = testgen::random_elem(r, R), b = testgen::random_elem(r, R),
               c = testgen::random_elem(r, R);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + R.zero() == a);
      CHECK(a * R.one() == a);
      CHECK(a - a == R.zero());
      // Normalizing a normal form is the identity.
      CHECK(R.reduce(a.poly()).size() == a.poly().size());
      CHECK(R.make(a.poly()) == a);
    }
  }
}

TEST_CASE("apply_ring_map is a homomorphism (property)") {
  testgen::Rng r(5);
  RingSpec Zst = integer_polynomial_ring({"s", "t"});
  RingSpec T = RingSpec::quotient(qxy(), std::vector<std::string>{"x^2 - y"});
  RingMap f(Zst, T, {T.parse("x + 1"), T.parse("y")});
  for (int it = 0; it < 80; ++it) {
    RingElem a = testgen::random_elem(r, Zst), b = testgen::random_elem(r, Zst);
    CHECK(apply_ring_map(f, a + b) == apply_ring_map(f, a) + apply_ring_map(f, b));
    CHECK(apply_ring_map(f, a * b) == apply_ring_map(f, a) * apply_ring_map(f, b));
  }
  CHECK(apply_ring_map(f, Zst.one()) == T.one());
}

TEST_CASE("parser round trip and errors") {
  RingSpec A = qxy();
  RingElem e = A.parse("(x + 1/2*y)^2 - 3");
  CHECK(A.parse(e.str()) == e);
  CHECK(code_of([&] { (void)A.parse("x +* y"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { (void)A.parse("z"); }) == ErrorCode::ParseError);
}
