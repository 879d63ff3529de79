#include <doctest.h>

#include "factoria/kmatrix.hpp"
#include "factoria/scalar.hpp"

using namespace factoria;

TEST_CASE("rational field ops") {
  FieldSpec q = FieldSpec::rationals();
  Scalar a = Scalar::parse(q, "1/2"), b = Scalar::parse(q, "1/3");
  CHECK((a + b).str() == "5/6");
  CHECK(field_ops(a, b, FieldOp::sub).str() == "1/6");
  CHECK((Scalar::parse(q, "4/6")).str() == "2/3");
  CHECK((Scalar::parse(q, "-3/-9")).str() == "1/3");
  CHECK_THROWS_AS(a / Scalar::zero(q), FieldError);
}

TEST_CASE("prime field ops") {
  FieldSpec f = FieldSpec::prime(7);
  CHECK((Scalar(f, 3) * Scalar(f, 5)).residue() == 1);
  CHECK((Scalar(f, -1)).residue() == 6);
  CHECK(Scalar(f, 3).inv() == Scalar(f, 5));
  CHECK_THROWS_AS(Scalar(f, 3) + Scalar(FieldSpec::prime(11), 3), FieldError);
  CHECK_THROWS(FieldSpec::prime(9));
  for (long v = 1; v < 7; ++v) CHECK((Scalar(f, v) / Scalar(f, v)).is_one());
}

TEST_CASE("fermat and egcd inverses agree") {
  for (uint32_t a = 1; a < 101; ++a) CHECK(inv_mod_fermat(a, 101) == inv_mod_egcd(a, 101));
}

TEST_CASE("k_solve examples") {
  FieldSpec q = FieldSpec::rationals();
  auto id = k_solve(KMatrix::identity(q, 3));
  CHECK(id.rank == 3);
  CHECK(id.nullspace.cols() == 0);
  auto z = k_solve(KMatrix(q, 2, 3));
  CHECK(z.rank == 0);
  CHECK(z.nullspace.cols() == 3);
  KMatrix m(q, 2, 2);
  m.at(0, 0) = Scalar(q, 1);
  m.at(0, 1) = Scalar(q, 2);
  m.at(1, 0) = Scalar(q, 2);
  m.at(1, 1) = Scalar(q, 4);
  auto r = k_solve(m);
  CHECK(r.rank == 1);
  CHECK((m * r.nullspace).is_zero());
  KMatrix t(q, 2, 1);
  t.at(0, 0) = Scalar(q, 1);
  CHECK_FALSE(k_solve(m, &t).solution.has_value());
  t.at(1, 0) = Scalar(q, 2);
  auto s = k_solve(m, &t);
  REQUIRE(s.solution.has_value());
  CHECK(m * *s.solution == t);
}

TEST_CASE("parallel and serial rref agree") {
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(101)}) {
    KMatrix m(f, 5, 6);
    for (size_t i = 0; i < 5; ++i)
      for (size_t j = 0; j < 6; ++j) m.at(i, j) = Scalar(f, static_cast<long>((i * 7 + j * j * 3) % 5) - 2);
    CHECK(rref(m).reduced == rref_serial(m).reduced);
    CHECK(rref(m).pivots == rref_serial(m).pivots);
  }
}
