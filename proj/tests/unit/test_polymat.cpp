#include <doctest.h>

#include "factoria/polymat.hpp"

using namespace factoria;

namespace {
PolyMatrix m2(const QPoly& a, const QPoly& b, const QPoly& c, const QPoly& d) {
  PolyMatrix m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}
}  // namespace

TEST_CASE("bottom-row product of the 2D example is omega_1 I") {
  RingData r = RingData::make_commutative(FieldSpec::rationals(), {2, 2});
  QPoly x = r.var(0), y = r.var(1), x2 = qp_mul(x, x, r);
  PolyMatrix a = m2(r.one(), {}, x - y, x2), b = m2(x2, {}, y - x, r.one());
  CHECK(pm_mul(a, b, r) == PolyMatrix::diagonal(x2, 2));
  CHECK(pm_mul(a, PolyMatrix::identity(r, 2), r) == a);
  CHECK(pm_mul_serial(a, b, r) == pm_mul(a, b, r));
  CHECK_THROWS(pm_mul(a, PolyMatrix(3, 1), r));
}

TEST_CASE("pm_sigma") {
  FieldSpec f = FieldSpec::prime(101);
  RingData r = RingData::make_uniform(f, 2, Scalar(f, 7), {2, 2});
  TypeData t = canonical_type(r);
  PolyMatrix m(1, 1);
  m.at(0, 0) = r.var(1);
  CHECK(pm_sigma(t.sigmas[0], m).at(0, 0) == r.var(1).scaled(Scalar(f, 49)));
  CHECK(pm_sigma(DiagonalAut::identity(r), m) == m);
}

TEST_CASE("grading inference") {
  RingData r = RingData::make_commutative(FieldSpec::rationals(), {2, 2});
  QPoly x = r.var(0), y = r.var(1);
  auto g = pm_grade_infer(m2(r.one(), {}, x - y, qp_mul(x, x, r)));
  REQUIRE(g.has_value());
  CHECK(g->row_degrees == std::vector<int>{1, 0});
  CHECK(g->col_degrees == std::vector<int>{1, 2});
  auto z = pm_grade_infer(PolyMatrix(2, 2));
  REQUIRE(z.has_value());
  CHECK(z->row_degrees == std::vector<int>{0, 0});
  PolyMatrix inh(1, 1);
  inh.at(0, 0) = r.one() + x;
  CHECK_FALSE(pm_grade_infer(inh).has_value());
}

TEST_CASE("linearization over B") {
  RingData r1 = RingData::make_commutative(FieldSpec::rationals(), {2});
  PolyMatrix m(1, 1);
  m.at(0, 0) = r1.var(0);
  KMatrix k = pm_to_linear_over_B(m, r1);
  REQUIRE(k.rows() == 2);
  CHECK(k.at(0, 1).is_one());
  CHECK(k.at(0, 0).is_zero());
  CHECK(k.at(1, 0).is_zero());
  CHECK(k.at(1, 1).is_zero());
  RingData r2 = RingData::make_commutative(FieldSpec::rationals(), {2, 3});
  CHECK(pm_to_linear_over_B(PolyMatrix::identity(r2, 1), r2) == KMatrix::identity(r2.field, 6));
  RingData l1 = RingData::make_commutative(FieldSpec::rationals(), {1});
  PolyMatrix w(1, 1);
  w.at(0, 0) = l1.omega[0];
  CHECK(k_rank(pm_to_linear_over_B(w, l1)) == 0);
}
