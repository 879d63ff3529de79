#include <doctest.h>

#include "factoria/cube.hpp"
#include "factoria/examples.hpp"

using namespace factoria;

namespace {
const FieldSpec F101 = FieldSpec::prime(101);
const FieldSpec Q = FieldSpec::rationals();

RingData quantum(int n) {
  return RingData::make_uniform(F101, n, Scalar(F101, 5), std::vector<int>(n, 2));
}

PolyMatrix one_by_one(const QPoly& p) {
  PolyMatrix m(1, 1);
  m.at(0, 0) = p;
  return m;
}

FactorCube xx_cube(const FieldSpec& f) {
  RingData r = RingData::make_commutative(f, {2});
  return cube_1d(r, canonical_type(r), one_by_one(r.var(0)), one_by_one(r.var(0)));
}
}  // namespace

TEST_CASE("two-dimensional example verifies") {
  for (FieldSpec f : {Q, FieldSpec::prime(7)}) {
    CHECK(verify_cube(example_ci2(f, parse_coefficients(f, "0,0,1"))).pass);
    CHECK(verify_cube(example_ci2(f, parse_coefficients(f, "0,0,0,1"))).pass);
    CHECK(verify_cube(example_ci2(f, parse_coefficients(f, "1,1,1"))).pass);
  }
  RingData r = RingData::make_commutative(Q, {2, 2});
  CHECK(divided_difference(r, parse_coefficients(Q, "0,0,1")) == r.var(0) + r.var(1));
}

TEST_CASE("corrupting one edge of the example is detected") {
  FactorCube x = example_ci2(Q, parse_coefficients(Q, "0,0,1"));
  x.edge(1, 3).at(0, 1) = x.edge(1, 3).at(0, 1) + x.ring.one();
  CheckReport rep = verify_cube(x);
  CHECK_FALSE(rep.pass);
  CHECK(rep.check == "(E1)");
  CHECK(rep.where == "direction 2 at base 10");
  CheckReport ser = verify_cube_serial(x);
  CHECK(ser.check == rep.check);
  CHECK(ser.where == rep.where);
}

TEST_CASE("theta objects verify") {
  for (int n = 1; n <= 3; ++n) {
    RingData rs[2] = {RingData::make_commutative(F101, std::vector<int>(n, 2)), quantum(n)};
    for (const RingData& r : rs)
      for (unsigned beta = 0; beta < (1u << n); ++beta)
        CHECK(verify_cube(theta_cube(beta, 2, r, canonical_type(r))).pass);
  }
  RingData r1 = RingData::make_commutative(Q, {2});
  FactorCube t0 = theta_cube(0, 1, r1, canonical_type(r1));
  CHECK(t0.edge(0, 0).at(0, 0) == r1.one());
  CHECK(t0.edge(0, 1).at(0, 0) == r1.omega[0]);
  FactorCube t1 = theta_cube(1, 1, r1, canonical_type(r1));
  CHECK(t1.edge(0, 0).at(0, 0) == r1.omega[0]);
  CHECK(t1.edge(0, 1).at(0, 0) == r1.one());
}

TEST_CASE("quantum theta^11 has exactly one scaled edge pair") {
  RingData r = quantum(2);
  FactorCube t = theta_cube(3, 1, r, canonical_type(r));
  int scaled = 0;
  for (int i = 0; i < 2; ++i)
    for (unsigned a = 0; a < 4; ++a) {
      const QPoly& e = t.edge(i, a).at(0, 0);
      if (!e.terms()[0].c.is_one()) ++scaled;
    }
  CHECK(scaled == 2);  // base and wrap of one direction at one base vertex
}

TEST_CASE("naive quantum cube fails the first square") {
  RingData r = quantum(2);
  FactorCube x = FactorCube::zero(r, canonical_type(r), 2);
  std::fill(x.ranks.begin(), x.ranks.end(), 1);
  for (int i = 0; i < 2; ++i)
    for (unsigned a = 0; a < 4; ++a) x.edge(i, a) = one_by_one((a >> i & 1u) ? r.one() : r.omega[i]);
  CheckReport rep = verify_cube(x);
  CHECK_FALSE(rep.pass);
  CHECK(rep.check == "(S1)");
}

TEST_CASE("shift") {
  RingData r = quantum(1);
  TypeData t = canonical_type(r);
  CHECK(shift_1d(theta_cube(1, 1, r, t)).edges == theta_cube(0, 1, r, t).edges);
  CHECK(verify_cube(shift_1d(theta_cube(0, 1, r, t))).pass);
  CHECK_THROWS(shift_1d(theta_cube(0, 1, quantum(2), canonical_type(quantum(2)))));
}

TEST_CASE("twist and the omega morphism") {
  RingData r = quantum(2);
  TypeData t = canonical_type(r);
  Rng rng(7);
  FactorCube x = random_gauge(direct_sum(theta_cube(1, 1, r, t), theta_cube(2, 1, r, t)), rng);
  REQUIRE(verify_cube(x).pass);
  for (int i = 0; i < 2; ++i) {
    FactorCube y = twist_cube(x, i);
    CHECK(verify_cube(y).pass);
    CubeMorphism f{x, y, {}};
    for (unsigned a = 0; a < 4; ++a) f.comps.push_back(PolyMatrix::diagonal(x.omega(i), x.ranks[a]));
    CHECK(verify_morphism(f).pass);
  }
  FactorCube c = example_ci2(Q, parse_coefficients(Q, "0,0,1"));
  CHECK(twist_cube(c, 0).edges == c.edges);
}

TEST_CASE("direct sums, gauges and swaps preserve verification") {
  RingData r = RingData::make_commutative(Q, {2, 2});
  TypeData t = canonical_type(r);
  FactorCube c = example_ci2(Q, parse_coefficients(Q, "0,0,1"));
  FactorCube s = direct_sum(c, theta_cube(1, 1, c.ring, c.type));
  CHECK(verify_cube(s).pass);
  CHECK(s.ranks[0] == 3);
  Rng rng(3);
  CHECK(verify_cube(random_gauge(s, rng, 2, 4)).pass);
  CHECK(verify_cube(swap_directions(c, 0, 1)).pass);
  CHECK(verify_cube(facet(c, 0, 1)).pass);
  CHECK(facet(c, 1, 1).dim == 1);
  (void)t;
}

TEST_CASE("morphisms") {
  FactorCube c = example_ci2(Q, parse_coefficients(Q, "0,0,1"));
  CubeMorphism id = identity_morphism(c);
  CHECK(verify_morphism(id).pass);
  id.comps[2].at(0, 0) = id.comps[2].at(0, 0) + c.ring.var(0);
  CHECK_FALSE(verify_morphism(id).pass);
}

TEST_CASE("theta inclusion and projection are morphisms") {
  RingData r = quantum(3);
  TypeData t = canonical_type(r);
  Rng rng(11);
  FactorCube x = random_gauge(direct_sum(theta_cube(5, 1, r, t), theta_cube(2, 1, r, t)), rng);
  REQUIRE(verify_cube(x).pass);
  for (unsigned beta = 0; beta < 8; ++beta) {
    PolyMatrix g(1, 2), h(2, 1);
    g.at(0, 0) = random_poly(r, rng, 2, 3);
    g.at(0, 1) = random_poly(r, rng, 2, 3);
    h.at(0, 0) = random_poly(r, rng, 2, 3);
    h.at(1, 0) = random_poly(r, rng, 2, 3);
    CHECK(verify_morphism(theta_inclusion(x, beta, g)).pass);
    CHECK(verify_morphism(theta_projection(x, beta, h)).pass);
  }
}

TEST_CASE("homotopy examples") {
  RingData r = RingData::make_commutative(Q, {2});
  TypeData t = canonical_type(r);
  FactorCube t0 = theta_cube(0, 1, r, t);
  auto cert = homotopy_solve(identity_morphism(t0));
  REQUIRE(cert.has_value());
  CHECK(verify_homotopy(identity_morphism(t0), *cert));
  CHECK(cert->s[1] == PolyMatrix::identity(r, 1));
  CHECK(cert->s[0].is_zero());

  FactorCube x = xx_cube(Q);
  for (int d = 0; d <= 6; ++d) CHECK_FALSE(homotopy_solve(identity_morphism(x), d).has_value());

  FactorCube c = example_ci2(Q, parse_coefficients(Q, "0,0,1"));
  CHECK_FALSE(homotopy_solve(identity_morphism(c)).has_value());
  FactorCube th = theta_cube(1, 1, c.ring, c.type);
  CHECK(homotopy_solve(identity_morphism(th)).has_value());
  RingData q2 = quantum(2);
  CHECK_THROWS_AS(homotopy_solve(identity_morphism(theta_cube(0, 1, q2, canonical_type(q2)))), UnsupportedConfiguration);
}

TEST_CASE("projective test") {
  for (int n = 1; n <= 3; ++n) {
    RingData rs[2] = {RingData::make_commutative(F101, std::vector<int>(n, 2)), quantum(n)};
    for (const RingData& r : rs)
      for (unsigned beta = 0; beta < (1u << n); ++beta)
        CHECK(projective_test(theta_cube(beta, 2, r, canonical_type(r))).verdict == ProjectiveVerdict::projective);
  }
  FactorCube x = xx_cube(Q);
  CHECK(projective_test(x).verdict == ProjectiveVerdict::not_projective);
  ProjectiveResult s = projective_test(direct_sum(theta_cube(0, 1, x.ring, x.type), x));
  CHECK(s.verdict == ProjectiveVerdict::not_projective);
  CHECK(s.reduced.ranks == std::vector<size_t>{1, 1});
  CHECK(s.splits.size() == 1);
  RingData r = quantum(2);
  Rng rng(5);
  FactorCube g = random_gauge(direct_sum(theta_cube(1, 2, r, canonical_type(r)), theta_cube(3, 1, r, canonical_type(r))), rng);
  CHECK(projective_test(g).verdict == ProjectiveVerdict::projective);
}

TEST_CASE("mf0 membership") {
  FactorCube c = example_ci2(Q, parse_coefficients(Q, "0,0,1"));
  CHECK(mf0_membership(c).member());
  FactorCube c3 = example_ci2(Q, parse_coefficients(Q, "0,0,0,1"));
  CHECK(mf0_membership(c3).member());
  CHECK(mf0_membership(theta_cube(3, 2, c.ring, c.type)).member());
  // theta^{(1,0)}: the facet alpha_1 = 1 is theta^0 in direction 2, the facet
  // alpha_2 = 1 is theta^1 in direction 1, both projective.
  CHECK(mf0_membership(theta_cube(1, 1, c.ring, c.type)).member());
}
