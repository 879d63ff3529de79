#include <doctest.h>

#include "factoria/examples.hpp"
#include "factoria/hmf.hpp"

using namespace factoria;

namespace {
const FieldSpec Q = FieldSpec::rationals();
}

TEST_CASE("extracted shapes") {
  FactorCube ex = example_ci2(Q, parse_coefficients(Q, "0,0,1"));
  HigherMF z = extract_hmf(ex);
  CHECK(z.z0_blocks == std::vector<size_t>{2, 2});
  CHECK(z.z1 == 2);
  CHECK(z.d.rows() == 4);
  CHECK(z.h[1].block(0, 2, 2, 2) == ex.edge(1, 3));
  CHECK(z.h[0].block(0, 2, 2, 2).is_zero());
  RingData q2 = RingData::make_uniform(FieldSpec::prime(101), 2, Scalar(FieldSpec::prime(101), 5), {2, 2});
  CHECK_THROWS_AS(extract_hmf(theta_cube(3, 1, q2, canonical_type(q2))), UnsupportedConfiguration);
}

TEST_CASE("theta^1 passes both conditions") {
  for (int n = 1; n <= 3; ++n) {
    RingData r = RingData::make_commutative(Q, std::vector<int>(n, 2));
    FactorCube t = theta_cube((1u << n) - 1, 2, r, canonical_type(r));
    HigherMF z = extract_hmf(t);
    HmfReport rep = check_hmf_conditions(z);
    CHECK(rep.pass());
    CHECK(hmf_module(z).dim == tcok(t).dim);
  }
  RingData r1 = RingData::make_commutative(Q, {3});
  HmfReport one = check_hmf_conditions(extract_hmf(theta_cube(1, 1, r1, canonical_type(r1))));
  CHECK(one.results.size() == 2);
  CHECK(one.pass());
}

TEST_CASE("corrupted h_2 fails condition 4") {
  RingData r = RingData::make_commutative(Q, {2, 2});
  HigherMF z = extract_hmf(theta_cube(3, 1, r, canonical_type(r)));
  z.h[1].at(0, 1) = z.h[1].at(0, 1) + r.var(1);
  auto f = check_hmf_conditions(z).first_failure();
  REQUIRE(f.has_value());
  CHECK(f->condition == 4);
  CHECK(f->q == 2);
}

TEST_CASE("the two-dimensional example fails condition 5 at q = 2") {
  FactorCube ex = example_ci2(Q, parse_coefficients(Q, "0,0,1"));
  HigherMF z = extract_hmf(ex);
  HmfReport rep = check_hmf_conditions(z);
  auto f = rep.first_failure();
  REQUIRE(f.has_value());
  CHECK(f->condition == 5);
  CHECK(f->q == 2);
  for (const auto& c : rep.results)
    if (c.condition == 4) CHECK(c.pass);
  CHECK(hmf_module(z).dim == tcok(ex).dim);
}

TEST_CASE("ideal membership") {
  RingData r = RingData::make_commutative(Q, {2, 3});
  QPoly x = r.var(0), y = r.var(1);
  QPoly f = qp_mul(qp_mul(x, x, r), y, r);
  CHECK(in_omega_ideal(f, r, {0, 1}, 1));
  CHECK_FALSE(in_omega_ideal(f + y, r, {0, 1}, 2));
  CHECK_FALSE(in_omega_ideal(f, r, {0, 1}, 0));
  CHECK(in_omega_ideal(QPoly(), r, {0, 1}, 0));
}
