#include <doctest.h>

#include "factoria/gamma.hpp"

using namespace factoria;

namespace {
const FieldSpec F101 = FieldSpec::prime(101);

struct QuantumData {
  RingData ring = RingData::make_uniform(F101, 2, Scalar(F101, 5), {2, 2});
  TypeData type = canonical_type(ring);
  GammaContext ctx = gamma_context(ring, type, 1);
};

PolyMatrix one_by_one(const QPoly& p) {
  PolyMatrix m(1, 1);
  m.at(0, 0) = p;
  return m;
}
}  // namespace

TEST_CASE("matrix unit products") {
  QuantumData d;
  auto E = [&](int r, int c) { return GammaElement::matrix_unit(d.ctx, r, c); };
  CHECK(gamma_mul(d.ctx, E(2, 1), E(1, 2)) == GammaElement{{}, {}, {}, d.ctx.omega});
  CHECK(gamma_mul(d.ctx, E(1, 2), E(2, 1)) == GammaElement{d.ctx.omega, {}, {}, {}});
  Rng rng(1);
  GammaElement x = random_gamma(d.ctx, rng);
  CHECK(gamma_mul(d.ctx, GammaElement::unit(d.ctx), x) == x);
  CHECK(gamma_mul(d.ctx, x, GammaElement::unit(d.ctx)) == x);
}

TEST_CASE("sigma tilde") {
  QuantumData d;
  const DiagonalAut& sp = d.type.sigmas[0];
  const Scalar xi = d.type.xi[1];
  GammaElement e21 = GammaElement::matrix_unit(d.ctx, 2, 1);
  CHECK(sigma_tilde(e21, sp, xi) == GammaElement{{}, {}, d.ring.one().scaled(xi), {}});
  CHECK(sigma_tilde(GammaElement::unit(d.ctx), sp, xi) == GammaElement::unit(d.ctx));
  Rng rng(2);
  GammaElement x = random_gamma(d.ctx, rng), y = random_gamma(d.ctx, rng);
  CHECK(sigma_tilde(gamma_mul(d.ctx, x, y), sp, xi) ==
        gamma_mul(d.ctx, sigma_tilde(x, sp, xi), sigma_tilde(y, sp, xi)));
  GammaElement w = GammaElement::diagonal(d.ring.omega[0]);
  CHECK(gamma_mul(d.ctx, w, x) == gamma_mul(d.ctx, sigma_tilde(x, sp, xi), w));
  CHECK(sigma_tilde(sigma_tilde(x, sp, xi), sp.inverse(), xi.inv()) == x);
}

TEST_CASE("phi psi roundtrip") {
  RingData r = RingData::make_commutative(FieldSpec::rationals(), {2});
  TypeData t = canonical_type(r);
  CHECK(phi_psi_roundtrip(theta_cube(0, 1, r, t)).pass());
  RoundtripReport rep = phi_psi_roundtrip(cube_1d(r, t, one_by_one(r.var(0)), one_by_one(r.var(0))));
  CHECK(rep.pass());
  CHECK(rep.checks > 0);
  QuantumData d;
  Rng rng(4);
  FactorCube q = random_gauge(direct_sum(theta_cube(0, 1, d.ring, d.type, 1, {1}), theta_cube(1, 2, d.ring, d.type, 1, {1})), rng);
  REQUIRE(verify_cube(q).pass);
  CHECK(phi_psi_roundtrip(q).pass());
  FactorCube bad = cube_1d(r, t, one_by_one(r.var(0)), one_by_one(r.one()));
  RoundtripReport b = phi_psi_roundtrip(bad);
  CHECK_FALSE(b.module_axioms);
  CHECK(b.recovered);
}
