#include "factoria/gamma.hpp"

namespace factoria {

bool GammaContext::operator==(const GammaContext& o) const {
  return ring == o.ring && omega == o.omega && sigma.c == o.sigma.c;
}

GammaContext gamma_context(const RingData& ring, const TypeData& type, int i) {
  return {ring, ring.omega[i], type.sigmas[i]};
}

GammaElement GammaElement::unit(const GammaContext& ctx) { return diagonal(ctx.ring.one()); }

GammaElement GammaElement::matrix_unit(const GammaContext& ctx, int r, int c) {
  GammaElement e;
  QPoly one = ctx.ring.one();
  if (r == 1 && c == 1) e.a11 = one;
  if (r == 1 && c == 2) e.a12 = one;
  if (r == 2 && c == 1) e.a21 = one;
  if (r == 2 && c == 2) e.a22 = one;
  return e;
}

GammaElement GammaElement::diagonal(const QPoly& p) { return {p, {}, {}, p}; }

GammaElement gamma_mul(const GammaContext& ctx, const GammaElement& x, const GammaElement& y) {
  const RingData& R = ctx.ring;
  auto mul = [&](const QPoly& a, const QPoly& b) { return qp_mul(a, b, R); };
  GammaElement z;
  z.a11 = mul(x.a11, y.a11) + mul(mul(x.a12, y.a21), ctx.omega);
  z.a12 = mul(x.a11, y.a12) + mul(x.a12, y.a22);
  z.a21 = mul(x.a21, qp_apply_aut(ctx.sigma, y.a11)) + mul(x.a22, y.a21);
  z.a22 = mul(mul(x.a21, ctx.omega), y.a12) + mul(x.a22, y.a22);
  return z;
}

GammaElement gamma_add(const GammaElement& x, const GammaElement& y) {
  return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
}

GammaElement sigma_tilde(const GammaElement& x, const DiagonalAut& sp, const Scalar& xi) {
  return {qp_apply_aut(sp, x.a11), qp_apply_aut(sp, x.a12), qp_apply_aut(sp, x.a21).scaled(xi), qp_apply_aut(sp, x.a22)};
}

GammaElement random_gamma(const GammaContext& ctx, Rng& rng, int max_deg, int terms) {
  auto p = [&] { return random_poly(ctx.ring, rng, max_deg, terms); };
  GammaElement e;
  e.a11 = p();
  e.a12 = p();
  e.a21 = p();
  e.a22 = p();
  return e;
}

FlatElement gamma_act(const GammaContext& ctx, const FactorCube& x, const GammaElement& a, const FlatElement& m) {
  const RingData& R = ctx.ring;
  PolyMatrix top = pm_left_scale(a.a11, m.top, R) + pm_left_scale(a.a12, pm_mul(m.bottom, x.edge(0, 0), R), R);
  PolyMatrix bottom = pm_left_scale(a.a21, pm_sigma(ctx.sigma, pm_mul(m.top, x.edge(0, 1), R)), R) +
                      pm_left_scale(a.a22, m.bottom, R);
  return {top, bottom};
}

namespace {

std::vector<FlatElement> spanning_set(const FactorCube& x, int max_deg) {
  std::vector<FlatElement> out;
  const RingData& R = x.ring;
  for (const auto& mo : monomials_up_to(R.n, max_deg)) {
    QPoly p = QPoly::monomial(mo, Scalar::one(R.field));
    for (size_t k = 0; k < x.ranks[1]; ++k) {
      FlatElement e{PolyMatrix(1, x.ranks[1]), PolyMatrix(1, x.ranks[0])};
      e.top.at(0, k) = p;
      out.push_back(e);
    }
    for (size_t k = 0; k < x.ranks[0]; ++k) {
      FlatElement e{PolyMatrix(1, x.ranks[1]), PolyMatrix(1, x.ranks[0])};
      e.bottom.at(0, k) = p;
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace

RoundtripReport phi_psi_roundtrip(const FactorCube& x, uint64_t seed, int random_pairs) {
  if (x.dim != 1) throw std::invalid_argument("phi_psi_roundtrip needs a 1-dimensional cube");
  x.check_shapes();
  GammaContext ctx{x.ring, x.omega(0), x.sigma(0)};
  RoundtripReport rep;

  std::vector<GammaElement> elems;
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) elems.push_back(GammaElement::matrix_unit(ctx, r, c));
  Rng rng(seed);
  for (int k = 0; k < random_pairs; ++k) elems.push_back(random_gamma(ctx, rng, 1, 2));

  for (const auto& m : spanning_set(x, 1))
    for (size_t a = 0; a < elems.size(); ++a)
      for (size_t b = 0; b < elems.size(); ++b) {
        if (a >= 4 && b >= 4 && a != b) continue;
        ++rep.checks;
        FlatElement lhs = gamma_act(ctx, x, elems[a], gamma_act(ctx, x, elems[b], m));
        FlatElement rhs = gamma_act(ctx, x, gamma_mul(ctx, elems[a], elems[b]), m);
        if (!(lhs == rhs)) {
          rep.module_axioms = false;
          rep.detail = "e.(f.m) != (ef).m for element pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
          return rep;
        }
      }
  for (const auto& m : spanning_set(x, 1)) {
    ++rep.checks;
    if (!(gamma_act(ctx, x, GammaElement::unit(ctx), m) == m)) {
      rep.module_axioms = false;
      rep.detail = "unit does not act as the identity";
      return rep;
    }
  }

  // Psi: read D0 from E12 on (0, e_k) and D1 from E21 on (e_k, 0).
  const RingData& R = x.ring;
  PolyMatrix d0(x.ranks[0], x.ranks[1]), d1(x.ranks[1], x.ranks[0]);
  for (size_t k = 0; k < x.ranks[0]; ++k) {
    FlatElement e{PolyMatrix(1, x.ranks[1]), PolyMatrix(1, x.ranks[0])};
    e.bottom.at(0, k) = R.one();
    FlatElement img = gamma_act(ctx, x, GammaElement::matrix_unit(ctx, 1, 2), e);
    d0.set_block(k, 0, img.top);
  }
  for (size_t k = 0; k < x.ranks[1]; ++k) {
    FlatElement e{PolyMatrix(1, x.ranks[1]), PolyMatrix(1, x.ranks[0])};
    e.top.at(0, k) = R.one();
    FlatElement img = gamma_act(ctx, x, GammaElement::matrix_unit(ctx, 2, 1), e);
    d1.set_block(k, 0, pm_sigma(ctx.sigma.inverse(), img.bottom));
  }
  if (!(d0 == x.edge(0, 0)) || !(d1 == x.edge(0, 1))) {
    rep.recovered = false;
    rep.detail = "recovered matrices differ from the cube";
  }
  return rep;
}

}  // namespace factoria
