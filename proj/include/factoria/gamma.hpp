#pragma once

#include "factoria/cube.hpp"

#include <string>

namespace factoria {

// M_2(A; omega, sigma): 2x2 matrices over A with the twisted product.
struct GammaContext {
  RingData ring;
  QPoly omega;
  DiagonalAut sigma;
  bool operator==(const GammaContext& o) const;
};

// Context of the 1D cube direction i of a ring with its canonical type.
GammaContext gamma_context(const RingData& ring, const TypeData& type, int i);

struct GammaElement {
  QPoly a11, a12, a21, a22;
  bool operator==(const GammaElement&) const = default;

  static GammaElement unit(const GammaContext& ctx);
  // Matrix unit E_rc (1-based indices).
  static GammaElement matrix_unit(const GammaContext& ctx, int r, int c);
  static GammaElement diagonal(const QPoly& p);
};

GammaElement gamma_mul(const GammaContext& ctx, const GammaElement& x, const GammaElement& y);
GammaElement gamma_add(const GammaElement& x, const GammaElement& y);
// Entrywise sigma', with the (2,1) entry additionally multiplied by xi.
GammaElement sigma_tilde(const GammaElement& x, const DiagonalAut& sigma_prime, const Scalar& xi);
GammaElement random_gamma(const GammaContext& ctx, Rng& rng, int max_deg = 2, int terms = 3);

// Element (x1, x0) of the flattened module X^1 (+) X^0 of a 1D cube.
struct FlatElement {
  PolyMatrix top;     // 1 x r(1)
  PolyMatrix bottom;  // 1 x r(0)
  bool operator==(const FlatElement&) const = default;
};

// Left action of Gamma on X^1 (+) X^0:
// a.(x1, x0) = (a11 x1 + a12 x0 D0, a21 sigma(x1 D1) + a22 x0).
FlatElement gamma_act(const GammaContext& ctx, const FactorCube& x, const GammaElement& a, const FlatElement& m);

struct RoundtripReport {
  bool module_axioms = true;
  bool recovered = true;
  size_t checks = 0;
  std::string detail;
  bool pass() const { return module_axioms && recovered; }
};

// Builds the Gamma-action on the flattened module, checks the module axioms
// on a spanning set (matrix units and random elements), then reads the cube
// back from the E12 and E21 actions.
RoundtripReport phi_psi_roundtrip(const FactorCube& x, uint64_t seed = 1, int random_pairs = 8);

}  // namespace factoria
