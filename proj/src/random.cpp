#include "factoria/random.hpp"

namespace factoria {

Scalar random_scalar(const FieldSpec& f, Rng& rng, bool nonzero) {
  for (;;) {
    Scalar s;
    if (f.is_prime()) {
      s = Scalar::from_residue(f.p, static_cast<uint32_t>(rng() % f.p));
    } else {
      long num = static_cast<long>(rng() % 19) - 9;
      long den = static_cast<long>(rng() % 4) + 1;
      s = Scalar(f, mpq_class(num, den));
    }
    if (!nonzero || !s.is_zero()) return s;
  }
}

QPoly random_poly(const RingData& ring, Rng& rng, int max_deg, int terms) {
  std::vector<Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int budget = static_cast<int>(rng() % (max_deg + 1));
    for (int k = 0; k < budget && ring.n > 0; ++k) ++m.e[rng() % ring.n];
    out.push_back({m, random_scalar(ring.field, rng)});
  }
  return QPoly::from_terms(std::move(out));
}

}  // namespace factoria
