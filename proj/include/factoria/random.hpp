#pragma once

#include "factoria/qring.hpp"

#include <random>

namespace factoria {

using Rng = std::mt19937_64;

Scalar random_scalar(const FieldSpec& f, Rng& rng, bool nonzero = false);
// Up to `terms` random terms of total degree <= max_deg.
QPoly random_poly(const RingData& ring, Rng& rng, int max_deg, int terms);

}  // namespace factoria
