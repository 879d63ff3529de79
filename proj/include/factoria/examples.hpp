#pragma once

#include "factoria/cube.hpp"

#include <string>
#include <vector>

namespace factoria {

// Ascending coefficient list "c0,c1,..."; "0,0,1" is t^2.
std::vector<Scalar> parse_coefficients(const FieldSpec& f, const std::string& text);
QPoly univariate(const RingData& ring, int var, const std::vector<Scalar>& coeffs);
// (f(y) - f(x)) / (y - x) in k[x,y].
QPoly divided_difference(const RingData& ring, const std::vector<Scalar>& f);

// 1D cube (g(x), f(x)/g(x)) for omega = f(x); g must divide f exactly.
FactorCube example_hypersurface(const FieldSpec& field, const std::vector<Scalar>& f, const std::vector<Scalar>& g);
// The two-dimensional example over k[x,y] with omega = (f(x), f(y)).
FactorCube example_ci2(const FieldSpec& field, const std::vector<Scalar>& f);
// The same eight matrices in the orientation they are displayed in (v -> M v).
std::vector<std::pair<std::string, PolyMatrix>> ci2_column_matrices(const RingData& ring, const std::vector<Scalar>& f);
// theta^beta(rank) over the quantum plane with q_12 = q and canonical type.
FactorCube example_quantum2(uint32_t p, long q, int l1, int l2, unsigned beta, size_t rank = 1);
// theta^beta(rank) over the commutative ring with omega_i = x_i^{l_i}.
FactorCube example_theta(const FieldSpec& field, const std::vector<int>& l, unsigned beta, size_t rank = 1);

}  // namespace factoria
