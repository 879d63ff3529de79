#pragma once

#include "factoria/homology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace factoria {

struct HigherMF {
  RingData ring;
  std::vector<int> dirs;          // ring index of omega_q
  std::vector<size_t> z0_blocks;  // Z^0 = X^{1-e_1} (+) ... (+) X^{1-e_n}
  size_t z1 = 0;                  // rank of Z^1 = X^1
  PolyMatrix d;                   // Z^0 -> Z^1
  std::vector<PolyMatrix> h;      // h_q : Z^1 -> Z^0, supported on block q

  size_t block_offset(int q) const;
};

// Commutative cubes only; throws UnsupportedConfiguration otherwise.
HigherMF extract_hmf(const FactorCube& x);

// Whether f lies in (omega_{dirs[0]}, ..., omega_{dirs[q-1]}).
bool in_omega_ideal(const QPoly& f, const RingData& ring, const std::vector<int>& dirs, int q);

struct HmfCondition {
  int condition;  // 4 or 5
  int q;          // 1-based
  bool pass;
  PolyMatrix defect;
  std::string where;  // first offending entry
};

struct HmfReport {
  std::vector<HmfCondition> results;
  bool pass() const;
  std::optional<HmfCondition> first_failure() const;
};

HmfReport check_hmf_conditions(const HigherMF& z);

// C(Z) = coker(R (x) d) with R = A/(omega_1..omega_n).
QuotientModule hmf_module(const HigherMF& z);

}  // namespace factoria
