#pragma once

#include "factoria/cube.hpp"

#include <optional>
#include <string>
#include <vector>

namespace factoria {

// sign(alpha, i) = (-1)^#{j > i : alpha_j = 0}
int koszul_sign(unsigned alpha, int i, int dim);

struct TotalComplex {
  int n = 0;
  std::vector<std::vector<unsigned>> layers;  // vertices with |alpha| = m, lexicographic
  std::vector<size_t> ranks;                  // free rank of each layer
  std::vector<size_t> vertex_offset;          // position of each vertex block inside its layer
  std::vector<PolyMatrix> diffs;              // diffs[m] : layer m -> layer m+1
  RingData ring;
};

// Throws std::logic_error when two consecutive differentials do not compose
// to zero.
TotalComplex total_complex(const FactorCube& x);
bool composites_vanish(const TotalComplex& c);

struct ExactnessSpot {
  int spot;    // layer index m
  int degree;  // internal degree
  size_t ker = 0, im = 0;
  bool exact() const { return ker == im; }
};

struct ExactnessReport {
  bool skipped = false;
  std::string reason;
  std::vector<ExactnessSpot> spots;
  bool all_exact() const;
  std::optional<ExactnessSpot> first_inexact() const;
};

// Checks exactness at layers 0..n-1 in every internal degree <= max_degree.
ExactnessReport check_exactness_truncated(const TotalComplex& c, int max_degree);

struct QuotientModule {
  RingData ring;
  size_t dim = 0;
  std::vector<std::pair<size_t, Monomial>> basis_labels;  // (component, PBW monomial)
  // actions[i] column b holds the coordinates of x_i * b.
  std::vector<KMatrix> actions;
  std::optional<std::vector<size_t>> hilbert;  // when the presentation is graded
};

// Throws std::logic_error when the actions violate the relations of B.
void check_b_relations(const QuotientModule& m);

// Cokernel of v -> v*M, M : B^rows -> B^cols. A grading of M enables the
// Hilbert function.
QuotientModule cokernel_over_B(const PolyMatrix& m, const RingData& ring,
                               const std::optional<GradingAssignment>& grading = std::nullopt);
// Left cyclic module B / (B g_1 + ... + B g_k).
QuotientModule cyclic_quotient(const RingData& ring, const std::vector<QPoly>& gens);

PolyMatrix tcok_presentation(const FactorCube& x);
QuotientModule tcok(const FactorCube& x);
QuotientModule cok0(const FactorCube& x);

enum class IsoVerdict { isomorphic, not_isomorphic_exhausted, not_isomorphic_probabilistic, unknown };
std::string to_string(IsoVerdict v);

struct ModuleReport {
  size_t dim = 0;
  KMatrix annihilator_deg1;  // columns: coefficient vectors c with sum c_i x_i acting as zero
  std::optional<std::vector<size_t>> hilbert;
  size_t hom_dim = 0;
  std::optional<IsoVerdict> iso;
  std::optional<KMatrix> intertwiner;  // T with T M_i = N_i T
};

ModuleReport module_invariants(const QuotientModule& m, const QuotientModule* n = nullptr, uint64_t seed = 1);

}  // namespace factoria
