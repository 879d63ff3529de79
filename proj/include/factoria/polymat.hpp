#pragma once

#include "factoria/kmatrix.hpp"
#include "factoria/qring.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace factoria {

// Matrix over A_q. Row convention: v -> v*M is the map A^rows -> A^cols.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static PolyMatrix identity(const RingData& ring, size_t n);
  static PolyMatrix diagonal(const QPoly& p, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  QPoly& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
  const QPoly& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix scaled(const Scalar& s) const;
  PolyMatrix transpose() const;
  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;
  int max_degree() const;  // -1 for a zero matrix

  PolyMatrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  void set_block(size_t r0, size_t c0, const PolyMatrix& b);

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<QPoly> e_;
};

// Entry (r,c) = sum_s M_rs N_sc with products in that order. The default
// distributes output entries over OpenMP threads; pm_mul_serial is the
// reference loop.
PolyMatrix pm_mul(const PolyMatrix& m, const PolyMatrix& n, const RingData& ring);
PolyMatrix pm_mul_serial(const PolyMatrix& m, const PolyMatrix& n, const RingData& ring);
// Left multiplication of every entry by p: (p*M)_rc = p M_rc.
PolyMatrix pm_left_scale(const QPoly& p, const PolyMatrix& m, const RingData& ring);

PolyMatrix pm_sigma(const DiagonalAut& sigma, const PolyMatrix& m);
PolyMatrix pm_reduce(const PolyMatrix& m, const RingData& ring, const std::vector<int>& which);
PolyMatrix pm_quotient_nf(const PolyMatrix& m, const RingData& ring);

struct GradingAssignment {
  std::vector<int> row_degrees;
  std::vector<int> col_degrees;
  bool operator==(const GradingAssignment&) const = default;
};

std::optional<GradingAssignment> pm_grade_infer(const PolyMatrix& m);

// Linearization of v -> v*M. Basis order is component-major, then
// lexicographic exponents; rows of the result are images of source basis
// vectors.
KMatrix pm_to_linear_over_B(const PolyMatrix& m, const RingData& ring);
KMatrix pm_to_linear_truncated(const PolyMatrix& m, const RingData& ring, int max_deg);

// General linearization between explicit bases of (component, monomial)
// pairs. Terms of images outside the target basis raise an error unless
// `drop_outside` is set.
using ModBasis = std::vector<std::pair<size_t, Monomial>>;
KMatrix linearize(const PolyMatrix& m, const RingData& ring, const ModBasis& source, const ModBasis& target,
                  bool reduce_to_B, bool drop_outside = false);

std::string to_string(const PolyMatrix& m, int n);

}  // namespace factoria
