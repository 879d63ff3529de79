#pragma once

#include "factoria/scalar.hpp"

#include <optional>
#include <vector>

namespace factoria {

// Dense row-major matrix over a field.
class KMatrix {
 public:
  KMatrix() = default;
  KMatrix(const FieldSpec& f, size_t rows, size_t cols);

  static KMatrix identity(const FieldSpec& f, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  KMatrix operator*(const KMatrix& o) const;
  KMatrix operator+(const KMatrix& o) const;
  KMatrix operator-(const KMatrix& o) const;
  KMatrix scaled(const Scalar& s) const;
  KMatrix transpose() const;
  bool is_zero() const;
  bool operator==(const KMatrix& o) const;

 private:
  FieldSpec field_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  KMatrix reduced;
  std::vector<size_t> pivots;  // pivot column of each nonzero row, increasing
};

// Reduced row echelon form. Over F_p the row updates run in parallel;
// rref_serial is the single-threaded reference used by the tests.
RrefResult rref(const KMatrix& m);
RrefResult rref_serial(const KMatrix& m);

struct SolveResult {
  size_t rank = 0;
  KMatrix nullspace;                // columns span {x : M x = 0}
  std::optional<KMatrix> solution;  // M X = targets, when consistent
};

SolveResult k_solve(const KMatrix& m, const KMatrix* targets = nullptr);

size_t k_rank(const KMatrix& m);

// Reduce row vector v modulo the row space of an RREF matrix, in place.
void reduce_by_rref(std::vector<Scalar>& v, const RrefResult& r);

}  // namespace factoria
