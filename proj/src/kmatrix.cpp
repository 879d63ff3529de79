#include "factoria/kmatrix.hpp"

#include "factoria/parallel.hpp"

#include <stdexcept>

namespace factoria {

KMatrix::KMatrix(const FieldSpec& f, size_t rows, size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

KMatrix KMatrix::identity(const FieldSpec& f, size_t n) {
  KMatrix m(f, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

KMatrix KMatrix::operator*(const KMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("KMatrix dimension mismatch");
  KMatrix r(field_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  return r;
}

KMatrix KMatrix::operator+(const KMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("KMatrix dimension mismatch");
  KMatrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

KMatrix KMatrix::operator-(const KMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("KMatrix dimension mismatch");
  KMatrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

KMatrix KMatrix::scaled(const Scalar& s) const {
  KMatrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

KMatrix KMatrix::transpose() const {
  KMatrix r(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool KMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool KMatrix::operator==(const KMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

// Modular elimination on raw residues; `parallel` selects the OpenMP row sweep.
RrefResult rref_mod(const KMatrix& m, bool parallel) {
  const uint32_t p = m.field().p;
  const size_t R = m.rows(), C = m.cols();
  std::vector<uint32_t> a(R * C);
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) a[i * C + j] = m.at(i, j).residue();

  std::vector<size_t> pivots;
  size_t row = 0;
  const int threads = parallel ? thread_cap() : 1;
  for (size_t col = 0; col < C && row < R; ++col) {
    size_t piv = R;
    for (size_t i = row; i < R; ++i)
      if (a[i * C + col]) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    if (piv != row)
      for (size_t j = 0; j < C; ++j) std::swap(a[piv * C + j], a[row * C + j]);
    uint64_t inv = inv_mod_fermat(a[row * C + col], p);
    for (size_t j = col; j < C; ++j) a[row * C + j] = static_cast<uint32_t>(a[row * C + j] * inv % p);
    const uint32_t* prow = &a[row * C];
    const long long Rl = static_cast<long long>(R);
#pragma omp parallel for schedule(static) num_threads(threads) if (parallel && R * (C - col) > 4096)
    for (long long ii = 0; ii < Rl; ++ii) {
      size_t i = static_cast<size_t>(ii);
      if (i == row) continue;
      uint32_t* cur = &a[i * C];
      uint64_t f = cur[col];
      if (!f) continue;
      uint64_t nf = p - f;
      for (size_t j = col; j < C; ++j)
        if (prow[j]) cur[j] = static_cast<uint32_t>((cur[j] + nf * prow[j]) % p);
    }
    pivots.push_back(col);
    ++row;
  }
  RrefResult res{KMatrix(m.field(), R, C), pivots};
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) res.reduced.at(i, j) = Scalar::from_residue(p, a[i * C + j]);
  return res;
}

RrefResult rref_rational(const KMatrix& m, bool parallel) {
  const size_t R = m.rows(), C = m.cols();
  std::vector<mpq_class> a(R * C);
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) a[i * C + j] = m.at(i, j).rational();

  std::vector<size_t> pivots;
  size_t row = 0;
  const int threads = parallel ? thread_cap() : 1;
  for (size_t col = 0; col < C && row < R; ++col) {
    size_t piv = R;
    for (size_t i = row; i < R; ++i)
      if (sgn(a[i * C + col]) != 0) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    if (piv != row)
      for (size_t j = 0; j < C; ++j) std::swap(a[piv * C + j], a[row * C + j]);
    mpq_class inv = 1 / a[row * C + col];
    for (size_t j = col; j < C; ++j) a[row * C + j] *= inv;
    const long long Rl = static_cast<long long>(R);
#pragma omp parallel for schedule(static) num_threads(threads) if (parallel && R * (C - col) > 1024)
    for (long long ii = 0; ii < Rl; ++ii) {
      size_t i = static_cast<size_t>(ii);
      if (i == row) continue;
      mpq_class f = a[i * C + col];
      if (sgn(f) == 0) continue;
      for (size_t j = col; j < C; ++j)
        if (sgn(a[row * C + j]) != 0) a[i * C + j] -= f * a[row * C + j];
    }
    pivots.push_back(col);
    ++row;
  }
  RrefResult res{KMatrix(m.field(), R, C), pivots};
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) res.reduced.at(i, j) = Scalar(m.field(), a[i * C + j]);
  return res;
}

}  // namespace

RrefResult rref(const KMatrix& m) {
  return m.field().is_prime() ? rref_mod(m, true) : rref_rational(m, true);
}

RrefResult rref_serial(const KMatrix& m) {
  return m.field().is_prime() ? rref_mod(m, false) : rref_rational(m, false);
}

size_t k_rank(const KMatrix& m) { return rref(m).pivots.size(); }

SolveResult k_solve(const KMatrix& m, const KMatrix* targets) {
  const FieldSpec& f = m.field();
  const size_t C = m.cols();
  const size_t T = targets ? targets->cols() : 0;
  if (targets && targets->rows() != m.rows()) throw std::invalid_argument("k_solve: target row count mismatch");

  KMatrix aug(f, m.rows(), C + T);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < C; ++j) aug.at(i, j) = m.at(i, j);
    for (size_t j = 0; j < T; ++j) aug.at(i, C + j) = targets->at(i, j);
  }
  RrefResult r = rref(aug);

  SolveResult out;
  std::vector<size_t> piv;
  bool consistent = true;
  for (size_t c : r.pivots) {
    if (c < C)
      piv.push_back(c);
    else
      consistent = false;
  }
  out.rank = piv.size();

  std::vector<bool> is_piv(C, false);
  for (size_t c : piv) is_piv[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < C; ++c)
    if (!is_piv[c]) free_cols.push_back(c);

  out.nullspace = KMatrix(f, C, free_cols.size());
  for (size_t k = 0; k < free_cols.size(); ++k) {
    size_t fc = free_cols[k];
    out.nullspace.at(fc, k) = Scalar::one(f);
    for (size_t i = 0; i < piv.size(); ++i) out.nullspace.at(piv[i], k) = -r.reduced.at(i, fc);
  }

  if (targets && consistent) {
    KMatrix sol(f, C, T);
    for (size_t i = 0; i < piv.size(); ++i)
      for (size_t j = 0; j < T; ++j) sol.at(piv[i], j) = r.reduced.at(i, C + j);
    out.solution = sol;
  }
  return out;
}

void reduce_by_rref(std::vector<Scalar>& v, const RrefResult& r) {
  for (size_t i = 0; i < r.pivots.size(); ++i) {
    size_t c = r.pivots[i];
    if (v[c].is_zero()) continue;
    Scalar f = v[c];
    for (size_t j = c; j < v.size(); ++j) {
      const Scalar& e = r.reduced.at(i, j);
      if (!e.is_zero()) v[j] -= f * e;
    }
  }
}

}  // namespace factoria
