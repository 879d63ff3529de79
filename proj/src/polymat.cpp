#include "factoria/polymat.hpp"

#include "factoria/parallel.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace factoria {

PolyMatrix PolyMatrix::identity(const RingData& ring, size_t n) { return diagonal(ring.one(), n); }

PolyMatrix PolyMatrix::diagonal(const QPoly& p, size_t n) {
  PolyMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = p;
  return m;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMatrix dimension mismatch");
  PolyMatrix r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMatrix dimension mismatch");
  PolyMatrix r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = r.e_[i] - o.e_[i];
  return r;
}

PolyMatrix PolyMatrix::scaled(const Scalar& s) const {
  PolyMatrix r = *this;
  for (auto& x : r.e_) x = x.scaled(s);
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix r(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool PolyMatrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

int PolyMatrix::max_degree() const {
  int d = -1;
  for (const auto& x : e_) d = std::max(d, x.degree());
  return d;
}

PolyMatrix PolyMatrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  PolyMatrix b(nr, nc);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
  return b;
}

void PolyMatrix::set_block(size_t r0, size_t c0, const PolyMatrix& b) {
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

namespace {

QPoly product_entry(const PolyMatrix& m, const PolyMatrix& n, size_t r, size_t c, const RingData& ring) {
  QPoly acc;
  for (size_t s = 0; s < m.cols(); ++s) {
    const QPoly& a = m.at(r, s);
    const QPoly& b = n.at(s, c);
    if (a.is_zero() || b.is_zero()) continue;
    acc += qp_mul(a, b, ring);
  }
  return acc;
}

}  // namespace

PolyMatrix pm_mul(const PolyMatrix& m, const PolyMatrix& n, const RingData& ring) {
  if (m.cols() != n.rows()) throw std::invalid_argument("pm_mul: dimension mismatch");
  PolyMatrix r(m.rows(), n.cols());
  const long long total = static_cast<long long>(m.rows() * n.cols());
  const int threads = thread_cap();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (total * static_cast<long long>(m.cols()) >= 64)
  for (long long k = 0; k < total; ++k) {
    size_t i = static_cast<size_t>(k) / n.cols(), j = static_cast<size_t>(k) % n.cols();
    r.at(i, j) = product_entry(m, n, i, j, ring);
  }
  return r;
}

PolyMatrix pm_mul_serial(const PolyMatrix& m, const PolyMatrix& n, const RingData& ring) {
  if (m.cols() != n.rows()) throw std::invalid_argument("pm_mul: dimension mismatch");
  PolyMatrix r(m.rows(), n.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < n.cols(); ++j) r.at(i, j) = product_entry(m, n, i, j, ring);
  return r;
}

PolyMatrix pm_left_scale(const QPoly& p, const PolyMatrix& m, const RingData& ring) {
  PolyMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = qp_mul(p, m.at(i, j), ring);
  return r;
}

PolyMatrix pm_sigma(const DiagonalAut& sigma, const PolyMatrix& m) {
  if (sigma.is_identity()) return m;
  PolyMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = qp_apply_aut(sigma, m.at(i, j));
  return r;
}

PolyMatrix pm_reduce(const PolyMatrix& m, const RingData& ring, const std::vector<int>& which) {
  PolyMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = reduce_modulo(m.at(i, j), ring, which);
  return r;
}

PolyMatrix pm_quotient_nf(const PolyMatrix& m, const RingData& ring) {
  std::vector<int> all(ring.n);
  for (int i = 0; i < ring.n; ++i) all[i] = i;
  return pm_reduce(m, ring, all);
}

std::optional<GradingAssignment> pm_grade_infer(const PolyMatrix& m) {
  // Nodes 0..rows-1 are rows, rows..rows+cols-1 are columns; an entry of
  // degree d forces deg(col) - deg(row) = d.
  const size_t R = m.rows(), C = m.cols(), N = R + C;
  std::vector<std::vector<std::pair<size_t, int>>> adj(N);
  for (size_t r = 0; r < R; ++r)
    for (size_t c = 0; c < C; ++c) {
      const QPoly& e = m.at(r, c);
      if (e.is_zero()) continue;
      if (!e.is_homogeneous()) return std::nullopt;
      int d = e.terms()[0].m.degree();
      adj[r].push_back({R + c, d});
      adj[R + c].push_back({r, -d});
    }
  std::vector<int> deg(N, 0);
  std::vector<bool> seen(N, false);
  for (size_t s = 0; s < N; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    deg[s] = 0;
    std::vector<size_t> stack{s};
    while (!stack.empty()) {
      size_t u = stack.back();
      stack.pop_back();
      for (auto [v, w] : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          deg[v] = deg[u] + w;
          stack.push_back(v);
        } else if (deg[v] != deg[u] + w) {
          return std::nullopt;
        }
      }
    }
  }
  int lo = 0;
  for (size_t i = 0; i < N; ++i) lo = std::min(lo, deg[i]);
  GradingAssignment g;
  for (size_t r = 0; r < R; ++r) g.row_degrees.push_back(deg[r] - lo);
  for (size_t c = 0; c < C; ++c) g.col_degrees.push_back(deg[R + c] - lo);
  return g;
}

KMatrix linearize(const PolyMatrix& m, const RingData& ring, const ModBasis& source, const ModBasis& target,
                  bool reduce_to_B, bool drop_outside) {
  std::map<std::pair<size_t, Monomial>, size_t> index;
  for (size_t k = 0; k < target.size(); ++k) index[target[k]] = k;
  KMatrix out(ring.field, source.size(), target.size());
  for (size_t s = 0; s < source.size(); ++s) {
    const auto& [comp, mono] = source[s];
    QPoly lead = QPoly::monomial(mono, Scalar::one(ring.field));
    for (size_t c = 0; c < m.cols(); ++c) {
      const QPoly& e = m.at(comp, c);
      if (e.is_zero()) continue;
      QPoly img = qp_mul(lead, e, ring);
      if (reduce_to_B) img = quotient_normal_form(img, ring);
      for (const auto& t : img.terms()) {
        auto it = index.find({c, t.m});
        if (it == index.end()) {
          if (drop_outside) continue;
          throw std::logic_error("linearize: image leaves the target basis");
        }
        out.at(s, it->second) += t.c;
      }
    }
  }
  return out;
}

KMatrix pm_to_linear_over_B(const PolyMatrix& m, const RingData& ring) {
  auto pbw = pbw_basis(ring);
  ModBasis src, tgt;
  for (size_t r = 0; r < m.rows(); ++r)
    for (const auto& mo : pbw) src.push_back({r, mo});
  for (size_t c = 0; c < m.cols(); ++c)
    for (const auto& mo : pbw) tgt.push_back({c, mo});
  return linearize(pm_quotient_nf(m, ring), ring, src, tgt, true);
}

KMatrix pm_to_linear_truncated(const PolyMatrix& m, const RingData& ring, int max_deg) {
  auto src_monos = monomials_up_to(ring.n, max_deg);
  auto tgt_monos = monomials_up_to(ring.n, max_deg + std::max(0, m.max_degree()));
  ModBasis src, tgt;
  for (size_t r = 0; r < m.rows(); ++r)
    for (const auto& mo : src_monos) src.push_back({r, mo});
  for (size_t c = 0; c < m.cols(); ++c)
    for (const auto& mo : tgt_monos) tgt.push_back({c, mo});
  return linearize(m, ring, src, tgt, false);
}

std::string to_string(const PolyMatrix& m, int n) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m.at(i, j), n);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace factoria
