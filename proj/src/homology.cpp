#include "factoria/homology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace factoria {

int koszul_sign(unsigned alpha, int i, int dim) {
  int s = 0;
  for (int j = i + 1; j < dim; ++j)
    if (!(alpha >> j & 1u)) ++s;
  return s % 2 ? -1 : 1;
}

TotalComplex total_complex(const FactorCube& x) {
  x.check_shapes();
  TotalComplex c;
  c.n = x.dim;
  c.ring = x.ring;
  c.layers.assign(x.dim + 1, {});
  c.ranks.assign(x.dim + 1, 0);
  c.vertex_offset.assign(x.vertices(), 0);
  for (unsigned a : lex_vertices(x.dim)) {
    int m = std::popcount(a);
    c.layers[m].push_back(a);
    c.vertex_offset[a] = c.ranks[m];
    c.ranks[m] += x.ranks[a];
  }
  const Scalar minus = -Scalar::one(x.ring.field);
  for (int m = 0; m < x.dim; ++m) {
    PolyMatrix d(c.ranks[m], c.ranks[m + 1]);
    for (unsigned a : c.layers[m])
      for (int i = 0; i < x.dim; ++i) {
        if (a >> i & 1u) continue;
        unsigned b = a | 1u << i;
        PolyMatrix e = x.edge(i, a);
        if (koszul_sign(a, i, x.dim) < 0) e = e.scaled(minus);
        d.set_block(c.vertex_offset[a], c.vertex_offset[b], e);
      }
    c.diffs.push_back(std::move(d));
  }
  if (!composites_vanish(c)) throw std::logic_error("total complex: consecutive differentials do not compose to zero");
  return c;
}

bool composites_vanish(const TotalComplex& c) {
  for (size_t m = 0; m + 1 < c.diffs.size(); ++m)
    if (!pm_mul(c.diffs[m], c.diffs[m + 1], c.ring).is_zero()) return false;
  return true;
}

bool ExactnessReport::all_exact() const { return !skipped && !first_inexact(); }

std::optional<ExactnessSpot> ExactnessReport::first_inexact() const {
  for (const auto& s : spots)
    if (!s.exact()) return s;
  return std::nullopt;
}

ExactnessReport check_exactness_truncated(const TotalComplex& c, int max_degree) {
  ExactnessReport rep;
  // Global grading on the basis elements of all layers.
  std::vector<size_t> base(c.ranks.size() + 1, 0);
  for (size_t m = 0; m < c.ranks.size(); ++m) base[m + 1] = base[m] + c.ranks[m];
  const size_t N = base.back();
  std::vector<std::vector<std::pair<size_t, int>>> adj(N);
  for (size_t m = 0; m < c.diffs.size(); ++m)
    for (size_t r = 0; r < c.diffs[m].rows(); ++r)
      for (size_t k = 0; k < c.diffs[m].cols(); ++k) {
        const QPoly& e = c.diffs[m].at(r, k);
        if (e.is_zero()) continue;
        if (!e.is_homogeneous()) {
          rep.skipped = true;
          rep.reason = "differential entry is not homogeneous";
          return rep;
        }
        int d = e.degree();
        // p e_r -> p e_r M keeps degree when deg e_c = deg e_r - deg M_rc.
        adj[base[m] + r].push_back({base[m + 1] + k, -d});
        adj[base[m + 1] + k].push_back({base[m] + r, d});
      }
  std::vector<int> deg(N, 0);
  std::vector<bool> seen(N, false);
  for (size_t s = 0; s < N; ++s) {
    if (seen[s]) continue;
    std::vector<size_t> comp{s}, stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      size_t u = stack.back();
      stack.pop_back();
      for (auto [v, w] : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          deg[v] = deg[u] + w;
          stack.push_back(v);
          comp.push_back(v);
        } else if (deg[v] != deg[u] + w) {
          rep.skipped = true;
          rep.reason = "no consistent grading of the total complex";
          return rep;
        }
      }
    }
    int lo = 0;
    for (size_t v : comp) lo = std::min(lo, deg[v]);
    for (size_t v : comp) deg[v] -= lo;
  }

  auto slice = [&](size_t m, int t) {
    ModBasis b;
    for (size_t r = 0; r < c.ranks[m]; ++r) {
      int d = t - deg[base[m] + r];
      if (d < 0) continue;
      for (const auto& mo : monomials_of_degree(c.ring.n, d)) b.push_back({r, mo});
    }
    return b;
  };
  std::map<std::pair<size_t, int>, size_t> rank_cache;
  auto rank_of = [&](size_t m, int t) {
    auto key = std::make_pair(m, t);
    auto it = rank_cache.find(key);
    if (it != rank_cache.end()) return it->second;
    ModBasis src = slice(m, t), tgt = slice(m + 1, t);
    size_t r = src.empty() || tgt.empty() ? 0 : k_rank(linearize(c.diffs[m], c.ring, src, tgt, false));
    rank_cache[key] = r;
    return r;
  };
  for (int m = 0; m < c.n; ++m)
    for (int t = 0; t <= max_degree; ++t) {
      ExactnessSpot s{m, t};
      s.ker = slice(m, t).size() - rank_of(m, t);
      s.im = m > 0 ? rank_of(m - 1, t) : 0;
      rep.spots.push_back(s);
    }
  return rep;
}

void check_b_relations(const QuotientModule& m) {
  const RingData& R = m.ring;
  const KMatrix zero(R.field, m.dim, m.dim);
  for (int i = 0; i < R.n; ++i) {
    KMatrix acc(R.field, m.dim, m.dim), power = KMatrix::identity(R.field, m.dim);
    for (int k = 0; k <= R.l[i]; ++k) {
      Scalar c = R.omega[i].coeff(Monomial::var(i, k), R.field);
      if (!c.is_zero()) acc = acc + power.scaled(c);
      power = power * m.actions[i];
    }
    if (!(acc == zero)) throw std::logic_error("module action violates omega_" + std::to_string(i + 1) + " = 0");
    for (int j = i + 1; j < R.n; ++j)
      if (!(m.actions[i] * m.actions[j] == (m.actions[j] * m.actions[i]).scaled(R.qij(i, j))))
        throw std::logic_error("module actions violate the q-commutation relation");
  }
}

QuotientModule cokernel_over_B(const PolyMatrix& m, const RingData& ring, const std::optional<GradingAssignment>& grading) {
  const auto pbw = pbw_basis(ring);
  ModBasis src, tgt;
  for (size_t r = 0; r < m.rows(); ++r)
    for (const auto& mo : pbw) src.push_back({r, mo});
  for (size_t c = 0; c < m.cols(); ++c)
    for (const auto& mo : pbw) tgt.push_back({c, mo});
  KMatrix lin = linearize(pm_quotient_nf(m, ring), ring, src, tgt, true);
  RrefResult red = rref(lin);
  std::vector<bool> pivot(tgt.size(), false);
  for (size_t p : red.pivots) pivot[p] = true;

  QuotientModule q;
  q.ring = ring;
  std::vector<size_t> qindex(tgt.size(), SIZE_MAX);
  for (size_t k = 0; k < tgt.size(); ++k)
    if (!pivot[k]) {
      qindex[k] = q.basis_labels.size();
      q.basis_labels.push_back(tgt[k]);
    }
  q.dim = q.basis_labels.size();

  std::map<std::pair<size_t, Monomial>, size_t> tindex;
  for (size_t k = 0; k < tgt.size(); ++k) tindex[tgt[k]] = k;
  for (int i = 0; i < ring.n; ++i) {
    KMatrix act(ring.field, q.dim, q.dim);
    for (size_t b = 0; b < q.dim; ++b) {
      const auto& [comp, mono] = q.basis_labels[b];
      QPoly img = quotient_normal_form(qp_mul(ring.var(i), QPoly::monomial(mono, Scalar::one(ring.field)), ring), ring);
      std::vector<Scalar> v(tgt.size(), Scalar::zero(ring.field));
      for (const auto& t : img.terms()) v[tindex.at({comp, t.m})] = t.c;
      reduce_by_rref(v, red);
      for (size_t k = 0; k < tgt.size(); ++k)
        if (!pivot[k] && !v[k].is_zero()) act.at(qindex[k], b) = v[k];
    }
    q.actions.push_back(std::move(act));
  }
  check_b_relations(q);

  if (grading && !ring.custom_omega) {
    // Generators e_c sit in degree max_col - col_c, so the lowest is 0.
    int max_col = 0;
    for (int v : grading->col_degrees) max_col = std::max(max_col, v);
    auto sdeg = [&](const std::pair<size_t, Monomial>& b) { return max_col - grading->row_degrees[b.first] + b.second.degree(); };
    auto tdeg = [&](const std::pair<size_t, Monomial>& b) { return max_col - grading->col_degrees[b.first] + b.second.degree(); };
    int top = 0;
    for (const auto& b : tgt) top = std::max(top, tdeg(b));
    std::vector<size_t> h(top + 1, 0);
    for (const auto& b : tgt) ++h[tdeg(b)];
    for (int t = 0; t <= top; ++t) {
      std::vector<size_t> rows;
      for (size_t s = 0; s < src.size(); ++s)
        if (sdeg(src[s]) == t) rows.push_back(s);
      if (rows.empty()) continue;
      KMatrix part(ring.field, rows.size(), lin.cols());
      for (size_t k = 0; k < rows.size(); ++k)
        for (size_t c = 0; c < lin.cols(); ++c) part.at(k, c) = lin.at(rows[k], c);
      h[t] -= k_rank(part);
    }
    size_t total = 0;
    for (size_t v : h) total += v;
    if (total != q.dim) throw std::logic_error("Hilbert function does not sum to the dimension");
    while (!h.empty() && h.back() == 0) h.pop_back();
    q.hilbert = h;
  }
  return q;
}

QuotientModule cyclic_quotient(const RingData& ring, const std::vector<QPoly>& gens) {
  PolyMatrix m(gens.size(), 1);
  for (size_t k = 0; k < gens.size(); ++k) m.at(k, 0) = gens[k];
  return cokernel_over_B(m, ring);
}

PolyMatrix tcok_presentation(const FactorCube& x) {
  size_t rows = 0;
  for (int i = 0; i < x.dim; ++i) rows += x.ranks[x.top() ^ (1u << i)];
  PolyMatrix d(rows, x.ranks[x.top()]);
  size_t off = 0;
  for (int i = 0; i < x.dim; ++i) {
    unsigned a = x.top() ^ (1u << i);
    d.set_block(off, 0, x.edge(i, a));
    off += x.ranks[a];
  }
  return d;
}

QuotientModule tcok(const FactorCube& x) {
  PolyMatrix d = tcok_presentation(x);
  return cokernel_over_B(d, x.ring, pm_grade_infer(d));
}

QuotientModule cok0(const FactorCube& x) {
  if (x.dim != 1) throw std::invalid_argument("cok0 needs a 1-dimensional cube");
  if (x.ring.n != 1) throw std::invalid_argument("cok0 needs a ring in one variable");
  return tcok(x);
}

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::isomorphic: return "isomorphic";
    case IsoVerdict::not_isomorphic_exhausted: return "not isomorphic (exhausted)";
    case IsoVerdict::not_isomorphic_probabilistic: return "not isomorphic (probabilistic)";
    default: return "unknown";
  }
}

namespace {

constexpr size_t kMaxIsoDim = 256;
constexpr double kExhaustiveLimit = 1e5;
constexpr int kRandomTrials = 200;

KMatrix combine(const KMatrix& basis, const std::vector<Scalar>& c, size_t rows, size_t cols) {
  KMatrix t(basis.field(), rows, cols);
  for (size_t h = 0; h < c.size(); ++h) {
    if (c[h].is_zero()) continue;
    for (size_t a = 0; a < rows; ++a)
      for (size_t b = 0; b < cols; ++b) t.at(a, b) += c[h] * basis.at(a * cols + b, h);
  }
  return t;
}

}  // namespace

ModuleReport module_invariants(const QuotientModule& m, const QuotientModule* n, uint64_t seed) {
  const RingData& R = m.ring;
  ModuleReport rep;
  rep.dim = m.dim;
  rep.hilbert = m.hilbert;
  KMatrix stack(R.field, m.dim * m.dim, R.n);
  for (int i = 0; i < R.n; ++i)
    for (size_t a = 0; a < m.dim; ++a)
      for (size_t b = 0; b < m.dim; ++b) stack.at(a * m.dim + b, i) = m.actions[i].at(a, b);
  rep.annihilator_deg1 = k_solve(stack).nullspace;
  if (!n) return rep;
  if (!(n->ring == R)) throw std::invalid_argument("modules over different rings");

  // Hom: T (dimN x dimM) with T M_i = N_i T.
  const size_t dm = m.dim, dn = n->dim, unknowns = dm * dn;
  KMatrix eqs(R.field, static_cast<size_t>(R.n) * unknowns, unknowns);
  for (int i = 0; i < R.n; ++i)
    for (size_t a = 0; a < dn; ++a)
      for (size_t b = 0; b < dm; ++b) {
        size_t row = i * unknowns + a * dm + b;
        for (size_t c = 0; c < dm; ++c) eqs.at(row, a * dm + c) += m.actions[i].at(c, b);
        for (size_t c = 0; c < dn; ++c) eqs.at(row, c * dm + b) -= n->actions[i].at(a, c);
      }
  KMatrix hom = unknowns ? k_solve(eqs).nullspace : KMatrix(R.field, 0, 0);
  rep.hom_dim = hom.cols();
  if (dm != dn) {
    rep.iso = IsoVerdict::not_isomorphic_exhausted;
    return rep;
  }
  if (dm == 0) {
    rep.iso = IsoVerdict::isomorphic;
    rep.intertwiner = KMatrix(R.field, 0, 0);
    return rep;
  }
  if (rep.hom_dim == 0) {
    rep.iso = IsoVerdict::not_isomorphic_exhausted;
    return rep;
  }
  if (dm > kMaxIsoDim) {
    rep.iso = IsoVerdict::unknown;
    return rep;
  }
  const size_t h = rep.hom_dim;
  auto accept = [&](const std::vector<Scalar>& c) {
    KMatrix t = combine(hom, c, dn, dm);
    if (k_rank(t) != dm) return false;
    rep.iso = IsoVerdict::isomorphic;
    rep.intertwiner = t;
    return true;
  };
  if (R.field.is_prime() && std::pow(static_cast<double>(R.field.p), static_cast<double>(h)) <= kExhaustiveLimit) {
    std::vector<uint32_t> digits(h, 0);
    for (;;) {
      size_t k = 0;
      while (k < h && ++digits[k] == R.field.p) digits[k++] = 0;
      if (k == h) break;
      std::vector<Scalar> c;
      for (uint32_t d : digits) c.push_back(Scalar::from_residue(R.field.p, d));
      if (accept(c)) return rep;
    }
    rep.iso = IsoVerdict::not_isomorphic_exhausted;
    return rep;
  }
  Rng rng(seed);
  for (int trial = 0; trial < kRandomTrials; ++trial) {
    std::vector<Scalar> c;
    for (size_t k = 0; k < h; ++k) c.push_back(random_scalar(R.field, rng));
    if (accept(c)) return rep;
  }
  rep.iso = IsoVerdict::not_isomorphic_probabilistic;
  return rep;
}

}  // namespace factoria
