#include "factoria/cube.hpp"

#include "factoria/parallel.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace factoria {

std::string vertex_key(unsigned alpha, int dim) {
  std::string s(dim, '0');
  for (int i = 0; i < dim; ++i)
    if (alpha >> i & 1u) s[i] = '1';
  return s;
}

unsigned parse_vertex_key(const std::string& key) {
  unsigned a = 0;
  for (size_t i = 0; i < key.size(); ++i) {
    if (key[i] == '1')
      a |= 1u << i;
    else if (key[i] != '0')
      throw std::invalid_argument("bad vertex key '" + key + "'");
  }
  return a;
}

std::vector<unsigned> lex_vertices(int dim) {
  std::vector<unsigned> v(1u << dim);
  std::iota(v.begin(), v.end(), 0u);
  std::sort(v.begin(), v.end(), [dim](unsigned a, unsigned b) { return vertex_key(a, dim) < vertex_key(b, dim); });
  return v;
}

FactorCube FactorCube::zero(const RingData& ring, const TypeData& type, int dim, std::vector<int> dirs) {
  FactorCube x;
  x.ring = ring;
  x.type = type;
  x.dim = dim;
  if (dirs.empty())
    for (int i = 0; i < dim; ++i) dirs.push_back(i);
  x.dirs = std::move(dirs);
  x.ranks.assign(1u << dim, 0);
  x.edges.assign(dim, std::vector<PolyMatrix>(1u << dim));
  return x;
}

bool FactorCube::commutative() const { return ring.commutative; }

void FactorCube::check_shapes() const {
  if (dim < 0 || dim > 12) throw std::invalid_argument("cube dimension out of range");
  if (static_cast<int>(dirs.size()) != dim) throw std::invalid_argument("direction list has wrong length");
  for (int i = 0; i < dim; ++i) {
    if (dirs[i] < 0 || dirs[i] >= ring.n) throw std::invalid_argument("direction refers to a missing omega");
    for (int j = 0; j < i; ++j)
      if (dirs[i] == dirs[j]) throw std::invalid_argument("repeated direction");
  }
  if (ranks.size() != vertices()) throw std::invalid_argument("rank table has wrong size");
  if (static_cast<int>(edges.size()) != dim) throw std::invalid_argument("edge table has wrong size");
  for (int i = 0; i < dim; ++i) {
    if (edges[i].size() != vertices()) throw std::invalid_argument("edge table has wrong size");
    for (unsigned a = 0; a < vertices(); ++a) {
      const PolyMatrix& m = edges[i][a];
      unsigned b = a ^ (1u << i);
      if (m.rows() != ranks[a] || m.cols() != ranks[b])
        throw std::invalid_argument("edge d" + std::to_string(i + 1) + "@" + vertex_key(a, dim) + " has shape " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                                    std::to_string(ranks[a]) + "x" + std::to_string(ranks[b]));
    }
  }
}

namespace {

struct CheckSpec {
  int kind;  // 0,1 edge; 2..5 squares S1..S4
  int i, j;
  unsigned base;
};

std::vector<CheckSpec> check_list(const FactorCube& x) {
  std::vector<CheckSpec> out;
  auto order = lex_vertices(x.dim);
  for (int i = 0; i < x.dim; ++i)
    for (unsigned a : order)
      if (!(a >> i & 1u)) {
        out.push_back({0, i, -1, a});
        out.push_back({1, i, -1, a});
      }
  for (int i = 0; i < x.dim; ++i)
    for (int j = i + 1; j < x.dim; ++j)
      for (unsigned a : order)
        if (!(a >> i & 1u) && !(a >> j & 1u))
          for (int k = 2; k <= 5; ++k) out.push_back({k, i, j, a});
  return out;
}

CheckReport run_check(const FactorCube& x, const CheckSpec& c) {
  const RingData& R = x.ring;
  CheckReport rep;
  PolyMatrix lhs, rhs;
  if (c.kind <= 1) {
    unsigned a = c.base, b = a | (1u << c.i);
    const PolyMatrix& d0 = x.edge(c.i, a);
    const PolyMatrix& d1 = x.edge(c.i, b);
    if (c.kind == 0) {
      lhs = pm_mul(d0, d1, R);
      rhs = PolyMatrix::diagonal(x.omega(c.i), x.ranks[a]);
      rep.check = "(E1)";
    } else {
      lhs = pm_mul(pm_sigma(x.sigma(c.i), d1), d0, R);
      rhs = PolyMatrix::diagonal(x.omega(c.i), x.ranks[b]);
      rep.check = "(E2)";
    }
    rep.where = "direction " + std::to_string(c.i + 1) + " at base " + vertex_key(a, x.dim);
  } else {
    // H = direction j, V = direction i; superscript (a,b) = (alpha_j, alpha_i).
    const int i = c.i, j = c.j;
    auto vtx = [&](int aj, int ai) { return c.base | (aj ? 1u << j : 0u) | (ai ? 1u << i : 0u); };
    auto H = [&](int aj, int ai) -> const PolyMatrix& { return x.edge(j, vtx(aj, ai)); };
    auto V = [&](int aj, int ai) -> const PolyMatrix& { return x.edge(i, vtx(aj, ai)); };
    const DiagonalAut& s = x.sigma(j);
    const DiagonalAut& sp = x.sigma(i);
    switch (c.kind) {
      case 2:
        lhs = pm_mul(V(0, 0), H(0, 1), R);
        rhs = pm_mul(H(0, 0), V(1, 0), R);
        break;
      case 3:
        lhs = pm_mul(pm_sigma(s, H(1, 0)), V(0, 0), R);
        rhs = pm_mul(pm_sigma(s, V(1, 0)), pm_sigma(s, H(1, 1)), R);
        break;
      case 4:
        lhs = pm_mul(pm_sigma(sp, V(0, 1)), H(0, 0), R);
        rhs = pm_mul(pm_sigma(sp, H(0, 1)), pm_sigma(sp, V(1, 1)), R);
        break;
      default:
        lhs = pm_mul(pm_sigma(s, pm_sigma(sp, V(1, 1))), pm_sigma(s, H(1, 0)), R).scaled(x.xi(i, j));
        rhs = pm_mul(pm_sigma(sp, pm_sigma(s, H(1, 1))), pm_sigma(sp, V(0, 1)), R);
        break;
    }
    rep.check = "(S" + std::to_string(c.kind - 1) + ")";
    rep.where = "directions (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") at base " + vertex_key(c.base, x.dim);
  }
  rep.difference = lhs - rhs;
  rep.pass = rep.difference.is_zero();
  return rep;
}

CheckReport first_failure(std::vector<CheckReport>& reps) {
  for (auto& r : reps)
    if (!r.pass) return std::move(r);
  return CheckReport{};
}

}  // namespace

CheckReport verify_cube(const FactorCube& x) {
  x.check_shapes();
  auto checks = check_list(x);
  std::vector<CheckReport> reps(checks.size());
  const long long n = static_cast<long long>(checks.size());
  const int threads = thread_cap();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long k = 0; k < n; ++k) reps[k] = run_check(x, checks[k]);
  return first_failure(reps);
}

CheckReport verify_cube_serial(const FactorCube& x) {
  x.check_shapes();
  for (const auto& c : check_list(x)) {
    CheckReport r = run_check(x, c);
    if (!r.pass) return r;
  }
  return CheckReport{};
}

namespace {

std::vector<int> default_dirs(int dim) {
  std::vector<int> d(dim);
  std::iota(d.begin(), d.end(), 0);
  return d;
}

// Scalar c on the base edge of direction j at `base` of theta^beta; the
// wrap edge carries c^{-1}.
Scalar theta_scalar(const FactorCube& shape, unsigned beta, int j, unsigned base) {
  Scalar c = Scalar::one(shape.ring.field);
  if (!(beta >> j & 1u)) return c;
  for (int i = 0; i < j; ++i)
    if ((base >> i & 1u) && (beta >> i & 1u)) c *= shape.xi(i, j).inv();
  return c;
}

}  // namespace

FactorCube theta_cube(unsigned beta, size_t rank, const RingData& ring, const TypeData& type, int dim,
                      std::vector<int> dirs) {
  if (dim < 0) dim = dirs.empty() ? ring.n : static_cast<int>(dirs.size());
  if (dirs.empty()) dirs = default_dirs(dim);
  FactorCube x = FactorCube::zero(ring, type, dim, dirs);
  std::fill(x.ranks.begin(), x.ranks.end(), rank);
  for (int j = 0; j < dim; ++j)
    for (unsigned a = 0; a < x.vertices(); ++a) {
      if (a >> j & 1u) continue;
      Scalar c = theta_scalar(x, beta, j, a);
      QPoly unit = QPoly::constant(c);
      QPoly w = x.omega(j).scaled(c.inv());
      if (beta >> j & 1u) {
        x.edge(j, a) = PolyMatrix::diagonal(x.omega(j).scaled(c), rank);
        x.edge(j, a | 1u << j) = PolyMatrix::diagonal(QPoly::constant(c.inv()), rank);
      } else {
        x.edge(j, a) = PolyMatrix::diagonal(unit, rank);
        x.edge(j, a | 1u << j) = PolyMatrix::diagonal(w, rank);
      }
    }
  return x;
}

FactorCube monomial_cube(const std::vector<int>& exps, const RingData& ring, const TypeData& type, std::vector<int> dirs) {
  const int dim = static_cast<int>(exps.size());
  if (ring.custom_omega) throw UnsupportedConfiguration("monomial_cube needs omega_i = x_i^{l_i}");
  if (dirs.empty()) dirs = default_dirs(dim);
  FactorCube x = FactorCube::zero(ring, type, dim, dirs);
  std::fill(x.ranks.begin(), x.ranks.end(), 1);
  for (int j = 0; j < dim; ++j) {
    const int vj = dirs[j], lj = ring.l[vj];
    if (exps[j] < 0 || exps[j] > lj) throw std::invalid_argument("monomial_cube exponent out of range");
    for (unsigned a = 0; a < x.vertices(); ++a) {
      if (a >> j & 1u) continue;
      Scalar c = Scalar::one(ring.field);
      for (int i = 0; i < j; ++i)
        if (a >> i & 1u) c *= ring.qij(dirs[i], vj).pow(-static_cast<long long>(exps[i]) * exps[j]);
      PolyMatrix base(1, 1), wrap(1, 1);
      base.at(0, 0) = QPoly::monomial(Monomial::var(vj, exps[j]), c);
      wrap.at(0, 0) = QPoly::monomial(Monomial::var(vj, lj - exps[j]), c.inv());
      x.edge(j, a) = base;
      x.edge(j, a | 1u << j) = wrap;
    }
  }
  return x;
}

FactorCube cube_1d(const RingData& ring, const TypeData& type, const PolyMatrix& d0, const PolyMatrix& d1, int dir) {
  FactorCube x = FactorCube::zero(ring, type, 1, {dir});
  x.ranks = {d0.rows(), d0.cols()};
  x.edges[0][0] = d0;
  x.edges[0][1] = d1;
  x.check_shapes();
  return x;
}

FactorCube shift_1d(const FactorCube& x) {
  if (x.dim != 1) throw std::invalid_argument("shift_1d needs a 1-dimensional cube");
  FactorCube y = x;
  y.ranks = {x.ranks[1], x.ranks[0]};
  y.edges[0][0] = x.edge(0, 1);
  y.edges[0][1] = pm_sigma(x.sigma(0).inverse(), x.edge(0, 0));
  return y;
}

FactorCube twist_cube(const FactorCube& x, int i) {
  FactorCube y = x;
  const DiagonalAut inv = x.sigma(i).inverse();
  for (int j = 0; j < x.dim; ++j)
    for (unsigned a = 0; a < x.vertices(); ++a) {
      PolyMatrix m = pm_sigma(inv, x.edge(j, a));
      if (j != i && (a >> j & 1u)) m = m.scaled(x.type.xi_between(x.dirs[i], x.dirs[j]));
      y.edge(j, a) = m;
    }
  return y;
}


FactorCube direct_sum(const FactorCube& x, const FactorCube& y) {
  if (x.dim != y.dim || x.dirs != y.dirs || !(x.ring == y.ring))
    throw std::invalid_argument("direct_sum: cubes over different data");
  FactorCube z = FactorCube::zero(x.ring, x.type, x.dim, x.dirs);
  for (unsigned a = 0; a < x.vertices(); ++a) z.ranks[a] = x.ranks[a] + y.ranks[a];
  for (int i = 0; i < x.dim; ++i)
    for (unsigned a = 0; a < x.vertices(); ++a) {
      unsigned b = a ^ (1u << i);
      PolyMatrix m(z.ranks[a], z.ranks[b]);
      m.set_block(0, 0, x.edge(i, a));
      m.set_block(x.ranks[a], x.ranks[b], y.edge(i, a));
      z.edge(i, a) = m;
    }
  return z;
}

FactorCube facet(const FactorCube& x, int i, int value) {
  std::vector<int> dirs;
  for (int j = 0; j < x.dim; ++j)
    if (j != i) dirs.push_back(x.dirs[j]);
  FactorCube y = FactorCube::zero(x.ring, x.type, x.dim - 1, dirs);
  y.dirs = dirs;
  auto lift = [&](unsigned m) {
    unsigned lo = m & ((1u << i) - 1), hi = (m >> i) << (i + 1);
    return lo | hi | (value ? 1u << i : 0u);
  };
  for (unsigned m = 0; m < y.vertices(); ++m) y.ranks[m] = x.ranks[lift(m)];
  for (int jp = 0; jp < y.dim; ++jp) {
    int j = jp < i ? jp : jp + 1;
    for (unsigned m = 0; m < y.vertices(); ++m) y.edges[jp][m] = x.edge(j, lift(m));
  }
  return y;
}

FactorCube swap_directions(const FactorCube& x, int i, int j) {
  auto sw = [&](unsigned a) {
    unsigned bi = a >> i & 1u, bj = a >> j & 1u;
    a &= ~((1u << i) | (1u << j));
    return a | (bi << j) | (bj << i);
  };
  FactorCube y = x;
  std::swap(y.dirs[i], y.dirs[j]);
  for (unsigned a = 0; a < x.vertices(); ++a) y.ranks[a] = x.ranks[sw(a)];
  for (int k = 0; k < x.dim; ++k) {
    int kk = k == i ? j : (k == j ? i : k);
    for (unsigned a = 0; a < x.vertices(); ++a) y.edges[k][a] = x.edges[kk][sw(a)];
  }
  return y;
}

FactorCube gauge_transform(const FactorCube& x, const std::vector<PolyMatrix>& f, const std::vector<PolyMatrix>& f_inv) {
  FactorCube y = x;
  for (int j = 0; j < x.dim; ++j)
    for (unsigned a = 0; a < x.vertices(); ++a) {
      unsigned b = a ^ (1u << j);
      PolyMatrix right = (a >> j & 1u) ? pm_sigma(x.sigma(j).inverse(), f_inv[b]) : f_inv[b];
      y.edge(j, a) = pm_mul(pm_mul(f[a], x.edge(j, a), x.ring), right, x.ring);
    }
  return y;
}

FactorCube random_gauge(const FactorCube& x, Rng& rng, int max_deg, int steps) {
  const RingData& R = x.ring;
  std::vector<PolyMatrix> f, f_inv;
  for (unsigned a = 0; a < x.vertices(); ++a) {
    const size_t r = x.ranks[a];
    PolyMatrix g = PolyMatrix::identity(R, r), gi = PolyMatrix::identity(R, r);
    for (size_t k = 0; k < r; ++k) {
      Scalar c = random_scalar(R.field, rng, true);
      g.at(k, k) = QPoly::constant(c);
      gi.at(k, k) = QPoly::constant(c.inv());
    }
    for (int s = 0; r >= 2 && s < steps; ++s) {
      size_t row = rng() % r, col = rng() % (r - 1);
      if (col >= row) ++col;
      QPoly p = random_poly(R, rng, max_deg, 2);
      PolyMatrix e = PolyMatrix::identity(R, r), ei = PolyMatrix::identity(R, r);
      e.at(row, col) = p;
      ei.at(row, col) = -p;
      g = pm_mul(g, e, R);
      gi = pm_mul(ei, gi, R);
    }
    f.push_back(std::move(g));
    f_inv.push_back(std::move(gi));
  }
  return gauge_transform(x, f, f_inv);
}

CheckReport verify_morphism(const CubeMorphism& f) {
  const FactorCube& X = f.source;
  const FactorCube& Y = f.target;
  CheckReport rep;
  rep.check = "(M)";
  if (X.dim != Y.dim || f.comps.size() != X.vertices()) throw std::invalid_argument("morphism has wrong number of components");
  for (unsigned a = 0; a < X.vertices(); ++a)
    if (f.comps[a].rows() != X.ranks[a] || f.comps[a].cols() != Y.ranks[a])
      throw std::invalid_argument("morphism component at " + vertex_key(a, X.dim) + " has wrong shape");
  for (int i = 0; i < X.dim; ++i)
    for (unsigned a : lex_vertices(X.dim)) {
      unsigned b = a ^ (1u << i);
      PolyMatrix lhs = pm_mul(f.comps[a], Y.edge(i, a), X.ring);
      PolyMatrix fb = (a >> i & 1u) ? pm_sigma(X.sigma(i).inverse(), f.comps[b]) : f.comps[b];
      PolyMatrix rhs = pm_mul(X.edge(i, a), fb, X.ring);
      PolyMatrix d = lhs - rhs;
      if (!d.is_zero()) {
        rep.pass = false;
        rep.where = "direction " + std::to_string(i + 1) + " at " + vertex_key(a, X.dim);
        rep.difference = d;
        return rep;
      }
    }
  return rep;
}

CubeMorphism identity_morphism(const FactorCube& x) {
  CubeMorphism f{x, x, {}};
  for (unsigned a = 0; a < x.vertices(); ++a) f.comps.push_back(PolyMatrix::identity(x.ring, x.ranks[a]));
  return f;
}

CubeMorphism compose(const CubeMorphism& f, const CubeMorphism& g) {
  CubeMorphism h{f.source, g.target, {}};
  for (size_t a = 0; a < f.comps.size(); ++a) h.comps.push_back(pm_mul(f.comps[a], g.comps[a], f.source.ring));
  return h;
}

namespace {

std::vector<unsigned> by_distance(unsigned center, int dim) {
  std::vector<unsigned> v = lex_vertices(dim);
  std::stable_sort(v.begin(), v.end(),
                   [center](unsigned a, unsigned b) { return std::popcount(a ^ center) < std::popcount(b ^ center); });
  return v;
}

int lowest_bit(unsigned m) { return std::countr_zero(m); }

}  // namespace

CubeMorphism theta_inclusion(const FactorCube& x, unsigned beta, const PolyMatrix& g) {
  const size_t k = g.rows();
  FactorCube th = theta_cube(beta, k, x.ring, x.type, x.dim, x.dirs);
  CubeMorphism f{th, x, std::vector<PolyMatrix>(x.vertices())};
  f.comps[beta] = g;
  for (unsigned w : by_distance(beta, x.dim)) {
    if (w == beta) continue;
    const int j = lowest_bit(w ^ beta);
    const unsigned v = w ^ (1u << j);
    PolyMatrix step = pm_mul(f.comps[v], x.edge(j, v), x.ring);
    if (beta >> j & 1u) {
      Scalar c = theta_scalar(th, beta, j, w);
      f.comps[w] = pm_sigma(x.sigma(j), step).scaled(c);
    } else {
      f.comps[w] = step.scaled(theta_scalar(th, beta, j, v).inv());
    }
  }
  return f;
}

CubeMorphism theta_projection(const FactorCube& x, unsigned beta, const PolyMatrix& h) {
  const size_t k = h.cols();
  const unsigned gamma = x.top() ^ beta;
  FactorCube th = theta_cube(beta, k, x.ring, x.type, x.dim, x.dirs);
  CubeMorphism f{x, th, std::vector<PolyMatrix>(x.vertices())};
  f.comps[gamma] = h;
  for (unsigned v : by_distance(gamma, x.dim)) {
    if (v == gamma) continue;
    const int j = lowest_bit(v ^ gamma);
    const unsigned w = v ^ (1u << j);
    if (beta >> j & 1u) {
      Scalar c = theta_scalar(th, beta, j, w);
      f.comps[v] = pm_mul(x.edge(j, v), pm_sigma(x.sigma(j).inverse(), f.comps[w]), x.ring).scaled(c);
    } else {
      f.comps[v] = pm_mul(x.edge(j, v), f.comps[w], x.ring).scaled(theta_scalar(th, beta, j, v).inv());
    }
  }
  return f;
}

PolyMatrix path_matrix(const FactorCube& x, unsigned from, unsigned to) {
  PolyMatrix m = PolyMatrix::identity(x.ring, x.ranks[from]);
  unsigned cur = from;
  for (int j = 0; j < x.dim; ++j)
    if ((cur ^ to) >> j & 1u) {
      m = pm_mul(m, x.edge(j, cur), x.ring);
      cur ^= 1u << j;
    }
  return m;
}

namespace {

// F^alpha = sum over terms of L * tau(S^beta) * R, tau the identity or sigma^{-1}.
struct HTerm {
  PolyMatrix left;
  unsigned beta;
  PolyMatrix right;
  bool twist;
};

std::vector<std::vector<HTerm>> homotopy_terms(const CubeMorphism& f) {
  const FactorCube& X = f.source;
  const FactorCube& Y = f.target;
  const RingData& R = X.ring;
  std::vector<std::vector<HTerm>> out(X.vertices());
  if (X.dim == 1) {
    out[0].push_back({X.edge(0, 0), 1, PolyMatrix::identity(R, Y.ranks[0]), false});
    out[0].push_back({PolyMatrix::identity(R, X.ranks[0]), 0, pm_sigma(X.sigma(0), Y.edge(0, 1)), false});
    out[1].push_back({PolyMatrix::identity(R, X.ranks[1]), 1, Y.edge(0, 0), false});
    out[1].push_back({X.edge(0, 1), 0, PolyMatrix::identity(R, Y.ranks[1]), true});
    return out;
  }
  if (!X.commutative()) throw UnsupportedConfiguration("homotopy search for noncommutative cubes of dimension >= 2");
  for (unsigned a = 0; a < X.vertices(); ++a)
    for (unsigned b = 0; b < X.vertices(); ++b)
      out[a].push_back({path_matrix(X, a, b), b, path_matrix(Y, X.top() ^ b, a), false});
  return out;
}

PolyMatrix apply_terms(const CubeMorphism& f, const std::vector<HTerm>& terms, const std::vector<PolyMatrix>& s) {
  const FactorCube& X = f.source;
  PolyMatrix acc(terms.front().left.rows(), terms.front().right.cols());
  for (const auto& t : terms) {
    PolyMatrix sb = t.twist ? pm_sigma(X.sigma(0).inverse(), s[t.beta]) : s[t.beta];
    acc = acc + pm_mul(pm_mul(t.left, sb, X.ring), t.right, X.ring);
  }
  return acc;
}

}  // namespace

int default_homotopy_degree(const CubeMorphism& f) {
  int d = 0;
  for (const auto& c : f.comps) d = std::max(d, c.max_degree());
  for (int i = 0; i < f.source.dim; ++i) {
    int e = 0;
    for (unsigned a = 0; a < f.source.vertices(); ++a)
      e = std::max({e, f.source.edge(i, a).max_degree(), f.target.edge(i, a).max_degree()});
    d += e;
  }
  return d;
}

bool verify_homotopy(const CubeMorphism& f, const HomotopyCertificate& cert) {
  auto terms = homotopy_terms(f);
  if (cert.s.size() != f.comps.size()) return false;
  for (unsigned b = 0; b < f.source.vertices(); ++b)
    if (cert.s[b].rows() != f.source.ranks[b] || cert.s[b].cols() != f.target.ranks[f.source.top() ^ b]) return false;
  for (unsigned a = 0; a < f.source.vertices(); ++a)
    if (!(apply_terms(f, terms[a], cert.s) == f.comps[a])) return false;
  return true;
}

constexpr double kMaxHomotopyEntries = 2e7;

std::optional<HomotopyCertificate> homotopy_solve(const CubeMorphism& f, int degree_bound) {
  const FactorCube& X = f.source;
  const FactorCube& Y = f.target;
  const RingData& R = X.ring;
  if (degree_bound < 0) degree_bound = default_homotopy_degree(f);
  auto terms = homotopy_terms(f);
  const auto monos = monomials_up_to(R.n, degree_bound);
  const DiagonalAut inv = X.dim == 1 ? X.sigma(0).inverse() : DiagonalAut::identity(R);

  // Unknowns: coefficient of monomial m in entry (r,c) of S^beta.
  std::vector<size_t> offset(X.vertices() + 1, 0);
  for (unsigned b = 0; b < X.vertices(); ++b)
    offset[b + 1] = offset[b] + X.ranks[b] * Y.ranks[X.top() ^ b] * monos.size();
  const size_t unknowns = offset.back();
  auto unknown_at = [&](unsigned b, size_t r, size_t c, size_t m) {
    return offset[b] + (r * Y.ranks[X.top() ^ b] + c) * monos.size() + m;
  };

  using Key = std::tuple<unsigned, size_t, size_t, Monomial>;
  std::map<Key, size_t> rows;
  auto row_of = [&](const Key& k) {
    auto it = rows.find(k);
    if (it != rows.end()) return it->second;
    size_t id = rows.size();
    rows.emplace(k, id);
    return id;
  };
  std::vector<std::vector<std::pair<size_t, Scalar>>> cols(unknowns);
  for (unsigned a = 0; a < X.vertices(); ++a)
    for (const auto& t : terms[a]) {
      const unsigned b = t.beta;
      const size_t rb = X.ranks[b], cb = Y.ranks[X.top() ^ b];
      for (size_t r = 0; r < rb; ++r)
        for (size_t c = 0; c < cb; ++c)
          for (size_t mi = 0; mi < monos.size(); ++mi) {
            Scalar coef = t.twist ? inv.on_monomial(monos[mi]) : Scalar::one(R.field);
            QPoly p = QPoly::monomial(monos[mi], coef);
            for (size_t i = 0; i < t.left.rows(); ++i) {
              if (t.left.at(i, r).is_zero()) continue;
              QPoly lp = qp_mul(t.left.at(i, r), p, R);
              for (size_t j = 0; j < t.right.cols(); ++j) {
                if (t.right.at(c, j).is_zero()) continue;
                QPoly prod = qp_mul(lp, t.right.at(c, j), R);
                for (const auto& term : prod.terms())
                  cols[unknown_at(b, r, c, mi)].push_back({row_of({a, i, j, term.m}), term.c});
              }
            }
          }
    }
  std::vector<std::pair<size_t, Scalar>> rhs;
  for (unsigned a = 0; a < X.vertices(); ++a)
    for (size_t i = 0; i < f.comps[a].rows(); ++i)
      for (size_t j = 0; j < f.comps[a].cols(); ++j)
        for (const auto& term : f.comps[a].at(i, j).terms()) rhs.push_back({row_of({a, i, j, term.m}), term.c});

  if (static_cast<double>(rows.size()) * static_cast<double>(unknowns) > kMaxHomotopyEntries)
    throw UnsupportedConfiguration("homotopy system of " + std::to_string(rows.size()) + " x " +
                                   std::to_string(unknowns) + " exceeds the dense solver limit; lower --degree");
  KMatrix m(R.field, rows.size(), unknowns), target(R.field, rows.size(), 1);
  for (size_t u = 0; u < unknowns; ++u)
    for (const auto& [r, c] : cols[u]) m.at(r, u) += c;
  for (const auto& [r, c] : rhs) target.at(r, 0) += c;
  SolveResult sol = k_solve(m, &target);
  if (!sol.solution) return std::nullopt;

  HomotopyCertificate cert;
  cert.degree_bound = degree_bound;
  for (unsigned b = 0; b < X.vertices(); ++b) {
    const size_t rb = X.ranks[b], cb = Y.ranks[X.top() ^ b];
    PolyMatrix s(rb, cb);
    for (size_t r = 0; r < rb; ++r)
      for (size_t c = 0; c < cb; ++c) {
        std::vector<Term> ts;
        for (size_t mi = 0; mi < monos.size(); ++mi) {
          const Scalar& v = sol.solution->at(unknown_at(b, r, c, mi), 0);
          if (!v.is_zero()) ts.push_back({monos[mi], v});
        }
        s.at(r, c) = QPoly::from_terms(std::move(ts));
      }
    cert.s.push_back(std::move(s));
  }
  if (!verify_homotopy(f, cert)) throw std::logic_error("homotopy certificate failed resubstitution");
  return cert;
}

std::string to_string(ProjectiveVerdict v) {
  switch (v) {
    case ProjectiveVerdict::projective: return "projective";
    case ProjectiveVerdict::not_projective: return "not_projective";
    default: return "undetermined";
  }
}

namespace {

bool unit_constant(const QPoly& p) { return p.is_constant() && !p.is_zero(); }

PolyMatrix unit_row(const RingData& R, size_t n, size_t k) {
  PolyMatrix m(1, n);
  m.at(0, k) = R.one();
  return m;
}

// Split off the summand theta^beta(1) given by inclusion iota and projection
// pi with constant composite; returns the complement ker(pi) in coordinates.
std::optional<FactorCube> split_off(const FactorCube& x, const CubeMorphism& iota, const CubeMorphism& pi) {
  const RingData& R = x.ring;
  std::vector<PolyMatrix> w(x.vertices()), q(x.vertices());
  for (unsigned a = 0; a < x.vertices(); ++a) {
    const size_t r = x.ranks[a];
    const PolyMatrix& io = iota.comps[a];
    const PolyMatrix& pr = pi.comps[a];
    PolyMatrix u = pm_mul(io, pr, R);
    if (!unit_constant(u.at(0, 0))) return std::nullopt;
    const Scalar u_inv = u.at(0, 0).constant_term(R.field).inv();
    std::optional<size_t> ka, kb;
    for (size_t k = 0; k < r; ++k) {
      if (!ka && unit_constant(io.at(0, k))) ka = k;
      if (!kb && unit_constant(pr.at(k, 0))) kb = k;
    }
    PolyMatrix wa(r - 1, r), qa(r, r - 1);
    if (ka) {
      const size_t k = *ka;
      const Scalar ik_inv = io.at(0, k).constant_term(R.field).inv();
      for (size_t j = 0, row = 0; j < r; ++j) {
        if (j == k) continue;
        QPoly cj = pr.at(j, 0).scaled(u_inv);
        for (size_t m = 0; m < r; ++m) wa.at(row, m) = -qp_mul(cj, io.at(0, m), R);
        wa.at(row, j) += R.one();
        ++row;
      }
      for (size_t m = 0, col = 0; m < r; ++m) {
        if (m == k) continue;
        qa.at(m, col) = R.one();
        qa.at(k, col) = -io.at(0, m).scaled(ik_inv);
        ++col;
      }
    } else if (kb) {
      const size_t k = *kb;
      const Scalar pk_inv = pr.at(k, 0).constant_term(R.field).inv();
      for (size_t j = 0, row = 0; j < r; ++j) {
        if (j == k) continue;
        wa.at(row, j) = R.one();
        wa.at(row, k) = -pr.at(j, 0).scaled(pk_inv);
        qa.at(j, row) = R.one();
        ++row;
      }
    } else {
      return std::nullopt;
    }
    w[a] = std::move(wa);
    q[a] = std::move(qa);
  }
  FactorCube y = x;
  for (unsigned a = 0; a < x.vertices(); ++a) y.ranks[a] = x.ranks[a] - 1;
  for (int j = 0; j < x.dim; ++j)
    for (unsigned a = 0; a < x.vertices(); ++a) {
      unsigned b = a ^ (1u << j);
      PolyMatrix right = (a >> j & 1u) ? pm_sigma(x.sigma(j).inverse(), q[b]) : q[b];
      y.edge(j, a) = pm_mul(pm_mul(w[a], x.edge(j, a), R), right, R);
    }
  return y;
}

}  // namespace

ProjectiveResult projective_test(const FactorCube& x) {
  if (!verify_cube(x).pass) throw std::invalid_argument("projective_test needs a verified cube");
  const RingData& R = x.ring;
  ProjectiveResult res;
  FactorCube cur = x;
  for (;;) {
    bool empty = std::all_of(cur.ranks.begin(), cur.ranks.end(), [](size_t r) { return r == 0; });
    if (empty) {
      res.verdict = ProjectiveVerdict::projective;
      res.reduced = cur;
      return res;
    }
    bool split = false, constant_terms = false;
    for (unsigned beta : lex_vertices(cur.dim)) {
      const unsigned gamma = cur.top() ^ beta;
      for (size_t p = 0; p < cur.ranks[beta] && !split; ++p) {
        CubeMorphism iota = theta_inclusion(cur, beta, unit_row(R, cur.ranks[beta], p));
        const PolyMatrix& ig = iota.comps[gamma];
        for (size_t c = 0; c < ig.cols() && !split; ++c) {
          if (ig.at(0, c).constant_term(R.field).is_zero()) continue;
          constant_terms = true;
          if (!ig.at(0, c).is_constant()) continue;
          CubeMorphism pi = theta_projection(cur, beta, unit_row(R, cur.ranks[gamma], c).transpose());
          if (!verify_morphism(iota).pass || !verify_morphism(pi).pass)
            throw std::logic_error("theta morphism failed verification");
          auto y = split_off(cur, iota, pi);
          if (!y) continue;
          CheckReport rep = verify_cube(*y);
          if (!rep.pass) throw std::logic_error("split complement failed " + rep.check + " " + rep.where);
          res.splits.push_back({beta, p, c});
          cur = std::move(*y);
          split = true;
        }
      }
      if (split) break;
    }
    if (!split) {
      res.reduced = cur;
      if (!constant_terms) {
        res.verdict = ProjectiveVerdict::not_projective;
        res.reason = "no theta summand: every theta composite has zero constant term";
      } else {
        res.verdict = ProjectiveVerdict::undetermined;
        res.reason = "no splitting found among unit-vector generators";
      }
      return res;
    }
  }
}

Mf0Result mf0_membership(const FactorCube& x) {
  Mf0Result res;
  bool undetermined = false, non_member = false;
  for (int i = 0; i < x.dim; ++i) {
    ProjectiveResult r = projective_test(facet(x, i, 1));
    if (r.verdict == ProjectiveVerdict::not_projective) non_member = true;
    if (r.verdict == ProjectiveVerdict::undetermined) undetermined = true;
    res.facets.push_back(std::move(r));
  }
  res.verdict = non_member ? ProjectiveVerdict::not_projective
                           : (undetermined ? ProjectiveVerdict::undetermined : ProjectiveVerdict::projective);
  return res;
}

}  // namespace factoria
