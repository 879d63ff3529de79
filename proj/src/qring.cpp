#include "factoria/qring.hpp"

#include "factoria/random.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace factoria {

int Monomial::degree() const {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

Monomial Monomial::operator+(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(e[i] + o.e[i]);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::var(int i, int power) {
  Monomial m;
  m.e[i] = static_cast<uint16_t>(power);
  return m;
}

QPoly QPoly::constant(const Scalar& c) { return monomial(Monomial{}, c); }

QPoly QPoly::monomial(const Monomial& m, const Scalar& c) {
  QPoly p;
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

QPoly QPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
  QPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
      if (p.terms_.back().c.is_zero()) p.terms_.pop_back();
    } else if (!t.c.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool QPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m.degree() == 0);
}

Scalar QPoly::constant_term(const FieldSpec& f) const { return coeff(Monomial{}, f); }

Scalar QPoly::coeff(const Monomial& m, const FieldSpec& f) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) { return t.m < x; });
  if (it != terms_.end() && it->m == m) return it->c;
  return Scalar::zero(f);
}

int QPoly::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.m.degree());
  return d;
}

bool QPoly::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.m.degree() != terms_[0].m.degree()) return false;
  return true;
}

QPoly QPoly::operator+(const QPoly& o) const {
  QPoly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].m < o.terms_[j].m)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].m < terms_[i].m) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar c = terms_[i].c + o.terms_[j].c;
      if (!c.is_zero()) r.terms_.push_back({terms_[i].m, c});
      ++i;
      ++j;
    }
  }
  return r;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::scaled(const Scalar& s) const {
  if (s.is_zero()) return QPoly();
  QPoly r = *this;
  for (auto& t : r.terms_) t.c *= s;
  return r;
}

RingData RingData::make_commutative(const FieldSpec& f, std::vector<int> l) {
  RingData r;
  r.n = static_cast<int>(l.size());
  r.field = f;
  r.l = std::move(l);
  r.q.assign(r.n * r.n, Scalar::one(f));
  r.commutative = true;
  for (int i = 0; i < r.n; ++i) r.omega.push_back(QPoly::monomial(Monomial::var(i, r.l[i]), Scalar::one(f)));
  r.validate();
  return r;
}

RingData RingData::make_quantum(const FieldSpec& f, const std::vector<std::vector<Scalar>>& q, std::vector<int> l) {
  RingData r = make_commutative(f, std::move(l));
  if (static_cast<int>(q.size()) != r.n) throw std::invalid_argument("q-table size does not match l");
  r.commutative = true;
  for (int i = 0; i < r.n; ++i) {
    if (static_cast<int>(q[i].size()) != r.n) throw std::invalid_argument("q-table is not square");
    for (int j = 0; j < r.n; ++j) {
      r.q[i * r.n + j] = q[i][j];
      if (!q[i][j].is_one()) r.commutative = false;
    }
  }
  r.validate();
  return r;
}

RingData RingData::make_uniform(const FieldSpec& f, int n, const Scalar& qv, std::vector<int> l) {
  std::vector<std::vector<Scalar>> q(n, std::vector<Scalar>(n, Scalar::one(f)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      q[i][j] = qv;
      q[j][i] = qv.inv();
    }
  return make_quantum(f, q, std::move(l));
}

RingData RingData::make_custom_omega(const FieldSpec& f, std::vector<QPoly> omega) {
  const int n = static_cast<int>(omega.size());
  std::vector<int> l(n);
  for (int i = 0; i < n; ++i) {
    int d = omega[i].degree();
    for (const auto& t : omega[i].terms())
      for (int k = 0; k < kMaxVars; ++k)
        if (k != i && t.m.e[k]) throw std::invalid_argument("omega_" + std::to_string(i + 1) + " must be univariate in x_" + std::to_string(i + 1));
    if (d < 1) throw std::invalid_argument("omega_" + std::to_string(i + 1) + " must have positive degree");
    l[i] = d;
  }
  RingData r = make_commutative(f, l);
  for (int i = 0; i < n; ++i)
    if (!(omega[i] == r.omega[i])) r.custom_omega = true;
  r.omega = std::move(omega);
  return r;
}

void RingData::validate() const {
  if (n < 0 || n > kMaxVars) throw std::invalid_argument("variable count must be in [0," + std::to_string(kMaxVars) + "]");
  if (static_cast<int>(l.size()) != n) throw std::invalid_argument("l has wrong length");
  for (int v : l)
    if (v < 1) throw std::invalid_argument("exponents l_i must be >= 1");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Scalar& a = qij(i, j);
      if (a.modulus() != (field.is_prime() ? field.p : 0)) throw std::invalid_argument("q-table entry from another field");
      if (a.is_zero()) throw std::invalid_argument("q-table entries must be nonzero");
      if (i == j && !a.is_one()) throw std::invalid_argument("q_ii must equal 1");
      if (!(a * qij(j, i)).is_one()) throw std::invalid_argument("q_ij q_ji must equal 1");
    }
}

bool RingData::operator==(const RingData& o) const {
  return n == o.n && field == o.field && q == o.q && l == o.l && omega == o.omega;
}

Scalar RingData::monomial_factor(const Monomial& a, const Monomial& b) const {
  Scalar f = Scalar::one(field);
  if (commutative) return f;
  for (int i = 1; i < n; ++i) {
    if (!a.e[i]) continue;
    for (int j = 0; j < i; ++j) {
      long long e = static_cast<long long>(a.e[i]) * b.e[j];
      if (e) f *= qij(i, j).pow(e);
    }
  }
  return f;
}

QPoly qp_mul(const QPoly& f, const QPoly& g, const RingData& ring) {
  if (f.is_zero() || g.is_zero()) return QPoly();
  std::vector<Term> out;
  out.reserve(f.terms().size() * g.terms().size());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      Scalar c = a.c * b.c;
      if (!ring.commutative) c *= ring.monomial_factor(a.m, b.m);
      out.push_back({a.m + b.m, c});
    }
  return QPoly::from_terms(std::move(out));
}

QPoly qp_pow(const QPoly& f, int e, const RingData& ring) {
  QPoly r = ring.one();
  for (int i = 0; i < e; ++i) r = qp_mul(r, f, ring);
  return r;
}

DiagonalAut DiagonalAut::identity(const RingData& ring) {
  return {std::vector<Scalar>(ring.n, Scalar::one(ring.field))};
}

DiagonalAut DiagonalAut::inverse() const {
  DiagonalAut r = *this;
  for (auto& x : r.c) x = x.inv();
  return r;
}

DiagonalAut DiagonalAut::then(const DiagonalAut& o) const {
  DiagonalAut r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] * o.c[i];
  return r;
}

bool DiagonalAut::is_identity() const {
  for (const auto& x : c)
    if (!x.is_one()) return false;
  return true;
}

Scalar DiagonalAut::on_monomial(const Monomial& m) const {
  Scalar f = Scalar::one(c.empty() ? FieldSpec{} : c[0].field());
  for (size_t j = 0; j < c.size(); ++j)
    if (m.e[j]) f *= c[j].pow(m.e[j]);
  return f;
}

QPoly qp_apply_aut(const DiagonalAut& sigma, const QPoly& f) {
  if (sigma.is_identity()) return f;
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) out.push_back({t.m, t.c * sigma.on_monomial(t.m)});
  return QPoly::from_terms(std::move(out));
}

Scalar TypeData::xi_between(int i, int j) const {
  if (i == j) return Scalar::one(xi.empty() ? FieldSpec{} : xi[0].field());
  if (i < j) return xi[i * n + j];
  return xi[j * n + i].inv();
}

bool TypeData::operator==(const TypeData& o) const {
  if (n != o.n || xi != o.xi || sigmas.size() != o.sigmas.size()) return false;
  for (size_t i = 0; i < sigmas.size(); ++i)
    if (sigmas[i].c != o.sigmas[i].c) return false;
  return true;
}

TypeData canonical_type(const RingData& ring) {
  TypeData t;
  t.n = ring.n;
  t.xi.assign(ring.n * ring.n, Scalar::one(ring.field));
  for (int i = 0; i < ring.n; ++i) {
    DiagonalAut s = DiagonalAut::identity(ring);
    for (int j = 0; j < ring.n; ++j) s.c[j] = ring.qij(i, j).pow(ring.l[i]);
    t.sigmas.push_back(s);
  }
  for (int i = 0; i < ring.n; ++i)
    for (int j = i + 1; j < ring.n; ++j)
      t.xi[i * ring.n + j] = ring.qij(i, j).pow(static_cast<long long>(ring.l[i]) * ring.l[j]);
  return t;
}

AxiomReport check_type_axioms(const RingData& ring, const TypeData& type, uint64_t seed, int samples) {
  AxiomReport rep;
  auto fail = [&](std::string what, std::string detail) {
    if (rep.pass) {
      rep.pass = false;
      rep.violated = std::move(what);
      rep.detail = std::move(detail);
    }
  };
  auto idx = [](int i) { return std::to_string(i + 1); };
  try {
    ring.validate();
  } catch (const std::exception& e) {
    fail("(ring) q-table invariants", e.what());
    return rep;
  }
  if (type.n != ring.n || static_cast<int>(type.sigmas.size()) != ring.n) {
    fail("(shape) type data size", "type data does not match the ring");
    return rep;
  }
  if (ring.custom_omega) {
    for (int i = 0; i < ring.n; ++i)
      if (!type.sigmas[i].is_identity()) fail("(T1) sigma_" + idx(i) + " = Id for central omega", "");
    for (int i = 0; i < ring.n; ++i)
      for (int j = i + 1; j < ring.n; ++j)
        if (!type.xi_between(i, j).is_one()) fail("(T2) xi_" + idx(i) + idx(j) + " = 1 for central omega", "");
    return rep;
  }

  Rng rng(seed);
  std::vector<QPoly> probes;
  for (int j = 0; j < ring.n; ++j) probes.push_back(ring.var(j));
  for (int s = 0; s < samples; ++s) probes.push_back(random_poly(ring, rng, 3, 4));

  for (int i = 0; i < ring.n && rep.pass; ++i) {
    const QPoly& w = ring.omega[i];
    for (const auto& a : probes) {
      QPoly lhs = qp_mul(w, a, ring);
      QPoly rhs = qp_mul(qp_apply_aut(type.sigmas[i], a), w, ring);
      if (!(lhs == rhs)) {
        fail("(T1) omega_" + idx(i) + " a = sigma_" + idx(i) + "(a) omega_" + idx(i), "a = " + to_string(a, ring.n));
        break;
      }
    }
  }
  for (int i = 0; i < ring.n && rep.pass; ++i) {
    if (!(qp_apply_aut(type.sigmas[i], ring.omega[i]) == ring.omega[i]))
      fail("(T2) sigma_" + idx(i) + "(omega_" + idx(i) + ") = omega_" + idx(i), "");
  }
  for (int i = 0; i < ring.n && rep.pass; ++i)
    for (int j = i + 1; j < ring.n && rep.pass; ++j) {
      const Scalar x = type.xi_between(i, j);
      if (x.is_zero()) {
        fail("(T2) xi_" + idx(i) + idx(j) + " invertible", "");
        break;
      }
      if (!(qp_apply_aut(type.sigmas[i], ring.omega[j]) == ring.omega[j].scaled(x)))
        fail("(T2) sigma_" + idx(i) + "(omega_" + idx(j) + ") = xi_" + idx(i) + idx(j) + " omega_" + idx(j), "xi = " + x.str());
      else if (!(qp_apply_aut(type.sigmas[j], ring.omega[i]) == ring.omega[i].scaled(x.inv())))
        fail("(T2) sigma_" + idx(j) + "(omega_" + idx(i) + ") = xi_" + idx(i) + idx(j) + "^-1 omega_" + idx(i), "xi = " + x.str());
    }
  for (int i = 0; i < ring.n && rep.pass; ++i)
    for (int j = i + 1; j < ring.n && rep.pass; ++j) {
      const Scalar x = type.xi_between(i, j);
      for (const auto& a : probes) {
        QPoly lhs = qp_apply_aut(type.sigmas[i], qp_apply_aut(type.sigmas[j], a));
        QPoly mid = qp_apply_aut(type.sigmas[j], qp_apply_aut(type.sigmas[i], a));
        QPoly rhs = mid.scaled(x).scaled(x.inv());
        if (!(lhs == rhs)) {
          fail("(compat) sigma_" + idx(i) + " sigma_" + idx(j) + "(a) = xi sigma_" + idx(j) + " sigma_" + idx(i) + "(a) xi^-1",
               "a = " + to_string(a, ring.n));
          break;
        }
      }
    }
  return rep;
}

QPoly reduce_modulo(const QPoly& f, const RingData& ring, const std::vector<int>& which) {
  if (!ring.custom_omega) {
    std::vector<Term> keep;
    for (const auto& t : f.terms()) {
      bool dead = false;
      for (int i : which)
        if (t.m.e[i] >= ring.l[i]) dead = true;
      if (!dead) keep.push_back(t);
    }
    return QPoly::from_terms(std::move(keep));
  }
  // Univariate omegas in distinct variables form a Groebner basis, so
  // repeated leading-term division gives the unique remainder.
  QPoly r = f;
  for (int i : which) {
    const QPoly& w = ring.omega[i];
    const Scalar lc_inv = w.coeff(Monomial::var(i, ring.l[i]), ring.field).inv();
    for (;;) {
      const Term* hit = nullptr;
      for (const auto& t : r.terms())
        if (t.m.e[i] >= ring.l[i] && (!hit || t.m.e[i] > hit->m.e[i])) hit = &t;
      if (!hit) break;
      Monomial shift = hit->m;
      shift.e[i] = static_cast<uint16_t>(shift.e[i] - ring.l[i]);
      QPoly sub = qp_mul(QPoly::monomial(shift, hit->c * lc_inv), w, ring);
      r = r - sub;
    }
  }
  return r;
}

QPoly quotient_normal_form(const QPoly& f, const RingData& ring) {
  std::vector<int> all(ring.n);
  for (int i = 0; i < ring.n; ++i) all[i] = i;
  return reduce_modulo(f, ring, all);
}

std::vector<Monomial> pbw_basis(const RingData& ring) {
  std::vector<Monomial> out;
  Monomial m;
  for (;;) {
    out.push_back(m);
    int i = ring.n - 1;
    while (i >= 0 && m.e[i] + 1 >= ring.l[i]) {
      m.e[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++m.e[i];
  }
  return out;
}

static void gen_monomials(int n, int d, int pos, Monomial& cur, std::vector<Monomial>& out) {
  if (pos == n - 1) {
    cur.e[pos] = static_cast<uint16_t>(d);
    out.push_back(cur);
    cur.e[pos] = 0;
    return;
  }
  for (int k = 0; k <= d; ++k) {
    cur.e[pos] = static_cast<uint16_t>(k);
    gen_monomials(n, d - k, pos + 1, cur, out);
  }
  cur.e[pos] = 0;
}

std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.push_back(Monomial{});
    return out;
  }
  Monomial cur;
  gen_monomials(n, d, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> monomials_up_to(int n, int d) {
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k) {
    auto v = monomials_of_degree(n, k);
    out.insert(out.end(), v.begin(), v.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const QPoly& f, int n) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    bool unit = it->m.degree() > 0 && it->c.is_one();
    if (!unit) os << it->c.str();
    for (int i = 0; i < n; ++i) {
      if (!it->m.e[i]) continue;
      if (!unit) os << "*";
      unit = false;
      os << "x" << (i + 1);
      if (it->m.e[i] > 1) os << "^" << it->m.e[i];
    }
  }
  return os.str();
}

}  // namespace factoria
