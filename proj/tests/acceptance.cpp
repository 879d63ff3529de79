#include "factoria/examples.hpp"
#include "factoria/gamma.hpp"
#include "factoria/hmf.hpp"
#include "factoria/homology.hpp"
#include "factoria/io.hpp"
#include "factoria/random.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace factoria;

namespace {

const FieldSpec F101 = FieldSpec::prime(101);
const FieldSpec F7 = FieldSpec::prime(7);
const FieldSpec Q = FieldSpec::rationals();

struct Outcome {
  bool pass = true;
  std::string first_failure;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      first_failure = what;
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int k, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s >= limit_s) o.require(false, "time limit " + std::to_string(limit_s) + " s exceeded");
  if (!o.pass) ++failures;
  std::string text = o.detail.str();
  if (!o.pass) text += " | first failure: " + o.first_failure;
  std::printf("criterion %d: %s (%.3f s) %s\n", k, o.pass ? "PASS" : "FAIL", s, text.c_str());
  std::fflush(stdout);
}

RingData quantum(int n, long q, std::vector<int> l) { return RingData::make_uniform(F101, n, Scalar(F101, q), std::move(l)); }

// The example cube rebuilt from the displayed column-oriented matrices.
FactorCube displayed_ci2(const FieldSpec& field, const std::string& f) {
  auto coeffs = parse_coefficients(field, f);
  FactorCube x = example_ci2(field, coeffs);
  Json j = cube_to_json(x, Orientation::column);
  for (const auto& [key, m] : ci2_column_matrices(x.ring, coeffs)) {
    Json e = matrix_to_json(m, x.ring, Orientation::row);
    e.erase("orientation");
    j["edges"][key] = e;
  }
  return cube_from_json(j);
}

// dim k[t]/(f) as the cokernel of multiplication by f on polynomials of
// degree <= N.
size_t one_variable_quotient_dim(const FieldSpec& field, const std::string& f) {
  RingData r = RingData::make_commutative(field, {1});
  PolyMatrix m(1, 1);
  m.at(0, 0) = univariate(r, 0, parse_coefficients(field, f));
  const int N = 8;
  KMatrix lin = pm_to_linear_truncated(m, r, N);
  return lin.cols() - k_rank(lin);
}

std::vector<FactorCube> theta_suite() {
  std::vector<FactorCube> out;
  for (int n = 1; n <= 3; ++n) {
    RingData rs[2] = {RingData::make_commutative(F101, std::vector<int>(n, 2)), quantum(n, 5, std::vector<int>(n, 2))};
    for (const RingData& r : rs)
      for (unsigned beta = 0; beta < (1u << n); ++beta) out.push_back(theta_cube(beta, 1, r, canonical_type(r)));
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, 1.0, [](Outcome& o) {
    for (const FieldSpec& field : {Q, F7})
      for (const char* f : {"0,0,1", "0,0,0,1"}) {
        std::string tag = std::string(f) + " over " + field.describe();
        FactorCube x = displayed_ci2(field, f);
        const RingData& r = x.ring;
        QPoly delta = divided_difference(r, parse_coefficients(field, f));
        QPoly expect = std::string(f) == "0,0,1" ? r.var(0) + r.var(1)
                                                 : qp_mul(r.var(0), r.var(0), r) + qp_mul(r.var(0), r.var(1), r) +
                                                       qp_mul(r.var(1), r.var(1), r);
        o.require(delta == expect, "divided difference " + tag);
        for (int i = 0; i < 2; ++i)
          for (unsigned a = 0; a < 4; ++a) {
            PolyMatrix p = pm_mul(x.edge(i, a), x.edge(i, a ^ (1u << i)), r);
            o.require(p == PolyMatrix::diagonal(x.omega(i), 2), "edge product " + tag);
          }
        CheckReport rep = verify_cube(x);
        o.require(rep.pass, "verify " + tag + " " + rep.check + " " + rep.where);
        o.require(mf0_membership(x).member(), "MF00 membership " + tag);
      }
    o.detail << "8 matrices for f=t^2 and f=t^3 over Q and F_7: edges, squares and MF00 membership";
  });

  criterion(2, 0, [](Outcome& o) {
    struct Case {
      FieldSpec field;
      const char* f;
      size_t deg;
    };
    for (const Case& c : {Case{F7, "0,0,1", 2}, Case{Q, "0,0,0,1", 3}}) {
      FactorCube x = example_ci2(c.field, parse_coefficients(c.field, c.f));
      QuotientModule m = tcok(x);
      ModuleReport rep = module_invariants(m);
      size_t oracle = one_variable_quotient_dim(c.field, c.f);
      o.detail << "f=" << c.f << " over " << c.field.describe() << ": dim TCok " << m.dim << ", oracle " << oracle
               << ", degree-1 annihilators " << rep.annihilator_deg1.cols() << "; ";
      o.require(oracle == c.deg, "oracle dimension");
      o.require(m.dim == oracle, "dim TCok = deg f for f=" + std::string(c.f));
      o.require(rep.annihilator_deg1.cols() > 0, "degree-1 annihilator for f=" + std::string(c.f));
    }
    // Literal identification with B/(x-y) versus the computed module.
    FactorCube x = example_ci2(F7, parse_coefficients(F7, "0,0,1"));
    QuotientModule m = tcok(x);
    const RingData& r = x.ring;
    QuotientModule minus = cyclic_quotient(r, {r.var(0) - r.var(1)}), plus = cyclic_quotient(r, {r.var(0) + r.var(1)});
    o.detail << "t^2 over F_7 vs B/(x-y): " << to_string(*module_invariants(m, &minus).iso) << ", vs B/(x+y): "
             << to_string(*module_invariants(m, &plus).iso);
  });

  criterion(3, 5.0, [](Outcome& o) {
    size_t count = 0;
    for (const FactorCube& x : theta_suite()) {
      std::string tag = "n=" + std::to_string(x.dim) + (x.ring.commutative ? " commutative" : " quantum");
      o.require(verify_cube(x).pass, "verify " + tag);
      o.require(projective_test(x).verdict == ProjectiveVerdict::projective, "projective " + tag);
      ++count;
    }
    for (int n = 1; n <= 3; ++n) {
      RingData rs[2] = {RingData::make_commutative(F101, std::vector<int>(n, 2)), quantum(n, 5, std::vector<int>(n, 2))};
      for (const RingData& r : rs)
        for (unsigned beta = 0; beta < (1u << n); ++beta) {
          size_t expect = beta == (1u << n) - 1 ? (1u << n) : 0;
          o.require(tcok(theta_cube(beta, 1, r, canonical_type(r))).dim == expect,
                    "tcok dim n=" + std::to_string(n) + " beta=" + vertex_key(beta, n));
        }
    }
    o.detail << count << " theta objects (n=1,2,3; commutative and quantum F_101, q=5, l=2)";
  });

  criterion(4, 0, [](Outcome& o) {
    RingData r = quantum(2, 5, {2, 2});
    TypeData t = canonical_type(r);
    GammaContext ctx = gamma_context(r, t, 1);
    const DiagonalAut& sp = t.sigmas[0];
    const Scalar xi = t.xi_between(0, 1);
    GammaElement w = GammaElement::diagonal(r.omega[0]), one = GammaElement::unit(ctx);
    Rng rng(4);
    size_t assoc = 0, unit = 0, hom = 0, normal = 0;
    for (int k = 0; k < 1000; ++k) {
      GammaElement x = random_gamma(ctx, rng), y = random_gamma(ctx, rng), z = random_gamma(ctx, rng);
      assoc += !(gamma_mul(ctx, gamma_mul(ctx, x, y), z) == gamma_mul(ctx, x, gamma_mul(ctx, y, z)));
      unit += !(gamma_mul(ctx, one, x) == x && gamma_mul(ctx, x, one) == x);
      hom += !(sigma_tilde(gamma_mul(ctx, x, y), sp, xi) == gamma_mul(ctx, sigma_tilde(x, sp, xi), sigma_tilde(y, sp, xi)) &&
               sigma_tilde(gamma_add(x, y), sp, xi) == gamma_add(sigma_tilde(x, sp, xi), sigma_tilde(y, sp, xi)));
      normal += !(gamma_mul(ctx, w, x) == gamma_mul(ctx, sigma_tilde(x, sp, xi), w));
    }
    o.require(assoc + unit + hom + normal == 0, "identity failures");
    o.detail << "1000 samples each over F_101, q=5: failures assoc " << assoc << ", unit " << unit << ", sigma~ " << hom
             << ", normality " << normal;
  });

  criterion(5, 0, [](Outcome& o) {
    Rng rng(5);
    std::vector<RingData> rings = {RingData::make_commutative(F101, {3}), RingData::make_commutative(Q, {2, 2}),
                                   quantum(2, 5, {2, 2}), quantum(2, 3, {2, 3})};
    size_t done = 0;
    for (int k = 0; k < 50; ++k) {
      const RingData& r = rings[k % rings.size()];
      TypeData t = canonical_type(r);
      int dir = r.n - 1;
      FactorCube x;
      int pieces = 1 + static_cast<int>(rng() % 3);
      for (int p = 0; p < pieces; ++p) {
        FactorCube piece = rng() % 2 ? theta_cube(static_cast<unsigned>(rng() % 2), 1 + rng() % 2, r, t, 1, {dir})
                                     : monomial_cube({static_cast<int>(rng() % (r.l[dir] + 1))}, r, t, {dir});
        x = p ? direct_sum(x, piece) : piece;
      }
      x = random_gauge(x, rng, 1, 3);
      if (!verify_cube(x).pass) {
        o.require(false, "generated cube does not verify");
        continue;
      }
      RoundtripReport rep = phi_psi_roundtrip(x, rng(), 4);
      o.require(rep.pass(), "roundtrip " + std::to_string(k) + ": " + rep.detail);
      ++done;
    }
    o.detail << done << " random verified 1D cubes (commutative and quantum)";
  });

  criterion(6, 0, [](Outcome& o) {
    Rng rng(6);
    RingData r = RingData::make_commutative(F101, {2});
    TypeData t = canonical_type(r);
    auto random_matrix = [&](size_t rows, size_t cols) {
      PolyMatrix m(rows, cols);
      for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = random_poly(r, rng, 2, 2);
      return m;
    };
    auto random_1d = [&]() {
      FactorCube x;
      int pieces = 1 + static_cast<int>(rng() % 2);
      for (int p = 0; p < pieces; ++p) {
        FactorCube piece = rng() % 2 ? theta_cube(static_cast<unsigned>(rng() % 2), 1, r, t)
                                     : monomial_cube({static_cast<int>(rng() % 3)}, r, t);
        x = p ? direct_sum(x, piece) : piece;
      }
      return random_gauge(x, rng, 1, 2);
    };
    size_t certified = 0;
    for (int k = 0; k < 100; ++k) {
      FactorCube x = random_1d(), y = random_1d();
      size_t p = 1 + rng() % 2, q = 1 + rng() % 2;
      CubeMorphism f = compose(theta_projection(x, 0, random_matrix(x.ranks[1], p)), theta_inclusion(y, 0, random_matrix(p, y.ranks[0])));
      CubeMorphism g = compose(theta_projection(x, 1, random_matrix(x.ranks[0], q)), theta_inclusion(y, 1, random_matrix(q, y.ranks[1])));
      for (size_t a = 0; a < f.comps.size(); ++a) f.comps[a] = f.comps[a] + g.comps[a];
      if (!verify_morphism(f).pass) {
        o.require(false, "constructed morphism is not a morphism");
        continue;
      }
      auto cert = homotopy_solve(f);
      o.require(cert.has_value(), "no certificate for morphism " + std::to_string(k));
      if (cert && verify_homotopy(f, *cert)) ++certified;
    }
    o.require(certified == 100, "certificates re-verified");
    FactorCube xx = cube_1d(r, t, PolyMatrix::diagonal(r.var(0), 1), PolyMatrix::diagonal(r.var(0), 1));
    bool none = true;
    for (int d = 0; d <= 6; ++d) none = none && !homotopy_solve(identity_morphism(xx), d).has_value();
    o.require(none, "identity on (x,x) should have no certificate up to D=6");
    o.detail << "(a) " << certified << "/100 certificates re-verified; (b) identity on (x,x): "
             << (none ? "no certificate up to D=6" : "certificate found");
  });

  criterion(7, 0, [](Outcome& o) {
    std::vector<FactorCube> cubes = theta_suite();
    for (const FieldSpec& field : {Q, F7})
      for (const char* f : {"0,0,1", "0,0,0,1"}) cubes.push_back(example_ci2(field, parse_coefficients(field, f)));
    Rng rng(7);
    for (int n = 1; n <= 3; ++n) {
      RingData r = quantum(n, 5, std::vector<int>(n, 2));
      cubes.push_back(random_gauge(direct_sum(theta_cube(0, 1, r, canonical_type(r)), theta_cube((1u << n) - 1, 1, r, canonical_type(r))), rng));
    }
    size_t composed = 0, exact_checked = 0, spots = 0;
    for (const FactorCube& x : cubes) {
      TotalComplex c = total_complex(x);
      o.require(composites_vanish(c), "composites vanish");
      ++composed;
      bool gradable = x.ranks[x.top()] > 0 && tcok(x).hilbert.has_value();
      if (!gradable) continue;
      int max_deg = 0;
      for (int i = 0; i < x.dim; ++i)
        for (unsigned a = 0; a < x.vertices(); ++a) max_deg = std::max(max_deg, x.edge(i, a).max_degree());
      ExactnessReport rep = check_exactness_truncated(c, 2 * max_deg);
      if (rep.skipped) {
        o.detail << "skipped: " << rep.reason << "; ";
        continue;
      }
      o.require(rep.all_exact(), "exactness");
      ++exact_checked;
      spots += rep.spots.size();
    }
    o.detail << composed << " complexes compose to zero; " << exact_checked << " gradable cubes exact at " << spots
             << " (spot, degree) pairs";
  });

  criterion(8, 0, [](Outcome& o) {
    std::vector<std::pair<std::string, FactorCube>> cubes;
    for (const char* f : {"0,0,1", "0,0,0,1"})
      cubes.push_back({std::string("example f=") + f, example_ci2(Q, parse_coefficients(Q, f))});
    for (int n = 1; n <= 3; ++n) {
      RingData r = RingData::make_commutative(F101, std::vector<int>(n, 2));
      cubes.push_back({"theta^1 n=" + std::to_string(n), theta_cube((1u << n) - 1, 1, r, canonical_type(r))});
    }
    for (const auto& [name, x] : cubes) {
      HigherMF z = extract_hmf(x);
      HmfReport rep = check_hmf_conditions(z);
      size_t cz = hmf_module(z).dim, tc = tcok(x).dim;
      o.detail << name << ": ";
      if (auto bad = rep.first_failure())
        o.detail << "condition (" << bad->condition << ") fails at q=" << bad->q << " " << bad->where;
      else
        o.detail << "conditions pass";
      o.detail << ", dim C(Z) " << cz << " / TCok " << tc << "; ";
      o.require(rep.pass(), name + " conditions");
      o.require(cz == tc, name + " dimensions");
    }
  });

  criterion(9, 0, [](Outcome& o) {
    struct Data {
      int n;
      std::vector<int> l;
      long q;
    };
    size_t tampered = 0;
    for (const Data& d : {Data{2, {2, 2}, 5}, Data{2, {2, 3}, 3}, Data{3, {2, 2, 2}, 5}}) {
      RingData r = quantum(d.n, d.q, d.l);
      TypeData t = canonical_type(r);
      o.require(check_type_axioms(r, t).pass, "canonical data n=" + std::to_string(d.n));
      for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j) {
          TypeData bad = t;
          bad.xi[i * d.n + j] = bad.xi[i * d.n + j] * Scalar(F101, 2);
          o.require(!check_type_axioms(r, bad).pass, "tampered xi accepted");
          ++tampered;
        }
    }
    o.detail << "canonical data pass for 3 configurations; " << tampered << " single-xi tamperings rejected";
  });

  std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
