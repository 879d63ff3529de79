#include <doctest.h>

#include "generators.hpp"

#include "factoria/homology.hpp"

using namespace factoria;
using namespace gen;

namespace {

std::vector<RingData> small_rings(int n) {
  return {RingData::make_commutative(F101, std::vector<int>(n, 2)),
          RingData::make_uniform(F101, n, Scalar(F101, 5), std::vector<int>(n, 2))};
}

// Perturb one random entry of one random edge.
FactorCube corrupt(FactorCube x, Rng& rng) {
  int i = static_cast<int>(rng() % x.dim);
  unsigned a = static_cast<unsigned>(rng() % x.vertices());
  PolyMatrix& m = x.edge(i, a);
  if (m.rows() == 0 || m.cols() == 0) return x;
  QPoly& e = m.at(rng() % m.rows(), rng() % m.cols());
  e = e + QPoly::monomial(Monomial::var(x.dirs[i]), Scalar::one(x.ring.field));
  return x;
}

}  // namespace

TEST_CASE("theta objects verify for every beta up to dimension 3") {
  for (int n = 1; n <= 3; ++n)
    for (const RingData& r : small_rings(n))
      for (unsigned beta = 0; beta < (1u << n); ++beta)
        for (size_t rank : {1, 2}) CHECK(verify_cube(theta_cube(beta, rank, r, canonical_type(r))).pass);
}

TEST_CASE("random gauged cubes verify and survive twists and swaps") {
  Rng rng(201);
  for (int n = 1; n <= 3; ++n)
    for (const RingData& r : small_rings(n))
      for (int t = 0; t < 8; ++t) {
        FactorCube x = random_cube(r, n, rng);
        REQUIRE(verify_cube(x).pass);
        for (int i = 0; i < n; ++i) CHECK(verify_cube(twist_cube(x, i)).pass);
        if (r.commutative && n >= 2) {
          int i = static_cast<int>(rng() % n), j = (i + 1 + static_cast<int>(rng() % (n - 1))) % n;
          CHECK(verify_cube(swap_directions(x, i, j)).pass);
        }
        if (n == 1) CHECK(verify_cube(shift_1d(x)).pass);
      }
}

TEST_CASE("parallel and serial verification report the same first failure") {
  Rng rng(202);
  for (int n = 1; n <= 3; ++n)
    for (const RingData& r : small_rings(n))
      for (int t = 0; t < 10; ++t) {
        FactorCube x = random_cube(r, n, rng);
        if (t % 3) x = corrupt(x, rng);
        CheckReport a = verify_cube(x), b = verify_cube_serial(x);
        CHECK(a.pass == b.pass);
        CHECK(a.check == b.check);
        CHECK(a.where == b.where);
        CHECK(a.difference == b.difference);
      }
}

TEST_CASE("on commutative cubes the four square checks agree") {
  // For q = 1 every square condition is plain commutativity, so a corrupted
  // commutative square is flagged by the first square check of its pair.
  Rng rng(203);
  RingData r = RingData::make_commutative(F101, {2, 2});
  int flagged = 0;
  for (int t = 0; t < 40; ++t) {
    FactorCube x = random_cube(r, 2, rng);
    // Rescale one edge pair: edges stay factorizations, squares break.
    Scalar c = random_scalar(r.field, rng, true);
    if (c == Scalar::one(r.field)) continue;
    unsigned a = static_cast<unsigned>(rng() % 2) << 1;
    x.edge(0, a) = x.edge(0, a).scaled(c);
    x.edge(0, a | 1) = x.edge(0, a | 1).scaled(c.inv());
    CheckReport rep = verify_cube(x);
    if (rep.pass) continue;
    ++flagged;
    CHECK(rep.check.rfind("(S", 0) == 0);
    CHECK(rep.check == "(S1)");
  }
  CHECK(flagged > 0);
}

TEST_CASE("homotopy certificates for morphisms through theta objects") {
  Rng rng(204);
  RingData r1 = RingData::make_commutative(F101, {2});
  RingData r2 = RingData::make_commutative(F101, {2, 2});
  int found = 0;
  for (int t = 0; t < 30; ++t) {
    const RingData& r = t % 3 == 2 ? r2 : r1;
    int dim = r.n;
    int steps = dim == 1 ? 2 : 0;
    FactorCube x = random_cube(r, dim, rng, {}, 1 + static_cast<int>(rng() % 2), steps);
    FactorCube y = random_cube(r, dim, rng, {}, 1 + static_cast<int>(rng() % 2), steps);
    CubeMorphism f;
    for (int k = 0; k < 2; ++k) {
      unsigned beta = static_cast<unsigned>(rng() % (1u << dim));
      PolyMatrix h = random_matrix(r, x.ranks[x.top() ^ beta], 1, rng, 1, 2);
      PolyMatrix g = random_matrix(r, 1, y.ranks[beta], rng, 1, 2);
      CubeMorphism through = compose(theta_projection(x, beta, h), theta_inclusion(y, beta, g));
      f = k ? add(f, through) : through;
    }
    REQUIRE(verify_morphism(f).pass);
    auto cert = homotopy_solve(f);
    CHECK(cert.has_value());
    if (cert) {
      ++found;
      CHECK(verify_homotopy(f, *cert));
    }
  }
  CHECK(found == 30);
}

TEST_CASE("homotopy certificates always re-verify") {
  Rng rng(205);
  RingData r = RingData::make_commutative(F101, {3});
  for (int t = 0; t < 30; ++t) {
    FactorCube x = random_cube(r, 1, rng, {}, 1 + static_cast<int>(rng() % 2));
    CubeMorphism f = identity_morphism(x);
    Scalar c = random_scalar(r.field, rng);
    for (auto& m : f.comps) m = m.scaled(c);
    for (int d : {0, 1, 2, 4}) {
      auto cert = homotopy_solve(f, d);
      if (cert) CHECK(verify_homotopy(f, *cert));
    }
  }
}

TEST_CASE("adding theta summands never enlarges the projective residue") {
  Rng rng(206);
  for (int n = 1; n <= 2; ++n)
    for (const RingData& r : small_rings(n))
      for (int t = 0; t < 10; ++t) {
        FactorCube x = random_cube(r, n, rng);
        FactorCube th = theta_cube(static_cast<unsigned>(rng() % (1u << n)), 1 + rng() % 2, r, canonical_type(r));
        ProjectiveResult a = projective_test(x);
        ProjectiveResult b = projective_test(direct_sum(x, th));
        if (a.verdict == ProjectiveVerdict::projective) CHECK(b.verdict == ProjectiveVerdict::projective);
        if (b.verdict == ProjectiveVerdict::not_projective) {
          CHECK(total_rank(b.reduced) <= total_rank(a.reduced));
        }
      }
}
