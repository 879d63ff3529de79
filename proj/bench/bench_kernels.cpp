#include "factoria/cube.hpp"
#include "factoria/kmatrix.hpp"
#include "factoria/parallel.hpp"
#include "factoria/random.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace factoria;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < reps; ++k) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, serial, parallel, serial / parallel,
              agree ? "agree" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", thread_cap() > 0 ? thread_cap() : omp_get_max_threads());
  Rng rng(1);

  const FieldSpec fp = FieldSpec::prime(1000003);
  for (size_t n : {200, 400}) {
    KMatrix m(fp, n, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) m.at(r, c) = random_scalar(fp, rng);
    RrefResult a, b;
    double s = seconds([&] { a = rref_serial(m); }, 1);
    double p = seconds([&] { b = rref(m); }, 1);
    char name[64];
    std::snprintf(name, sizeof name, "rref F_p %zux%zu", n, n);
    row(name, s, p, a.reduced == b.reduced);
  }

  RingData ring = RingData::make_uniform(FieldSpec::prime(101), 3, Scalar(FieldSpec::prime(101), 5), {3, 3, 3});
  for (size_t n : {16, 32}) {
    PolyMatrix x(n, n), y(n, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) {
        x.at(r, c) = random_poly(ring, rng, 3, 6);
        y.at(r, c) = random_poly(ring, rng, 3, 6);
      }
    PolyMatrix a, b;
    double s = seconds([&] { a = pm_mul_serial(x, y, ring); }, 2);
    double p = seconds([&] { b = pm_mul(x, y, ring); }, 2);
    char name[64];
    std::snprintf(name, sizeof name, "pm_mul quantum n=3 %zux%zu", n, n);
    row(name, s, p, a == b);
  }

  TypeData type = canonical_type(ring);
  FactorCube cube = theta_cube(0, 2, ring, type);
  for (unsigned beta = 1; beta < 8; ++beta) cube = direct_sum(cube, theta_cube(beta, 2, ring, type));
  cube = random_gauge(cube, rng, 2, 6);
  CheckReport a, b;
  double s = seconds([&] { a = verify_cube_serial(cube); }, 2);
  double p = seconds([&] { b = verify_cube(cube); }, 2);
  row("verify_cube quantum 3-cube", s, p, a.pass == b.pass && a.pass);
  return 0;
}
