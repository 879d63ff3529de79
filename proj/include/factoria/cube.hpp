#pragma once

#include "factoria/polymat.hpp"
#include "factoria/random.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace factoria {

class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vertices of {0,1}^dim are bit masks: bit i is coordinate i+1.
std::string vertex_key(unsigned alpha, int dim);
unsigned parse_vertex_key(const std::string& key);
// All vertices ordered lexicographically by key ("00" < "01" < "10" < "11").
std::vector<unsigned> lex_vertices(int dim);

struct FactorCube {
  RingData ring;
  TypeData type;
  int dim = 0;
  std::vector<int> dirs;                       // ring index of omega per direction
  std::vector<size_t> ranks;                   // by vertex
  std::vector<std::vector<PolyMatrix>> edges;  // edges[i][alpha] = D_i^alpha

  static FactorCube zero(const RingData& ring, const TypeData& type, int dim, std::vector<int> dirs = {});

  unsigned vertices() const { return 1u << dim; }
  unsigned top() const { return vertices() - 1; }
  const PolyMatrix& edge(int i, unsigned alpha) const { return edges[i][alpha]; }
  PolyMatrix& edge(int i, unsigned alpha) { return edges[i][alpha]; }
  const QPoly& omega(int i) const { return ring.omega[dirs[i]]; }
  const DiagonalAut& sigma(int i) const { return type.sigmas[dirs[i]]; }
  // xi between directions i<j of this cube.
  Scalar xi(int i, int j) const { return type.xi_between(dirs[i], dirs[j]); }
  bool commutative() const;

  // Throws std::invalid_argument on inconsistent shapes.
  void check_shapes() const;
};

struct CheckReport {
  bool pass = true;
  std::string check;  // "(E1)", "(S3)", "(M)", ...
  std::string where;
  PolyMatrix difference;
};

// Edge and square conditions; the parallel version evaluates independent
// checks concurrently and reports the first failure in the fixed order.
CheckReport verify_cube(const FactorCube& x);
CheckReport verify_cube_serial(const FactorCube& x);

FactorCube theta_cube(unsigned beta, size_t rank, const RingData& ring, const TypeData& type, int dim = -1,
                      std::vector<int> dirs = {});
// Rank-one cube with direction-i edges (c x^{a_i}, c^{-1} x^{l-a_i}); requires
// monomial omegas. a_i = 0 or l gives the theta patterns.
FactorCube monomial_cube(const std::vector<int>& exps, const RingData& ring, const TypeData& type,
                         std::vector<int> dirs = {});
// 1D cube (D0, D1) in direction `dir` of the ring.
FactorCube cube_1d(const RingData& ring, const TypeData& type, const PolyMatrix& d0, const PolyMatrix& d1, int dir = 0);

FactorCube shift_1d(const FactorCube& x);
FactorCube twist_cube(const FactorCube& x, int i);
FactorCube direct_sum(const FactorCube& x, const FactorCube& y);
// Facet {alpha : alpha_i = value} as a (dim-1)-cube.
FactorCube facet(const FactorCube& x, int i, int value);
// Exchange the roles of directions i and j (used for the commutative
// transpose symmetry).
FactorCube swap_directions(const FactorCube& x, int i, int j);
// Replace X by the isomorphic cube X' with X'^alpha = F^alpha X (F^{alpha'})^{-1}
// on base edges and the twisted analogue on wrap edges.
FactorCube gauge_transform(const FactorCube& x, const std::vector<PolyMatrix>& f, const std::vector<PolyMatrix>& f_inv);
// Random invertible change of basis built from elementary matrices.
FactorCube random_gauge(const FactorCube& x, Rng& rng, int max_deg = 1, int steps = 3);

struct CubeMorphism {
  FactorCube source, target;
  std::vector<PolyMatrix> comps;  // F^alpha : r_X(alpha) x r_Y(alpha)
};

CheckReport verify_morphism(const CubeMorphism& f);
CubeMorphism identity_morphism(const FactorCube& x);
// g after f.
CubeMorphism compose(const CubeMorphism& f, const CubeMorphism& g);

// The morphism theta^beta(k) -> X determined by its beta-component G
// (k x r(beta)), and X -> theta^beta(k) determined by its component H at
// the opposite vertex (r(1-beta) x k).
CubeMorphism theta_inclusion(const FactorCube& x, unsigned beta, const PolyMatrix& g);
CubeMorphism theta_projection(const FactorCube& x, unsigned beta, const PolyMatrix& h);

// Composite along the lexicographically smallest shortest path
// (commutative cubes).
PolyMatrix path_matrix(const FactorCube& x, unsigned from, unsigned to);

struct HomotopyCertificate {
  std::vector<PolyMatrix> s;  // s^alpha : r_X(alpha) x r_Y(1-alpha)
  int degree_bound = 0;
};

int default_homotopy_degree(const CubeMorphism& f);
// D < 0 selects default_homotopy_degree.
std::optional<HomotopyCertificate> homotopy_solve(const CubeMorphism& f, int degree_bound = -1);
bool verify_homotopy(const CubeMorphism& f, const HomotopyCertificate& cert);

enum class ProjectiveVerdict { projective, not_projective, undetermined };
std::string to_string(ProjectiveVerdict v);

struct SplitStep {
  unsigned beta;
  size_t row;  // generator index at beta
  size_t col;  // cogenerator index at 1-beta
};

struct ProjectiveResult {
  ProjectiveVerdict verdict = ProjectiveVerdict::undetermined;
  std::vector<SplitStep> splits;
  FactorCube reduced;
  std::string reason;
};

ProjectiveResult projective_test(const FactorCube& x);

struct Mf0Result {
  ProjectiveVerdict verdict = ProjectiveVerdict::undetermined;  // projective means member
  std::vector<ProjectiveResult> facets;
  bool member() const { return verdict == ProjectiveVerdict::projective; }
};

Mf0Result mf0_membership(const FactorCube& x);

}  // namespace factoria
