#include "factoria/examples.hpp"

#include <sstream>

namespace factoria {

std::vector<Scalar> parse_coefficients(const FieldSpec& f, const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Scalar::parse(f, item));
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  if (out.empty()) throw std::invalid_argument("empty coefficient list");
  return out;
}

QPoly univariate(const RingData& ring, int var, const std::vector<Scalar>& coeffs) {
  std::vector<Term> ts;
  for (size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) ts.push_back({Monomial::var(var, static_cast<int>(k)), coeffs[k]});
  (void)ring;
  return QPoly::from_terms(std::move(ts));
}

QPoly divided_difference(const RingData& ring, const std::vector<Scalar>& f) {
  std::vector<Term> ts;
  for (size_t k = 1; k < f.size(); ++k)
    for (size_t i = 0; i < k; ++i) {
      Monomial m = Monomial::var(0, static_cast<int>(i)) + Monomial::var(1, static_cast<int>(k - 1 - i));
      ts.push_back({m, f[k]});
    }
  std::vector<Term> nz;
  for (auto& t : ts)
    if (!t.c.is_zero()) nz.push_back(t);
  (void)ring;
  return QPoly::from_terms(std::move(nz));
}

namespace {

// Exact division of univariate coefficient lists.
std::vector<Scalar> divide_exact(const std::vector<Scalar>& f, const std::vector<Scalar>& g) {
  if (g.empty() || g.back().is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (g.size() > f.size()) throw std::invalid_argument("factor does not divide omega");
  std::vector<Scalar> rem = f, quo(f.size() - g.size() + 1, Scalar::zero(f[0].field()));
  for (size_t k = quo.size(); k-- > 0;) {
    Scalar c = rem[k + g.size() - 1] / g.back();
    quo[k] = c;
    for (size_t i = 0; i < g.size(); ++i) rem[k + i] -= c * g[i];
  }
  for (const auto& r : rem)
    if (!r.is_zero()) throw std::invalid_argument("factor does not divide omega");
  return quo;
}

PolyMatrix mat2(const QPoly& a, const QPoly& b, const QPoly& c, const QPoly& d) {
  PolyMatrix m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

}  // namespace

FactorCube example_hypersurface(const FieldSpec& field, const std::vector<Scalar>& f, const std::vector<Scalar>& g) {
  RingData ring = RingData::make_custom_omega(field, {univariate(RingData{}, 0, f)});
  std::vector<Scalar> h = divide_exact(f, g);
  PolyMatrix d0(1, 1), d1(1, 1);
  d0.at(0, 0) = univariate(ring, 0, g);
  d1.at(0, 0) = univariate(ring, 0, h);
  return cube_1d(ring, canonical_type(ring), d0, d1);
}

std::vector<std::pair<std::string, PolyMatrix>> ci2_column_matrices(const RingData& ring, const std::vector<Scalar>& f) {
  const QPoly fx = univariate(ring, 0, f), fy = univariate(ring, 1, f);
  const QPoly delta = divided_difference(ring, f);
  const QPoly one = ring.one(), zero;
  const QPoly x_y = ring.var(0) - ring.var(1), y_x = ring.var(1) - ring.var(0);
  return {
      {"d1@00", mat2(one, zero, x_y, fx)},   {"d1@10", mat2(fx, zero, y_x, one)},
      {"d1@01", mat2(fx, -delta, zero, one)}, {"d1@11", mat2(one, delta, zero, fx)},
      {"d2@00", mat2(one, delta, x_y, fx)},  {"d2@01", mat2(fx, -delta, y_x, one)},
      {"d2@10", mat2(fy, zero, zero, one)},  {"d2@11", mat2(one, zero, zero, fy)},
  };
}

FactorCube example_ci2(const FieldSpec& field, const std::vector<Scalar>& f) {
  if (f.size() < 2) throw std::invalid_argument("f must have positive degree");
  RingData ring = RingData::make_custom_omega(field, {univariate(RingData{}, 0, f), univariate(RingData{}, 1, f)});
  FactorCube x = FactorCube::zero(ring, canonical_type(ring), 2);
  std::fill(x.ranks.begin(), x.ranks.end(), 2);
  for (const auto& [key, m] : ci2_column_matrices(ring, f)) {
    int i = key[1] - '1';
    x.edge(i, parse_vertex_key(key.substr(3))) = m.transpose();
  }
  return x;
}

FactorCube example_quantum2(uint32_t p, long q, int l1, int l2, unsigned beta, size_t rank) {
  FieldSpec f = FieldSpec::prime(p);
  RingData ring = RingData::make_uniform(f, 2, Scalar(f, q), {l1, l2});
  return theta_cube(beta, rank, ring, canonical_type(ring));
}

FactorCube example_theta(const FieldSpec& field, const std::vector<int>& l, unsigned beta, size_t rank) {
  RingData ring = RingData::make_commutative(field, l);
  return theta_cube(beta, rank, ring, canonical_type(ring));
}

}  // namespace factoria
