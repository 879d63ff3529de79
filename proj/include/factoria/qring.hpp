#pragma once

#include "factoria/scalar.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace factoria {

constexpr int kMaxVars = 8;

struct Monomial {
  std::array<uint16_t, kMaxVars> e{};

  int degree() const;
  Monomial operator+(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  static Monomial var(int i, int power = 1);
};

struct Term {
  Monomial m;
  Scalar c;
  bool operator==(const Term&) const = default;
};

// Sparse polynomial in PBW normal form x_1^{a_1}...x_n^{a_n}; terms are kept
// sorted by exponent with no zero coefficients.
class QPoly {
 public:
  QPoly() = default;

  static QPoly constant(const Scalar& c);
  static QPoly monomial(const Monomial& m, const Scalar& c);
  static QPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term(const FieldSpec& f) const;
  Scalar coeff(const Monomial& m, const FieldSpec& f) const;
  int degree() const;  // -1 for zero
  bool is_homogeneous() const;

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
  QPoly scaled(const Scalar& s) const;
  bool operator==(const QPoly& o) const { return terms_ == o.terms_; }

 private:
  std::vector<Term> terms_;
};

// The algebra A_q with the regular sequence omega_i. By default
// omega_i = x_i^{l_i}; commutative rings may instead carry a univariate
// polynomial omega_i = f_i(x_i) of degree l_i with invertible leading
// coefficient.
struct RingData {
  int n = 0;
  FieldSpec field;
  std::vector<Scalar> q;  // n*n, q[i*n+j] = q_ij
  std::vector<int> l;
  std::vector<QPoly> omega;
  bool commutative = true;
  bool custom_omega = false;

  static RingData make_commutative(const FieldSpec& f, std::vector<int> l);
  static RingData make_quantum(const FieldSpec& f, const std::vector<std::vector<Scalar>>& q, std::vector<int> l);
  // Uniform q_ij = q for i<j (q_ji = q^{-1}).
  static RingData make_uniform(const FieldSpec& f, int n, const Scalar& q, std::vector<int> l);
  static RingData make_custom_omega(const FieldSpec& f, std::vector<QPoly> omega);

  const Scalar& qij(int i, int j) const { return q[i * n + j]; }
  void validate() const;
  bool operator==(const RingData& o) const;

  Scalar monomial_factor(const Monomial& a, const Monomial& b) const;
  QPoly one() const { return QPoly::constant(Scalar::one(field)); }
  QPoly zero() const { return QPoly(); }
  QPoly constant(long c) const { return QPoly::constant(Scalar(field, c)); }
  QPoly var(int i) const { return QPoly::monomial(Monomial::var(i), Scalar::one(field)); }
  Scalar scalar(long c) const { return Scalar(field, c); }
};

QPoly qp_mul(const QPoly& f, const QPoly& g, const RingData& ring);
QPoly qp_pow(const QPoly& f, int e, const RingData& ring);

struct DiagonalAut {
  std::vector<Scalar> c;

  static DiagonalAut identity(const RingData& ring);
  DiagonalAut inverse() const;
  DiagonalAut then(const DiagonalAut& o) const;  // o after this
  bool is_identity() const;
  Scalar on_monomial(const Monomial& m) const;
};

QPoly qp_apply_aut(const DiagonalAut& sigma, const QPoly& f);

struct TypeData {
  std::vector<DiagonalAut> sigmas;
  std::vector<Scalar> xi;  // n*n; xi[i*n+j] meaningful for i<j
  int n = 0;

  // xi_ij for i<j, xi_ji^{-1} for i>j, 1 on the diagonal.
  Scalar xi_between(int i, int j) const;
  bool operator==(const TypeData& o) const;
};

TypeData canonical_type(const RingData& ring);

struct AxiomReport {
  bool pass = true;
  std::string violated;  // e.g. "(T2) sigma_1(omega_2) = xi_12 omega_2"
  std::string detail;
};

AxiomReport check_type_axioms(const RingData& ring, const TypeData& type, uint64_t seed = 1, int samples = 16);

// Normal form in B = A/(omega_1..omega_n), coordinates in the PBW basis.
QPoly quotient_normal_form(const QPoly& f, const RingData& ring);
// Remainder modulo the ideal generated by omega_i for i in `which`.
QPoly reduce_modulo(const QPoly& f, const RingData& ring, const std::vector<int>& which);

// PBW basis {x^a : a_i < l_i} of B in lexicographic exponent order.
std::vector<Monomial> pbw_basis(const RingData& ring);
// Monomials of total degree exactly d (or at most d) in lexicographic order.
std::vector<Monomial> monomials_of_degree(int n, int d);
std::vector<Monomial> monomials_up_to(int n, int d);

std::string to_string(const QPoly& f, int n);

}  // namespace factoria
