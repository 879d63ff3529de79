#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace factoria {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldSpec {
  enum class Kind { rationals, prime_field };

  Kind kind = Kind::rationals;
  uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(uint64_t p);

  bool is_prime() const { return kind == Kind::prime_field; }
  bool operator==(const FieldSpec&) const = default;
  std::string describe() const;
};

bool is_prime_number(uint64_t n);

// An element of Q or F_p. The modulus travels with the value so that
// mixed-field arithmetic is detected instead of silently coerced.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const FieldSpec& f, long v);
  Scalar(const FieldSpec& f, const mpq_class& v);

  static Scalar zero(const FieldSpec& f) { return Scalar(f, 0L); }
  static Scalar one(const FieldSpec& f) { return Scalar(f, 1L); }
  static Scalar from_residue(uint32_t p, uint32_t r);
  static Scalar parse(const FieldSpec& f, const std::string& s);

  FieldSpec field() const;
  bool is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
  bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
  uint32_t residue() const { return r_; }
  const mpq_class& rational() const { return q_; }
  uint32_t modulus() const { return p_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inv() const;
  Scalar pow(long long e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void check_same(const Scalar& o) const;

  mpq_class q_;
  uint32_t p_ = 0;
  uint32_t r_ = 0;
};

enum class FieldOp { add, sub, mul, div };
Scalar field_ops(const Scalar& a, const Scalar& b, FieldOp op);

uint32_t inv_mod_fermat(uint32_t a, uint32_t p);
uint32_t inv_mod_egcd(uint32_t a, uint32_t p);

}  // namespace factoria
