#include "factoria/scalar.hpp"

#include <cctype>

namespace factoria {

bool is_prime_number(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(uint64_t p) {
  if (p > 0xFFFFFFFFull || !is_prime_number(p))
    throw FieldError("modulus " + std::to_string(p) + " is not a 32-bit prime");
  FieldSpec f;
  f.kind = Kind::prime_field;
  f.p = static_cast<uint32_t>(p);
  return f;
}

std::string FieldSpec::describe() const {
  return is_prime() ? "F_" + std::to_string(p) : "Q";
}

static uint32_t reduce_mpz(const mpz_class& z, uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<uint32_t>(r.get_ui());
}

uint32_t inv_mod_fermat(uint32_t a, uint32_t p) {
  if (a % p == 0) throw FieldError("division by zero");
  uint64_t base = a % p, acc = 1;
  uint64_t e = p - 2;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(acc);
}

uint32_t inv_mod_egcd(uint32_t a, uint32_t p) {
  int64_t r0 = p, r1 = a % p, s0 = 0, s1 = 1;
  if (r1 == 0) throw FieldError("division by zero");
  while (r1) {
    int64_t qt = r0 / r1;
    int64_t t = r0 - qt * r1;
    r0 = r1;
    r1 = t;
    t = s0 - qt * s1;
    s0 = s1;
    s1 = t;
  }
  s0 %= static_cast<int64_t>(p);
  if (s0 < 0) s0 += p;
  return static_cast<uint32_t>(s0);
}

Scalar::Scalar(const FieldSpec& f, long v) {
  if (f.is_prime()) {
    p_ = f.p;
    int64_t r = v % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    r_ = static_cast<uint32_t>(r);
  } else {
    q_ = v;
  }
}

Scalar::Scalar(const FieldSpec& f, const mpq_class& v) {
  if (f.is_prime()) {
    p_ = f.p;
    uint32_t num = reduce_mpz(v.get_num(), p_);
    uint32_t den = reduce_mpz(v.get_den(), p_);
    if (den == 0) throw FieldError("denominator vanishes mod " + std::to_string(p_));
    r_ = static_cast<uint32_t>(uint64_t(num) * inv_mod_fermat(den, p_) % p_);
  } else {
    q_ = v;
    q_.canonicalize();
  }
}

Scalar Scalar::from_residue(uint32_t p, uint32_t r) {
  Scalar s;
  s.p_ = p;
  s.r_ = r % p;
  return s;
}

Scalar Scalar::parse(const FieldSpec& f, const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw FieldError("empty scalar");
  auto valid_int = [](const std::string& u) {
    size_t i = (u[0] == '-' || u[0] == '+') ? 1 : 0;
    if (i >= u.size()) return false;
    for (; i < u.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(u[i]))) return false;
    return true;
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw FieldError("malformed scalar '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpz_class a(num), b(den);
  if (b == 0) throw FieldError("zero denominator in '" + s + "'");
  if (b < 0) {
    a = -a;
    b = -b;
  }
  return Scalar(f, mpq_class(a, b));
}

FieldSpec Scalar::field() const {
  FieldSpec f;
  if (p_) {
    f.kind = FieldSpec::Kind::prime_field;
    f.p = p_;
  }
  return f;
}

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_) throw FieldError("mixed-field operands");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.p_ = p_;
  if (p_) {
    uint64_t v = uint64_t(r_) + o.r_;
    s.r_ = static_cast<uint32_t>(v >= p_ ? v - p_ : v);
  } else {
    s.q_ = q_ + o.q_;
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.p_ = p_;
  if (p_) {
    s.r_ = r_ >= o.r_ ? r_ - o.r_ : static_cast<uint32_t>(uint64_t(r_) + p_ - o.r_);
  } else {
    s.q_ = q_ - o.q_;
  }
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.p_ = p_;
  if (p_)
    s.r_ = static_cast<uint32_t>(uint64_t(r_) * o.r_ % p_);
  else
    s.q_ = q_ * o.q_;
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_same(o);
  if (o.is_zero()) throw FieldError("division by zero");
  return *this * o.inv();
}

Scalar Scalar::operator-() const {
  Scalar s;
  s.p_ = p_;
  if (p_)
    s.r_ = r_ ? p_ - r_ : 0;
  else
    s.q_ = -q_;
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw FieldError("division by zero");
  Scalar s;
  s.p_ = p_;
  if (p_)
    s.r_ = inv_mod_fermat(r_, p_);
  else
    s.q_ = 1 / q_;
  return s;
}

Scalar Scalar::pow(long long e) const {
  Scalar base = e < 0 ? inv() : *this;
  unsigned long long k = e < 0 ? -static_cast<unsigned long long>(e) : e;
  Scalar acc = Scalar::one(field());
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  return p_ ? r_ == o.r_ : q_ == o.q_;
}

std::string Scalar::str() const {
  if (p_) return std::to_string(r_);
  return q_.get_str();
}

Scalar field_ops(const Scalar& a, const Scalar& b, FieldOp op) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div: return a / b;
  }
  throw FieldError("unknown field operation");
}

}  // namespace factoria
