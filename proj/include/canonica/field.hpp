#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace canonica {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// Integers modulo a prime p < 2^31.  Elements are kept in [0, p).
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 32003);

  std::uint32_t characteristic() const { return p_; }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element from_int(std::int64_t v) const;
  /// Decimal digit string (no sign), reduced modulo p.
  Element from_decimal(std::string_view digits) const;

  /// Symmetric representative in (-p/2, p/2], as text.
  std::string to_string(Element a) const;
  /// Symmetric integer representative.
  std::int64_t to_signed(Element a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }
  std::size_t hash(Element a) const { return a; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

/// The rational numbers with GMP arbitrary-precision arithmetic.
class RationalField {
 public:
  using Element = mpq_class;

  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "QQ"; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw AlgebraError("division by zero in QQ");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }
  Element from_decimal(std::string_view digits) const {
    return Element(mpz_class(std::string(digits), 10));
  }
  std::string to_string(const Element& a) const { return a.get_str(); }
  std::size_t hash(const Element& a) const;

  bool operator==(const RationalField&) const { return true; }
};

}  // namespace canonica
