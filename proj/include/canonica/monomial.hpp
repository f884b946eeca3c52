#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace canonica {

inline constexpr int kMaxVars = 24;
inline constexpr int kMaxExponent = 127;

/// Exponent vector packed one byte per variable.  The top bit of every byte
/// is a guard bit and must stay clear, so exponents are limited to 127.
class Monomial {
 public:
  static constexpr int kWords = kMaxVars / 8;

  Monomial() = default;
  explicit Monomial(std::span<const int> exponents);

  int exponent(int var) const {
    return static_cast<int>((w_[var >> 3] >> ((var & 7) * 8)) & 0xff);
  }
  void set_exponent(int var, int e);
  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }
  std::vector<int> exponents(int nvars) const;

  /// Product; throws std::overflow_error past kMaxExponent.
  Monomial operator*(const Monomial& o) const {
    Monomial r;
    std::uint64_t guard = 0;
    for (int k = 0; k < kWords; ++k) {
      r.w_[k] = w_[k] + o.w_[k];
      guard |= r.w_[k];
    }
    if (guard & kGuard) throw std::overflow_error("monomial exponent overflow");
    r.deg_ = deg_ + o.deg_;
    return r;
  }
  /// Quotient; caller guarantees o divides *this.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] - o.w_[k];
    r.deg_ = deg_ - o.deg_;
    return r;
  }
  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (int k = 0; k < kWords; ++k)
      if ((((o.w_[k] | kGuard) - w_[k]) & kGuard) != kGuard) return false;
    return true;
  }
  bool coprime(const Monomial& o) const {
    for (int k = 0; k < kWords; ++k)
      if (nonzero_bytes(w_[k]) & nonzero_bytes(o.w_[k])) return false;
    return true;
  }
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;

  /// Moves variable i to variable i + shift (shift may be negative; the
  /// vacated or dropped variables must carry exponent zero).
  Monomial shifted(int shift) const;

  bool operator==(const Monomial& o) const { return w_ == o.w_; }
  bool operator!=(const Monomial& o) const { return w_ != o.w_; }

  const std::array<std::uint64_t, kWords>& words() const { return w_; }
  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : w_) h = (h ^ x) * 1099511628211ull;
    return h;
  }

 private:
  static constexpr std::uint64_t kGuard = 0x8080808080808080ull;
  static constexpr std::uint64_t kLow = 0x7f7f7f7f7f7f7f7full;
  static std::uint64_t nonzero_bytes(std::uint64_t x) { return (x + kLow) & kGuard; }
  static int recompute_degree(const std::array<std::uint64_t, kWords>& w);

  std::array<std::uint64_t, kWords> w_{};
  std::uint32_t deg_ = 0;

  friend class MonomialOrder;
};

enum class Cmp : int { LT = -1, EQ = 0, GT = 1 };

/// Monomial orders.  Variable 0 is the largest variable.
class MonomialOrder {
 public:
  enum class Kind { Grevlex, Lex, Elimination };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  /// Eliminates variables [0, block): compares the degree in that block
  /// first, then breaks ties by grevlex on all variables.
  static MonomialOrder elimination(int block) { return MonomialOrder(Kind::Elimination, block); }

  Kind kind() const { return kind_; }
  int block() const { return block_; }

  /// Returns -1, 0 or +1.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::Grevlex:
        return compare_grevlex(a, b);
      case Kind::Lex:
        return compare_lex(a, b);
      case Kind::Elimination:
        return compare_elim(a, b);
    }
    return 0;
  }
  Cmp cmp(const Monomial& a, const Monomial& b) const { return static_cast<Cmp>(compare(a, b)); }

  std::string name() const;
  bool operator==(const MonomialOrder& o) const { return kind_ == o.kind_ && block_ == o.block_; }

 private:
  MonomialOrder(Kind k, int block) : kind_(k), block_(block) {}

  static int compare_grevlex(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_) return a.deg_ > b.deg_ ? 1 : -1;
    for (int k = Monomial::kWords - 1; k >= 0; --k) {
      std::uint64_t x = a.w_[k] ^ b.w_[k];
      if (x) {
        int shift = (63 - __builtin_clzll(x)) & ~7;
        unsigned ea = (a.w_[k] >> shift) & 0xff, eb = (b.w_[k] >> shift) & 0xff;
        return ea < eb ? 1 : -1;
      }
    }
    return 0;
  }
  static int compare_lex(const Monomial& a, const Monomial& b) {
    for (int k = 0; k < Monomial::kWords; ++k) {
      std::uint64_t x = a.w_[k] ^ b.w_[k];
      if (x) {
        int shift = __builtin_ctzll(x) & ~7;
        unsigned ea = (a.w_[k] >> shift) & 0xff, eb = (b.w_[k] >> shift) & 0xff;
        return ea > eb ? 1 : -1;
      }
    }
    return 0;
  }
  int compare_elim(const Monomial& a, const Monomial& b) const {
    int da = 0, db = 0;
    for (int i = 0; i < block_; ++i) {
      da += a.exponent(i);
      db += b.exponent(i);
    }
    if (da != db) return da > db ? 1 : -1;
    return compare_grevlex(a, b);
  }

  Kind kind_;
  int block_;
};

}  // namespace canonica

template <>
struct std::hash<canonica::Monomial> {
  std::size_t operator()(const canonica::Monomial& m) const { return m.hash(); }
};
