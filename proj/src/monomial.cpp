#include "canonica/monomial.hpp"

#include <algorithm>

namespace canonica {

Monomial::Monomial(std::span<const int> exponents) {
  if (static_cast<int>(exponents.size()) > kMaxVars) throw std::invalid_argument("too many variables");
  for (std::size_t i = 0; i < exponents.size(); ++i) set_exponent(static_cast<int>(i), exponents[i]);
}

void Monomial::set_exponent(int var, int e) {
  if (var < 0 || var >= kMaxVars) throw std::out_of_range("variable index out of range");
  if (e < 0 || e > kMaxExponent) throw std::overflow_error("monomial exponent out of range");
  const int shift = (var & 7) * 8;
  std::uint64_t& w = w_[var >> 3];
  deg_ -= static_cast<std::uint32_t>((w >> shift) & 0xff);
  w = (w & ~(0xffull << shift)) | (static_cast<std::uint64_t>(e) << shift);
  deg_ += static_cast<std::uint32_t>(e);
}

std::vector<int> Monomial::exponents(int nvars) const {
  std::vector<int> out(nvars);
  for (int i = 0; i < nvars; ++i) out[i] = exponent(i);
  return out;
}

int Monomial::recompute_degree(const std::array<std::uint64_t, kWords>& w) {
  int d = 0;
  for (auto x : w)
    for (int b = 0; b < 8; ++b) d += static_cast<int>((x >> (8 * b)) & 0xff);
  return d;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = std::max(exponent(i), o.exponent(i));
    if (e) r.set_exponent(i, e);
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = std::min(exponent(i), o.exponent(i));
    if (e) r.set_exponent(i, e);
  }
  return r;
}

Monomial Monomial::shifted(int shift) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = exponent(i);
    if (!e) continue;
    int j = i + shift;
    if (j < 0 || j >= kMaxVars) throw std::out_of_range("monomial shift drops a variable");
    r.set_exponent(j, e);
  }
  r.deg_ = static_cast<std::uint32_t>(recompute_degree(r.w_));
  return r;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::Grevlex:
      return "grevlex";
    case Kind::Lex:
      return "lex";
    case Kind::Elimination:
      return "elim(" + std::to_string(block_) + ")";
  }
  return "?";
}

}  // namespace canonica
