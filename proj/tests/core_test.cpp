#include <gtest/gtest.h>

#include <random>

#include "canonica/parser.hpp"
#include "test_util.hpp"

using namespace canonica;
using canonica::testing::random_homogeneous;
using canonica::testing::random_monomial;
using canonica::testing::random_poly;
using canonica::testing::var_names;

namespace {

// Textbook grevlex: a > b iff deg a > deg b, or the degrees agree and the
// last nonzero entry of a - b is negative.
int textbook_grevlex(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da > db ? 1 : -1;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] - b[i] < 0 ? 1 : -1;
  return 0;
}

int textbook_lex(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

Monomial mono(std::vector<int> e) { return Monomial(std::span<const int>(e)); }

}  // namespace

TEST(Field, PrimalityAndInverses) {
  EXPECT_TRUE(is_prime_u64(32003));
  EXPECT_TRUE(is_prime_u64(2147483647ull));
  EXPECT_FALSE(is_prime_u64(32001));
  EXPECT_FALSE(is_prime_u64(1));
  EXPECT_THROW(PrimeField(32001), AlgebraError);
  PrimeField F(32003);
  for (std::uint32_t a = 1; a < 2000; a += 7) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
  EXPECT_EQ(F.to_string(F.from_int(-5)), "-5");
  EXPECT_EQ(F.from_decimal("64006"), 0u);
}

TEST(MonomialOrder, GrevlexDegreeTwoEnumeration) {
  std::vector<std::vector<int>> mons;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) mons.push_back({a, b, 2 - a - b});
  auto ord = MonomialOrder::grevlex();
  for (const auto& a : mons)
    for (const auto& b : mons) EXPECT_EQ(ord.compare(mono(a), mono(b)), textbook_grevlex(a, b));
  EXPECT_EQ(ord.cmp(mono({1, 0, 1}), mono({0, 2, 0})), Cmp::LT);
}

TEST(MonomialOrder, LexAndReflexivity) {
  auto lex = MonomialOrder::lex();
  EXPECT_EQ(lex.cmp(mono({1, 0}), mono({0, 5})), Cmp::GT);
  EXPECT_EQ(lex.cmp(mono({2, 3}), mono({2, 3})), Cmp::EQ);
  EXPECT_EQ(MonomialOrder::grevlex().cmp(mono({2, 3}), mono({2, 3})), Cmp::EQ);
}

TEST(MonomialOrder, RandomAgreementWithTextbook) {
  std::mt19937 rng(11);
  for (int n : {3, 7, 12, 24}) {
    for (int it = 0; it < 2000; ++it) {
      Monomial a = random_monomial<PrimeField>(rng, n, 9), b = random_monomial<PrimeField>(rng, n, 9);
      EXPECT_EQ(MonomialOrder::grevlex().compare(a, b), textbook_grevlex(a.exponents(n), b.exponents(n)));
      EXPECT_EQ(MonomialOrder::lex().compare(a, b), textbook_lex(a.exponents(n), b.exponents(n)));
    }
  }
}

TEST(MonomialOrder, TotalMultiplicativeOrder) {
  std::mt19937 rng(5);
  for (auto ord : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::elimination(2)}) {
    for (int it = 0; it < 3000; ++it) {
      Monomial a = random_monomial<PrimeField>(rng, 6, 6), b = random_monomial<PrimeField>(rng, 6, 6),
               c = random_monomial<PrimeField>(rng, 6, 6);
      int ab = ord.compare(a, b), ba = ord.compare(b, a);
      EXPECT_EQ(ab, -ba);
      EXPECT_EQ(ab == 0, a == b);
      if (ab < 0 && ord.compare(b, c) < 0) EXPECT_LT(ord.compare(a, c), 0);
      if (ab < 0) EXPECT_LT(ord.compare(a * c, b * c), 0);
      EXPECT_GE(ord.compare(a * c, a), 0);
    }
  }
}

TEST(MonomialOrder, EliminationPutsBlockFirst) {
  auto ord = MonomialOrder::elimination(1);
  EXPECT_GT(ord.compare(mono({1, 0, 0}), mono({0, 5, 5})), 0);
  EXPECT_LT(ord.compare(mono({0, 1, 1}), mono({0, 2, 0})), 0);
}

TEST(Monomial, Arithmetic) {
  Monomial a = mono({2, 0, 1}), b = mono({1, 3, 0});
  EXPECT_EQ(a.lcm(b), mono({2, 3, 1}));
  EXPECT_EQ(a.gcd(b), mono({1, 0, 0}));
  EXPECT_TRUE(mono({1, 0, 1}).divides(a));
  EXPECT_FALSE(b.divides(a));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_FALSE(a.coprime(b));
  EXPECT_TRUE(mono({0, 0, 1}).coprime(mono({3, 1, 0})));
  EXPECT_EQ(a.degree(), 3u);
  EXPECT_EQ(a.shifted(1).exponents(4), (std::vector<int>{0, 2, 0, 1}));
  Monomial big;
  big.set_exponent(0, kMaxExponent);
  EXPECT_THROW(big * mono({1}), std::overflow_error);
}

TEST(Parser, Examples) {
  PolyRing<PrimeField> R(PrimeField(), {"x11", "x12", "x21", "x22"});
  auto det = parse_polynomial("x11*x22 - x12*x21", R);
  ASSERT_EQ(det.size(), 2u);
  EXPECT_EQ(det.to_string(), "-x12*x21 + x11*x22");
  EXPECT_TRUE(parse_polynomial("0", R).is_zero());
  EXPECT_TRUE(parse_polynomial("  ( x11 - x11 ) ", R).is_zero());

  PolyRing<PrimeField> F2(PrimeField(2), {"x1"});
  EXPECT_TRUE(parse_polynomial("3*x1^2 + 3*x1^2", F2).is_zero());
}

TEST(Parser, Errors) {
  PolyRing<PrimeField> R(PrimeField(7), {"x", "y"});
  try {
    parse_polynomial("x + z", R);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_polynomial("x +", R), ParseError);
  EXPECT_THROW(parse_polynomial("x ** y", R), ParseError);
  EXPECT_THROW(parse_polynomial("(x + y", R), ParseError);
  EXPECT_THROW(parse_polynomial("x/7", R), ParseError);
  EXPECT_EQ(parse_polynomial("x/2", R), parse_polynomial("4*x", R));
}

TEST(Polynomial, Arithmetic) {
  PolyRing<RationalField> Q(RationalField(), {"x", "y"});
  auto x = Polynomial<RationalField>::variable(&Q, 0);
  auto y = Polynomial<RationalField>::variable(&Q, 1);
  EXPECT_EQ((x + y) * (x - y), parse_polynomial("x^2 - y^2", Q));
  EXPECT_EQ(x + Polynomial<RationalField>(&Q), x);
  auto xy = x * y;
  ASSERT_EQ(xy.size(), 1u);
  EXPECT_EQ(xy.lead_monomial().exponents(2), (std::vector<int>{1, 1}));
  EXPECT_EQ(parse_polynomial("(x+y)^3", Q).to_string(), "x^3 + 3*x^2*y + 3*x*y^2 + y^3");
  EXPECT_EQ(parse_polynomial("x/2 - 3/4*y", Q).to_string(), "1/2*x - 3/4*y");
}

template <class K>
class PolyProperties : public ::testing::Test {};
using Fields = ::testing::Types<PrimeField, RationalField>;
TYPED_TEST_SUITE(PolyProperties, Fields);

TYPED_TEST(PolyProperties, RingLaws) {
  using K = TypeParam;
  PolyRing<K> R(K(), var_names(4));
  std::mt19937 rng(7);
  for (int it = 0; it < 150; ++it) {
    auto f = random_poly(rng, R, 5, 4), g = random_poly(rng, R, 5, 4), h = random_poly(rng, R, 5, 4);
    EXPECT_EQ((f + g) + h, f + (g + h));
    EXPECT_EQ(f + g, g + f);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_TRUE((f - f).is_zero());
  }
}

TYPED_TEST(PolyProperties, CanonicalFormAndRoundTrip) {
  using K = TypeParam;
  PolyRing<K> R(K(), var_names(5));
  std::mt19937 rng(3);
  for (int it = 0; it < 300; ++it) {
    auto f = random_poly(rng, R, 8, 6);
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      EXPECT_GT(R.order().compare(f.terms()[i].m, f.terms()[i + 1].m), 0);
    for (const auto& t : f.terms()) EXPECT_FALSE(R.field().is_zero(t.c));
    EXPECT_EQ(parse_polynomial(f.to_string(), R), f) << f.to_string();
  }
}

TYPED_TEST(PolyProperties, HomogeneousDegreesAdd) {
  using K = TypeParam;
  PolyRing<K> R(K(), var_names(4));
  std::mt19937 rng(9);
  for (int it = 0; it < 200; ++it) {
    int d1 = static_cast<int>(rng() % 4), d2 = static_cast<int>(rng() % 4);
    auto f = random_homogeneous(rng, R, 4, d1), g = random_homogeneous(rng, R, 4, d2);
    auto fg = f * g;
    EXPECT_TRUE(fg.is_homogeneous());
    if (!fg.is_zero()) EXPECT_EQ(fg.degree(), d1 + d2);
  }
}
