#include <gtest/gtest.h>

#include <random>

#include "cylknot/cylknot.hpp"
#include "test_support.hpp"

using namespace cylknot;
using namespace cylknot::testing;

namespace {

BigInt cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.order();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  BigInt s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntMatrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    const BigInt term = BigInt(m(0, c)) * cofactor_det(minor);
    s += (c % 2 == 0) ? term : BigInt(-term);
  }
  return s;
}

}  // namespace

TEST(Exact, BareissMatchesCofactorExpansion) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const IntMatrix m = random_int_matrix(n, rng);
    ASSERT_EQ(det_exact(m), cofactor_det(m)) << format_matrix(m);
  }
}

TEST(Exact, SmallDeterminantAgreesWithBigInt) {
  std::mt19937_64 rng(8);
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto p = random_seidel(n, rng);
    EXPECT_EQ(BigInt(det_small(p.matrix())), det_exact(p.matrix()));
  }
}

TEST(Exact, CompleteFiveHasDeterminantFour) { EXPECT_EQ(det_exact(SeidelMatrix::complete(5).matrix()), 4); }

TEST(Exact, ZeroMatrixCharPolyIsMonomial) {
  EXPECT_EQ(char_poly(IntMatrix(2)), (std::vector<BigInt>{0, 0, 1}));
}

TEST(Exact, CharPolyAtZeroIsSignedDeterminant) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const IntMatrix m = random_int_matrix(n, rng);
    const auto c = char_poly(m);
    ASSERT_EQ(c.size(), n + 1);
    EXPECT_EQ(c.back(), 1);
    const BigInt det = det_exact(m);
    EXPECT_EQ(c[0], n % 2 == 0 ? det : BigInt(-det));
  }
}

TEST(Exact, CharPolyTraceCoefficient) {
  std::mt19937_64 rng(10);
  const IntMatrix m = random_int_matrix(5, rng);
  BigInt tr = 0;
  for (std::size_t i = 0; i < 5; ++i) tr += m(i, i);
  EXPECT_EQ(char_poly(m)[4], -tr);
}

TEST(Exact, InverseTimesMatrixIsIdentity) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix m = random_int_matrix(5, rng);
    const auto inv = inverse_exact(m.cast<Rational>());
    if (det_exact(m) == 0) {
      EXPECT_FALSE(inv.has_value());
      continue;
    }
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(m.cast<Rational>() * *inv, RationalMatrix::identity(5));
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(Exact, TraceOfProductMatchesProduct) {
  std::mt19937_64 rng(12);
  const auto a = random_int_matrix(4, rng).cast<Rational>();
  const auto b = random_int_matrix(4, rng).cast<Rational>();
  const auto ab = a * b;
  Rational tr = 0;
  for (std::size_t i = 0; i < 4; ++i) tr += ab(i, i);
  EXPECT_EQ(trace_of_product(a, b), tr);
}

TEST(MatrixText, RoundTrip) {
  std::mt19937_64 rng(13);
  const IntMatrix m = random_int_matrix(6, rng, -9, 9);
  EXPECT_EQ(parse_matrix(format_matrix(m)), m);
}

TEST(MatrixText, RejectsMalformedInput) {
  EXPECT_THROW(parse_matrix("2\n0 1\n1"), Error);
  EXPECT_THROW(parse_matrix("x"), Error);
  EXPECT_THROW(parse_matrix("1\n0 5"), Error);
}

TEST(MatrixTypes, SeidelValidation) {
  EXPECT_THROW(SeidelMatrix({{0, 1}, {-1, 0}}), Error);
  EXPECT_THROW(SeidelMatrix({{1, 1}, {1, 0}}), Error);
  EXPECT_THROW(SeidelMatrix({{0, 2}, {2, 0}}), Error);
  EXPECT_NO_THROW(SeidelMatrix({{0, -1}, {-1, 0}}));
}

TEST(MatrixTypes, RingValidation) {
  EXPECT_THROW(RingMatrix({{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(RingMatrix({{0, -3}, {0, 0}}), Error);
  EXPECT_NO_THROW(RingMatrix({{0, 3}, {0, 0}}));
}
