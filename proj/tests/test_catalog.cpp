#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cylknot/cylknot.hpp"
#include "test_support.hpp"

using namespace cylknot;
using namespace cylknot::testing;

namespace {

SeidelMatrix scrambled(const SeidelMatrix& m, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(m.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> d(m.order());
  for (auto& s : d) s = (rng() & 1) ? 1 : -1;
  return m.principal(perm).switched(d);
}

}  // namespace

TEST(Catalog, EntriesParseAsTheirKind) {
  for (const auto& e : catalog()) {
    EXPECT_FALSE(e.source.empty()) << e.name;
    if (e.kind == MatrixKind::Chirality) EXPECT_NO_THROW(e.seidel()) << e.name;
    if (e.kind == MatrixKind::Ring) EXPECT_NO_THROW(e.ring()) << e.name;
    EXPECT_EQ(parse_matrix(format_matrix(e.matrix)), e.matrix);
  }
  EXPECT_EQ(find_named("P7").seidel(), named::P7());
  EXPECT_THROW(find_named("P8"), Error);
}

TEST(Catalog, PublishedTenKnotMatrixIsNotSymmetric) {
  // Entries (4,1) and (5,9) disagree with their transposes in print.
  EXPECT_FALSE(named::P10_published().is_symmetric());
  EXPECT_THROW(SeidelMatrix{named::P10_published()}, Error);
}

TEST(SwitchingEquivalent, ReflexiveSymmetricWithVerifiedWitnesses) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 40; ++k) {
    const auto a = random_seidel(3 + k % 7, rng);
    const auto self = switching_equivalent(a, a);
    ASSERT_TRUE(self);
    EXPECT_EQ(apply_witness(a, *self), a);
    const auto b = scrambled(a, rng);
    const auto ab = switching_equivalent(a, b);
    const auto ba = switching_equivalent(b, a);
    ASSERT_TRUE(ab && ba);
    EXPECT_EQ(apply_witness(a, *ab), b);
    EXPECT_EQ(apply_witness(b, *ba), a);
  }
}

TEST(SwitchingEquivalent, BothForms1625) {
  const auto w = switching_equivalent(named::P1625(), named::P1625_blocks());
  ASSERT_TRUE(w);
  EXPECT_EQ(apply_witness(named::P1625(), *w), named::P1625_blocks());
}

TEST(SwitchingEquivalent, MirrorClassesDiffer) {
  EXPECT_FALSE(switching_equivalent(named::P250(), named::P250().negated()));
  EXPECT_FALSE(switching_equivalent(named::P7(), named::P7().negated()));
}

TEST(Contains, ElevenHolds1625) {
  const auto w = contains_submatrix(named::M11(), named::P1625());
  ASSERT_TRUE(w);
  EXPECT_EQ(apply_witness(named::M11(), *w), named::P1625());
}

TEST(Contains, FourMinus125BlocksAtComplementaryPairs) {
  const auto all = all_submatrices(named::P1625_blocks(), named::Pm125());
  std::set<std::set<std::size_t>> removed;
  for (const auto& w : all) {
    EXPECT_EQ(apply_witness(named::P1625_blocks(), w), named::Pm125());
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < 8; ++i)
      if (std::find(w.subset.begin(), w.subset.end(), i) == w.subset.end()) out.insert(i);
    removed.insert(out);
  }
  EXPECT_EQ(all.size(), 4u);
  EXPECT_EQ(removed, (std::set<std::set<std::size_t>>{{0, 6}, {1, 7}, {2, 4}, {3, 5}}));
}

TEST(Contains, SevenKnotIsFreeOfForbiddenPatterns) {
  for (const auto& [name, pattern] : forbidden_patterns())
    EXPECT_FALSE(contains_submatrix(named::P7(), pattern)) << name;
}

TEST(Contains, WitnessesReproduceTheTarget) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 30; ++k) {
    const auto m = random_seidel(9, rng);
    const auto t = random_seidel(4 + k % 3, rng);
    if (auto w = contains_submatrix(m, t)) {
      EXPECT_LE(t.order(), m.order());
      const auto sub = apply_witness(m, *w);
      EXPECT_EQ(sub, t);
      EXPECT_EQ(det_exact(sub.matrix()), det_exact(t.matrix()));
      EXPECT_EQ(char_poly(sub.matrix()), char_poly(t.matrix()));
    }
  }
}

TEST(Contains, PlantedCopyIsFound) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    IntMatrix m = random_seidel(10, rng).matrix();
    const auto t = random_seidel(5, rng);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(2 * i, 2 * j) = t(i, j);
    EXPECT_TRUE(contains_submatrix(SeidelMatrix(m), t));
  }
}

TEST(Contains, LargerTargetIsAnOrderError) {
  try {
    contains_submatrix(named::K5(), named::P7());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderError);
  }
}

TEST(FindK5, AllPositive) {
  const auto w = find_k5(SeidelMatrix::complete(19));
  EXPECT_EQ(w.witness.subset, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(w.sign, 1);
}

TEST(FindK5, RandomOrders19And25) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const auto m = random_seidel(19, rng);
    const auto w = find_k5(m);
    EXPECT_EQ(apply_witness(m, w.witness), SeidelMatrix::complete(5, w.sign));
  }
  const auto m = random_seidel(25, rng);
  const auto w = find_k5(m);
  EXPECT_EQ(apply_witness(m, w.witness), SeidelMatrix::complete(5, w.sign));
  EXPECT_THROW(find_k5(random_seidel(18, rng)), Error);
}

TEST(Knottability, EightCrossHasATwoRingFourCross) {
  const auto c = build_c4_eightcross();
  const auto v = knottability_filter(c);
  EXPECT_EQ(v.verdict, Verdict::Forbidden4Cross);
  ASSERT_EQ(v.subset.size(), 4u);
  EXPECT_GE(ring_matrix(c.lines(), v.subset).entangled_count(), 2u);
}

TEST(Knottability, AllEncagedSixCrossIsForbidden) {
  const auto c = build_c3_sixcross(-0.74, -0.16, 1.61, 1.75, 6.25, 2.4);
  ASSERT_EQ(ring_matrix(c), named::R6b());
  EXPECT_FALSE(knottability_filter(c).possible());
}

TEST(Knottability, NineSixtySixClassPasses) {
  const auto c = build_c3_sixcross(0.22, 0.42, 1.91, 0.47, 4.15, 1.93);
  ASSERT_NEAR(invariant(chirality_matrix(c), ring_matrix(c)), 9.66667, 1e-5);
  EXPECT_TRUE(knottability_filter(c).possible());
}

TEST(Knottability, FreeFiveCrossRule) {
  std::mt19937_64 rng(5);
  int found = 0;
  for (int k = 0; k < 2000 && found < 3; ++k) {
    const auto lines = generic_lines(5, rng);
    if (!ring_matrix(lines).is_zero()) continue;
    ++found;
    const auto v = knottability_filter(round_configuration(lines));
    EXPECT_EQ(v.verdict, Verdict::ForbiddenFree5Cross);
  }
  EXPECT_GT(found, 0);
}

TEST(Knottability, CompleteFivePatternIsNeverPossible) {
  std::mt19937_64 rng(6);
  int found = 0;
  for (int k = 0; k < 20000 && found < 5; ++k) {
    const auto lines = generic_lines(5, rng);
    const auto p = chirality_matrix(lines);
    if (!contains_submatrix(p, named::K5()) && !contains_submatrix(p, named::K5().negated())) continue;
    ++found;
    EXPECT_FALSE(knottability_filter(round_configuration(lines)).possible());
  }
  EXPECT_GT(found, 0);
}
