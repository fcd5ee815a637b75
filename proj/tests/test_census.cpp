#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "cylknot/cylknot.hpp"
#include "test_support.hpp"

using namespace cylknot;
using namespace cylknot::testing;
using std::numbers::pi;

namespace {

bool same_line_set_after_rotation(const Configuration& c, double angle) {
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(angle, Vec3d::UnitZ()).toRotationMatrix();
  for (const auto& l : c.lines()) {
    const Vec3d d = rot * l.direction();
    const Vec3d q = rot * l.point();
    bool hit = false;
    for (const auto& m : c.lines())
      hit = hit || ((m.direction() - d).norm() < 1e-9 && (m.point() - q).norm() < 1e-9);
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST(RandomConfig, DeterministicPerSeed) {
  EXPECT_EQ(random_config(6, 42), random_config(6, 42));
  EXPECT_NE(random_config(6, 42), random_config(6, 43));
  const auto two = random_config(2, 1);
  EXPECT_EQ(two.size(), 2u);
  EXPECT_EQ(chirality_matrix(two).order(), 2u);
  EXPECT_THROW(random_config(1, 1), Error);
}

TEST(RandomConfig, UpperHemisphereAndBox) {
  std::mt19937_64 rng(1);
  for (const auto& l : random_lines(1000, rng, 2.0)) {
    EXPECT_GE(l.direction().z(), 0.0);
    EXPECT_LE(std::abs(l.x), 2.0);
    EXPECT_LE(std::abs(l.y), 2.0);
  }
}

TEST(RandomConfig, SixCrossDeterminantsAreSeidelDeterminants) {
  const std::set<std::int64_t> seidel{-125, -45, -29, -21, -13, -5, 11, 19, 27};
  std::mt19937_64 rng(2);
  std::set<std::int64_t> dets;
  for (int k = 0; k < 10000; ++k) {
    try {
      dets.insert(det_small(chirality_matrix(random_lines(6, rng)).matrix()));
    } catch (const Error&) {
    }
  }
  EXPECT_TRUE(dets.count(-125));
  for (auto d : dets) EXPECT_TRUE(seidel.count(d)) << d;
}

TEST(C3, ThreeFoldSymmetry) {
  const auto c = build_c3_sixcross(0.22, 0.42, 1.91, 0.47, 4.15, 1.93);
  EXPECT_TRUE(same_line_set_after_rotation(c, 2 * pi / 3));
  EXPECT_FALSE(same_line_set_after_rotation(c, pi / 3));
}

TEST(C3, KnownClasses) {
  const auto a = build_c3_sixcross(0.22, 0.42, 1.91, 0.47, 4.15, 1.93);
  EXPECT_EQ(ring_matrix(a), named::R6a());
  EXPECT_NEAR(invariant(chirality_matrix(a), ring_matrix(a)), 9.66667, 1e-5);

  const auto b = build_c3_sixcross(-0.74, -0.16, 1.61, 1.75, 6.25, 2.4);
  EXPECT_EQ(ring_matrix(b), named::R6b());
  EXPECT_NEAR(invariant(chirality_matrix(b), ring_matrix(b)), 5.89286, 1e-5);

  // The class the random census does not reach.
  const auto e = build_c3_sixcross(0.2, 0.55, 0.25, 0.89, 3.49, 2.0);
  EXPECT_EQ(det_exact(chirality_matrix(e).matrix()), -125);
  EXPECT_NEAR(invariant(chirality_matrix(e), ring_matrix(e)), 5.2175438596, 1e-8);
}

TEST(C3, RejectsDegenerateParameters) { EXPECT_THROW(build_c3_sixcross(0.0, 0.3, 1, 1, 0.1, 1), Error); }

TEST(C4, EightCross) {
  const auto c = build_c4_eightcross();
  EXPECT_TRUE(same_line_set_after_rotation(c, pi / 2));
  const auto p = chirality_matrix(c);
  const auto r = ring_matrix(c);
  EXPECT_EQ(det_exact(p.matrix()), 1625);
  EXPECT_EQ(r, named::R8());
  EXPECT_NEAR(invariant(p, r), 23.304029304, 1e-6);
  EXPECT_NEAR(invariant(p.negated(), r), 25.7509157509, 1e-6);
  EXPECT_EQ(knottability_filter(c).verdict, Verdict::Forbidden4Cross);
}

TEST(Census, RecordsSatisfyTheClassInvariants) {
  CensusOptions opt;
  opt.trials = 1500;
  opt.seed = 3;
  const auto res = census_run(opt);
  EXPECT_EQ(res.accepted, opt.trials);
  std::int64_t total = 0;
  IntMatrix trivial(6, 1);
  for (std::size_t i = 0; i < 6; ++i) trivial(i, i) = 5;
  for (const auto& rec : res.records) {
    total += rec.count;
    EXPECT_GE(rec.count, 1);
    EXPECT_LE(rec.invariant_n, rec.invariant_n_mirror);
    const auto p = chirality_matrix(rec.exemplar);
    EXPECT_EQ(det_exact(p.matrix()), -125);
    EXPECT_EQ(q_matrix(p), trivial);
    EXPECT_EQ(ring_matrix(rec.exemplar), rec.ring);
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_EQ(rec.ring.row_sum(i) % 3, 0);
      EXPECT_LE(rec.ring.ring_count(i), max_rings(6));
    }
    EXPECT_NEAR(round_to(invariant(p, rec.ring), 1e-5), rec.invariant, 1e-9);
  }
  EXPECT_EQ(total, res.accepted);
  for (std::size_t k = 1; k < res.records.size(); ++k) EXPECT_GE(res.records[k - 1].count, res.records[k].count);
}

TEST(Census, DeterministicPerSeed) {
  CensusOptions opt;
  opt.trials = 200;
  opt.seed = 9;
  const auto a = census_run(opt), b = census_run(opt);
  ASSERT_EQ(a.records.size(), b.records.size());
  EXPECT_EQ(a.samples, b.samples);
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_EQ(a.records[k].invariant, b.records[k].invariant);
    EXPECT_EQ(a.records[k].count, b.records[k].count);
  }
}

TEST(Census, SampleCapStopsEarly) {
  CensusOptions opt;
  opt.trials = 1000;
  opt.max_samples = 100;
  const auto res = census_run(opt);
  EXPECT_EQ(res.samples, 100);
  EXPECT_LT(res.accepted, 1000);
  opt.trials = 0;
  EXPECT_THROW(census_run(opt), Error);
}

TEST(Census, CountsByInvariantMerge) {
  CensusOptions opt;
  opt.trials = 500;
  const auto res = census_run(opt);
  std::int64_t total = 0;
  for (const auto& [v, c] : counts_by_invariant(res)) total += c;
  EXPECT_EQ(total, res.accepted);
}
