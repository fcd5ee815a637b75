#pragma once

// Random n-crosses, the C3 / C4 sandwich constructions, and the det -125 census.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cylknot/catalog.hpp"
#include "cylknot/error.hpp"
#include "cylknot/exact.hpp"
#include "cylknot/geometry.hpp"
#include "cylknot/invariants.hpp"
#include "cylknot/topomatrix.hpp"

namespace cylknot {

/// Directions uniform on the upper hemisphere, punctures uniform in [-h, h]^2.
inline std::vector<OrientedLine> random_lines(std::size_t n, std::mt19937_64& rng, double h = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<OrientedLine> lines(n);
  for (auto& l : lines) {
    l.t = std::acos(unit(rng));
    l.p = 2 * std::numbers::pi * unit(rng);
    l.x = h * (2 * unit(rng) - 1);
    l.y = h * (2 * unit(rng) - 1);
  }
  return lines;
}

inline bool has_parallel_pair(const std::vector<OrientedLine>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i].direction().cross(lines[j].direction()).norm() <= kParallelTolerance) return true;
  return false;
}

/// Unit round cylinders on random lines; deterministic per seed.
inline Configuration random_config(std::size_t n, std::uint64_t seed, double box_half_side = 1.0) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "a configuration needs at least two lines");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto lines = random_lines(n, rng, box_half_side);
    if (!has_parallel_pair(lines)) return round_configuration(lines, 1.0, "random seed " + std::to_string(seed));
  }
  throw Error(ErrorKind::DegenerateParams, "could not draw non-parallel lines");
}

// ---------------------------------------------------------------------------
// Sandwich constructions

/// m lines tangent to a circle of radius rho at height z, each tilted by `tilt`
/// out of the horizontal plane, starting at azimuth phi.
inline std::vector<OrientedLine> wreath(std::size_t m, double rho, double tilt, double z, double phi) {
  std::vector<OrientedLine> out;
  for (std::size_t k = 0; k < m; ++k) {
    const double th = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m) + phi;
    const Vec3d c(rho * std::cos(th), rho * std::sin(th), z);
    const Vec3d d = std::cos(tilt) * Vec3d(-std::sin(th), std::cos(th), 0.0) + std::sin(tilt) * Vec3d::UnitZ();
    if (std::abs(d.z()) < 1e-9) throw Error(ErrorKind::DegenerateParams, "horizontal wreath line");
    out.push_back(OrientedLine::through(c, d));
  }
  return out;
}

/// Two C3 wreaths of opposite sense: the upper one at +gap/2 turned by `twist`,
/// the lower one at -gap/2. Lines alternate lower/upper: L0 U0 L1 U1 L2 U2.
inline Configuration build_c3_sixcross(double tilt_upper, double tilt_lower, double radius_upper, double radius_lower,
                                       double twist, double gap) {
  const auto up = wreath(3, radius_upper, tilt_upper, gap / 2, twist);
  const auto lo = wreath(3, radius_lower, -tilt_lower, -gap / 2, 0.0);
  std::vector<OrientedLine> lines;
  for (std::size_t k = 0; k < 3; ++k) {
    lines.push_back(lo[k]);
    lines.push_back(up[k]);
  }
  if (has_parallel_pair(lines)) throw Error(ErrorKind::DegenerateParams, "parallel lines in the C3 six-cross");
  return round_configuration(lines, 1.0, "C3 six-cross");
}

struct C4Params {
  double tilt_upper = 0.4293375946615087;
  double tilt_lower = 0.48281215795047877;
  double radius_upper = 2.461254647723413;
  double radius_lower = 0.366556232191781;
  double twist = 0.9426357018945347;
  double gap = 2.185681580435384;
};

/// Two C4 wreaths; the default parameters give the det 1625 eight-cross.
/// Order U0 L0 U3 L3 U2 L2 U1 L1, lower lines reversed.
inline Configuration build_c4_eightcross(const C4Params& q = {}) {
  const auto up = wreath(4, q.radius_upper, q.tilt_upper, q.gap / 2, q.twist);
  const auto lo = wreath(4, q.radius_lower, -q.tilt_lower, -q.gap / 2, 0.0);
  std::vector<OrientedLine> lines;
  for (std::size_t k : {0, 3, 2, 1}) {
    lines.push_back(up[k]);
    lines.push_back(lo[k].reversed());
  }
  if (has_parallel_pair(lines)) throw Error(ErrorKind::DegenerateParams, "parallel lines in the C4 eight-cross");
  return round_configuration(lines, 1.0, "C4 eight-cross");
}

// ---------------------------------------------------------------------------
// Census

struct CensusRecord {
  double invariant = 0;
  double invariant_n = 0;         ///< smaller of the two orientation values
  double invariant_n_mirror = 0;  ///< larger one
  std::int64_t count = 0;
  bool knottable = false;  ///< every sampled member passes knottability_filter
  std::int64_t filtered = 0;
  std::int64_t filter_passed = 0;
  RingMatrix ring;
  Configuration exemplar;
};

struct CensusOptions {
  std::size_t n = 6;
  std::int64_t trials = 50000;  ///< accepted configurations to collect
  std::int64_t det_target = -125;
  std::uint64_t seed = 1;
  double box_half_side = 1.0;
  std::int64_t max_samples = 0;  ///< 0: 5000 * trials
  std::int64_t filter_per_class = 8;
};

struct CensusResult {
  std::vector<CensusRecord> records;  ///< most frequent first
  std::int64_t samples = 0;
  std::int64_t accepted = 0;
  std::int64_t degenerate = 0;
};

inline double round_to(double v, double quantum) { return std::round(v / quantum) * quantum; }

/// Draws random n-crosses until `trials` of them have det P = det_target and
/// aggregates them by (inv, {invn, invn mirror}) rounded to 1e-5. A configuration
/// and its mirror share a record.
inline CensusResult census_run(const CensusOptions& opt) {
  if (opt.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
  std::mt19937_64 rng(opt.seed);
  const std::int64_t cap = opt.max_samples > 0 ? opt.max_samples : 5000 * opt.trials;
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
  std::map<Key, CensusRecord> table;
  std::map<std::vector<std::int64_t>, std::pair<RationalMatrix, RationalMatrix>> inverses;
  CensusResult res;
  const auto n = opt.n;
  IntMatrix p(n);
  while (res.accepted < opt.trials && res.samples < cap) {
    ++res.samples;
    const auto lines = random_lines(n, rng, opt.box_half_side);
    bool skip = false;
    for (std::size_t i = 0; i < n && !skip; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Vec3d w = lines[i].direction().cross(lines[j].direction());
        const double v = kChiralitySign * w.dot(lines[i].point() - lines[j].point());
        if (w.norm() <= kParallelTolerance || std::abs(v) < kZeroChirality) {
          skip = true;
          break;
        }
        p(i, j) = p(j, i) = v > 0 ? 1 : -1;
      }
    }
    if (skip) {
      ++res.degenerate;
      continue;
    }
    if (det_small(p) != opt.det_target) continue;
    RingMatrix r;
    try {
      r = ring_matrix(lines);
    } catch (const Error&) {
      ++res.degenerate;
      continue;
    }
    ++res.accepted;
    const SeidelMatrix sp(p);
    auto it = inverses.find(r.matrix().data());
    if (it == inverses.end())
      it = inverses.emplace(r.matrix().data(), std::pair{shifted_ring_inverse(r, 1), shifted_ring_inverse(r, Rational(1, 2))})
               .first;
    const auto& [inv1, inv_half] = it->second;
    const double w = to_double(invariant_exact(q_matrix(sp), inv1));
    double a = to_double(trace_of_product(qn_matrix(sp, r), inv_half));
    double b = to_double(trace_of_product(qn_matrix(sp.negated(), r), inv_half));
    if (a > b) std::swap(a, b);
    const Key key{std::llround(w * 1e5), std::llround(a * 1e5), std::llround(b * 1e5)};
    auto [rec, fresh] = table.try_emplace(key);
    CensusRecord& c = rec->second;
    if (fresh) {
      c.invariant = round_to(w, 1e-5);
      c.invariant_n = round_to(a, 1e-5);
      c.invariant_n_mirror = round_to(b, 1e-5);
      c.ring = r;
      c.exemplar = round_configuration(lines, 1.0, "census exemplar");
    }
    ++c.count;
    if (c.filtered < opt.filter_per_class) {
      ++c.filtered;
      c.filter_passed += knottability_filter(round_configuration(lines)).possible();
    }
  }
  for (auto& [key, rec] : table) {
    rec.knottable = rec.filtered > 0 && rec.filter_passed == rec.filtered;
    res.records.push_back(std::move(rec));
  }
  std::stable_sort(res.records.begin(), res.records.end(),
                   [](const CensusRecord& x, const CensusRecord& y) { return x.count > y.count; });
  return res;
}

/// Counts per invariant value, summed over records, most frequent first.
inline std::vector<std::pair<double, std::int64_t>> counts_by_invariant(const CensusResult& r) {
  std::map<std::int64_t, std::int64_t> m;
  for (const auto& rec : r.records) m[std::llround(rec.invariant * 1e5)] += rec.count;
  std::vector<std::pair<double, std::int64_t>> out;
  for (auto [k, v] : m) out.emplace_back(static_cast<double>(k) * 1e-5, v);
  std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.second > b.second; });
  return out;
}

}  // namespace cylknot
