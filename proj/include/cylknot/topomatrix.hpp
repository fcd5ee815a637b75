#pragma once

// Chirality, Ring and spirality matrices of a line configuration.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cylknot/error.hpp"
#include "cylknot/geometry.hpp"
#include "cylknot/matrix.hpp"

namespace cylknot {

/// Entries with |value| below this are treated as intersecting axes.
inline constexpr double kZeroChirality = 1e-12;
/// Projected-plane tolerance for the Ring matrix (point on a line, parallel projections).
inline constexpr double kProjectionTolerance = 1e-9;

/// Non-normalized chirality matrix, symmetric with zero diagonal.
inline RealMatrix chirality_raw(std::span<const OrientedLine> lines) {
  const std::size_t n = lines.size();
  RealMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3d ni = lines[i].direction(), nj = lines[j].direction();
      require_not_parallel(ni.cross(nj), i, j);
      m(i, j) = m(j, i) = chirality_product<double>(ni, lines[i].point(), nj, lines[j].point());
    }
  }
  return m;
}

inline RealMatrix chirality_raw(const Configuration& c) { return chirality_raw(c.lines()); }

inline SeidelMatrix chirality_matrix(std::span<const OrientedLine> lines) {
  const RealMatrix raw = chirality_raw(lines);
  IntMatrix p(raw.order());
  for (std::size_t i = 0; i < raw.order(); ++i) {
    for (std::size_t j = 0; j < raw.order(); ++j) {
      if (i == j) continue;
      if (std::abs(raw(i, j)) < kZeroChirality)
        throw Error(ErrorKind::ZeroChirality,
                    "lines " + std::to_string(i) + " and " + std::to_string(j) + " intersect", {i, j});
      p(i, j) = raw(i, j) > 0 ? 1 : -1;
    }
  }
  return SeidelMatrix(std::move(p));
}

inline SeidelMatrix chirality_matrix(const Configuration& c) { return chirality_matrix(c.lines()); }

namespace detail {

struct ProjectedLine {
  Eigen::Vector2d q;  // point
  Eigen::Vector2d d;  // unit direction
  std::size_t index;
};

inline double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

inline Eigen::Vector2d intersect(const ProjectedLine& a, const ProjectedLine& b) {
  const double s = cross2(b.q - a.q, b.d) / cross2(a.d, b.d);
  return a.q + s * a.d;
}

}  // namespace detail

/// Row k of the Ring matrix: project every other line along n_k, with v_k as
/// origin, and count the triangles of projected lines that strictly enclose it.
inline std::vector<std::int64_t> ring_row(std::span<const OrientedLine> lines, std::size_t k) {
  using detail::ProjectedLine;
  const std::size_t n = lines.size();
  const Vec3d nk = lines[k].direction();
  const Vec3d seed = std::abs(nk.x()) < 0.9 ? Vec3d::UnitX() : Vec3d::UnitY();
  const Vec3d e1 = nk.cross(seed).normalized();
  const Vec3d e2 = nk.cross(e1);

  std::vector<ProjectedLine> proj;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    const Vec3d ni = lines[i].direction();
    const Vec3d dv = lines[i].point() - lines[k].point();
    Eigen::Vector2d d(ni.dot(e1), ni.dot(e2));
    if (d.norm() <= kParallelTolerance)
      throw Error(ErrorKind::DegenerateParallel,
                  "axes " + std::to_string(k) + " and " + std::to_string(i) + " are parallel", {k, i});
    d.normalize();
    const Eigen::Vector2d q(dv.dot(e1), dv.dot(e2));
    if (std::abs(detail::cross2(d, -q)) <= kProjectionTolerance)
      throw Error(ErrorKind::DegenerateProjection,
                  "viewpoint " + std::to_string(k) + ": projected line " + std::to_string(i) + " passes through the origin",
                  {k, i});
    proj.push_back({q, d, i});
  }
  for (std::size_t a = 0; a < proj.size(); ++a)
    for (std::size_t b = a + 1; b < proj.size(); ++b)
      if (std::abs(detail::cross2(proj[a].d, proj[b].d)) <= kProjectionTolerance)
        throw Error(ErrorKind::DegenerateProjection,
                    "viewpoint " + std::to_string(k) + ": projections of lines " + std::to_string(proj[a].index) +
                        " and " + std::to_string(proj[b].index) + " are parallel",
                    {k, proj[a].index, proj[b].index});

  std::vector<std::int64_t> row(n, 0);
  const Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  for (std::size_t a = 0; a < proj.size(); ++a) {
    for (std::size_t b = a + 1; b < proj.size(); ++b) {
      const Eigen::Vector2d pab = detail::intersect(proj[a], proj[b]);
      for (std::size_t c = b + 1; c < proj.size(); ++c) {
        const Eigen::Vector2d pbc = detail::intersect(proj[b], proj[c]);
        const Eigen::Vector2d pac = detail::intersect(proj[a], proj[c]);
        const double s1 = detail::cross2(pbc - pab, origin - pab);
        const double s2 = detail::cross2(pac - pbc, origin - pbc);
        const double s3 = detail::cross2(pab - pac, origin - pac);
        if ((s1 > 0 && s2 > 0 && s3 > 0) || (s1 < 0 && s2 < 0 && s3 < 0)) {
          ++row[proj[a].index];
          ++row[proj[b].index];
          ++row[proj[c].index];
        }
      }
    }
  }
  return row;
}

inline RingMatrix ring_matrix(std::span<const OrientedLine> lines) {
  const std::size_t n = lines.size();
  IntMatrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = ring_row(lines, k);
    for (std::size_t i = 0; i < n; ++i) r(k, i) = row[i];
  }
  return RingMatrix(std::move(r));
}

inline RingMatrix ring_matrix(const Configuration& c) { return ring_matrix(c.lines()); }

/// Ring matrix of the sub-configuration `subset`, recomputed from its own lines.
inline RingMatrix ring_matrix(std::span<const OrientedLine> lines, std::span<const std::size_t> subset) {
  std::vector<OrientedLine> sub;
  sub.reserve(subset.size());
  for (auto i : subset) sub.push_back(lines[i]);
  return ring_matrix(sub);
}

/// S_ij = -P_ij sign(n_i . n_j); unchanged by reversing any line.
inline SpiralityMatrix spirality_matrix(std::span<const OrientedLine> lines) {
  const SeidelMatrix p = chirality_matrix(lines);
  IntMatrix s(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (i == j) continue;
      const double dot = lines[i].direction().dot(lines[j].direction());
      if (std::abs(dot) < 1e-12)
        throw Error(ErrorKind::OrthogonalPair,
                    "axes " + std::to_string(i) + " and " + std::to_string(j) + " are orthogonal", {i, j});
      s(i, j) = -p(i, j) * (dot > 0 ? 1 : -1);
    }
  }
  return SpiralityMatrix(std::move(s));
}

inline SpiralityMatrix spirality_matrix(const Configuration& c) { return spirality_matrix(c.lines()); }

}  // namespace cylknot
