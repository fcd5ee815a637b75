#pragma once

// Oriented lines, elliptic cylinders and the pairwise contact formulas.
//
// A line is stored as two spherical angles (t, p) of its unit direction and the
// point v = (x, y, 0) where it punctures the xy plane. An elliptic cylinder adds
// a roll angle omega and semi-axes a >= b > 0; the cross-section is
//   rho(alpha) = a N_a cos(alpha) + b N_b sin(alpha)
// with N_a, N_b the rotated x/y axes. For two non-parallel axes with
// w = n_i x n_j, viewing along w shows two stripes; the cylinders touch when
// the stripe half-widths add up to the projected axis distance |w.(v_j - v_i)|.

#include <Eigen/Dense>

#include <algorithm>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "cylknot/error.hpp"

namespace cylknot {

template <class T>
using Vec3 = Eigen::Matrix<T, 3, 1>;
using Vec3d = Vec3<double>;

/// Below this |n_i x n_j| two axes count as parallel.
inline constexpr double kParallelTolerance = 1e-9;

/// Orientation convention of the chirality product. The raw triple product
/// (n_i x n_j).(v_i - v_j) comes out as the global negative of the
/// counterclockwise-covering rule once calibrated on the published 10-knot,
/// so the product is taken with this sign.
inline constexpr double kChiralitySign = -1.0;

template <class T>
Vec3<T> direction_vector(const T& t, const T& p) {
  using std::cos;
  using std::sin;
  return Vec3<T>(sin(t) * cos(p), sin(t) * sin(p), cos(t));
}

/// Rot(p, t) = Rz(p) * Ry(t) applied to (u0, u1, 0).
template <class T>
Vec3<T> rotate_in_plane(const T& t, const T& p, const T& u0, const T& u1) {
  using std::cos;
  using std::sin;
  const T ct = cos(t), st = sin(t), cp = cos(p), sp = sin(p);
  // Ry(t) * (u0, u1, 0) = (ct u0, u1, -st u0)
  const T rx = ct * u0, ry = u1, rz = -st * u0;
  return Vec3<T>(cp * rx - sp * ry, sp * rx + cp * ry, rz);
}

struct OrientedLine {
  double t = 0.0;  ///< polar angle of the direction
  double p = 0.0;  ///< azimuth of the direction
  double x = 0.0;  ///< puncture point in the z = 0 plane
  double y = 0.0;

  Vec3d direction() const { return direction_vector(t, p); }
  Vec3d point() const { return {x, y, 0.0}; }

  /// The same line traversed the other way.
  OrientedLine reversed() const { return {std::numbers::pi - t, p + std::numbers::pi, x, y}; }

  /// Line through `c` with direction `d`; fails when the line does not cross z = 0.
  static OrientedLine through(const Vec3d& c, const Vec3d& d) {
    const Vec3d u = d.normalized();
    if (std::abs(u.z()) < 1e-12) throw Error(ErrorKind::DegenerateParams, "line parallel to the z = 0 plane");
    const Vec3d v = c - (c.z() / u.z()) * u;
    return {std::acos(std::clamp(u.z(), -1.0, 1.0)), std::atan2(u.y(), u.x()), v.x(), v.y()};
  }

  friend bool operator==(const OrientedLine&, const OrientedLine&) = default;
};

struct EllipticCylinder {
  OrientedLine line;
  double omega = 0.0;
  double a = 1.0;
  double b = 1.0;

  EllipticCylinder() = default;
  EllipticCylinder(OrientedLine l, double roll, double major, double minor)
      : line(l), omega(roll), a(major), b(minor) {
    if (!(b > 0.0) || !(a >= b))
      throw Error(ErrorKind::InvalidArgument,
                  "semi-axes must satisfy a >= b > 0 (a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }

  static EllipticCylinder round(OrientedLine l, double r) { return {l, 0.0, r, r}; }

  /// Accepts either axis ordering; a swapped pair is rolled by a quarter turn.
  static EllipticCylinder normalized(OrientedLine l, double roll, double s1, double s2) {
    if (s2 > s1) return {l, roll + std::numbers::pi / 2, s2, s1};
    return {l, roll, s1, s2};
  }

  bool is_round() const { return a == b; }

  friend bool operator==(const EllipticCylinder&, const EllipticCylinder&) = default;
};

struct Configuration {
  std::vector<EllipticCylinder> cylinders;
  std::string label;

  std::size_t size() const noexcept { return cylinders.size(); }
  const EllipticCylinder& operator[](std::size_t i) const { return cylinders[i]; }

  std::vector<OrientedLine> lines() const {
    std::vector<OrientedLine> out;
    out.reserve(cylinders.size());
    for (const auto& c : cylinders) out.push_back(c.line);
    return out;
  }

  /// Pairs whose axes are parallel within kParallelTolerance.
  std::vector<std::pair<std::size_t, std::size_t>> degenerate_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (cylinders[i].line.direction().cross(cylinders[j].line.direction()).norm() <= kParallelTolerance)
          out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Configuration of round cylinders of radius r on the given lines.
inline Configuration round_configuration(const std::vector<OrientedLine>& lines, double r = 1.0,
                                         std::string label = {}) {
  Configuration c;
  c.label = std::move(label);
  for (const auto& l : lines) c.cylinders.push_back(EllipticCylinder::round(l, r));
  return c;
}

/// Cross-section axes (N_a, N_b).
template <class T>
std::pair<Vec3<T>, Vec3<T>> section_frame(const T& t, const T& p, const T& omega) {
  using std::cos;
  using std::sin;
  const T c = cos(omega), s = sin(omega);
  return {rotate_in_plane(t, p, c, s), rotate_in_plane(t, p, T(-s), c)};
}

inline std::pair<Vec3d, Vec3d> section_frame(const EllipticCylinder& cyl) {
  return section_frame(cyl.line.t, cyl.line.p, cyl.omega);
}

/// max over alpha of |w . rho(alpha)| = sqrt(a^2 (N_a.w)^2 + b^2 (N_b.w)^2).
template <class T>
T half_width(const Vec3<T>& na, const Vec3<T>& nb, const T& a, const T& b, const Vec3<T>& w) {
  using std::sqrt;
  const T pa = a * na.dot(w);
  const T pb = b * nb.dot(w);
  return sqrt(pa * pa + pb * pb);
}

inline double half_width(const EllipticCylinder& cyl, const Vec3d& w) {
  const auto [na, nb] = section_frame(cyl);
  return half_width<double>(na, nb, cyl.a, cyl.b, w);
}

/// Cross-section point rho(alpha) relative to the axis.
inline Vec3d section_point(const EllipticCylinder& cyl, double alpha) {
  const auto [na, nb] = section_frame(cyl);
  return cyl.a * std::cos(alpha) * na + cyl.b * std::sin(alpha) * nb;
}

/// Angle alpha at which w . rho(alpha) is maximal, i.e. d rho/d alpha is orthogonal
/// to w (tan alpha = (b/a)(N_b.w)/(N_a.w)); alpha + pi is the opposite contact.
inline double contact_alpha(const EllipticCylinder& cyl, const Vec3d& w) {
  const auto [na, nb] = section_frame(cyl);
  const double pa = cyl.a * na.dot(w);
  const double pb = cyl.b * nb.dot(w);
  const double scale = w.norm() * cyl.a;
  if (std::abs(pa) <= 1e-15 * scale && std::abs(pb) <= 1e-15 * scale)
    throw Error(ErrorKind::IndeterminateContact, "direction is orthogonal to the cross-section plane");
  return std::atan2(pb, pa);
}

inline void require_not_parallel(const Vec3d& w, std::size_t i = 0, std::size_t j = 1) {
  if (w.norm() <= kParallelTolerance)
    throw Error(ErrorKind::DegenerateParallel,
                "axes " + std::to_string(i) + " and " + std::to_string(j) + " are parallel", {i, j});
}

/// Non-normalized chirality entry: kChiralitySign * (n_i x n_j).(v_i - v_j).
template <class T>
T chirality_product(const Vec3<T>& ni, const Vec3<T>& vi, const Vec3<T>& nj, const Vec3<T>& vj) {
  return T(kChiralitySign) * ni.cross(nj).dot(vi - vj);
}

inline double chirality_product(const OrientedLine& i, const OrientedLine& j) {
  const Vec3d ni = i.direction(), nj = j.direction();
  require_not_parallel(ni.cross(nj));
  return chirality_product<double>(ni, i.point(), nj, j.point());
}

/// Projected axis distance minus the sum of stripe half-widths along w = n_i x n_j:
/// positive when separated, zero when tangent, negative when overlapping.
inline double tangency_gap(const EllipticCylinder& ci, const EllipticCylinder& cj) {
  const Vec3d w = ci.line.direction().cross(cj.line.direction());
  require_not_parallel(w);
  return std::abs(w.dot(ci.line.point() - cj.line.point())) - (half_width(ci, w) + half_width(cj, w));
}

/// Signed contact residual P_ij (h_i + h_j) - chirality_product(i, j). Vanishes
/// exactly when the pair is tangent and realizes chirality `target_sign`.
template <class T>
T signed_residual(const Vec3<T>& ni, const Vec3<T>& vi, const Vec3<T>& nai, const Vec3<T>& nbi, const T& ai,
                  const T& bi, const Vec3<T>& nj, const Vec3<T>& vj, const Vec3<T>& naj, const Vec3<T>& nbj,
                  const T& aj, const T& bj, int target_sign) {
  const Vec3<T> w = ni.cross(nj);
  const T widths = half_width<T>(nai, nbi, ai, bi, w) + half_width<T>(naj, nbj, aj, bj, w);
  return T(double(target_sign)) * widths - chirality_product<T>(ni, vi, nj, vj);
}

inline double signed_tangency_residual(const EllipticCylinder& ci, const EllipticCylinder& cj, int target_sign) {
  if (target_sign != 1 && target_sign != -1)
    throw Error(ErrorKind::InvalidArgument, "target sign must be +1 or -1");
  const Vec3d ni = ci.line.direction(), nj = cj.line.direction();
  require_not_parallel(ni.cross(nj));
  const auto [nai, nbi] = section_frame(ci);
  const auto [naj, nbj] = section_frame(cj);
  return signed_residual<double>(ni, ci.line.point(), nai, nbi, ci.a, ci.b, nj, cj.line.point(), naj, nbj, cj.a,
                                 cj.b, target_sign);
}

struct ContactPoint {
  Vec3d point;          ///< midpoint of the two surface points
  double residual = 0;  ///< distance between the two surface points
};

/// Common point of two tangent cylinders. Each surface point is taken at the
/// extremal cross-section angle facing the other axis; the axial offsets
/// (s_i, s_j) come from least squares on v_i + s_i n_i + rho_i = v_j + s_j n_j + rho_j.
inline ContactPoint contact_point(const EllipticCylinder& ci, const EllipticCylinder& cj) {
  const Vec3d ni = ci.line.direction(), nj = cj.line.direction();
  Vec3d w = ni.cross(nj);
  require_not_parallel(w);
  const Vec3d vi = ci.line.point(), vj = cj.line.point();
  if (w.dot(vj - vi) < 0) w = -w;  // w now points from axis i towards axis j
  const Vec3d pi = vi + section_point(ci, contact_alpha(ci, w));
  const Vec3d pj = vj + section_point(cj, contact_alpha(cj, -w));
  Eigen::Matrix<double, 3, 2> a;
  a.col(0) = ni;
  a.col(1) = -nj;
  const Eigen::Vector2d s = a.colPivHouseholderQr().solve(pj - pi);
  const Vec3d on_i = pi + s(0) * ni;
  const Vec3d on_j = pj + s(1) * nj;
  ContactPoint out{0.5 * (on_i + on_j), (on_i - on_j).norm()};
  if (out.residual > 1e-4)
    throw Error(ErrorKind::NotTangent, "cylinders are not in contact (separation " + std::to_string(out.residual) + ")");
  return out;
}

/// Signed distance-like test of a point against a cylinder surface: zero on the
/// surface, negative inside.
inline double surface_offset(const EllipticCylinder& cyl, const Vec3d& q) {
  const auto [na, nb] = section_frame(cyl);
  const Vec3d d = q - cyl.line.point();
  const double u = d.dot(na) / cyl.a, v = d.dot(nb) / cyl.b;
  return std::sqrt(u * u + v * v) - 1.0;
}

/// Central inversion v -> -v with orientations kept: the mirror configuration.
inline Configuration mirror(Configuration c) {
  for (auto& cyl : c.cylinders) {
    cyl.line.x = -cyl.line.x;
    cyl.line.y = -cyl.line.y;
  }
  return c;
}

}  // namespace cylknot
