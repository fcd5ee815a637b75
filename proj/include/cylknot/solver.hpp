#pragma once

// Damped least squares for mutually tangent cylinders.
//
// Unknowns per cylinder: (t, p, x, y, omega, a, b), of which each profile keeps
// a subset free. Cylinder 0 is pinned to the z axis (t = p = x = y = 0); the
// remaining rigid freedom (rotation about and translation along z) is left to
// the damping. Semi-axes are optimized as logarithms.
//
// The reported residual of a pair is P_ij (h_i + h_j) - chirality_product,
// which scales with |n_i x n_j|. The optimizer divides each pair by that
// magnitude: same zero set, but nearly parallel pairs no longer look like
// solutions.

#include <Eigen/Dense>
#include <unsupported/Eigen/AutoDiff>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cylknot/error.hpp"
#include "cylknot/exact.hpp"
#include "cylknot/geometry.hpp"
#include "cylknot/invariants.hpp"
#include "cylknot/matrix.hpp"
#include "cylknot/topomatrix.hpp"

namespace cylknot {

struct SolveProblem {
  std::size_t n = 0;
  std::optional<SeidelMatrix> target;  ///< empty: free-sign mode
  Profile profile = Profile::FreeRound;
  std::optional<double> aspect_ratio;  ///< fixed b/a for equal_elliptic
  std::uint64_t seed = 1;
  std::size_t max_restarts = 100;
  double tolerance = 1e-10;  ///< on max |residual| / scale
  std::optional<Configuration> warm_start;
  double warm_noise = 0.0;
  std::size_t max_iterations = 400;
  double box_half_side = 0.0;  ///< random start range for x, y; 0 picks a default
  unsigned threads = 0;        ///< 0: hardware concurrency
};

struct SolveResult {
  Configuration config;
  double residual_norm = std::numeric_limits<double>::infinity();
  SeidelMatrix realized_P;
  RingMatrix realized_R;
  std::optional<InvariantReport> report;
  std::string gauge;
  std::size_t restart = 0;  ///< index of the successful restart
  std::size_t iterations = 0;
};

/// Thrown by solve() when the restart budget is exhausted; carries the best attempt.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& msg, Configuration best, double residual)
      : Error(ErrorKind::NoConvergence, msg), best_(std::move(best)), residual_(residual) {}
  const Configuration& best() const noexcept { return best_; }
  double best_residual() const noexcept { return residual_; }

 private:
  Configuration best_;
  double residual_;
};

inline constexpr double kPenalty = 1e6;
inline constexpr double kFreeSignEpsilon = 1e-12;

// ---------------------------------------------------------------------------
// Gauge

/// Coordinates of `na` in the unrolled frame of direction (t, p), as a roll angle.
inline double roll_angle(double t, double p, const Vec3d& na) {
  const Vec3d ex = rotate_in_plane(t, p, 1.0, 0.0);
  const Vec3d ey = rotate_in_plane(t, p, 0.0, 1.0);
  return std::atan2(na.dot(ey), na.dot(ex));
}

/// Applies a rigid motion q -> rot * q + shift and re-expresses every cylinder.
inline Configuration rigid_transform(const Configuration& c, const Eigen::Matrix3d& rot, const Vec3d& shift) {
  Configuration out;
  out.label = c.label;
  for (const auto& cyl : c.cylinders) {
    const Vec3d n = rot * cyl.line.direction();
    const Vec3d q = rot * cyl.line.point() + shift;
    const auto [na, nb] = section_frame(cyl);
    OrientedLine l = OrientedLine::through(q, n);
    out.cylinders.emplace_back(l, roll_angle(l.t, l.p, rot * na), cyl.a, cyl.b);
  }
  return out;
}

/// Rigid motion putting cylinder 0 on the z axis through the origin.
inline Configuration regauge(const Configuration& c) {
  if (c.size() == 0) return c;
  const Vec3d n0 = c[0].line.direction();
  const Eigen::Matrix3d rot = Eigen::Quaterniond::FromTwoVectors(n0, Vec3d::UnitZ()).toRotationMatrix();
  Configuration out = rigid_transform(c, rot, -(rot * c[0].line.point()));
  auto& z = out.cylinders[0];
  const Vec3d na = rot * section_frame(c[0]).first;
  z.line = {0.0, 0.0, 0.0, 0.0};
  z.omega = std::atan2(na.y(), na.x());
  return out;
}

inline Configuration scaled(Configuration c, double s) {
  for (auto& cyl : c.cylinders) {
    cyl.line.x *= s;
    cyl.line.y *= s;
    cyl.a *= s;
    cyl.b *= s;
  }
  return c;
}

inline double length_scale(const Configuration& c) {
  double s = 0;
  for (const auto& cyl : c.cylinders) s = std::max(s, cyl.a);
  return s > 0 ? s : 1.0;
}

// ---------------------------------------------------------------------------
// Parameter layout

namespace detail {

enum Natural : int { kT, kP, kX, kY, kOmega, kA, kB, kNatural };

/// Where each natural parameter of each cylinder comes from.
struct Slot {
  int var = -1;         ///< optimizer variable, or -1 when fixed
  bool log = false;     ///< natural = exp(var)
  double fixed = 0.0;   ///< value when var < 0
  double offset = 0.0;  ///< natural = exp(var + offset) for log slots
};

struct Layout {
  std::size_t n = 0;
  std::vector<std::array<Slot, kNatural>> slots;
  std::size_t size = 0;

  Layout(std::size_t count, Profile profile, std::optional<double> aspect) : n(count), slots(count) {
    int next = 0;
    const auto var = [&] { return next++; };
    int shared = -1;
    if (profile == Profile::EqualElliptic && !aspect) shared = var();
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = slots[i];
      if (i > 0)
        for (int k : {kT, kP, kX, kY}) s[k].var = var();
      switch (profile) {
        case Profile::EqualRound:
          s[kA].fixed = s[kB].fixed = 1.0;
          break;
        case Profile::FreeRound:
          if (i == 0) {
            s[kA].fixed = s[kB].fixed = 1.0;
          } else {
            s[kA].var = var();
            s[kA].log = true;
            s[kB] = s[kA];
          }
          break;
        case Profile::EqualElliptic:
          s[kOmega].var = var();
          s[kA].fixed = 1.0;
          if (aspect) {
            s[kB].fixed = *aspect;
          } else {
            s[kB].var = shared;
            s[kB].log = true;
          }
          break;
        case Profile::FreeElliptic:
          s[kOmega].var = var();
          s[kA].var = var();
          s[kA].log = true;
          s[kB].var = var();
          s[kB].log = true;
          break;
      }
    }
    size = static_cast<std::size_t>(next);
  }

  double natural(const Eigen::VectorXd& x, std::size_t i, int k) const {
    const Slot& s = slots[i][k];
    if (s.var < 0) return s.fixed;
    return s.log ? std::exp(x(s.var)) : x(s.var);
  }

  std::array<double, kNatural> cylinder(const Eigen::VectorXd& x, std::size_t i) const {
    std::array<double, kNatural> c{};
    for (int k = 0; k < kNatural; ++k) c[k] = natural(x, i, k);
    return c;
  }

  Configuration decode(const Eigen::VectorXd& x) const {
    Configuration c;
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = cylinder(x, i);
      c.cylinders.push_back(EllipticCylinder::normalized({v[kT], v[kP], v[kX], v[kY]}, v[kOmega], v[kA], v[kB]));
    }
    return c;
  }

  /// Inverse of decode for a configuration already in gauge and scale.
  Eigen::VectorXd encode(const Configuration& c) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& cyl = c[i];
      const double v[kNatural] = {cyl.line.t, cyl.line.p, cyl.line.x, cyl.line.y, cyl.omega, cyl.a, cyl.b};
      for (int k = 0; k < kNatural; ++k) {
        const Slot& s = slots[i][k];
        if (s.var < 0) continue;
        x(s.var) = s.log ? std::log(v[k]) : v[k];
      }
    }
    return x;
  }
};

template <class T>
using Cyl = std::array<T, kNatural>;

/// Pair residual as a function of the 14 natural parameters.
template <class T>
T pair_residual(const Cyl<T>& ci, const Cyl<T>& cj, int sign, bool normalized, bool free_sign) {
  using std::sqrt;
  const Vec3<T> ni = direction_vector(ci[kT], ci[kP]);
  const Vec3<T> nj = direction_vector(cj[kT], cj[kP]);
  const Vec3<T> vi(ci[kX], ci[kY], T(0.0));
  const Vec3<T> vj(cj[kX], cj[kY], T(0.0));
  const auto [nai, nbi] = section_frame(ci[kT], ci[kP], ci[kOmega]);
  const auto [naj, nbj] = section_frame(cj[kT], cj[kP], cj[kOmega]);
  Vec3<T> w = ni.cross(nj);
  if (normalized) {
    const T len = sqrt(w.dot(w));
    w = w / len;
  }
  const T widths = half_width<T>(nai, nbi, ci[kA], ci[kB], w) + half_width<T>(naj, nbj, cj[kA], cj[kB], w);
  const T m = T(kChiralitySign) * w.dot(vi - vj);
  if (free_sign) return sqrt(m * m + T(kFreeSignEpsilon * kFreeSignEpsilon)) - widths;
  return T(double(sign)) * widths - m;
}

inline double cross_norm(const Cyl<double>& ci, const Cyl<double>& cj) {
  return direction_vector(ci[kT], ci[kP]).cross(direction_vector(cj[kT], cj[kP])).norm();
}

struct System {
  Layout layout;
  std::optional<SeidelMatrix> target;
  bool normalized = true;
  double scale = 1.0;

  int sign(std::size_t i, std::size_t j) const { return target ? static_cast<int>((*target)(i, j)) : 1; }

  std::size_t rows() const { return layout.n * (layout.n - 1) / 2; }

  Eigen::VectorXd residuals(const Eigen::VectorXd& x) const {
    Eigen::VectorXd r(static_cast<Eigen::Index>(rows()));
    std::vector<Cyl<double>> c(layout.n);
    for (std::size_t i = 0; i < layout.n; ++i) c[i] = layout.cylinder(x, i);
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < layout.n; ++i)
      for (std::size_t j = i + 1; j < layout.n; ++j, ++row)
        r(row) = cross_norm(c[i], c[j]) <= kParallelTolerance
                     ? kPenalty * scale
                     : pair_residual<double>(c[i], c[j], sign(i, j), normalized, !target);
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    using Deriv = Eigen::Matrix<double, 2 * kNatural, 1>;
    using AD = Eigen::AutoDiffScalar<Deriv>;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows()), x.size());
    std::vector<Cyl<double>> c(layout.n);
    for (std::size_t i = 0; i < layout.n; ++i) c[i] = layout.cylinder(x, i);
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < layout.n; ++i) {
      for (std::size_t j = i + 1; j < layout.n; ++j, ++row) {
        if (cross_norm(c[i], c[j]) <= kParallelTolerance) continue;
        Cyl<AD> ai, aj;
        for (int k = 0; k < kNatural; ++k) {
          ai[k] = AD(c[i][k], 2 * kNatural, k);
          aj[k] = AD(c[j][k], 2 * kNatural, kNatural + k);
        }
        const AD r = pair_residual<AD>(ai, aj, sign(i, j), normalized, !target);
        for (int side = 0; side < 2; ++side) {
          const std::size_t cyl = side == 0 ? i : j;
          for (int k = 0; k < kNatural; ++k) {
            const Slot& s = layout.slots[cyl][k];
            if (s.var < 0) continue;
            const double d = r.derivatives()(side * kNatural + k);
            jac(row, s.var) += s.log ? d * c[cyl][k] : d;
          }
        }
      }
    }
    return jac;
  }
};

struct LmOutcome {
  Eigen::VectorXd x;
  double max_residual = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
};

/// Levenberg-Marquardt with Marquardt scaling and x3 / /3 damping updates.
inline LmOutcome levenberg_marquardt(const System& sys, Eigen::VectorXd x, double tol, std::size_t max_iter) {
  Eigen::VectorXd r = sys.residuals(x);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  LmOutcome out;
  std::size_t stalls = 0;
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    if (r.lpNorm<Eigen::Infinity>() < tol * sys.scale) break;
    const Eigen::MatrixXd jac = sys.jacobian(x);
    const Eigen::MatrixXd a = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    Eigen::VectorXd diag = a.diagonal();
    const double floor = std::max(1e-12, 1e-9 * diag.maxCoeff());
    diag = diag.cwiseMax(floor);
    bool accepted = false;
    while (lambda < 1e16) {
      Eigen::MatrixXd damped = a;
      damped.diagonal() += lambda * diag;
      const Eigen::VectorXd step = damped.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= 3;
        continue;
      }
      const Eigen::VectorXd xn = x + step;
      const Eigen::VectorXd rn = sys.residuals(xn);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        stalls = cn > cost * (1 - 1e-10) ? stalls + 1 : 0;
        x = xn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda / 3, 1e-15);
        accepted = true;
        break;
      }
      lambda *= 3;
    }
    if (!accepted || stalls > 20) break;
  }
  out.x = std::move(x);
  out.max_residual = r.lpNorm<Eigen::Infinity>();
  return out;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace detail

inline std::string gauge_description(Profile p) {
  std::string g = "cylinder 0 on the z axis through the origin (t = p = x = y = 0)";
  switch (p) {
    case Profile::EqualRound: return g + "; all radii 1";
    case Profile::FreeRound: return g + "; r_0 = 1";
    case Profile::EqualElliptic: return g + "; a = 1 for every cylinder";
    case Profile::FreeElliptic: return g + "; scale free";
  }
  return g;
}

/// Signed residual of every pair i < j (row-major), P_ij (h_i + h_j) - chirality_product.
/// Parallel pairs contribute kPenalty * scale.
inline Eigen::VectorXd residual_vector(const Configuration& c, const std::optional<SeidelMatrix>& target) {
  const std::size_t n = c.size();
  if (target && target->order() != n) throw Error(ErrorKind::OrderMismatch, "target order differs from configuration");
  const double scale = length_scale(c);
  Eigen::VectorXd r(static_cast<Eigen::Index>(n * (n - 1) / 2));
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++row) {
      const Vec3d w = c[i].line.direction().cross(c[j].line.direction());
      if (w.norm() <= kParallelTolerance) {
        r(row) = kPenalty * scale;
        continue;
      }
      if (target) {
        r(row) = signed_tangency_residual(c[i], c[j], static_cast<int>((*target)(i, j)));
      } else {
        const double m = chirality_product(c[i].line, c[j].line);
        r(row) = std::sqrt(m * m + kFreeSignEpsilon * kFreeSignEpsilon) - (half_width(c[i], w) + half_width(c[j], w));
      }
    }
  }
  return r;
}

/// Residuals and Jacobian of the problem's parameterization at `params`.
/// `normalized` selects the per-pair division by |n_i x n_j| used while iterating.
inline Eigen::VectorXd residual_vector(const SolveProblem& pb, const Eigen::VectorXd& params, bool normalized = false) {
  detail::System sys{detail::Layout(pb.n, pb.profile, pb.aspect_ratio), pb.target, normalized, 1.0};
  return sys.residuals(params);
}

inline Eigen::MatrixXd residual_jacobian(const SolveProblem& pb, const Eigen::VectorXd& params,
                                         bool normalized = false) {
  detail::System sys{detail::Layout(pb.n, pb.profile, pb.aspect_ratio), pb.target, normalized, 1.0};
  return sys.jacobian(params);
}

inline std::size_t parameter_count(const SolveProblem& pb) {
  return detail::Layout(pb.n, pb.profile, pb.aspect_ratio).size;
}

inline Configuration decode_parameters(const SolveProblem& pb, const Eigen::VectorXd& params) {
  return detail::Layout(pb.n, pb.profile, pb.aspect_ratio).decode(params);
}

/// Brings `c` into the problem's gauge and scale and returns its parameter vector.
inline Eigen::VectorXd encode_parameters(const SolveProblem& pb, const Configuration& c) {
  if (c.size() != pb.n) throw Error(ErrorKind::OrderMismatch, "warm start has the wrong number of cylinders");
  Configuration g = regauge(c);
  if (pb.profile != Profile::FreeElliptic) g = scaled(g, 1.0 / g[0].a);
  return detail::Layout(pb.n, pb.profile, pb.aspect_ratio).encode(g);
}

/// Random start: uniform directions, punctures in a square, moderate shapes.
inline Eigen::VectorXd random_parameters(const SolveProblem& pb, std::mt19937_64& rng) {
  using detail::uniform;
  const detail::Layout layout(pb.n, pb.profile, pb.aspect_ratio);
  const double h = pb.box_half_side > 0 ? pb.box_half_side : 1.0 + 0.5 * static_cast<double>(pb.n);
  Eigen::VectorXd x(static_cast<Eigen::Index>(layout.size));
  for (std::size_t i = 0; i < pb.n; ++i) {
    const auto& s = layout.slots[i];
    if (s[detail::kT].var >= 0) x(s[detail::kT].var) = std::acos(uniform(rng, -1.0, 1.0));
    if (s[detail::kP].var >= 0) x(s[detail::kP].var) = uniform(rng, 0.0, 2 * std::numbers::pi);
    if (s[detail::kX].var >= 0) x(s[detail::kX].var) = uniform(rng, -h, h);
    if (s[detail::kY].var >= 0) x(s[detail::kY].var) = uniform(rng, -h, h);
    if (s[detail::kOmega].var >= 0) x(s[detail::kOmega].var) = uniform(rng, 0.0, std::numbers::pi);
    if (s[detail::kA].var >= 0) x(s[detail::kA].var) = uniform(rng, std::log(0.5), std::log(2.0));
    if (s[detail::kB].var >= 0 && s[detail::kB].var != s[detail::kA].var)
      x(s[detail::kB].var) = pb.profile == Profile::EqualElliptic ? uniform(rng, std::log(0.05), 0.0)
                                                                  : uniform(rng, std::log(0.3), std::log(2.0));
  }
  return x;
}

namespace detail {

struct Attempt {
  LmOutcome lm;
  std::optional<SolveResult> result;
};

/// Smallest accepted minor semi-axis, relative to the largest major one.
inline constexpr double kMinRelativeAxis = 1e-4;

inline std::optional<SolveResult> finish(const SolveProblem& pb, const System& sys, const Eigen::VectorXd& x) {
  try {
    SolveResult res;
    res.config = sys.layout.decode(x);
    const double scale = length_scale(res.config);
    for (const auto& cyl : res.config.cylinders)
      if (!(cyl.b > kMinRelativeAxis * scale)) return std::nullopt;
    const auto lines = res.config.lines();
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j)
        if (lines[i].direction().cross(lines[j].direction()).norm() <= 1e-6) return std::nullopt;
    res.residual_norm = residual_vector(res.config, pb.target).lpNorm<Eigen::Infinity>() / scale;
    res.realized_P = chirality_matrix(res.config);
    if (pb.target && !(res.realized_P == *pb.target)) return std::nullopt;
    res.realized_R = ring_matrix(res.config);
    try {
      res.report = invariant_report(res.realized_P, res.realized_R);
    } catch (const Error&) {
      // singular I - R: no report
    }
    res.config.label = std::to_string(pb.n) + "-knot (" + std::string(to_string(pb.profile)) + ")";
    res.gauge = gauge_description(pb.profile);
    return res;
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline Attempt run_restart(const SolveProblem& pb, const System& sys, std::size_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(pb.seed), static_cast<std::uint32_t>(pb.seed >> 32),
                    static_cast<std::uint32_t>(k)};
  std::mt19937_64 rng(seq);
  Eigen::VectorXd x0;
  if (pb.warm_start) {
    x0 = encode_parameters(pb, *pb.warm_start);
    for (Eigen::Index v = 0; v < x0.size(); ++v) x0(v) += uniform(rng, -pb.warm_noise, pb.warm_noise);
  } else {
    x0 = random_parameters(pb, rng);
  }
  Attempt a;
  a.lm = levenberg_marquardt(sys, std::move(x0), pb.tolerance, pb.max_iterations);
  if (a.lm.max_residual < pb.tolerance * sys.scale) {
    a.result = finish(pb, sys, a.lm.x);
    if (a.result) {
      a.result->restart = k;
      a.result->iterations = a.lm.iterations;
    }
  }
  return a;
}

}  // namespace detail

/// Restarts run in batches on worker threads; the lowest successful restart
/// index wins, so the result depends only on the seed and the budget.
inline SolveResult solve(const SolveProblem& pb) {
  if (pb.n < 2) throw Error(ErrorKind::InvalidArgument, "need at least two cylinders");
  if (pb.target && pb.target->order() != pb.n)
    throw Error(ErrorKind::OrderMismatch, "target order differs from n");
  const auto d = dof(static_cast<std::int64_t>(pb.n), pb.profile) - (pb.aspect_ratio ? 1 : 0);
  if (pb.target && d < 0)
    throw Error(ErrorKind::InfeasibleDof, std::to_string(pb.n) + " cylinders in profile " +
                                              std::string(to_string(pb.profile)) + " leave " + std::to_string(d) +
                                              " degrees of freedom");
  detail::System sys{detail::Layout(pb.n, pb.profile, pb.aspect_ratio), pb.target, true, 1.0};
  if (pb.warm_start && pb.profile == Profile::FreeElliptic) sys.scale = length_scale(*pb.warm_start);

  const unsigned hw = pb.threads ? pb.threads : std::max(1u, std::thread::hardware_concurrency());
  std::optional<detail::LmOutcome> best;
  for (std::size_t base = 0; base < pb.max_restarts; base += hw) {
    const std::size_t end = std::min<std::size_t>(pb.max_restarts, base + hw);
    std::vector<std::future<detail::Attempt>> jobs;
    for (std::size_t k = base; k < end; ++k)
      jobs.push_back(std::async(hw > 1 ? std::launch::async : std::launch::deferred,
                                [&pb, &sys, k] { return detail::run_restart(pb, sys, k); }));
    std::optional<SolveResult> winner;
    for (auto& job : jobs) {
      detail::Attempt a = job.get();
      if (winner) continue;
      if (a.result) winner = std::move(a.result);
      else if (!best || a.lm.max_residual < best->max_residual) best = std::move(a.lm);
    }
    if (winner) return std::move(*winner);
  }
  Configuration c;
  double r = std::numeric_limits<double>::infinity();
  if (best) {
    r = best->max_residual;
    try {
      c = sys.layout.decode(best->x);
    } catch (const Error&) {
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", r);
  throw NoConvergence("no restart out of " + std::to_string(pb.max_restarts) +
                          " gave a non-degenerate solution (best residual " + buf + ")",
                      std::move(c), r);
}

// ---------------------------------------------------------------------------
// Validation

struct PairIssue {
  std::size_t i = 0, j = 0;
  double gap = 0.0;
  std::string what;
};

struct ValidationReport {
  bool passed = true;
  double scale = 1.0;
  double max_gap = 0.0;    ///< max |gap| over pairs
  double min_cross = 0.0;  ///< min |n_i x n_j|
  std::vector<PairIssue> offending;
  std::optional<InvariantReport> invariants;
};

/// Tangency gap recomputed in long double.
inline long double tangency_gap_extended(const EllipticCylinder& ci, const EllipticCylinder& cj) {
  using L = long double;
  const auto dir = [](const EllipticCylinder& c) { return direction_vector<L>(c.line.t, c.line.p); };
  const Vec3<L> ni = dir(ci), nj = dir(cj);
  const Vec3<L> w = ni.cross(nj);
  const auto [nai, nbi] = section_frame<L>(ci.line.t, ci.line.p, ci.omega);
  const auto [naj, nbj] = section_frame<L>(cj.line.t, cj.line.p, cj.omega);
  const Vec3<L> dv(L(ci.line.x) - L(cj.line.x), L(ci.line.y) - L(cj.line.y), L(0));
  return std::abs(w.dot(dv)) - (half_width<L>(nai, nbi, ci.a, ci.b, w) + half_width<L>(naj, nbj, cj.a, cj.b, w));
}

inline ValidationReport validate(const Configuration& c, double relative_tolerance = 1e-8) {
  ValidationReport rep;
  rep.scale = length_scale(c);
  rep.min_cross = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c[i].b > 0)) rep.offending.push_back({i, i, 0.0, "non-positive minor semi-axis"});
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double cross = c[i].line.direction().cross(c[j].line.direction()).norm();
      rep.min_cross = std::min(rep.min_cross, cross);
      if (cross <= 1e-6) {
        rep.offending.push_back({i, j, 0.0, "nearly parallel axes"});
        continue;
      }
      const double gap = static_cast<double>(tangency_gap_extended(c[i], c[j]));
      rep.max_gap = std::max(rep.max_gap, std::abs(gap));
      if (std::abs(gap) >= relative_tolerance * rep.scale) rep.offending.push_back({i, j, gap, "not tangent"});
    }
  }
  rep.passed = rep.offending.empty();
  if (rep.passed) {
    try {
      rep.invariants = invariant_report(chirality_matrix(c), ring_matrix(c));
    } catch (const Error&) {
    }
  }
  return rep;
}

inline void require_valid(const ValidationReport& rep) {
  if (rep.passed) return;
  std::string msg = "validation failed for pairs";
  std::vector<std::size_t> idx;
  for (const auto& p : rep.offending) {
    msg += " (" + std::to_string(p.i) + "," + std::to_string(p.j) + ": " + p.what + ")";
    idx.push_back(p.i);
    idx.push_back(p.j);
  }
  throw Error(ErrorKind::ValidationFailure, msg, std::move(idx));
}

// ---------------------------------------------------------------------------
// Vanishing sub-determinants of the non-normalized chirality matrix

struct SubDeterminant {
  std::vector<std::size_t> subset;
  double value = 0.0;  ///< |det| of the subset, entries scaled by the largest |entry|
};

inline std::vector<SubDeterminant> plucker_rank_check(const Configuration& c) {
  const std::size_t n = c.size();
  if (n < 7) throw Error(ErrorKind::InvalidArgument, "sub-determinants vanish only from order 7 on");
  const RealMatrix raw = chirality_raw(c);
  double mx = 0;
  for (double v : raw.data()) mx = std::max(mx, std::abs(v));
  std::vector<SubDeterminant> out;
  for (std::size_t k = 7; k <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) s.push_back(i);
      Eigen::MatrixXd m(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) m(a, b) = raw(s[a], s[b]) / mx;
      out.push_back({std::move(s), std::abs(m.determinant())});
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

}  // namespace cylknot
