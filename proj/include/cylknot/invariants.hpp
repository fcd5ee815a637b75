#pragma once

// Q / Qn constructions and the two scalar invariants of a (P, R) pair.
//
//   A_i  = D_i P D_i,  D_i = diag(d), d_i = 1, d_k = P_ik   (row i switched to +1)
//   Q_ij = sum_k (A_i)_kj
//   inv  = tr[Q (I - R)^-1]
//   Qn   = 3^-6 sum_i Rv_i Rh_i A_i,  Rv/Rh the row/column sums of R
//   invn = tr[Qn (I/2 - R)^-1]
//
// Everything is evaluated over the rationals and only converted at the end.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cylknot/error.hpp"
#include "cylknot/exact.hpp"
#include "cylknot/matrix.hpp"

namespace cylknot {

enum class Profile { EqualRound, FreeRound, EqualElliptic, FreeElliptic };

constexpr std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::EqualRound: return "equal_round";
    case Profile::FreeRound: return "free_round";
    case Profile::EqualElliptic: return "equal_elliptic";
    case Profile::FreeElliptic: return "free_elliptic";
  }
  return "?";
}

inline Profile parse_profile(std::string_view s) {
  for (Profile p : {Profile::EqualRound, Profile::FreeRound, Profile::EqualElliptic, Profile::FreeElliptic})
    if (to_string(p) == s) return p;
  throw Error(ErrorKind::InvalidArgument, "unknown profile '" + std::string(s) + "'");
}

/// A_i: P switched so that row and column i are +1 off the diagonal.
inline SeidelMatrix switch_row_positive(const SeidelMatrix& p, std::size_t i) {
  std::vector<int> d(p.order());
  for (std::size_t k = 0; k < p.order(); ++k) d[k] = k == i ? 1 : static_cast<int>(p(i, k));
  return p.switched(d);
}

inline IntMatrix q_matrix(const SeidelMatrix& p) {
  const std::size_t n = p.order();
  IntMatrix q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SeidelMatrix a = switch_row_positive(p, i);
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a(k, j);
      q(i, j) = s;
    }
  }
  return q;
}

inline void require_same_order(const SeidelMatrix& p, const RingMatrix& r) {
  if (p.order() != r.order())
    throw Error(ErrorKind::OrderMismatch, "chirality matrix has order " + std::to_string(p.order()) +
                                              " but Ring matrix has order " + std::to_string(r.order()));
}

/// (shift I - R)^-1 over the rationals.
inline RationalMatrix shifted_ring_inverse(const RingMatrix& r, const Rational& shift) {
  RationalMatrix m(r.order());
  for (std::size_t i = 0; i < r.order(); ++i)
    for (std::size_t j = 0; j < r.order(); ++j) m(i, j) = (i == j ? shift : Rational(0)) - Rational(r(i, j));
  auto inv = inverse_exact(std::move(m));
  if (!inv) throw Error(ErrorKind::SingularRingMatrix, "shifted Ring matrix is singular");
  return *inv;
}

inline Rational invariant_exact(const IntMatrix& q, const RationalMatrix& ring_inverse) {
  return trace_of_product(q.cast<Rational>(), ring_inverse);
}

inline double invariant(const SeidelMatrix& p, const RingMatrix& r) {
  require_same_order(p, r);
  return to_double(invariant_exact(q_matrix(p), shifted_ring_inverse(r, 1)));
}

inline RationalMatrix qn_matrix(const SeidelMatrix& p, const RingMatrix& r) {
  require_same_order(p, r);
  const std::size_t n = p.order();
  SquareMatrix<BigInt> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t w = r.row_sum(i) * r.column_sum(i);
    if (w == 0) continue;
    const SeidelMatrix a = switch_row_positive(p, i);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) acc(k, j) += BigInt(w * a(k, j));
  }
  RationalMatrix out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) out(k, j) = Rational(acc(k, j), 729);
  return out;
}

inline double invariant_n(const SeidelMatrix& p, const RingMatrix& r) {
  return to_double(trace_of_product(qn_matrix(p, r), shifted_ring_inverse(r, Rational(1, 2))));
}

inline bool is_extreme(const SeidelMatrix& p) {
  const auto sq = p.matrix() * p.matrix();
  const auto n = static_cast<std::int64_t>(p.order());
  for (std::size_t i = 0; i < p.order(); ++i)
    for (std::size_t j = 0; j < p.order(); ++j)
      if (sq(i, j) != (i == j ? n - 1 : 0)) return false;
  return true;
}

/// Largest number of rings that can encage one line of an n-cross.
inline std::int64_t max_rings(std::int64_t n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "max_rings needs n >= 3");
  return n % 2 == 0 ? (n - 2) * (n - 1) * n / 24 : (n - 3) * (n * n - 1) / 24;
}

/// Unknowns minus tangency equations minus rigid motions.
inline std::int64_t dof(std::int64_t n, Profile profile) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "dof needs n >= 2");
  std::int64_t per = 0, shared = 0;
  switch (profile) {
    case Profile::EqualRound: per = 4, shared = 1; break;
    case Profile::FreeRound: per = 5, shared = 0; break;
    case Profile::EqualElliptic: per = 5, shared = 1; break;
    case Profile::FreeElliptic: per = 7, shared = 0; break;
  }
  return per * n + shared - n * (n - 1) / 2 - 6;
}

/// 2-norm condition number of I - R.
inline double ring_condition_number(const RingMatrix& r) {
  const auto n = static_cast<Eigen::Index>(r.order());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) -= static_cast<double>(r(i, j));
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (n == 0) return 1.0;
  if (s(n - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(n - 1);
}

struct InvariantReport {
  BigInt det_P;
  double invariant = 0;
  double invariant_mirror = 0;
  double invariant_n = 0;
  double invariant_n_mirror = 0;
  std::vector<std::int64_t> ring_count_per_line;
  double condition_number = 0;  ///< of I - R
};

inline InvariantReport invariant_report(const SeidelMatrix& p, const RingMatrix& r) {
  require_same_order(p, r);
  InvariantReport rep;
  rep.det_P = det_exact(p.matrix());
  const SeidelMatrix m = p.negated();
  const RationalMatrix inv1 = shifted_ring_inverse(r, 1);
  const RationalMatrix inv_half = shifted_ring_inverse(r, Rational(1, 2));
  rep.invariant = to_double(invariant_exact(q_matrix(p), inv1));
  rep.invariant_mirror = to_double(invariant_exact(q_matrix(m), inv1));
  rep.invariant_n = to_double(trace_of_product(qn_matrix(p, r), inv_half));
  rep.invariant_n_mirror = to_double(trace_of_product(qn_matrix(m, r), inv_half));
  for (std::size_t i = 0; i < r.order(); ++i) rep.ring_count_per_line.push_back(r.ring_count(i));
  rep.condition_number = ring_condition_number(r);
  return rep;
}

}  // namespace cylknot
