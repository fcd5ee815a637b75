#pragma once

// Named matrices, switching equivalence, submatrix containment and the
// knottability filters.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cylknot/error.hpp"
#include "cylknot/exact.hpp"
#include "cylknot/geometry.hpp"
#include "cylknot/matrix.hpp"
#include "cylknot/topomatrix.hpp"

namespace cylknot {

// ---------------------------------------------------------------------------
// Witnesses

/// Target(i, j) = switch_signs[i] * switch_signs[j] * M(subset[permutation[i]], subset[permutation[j]]).
struct ContainmentWitness {
  std::vector<std::size_t> subset;       ///< sorted rows of the searched matrix
  std::vector<int> switch_signs;         ///< one sign per target row
  std::vector<std::size_t> permutation;  ///< target row -> position in `subset`
};

inline std::vector<std::size_t> witness_rows(const ContainmentWitness& w) {
  std::vector<std::size_t> rows(w.permutation.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = w.subset[w.permutation[i]];
  return rows;
}

inline SeidelMatrix apply_witness(const SeidelMatrix& m, const ContainmentWitness& w) {
  const auto rows = witness_rows(w);
  return m.principal(rows).switched(w.switch_signs);
}

// ---------------------------------------------------------------------------
// Switching equivalence

namespace detail {

struct SwitchSearch {
  const SeidelMatrix& a;
  const SeidelMatrix& b;
  std::vector<std::size_t> perm;
  std::vector<int> sign;
  std::vector<bool> used;

  bool place(std::size_t k) {
    const std::size_t n = a.order();
    if (k == n) return true;
    for (std::size_t u = 0; u < n; ++u) {
      if (used[u]) continue;
      // s_0 = 1 without loss of generality; later signs follow from row 0.
      const int s = k == 0 ? 1 : static_cast<int>(b(0, k) * a(perm[0], u));
      bool ok = true;
      for (std::size_t i = 1; i < k && ok; ++i) ok = sign[i] * s * a(perm[i], u) == b(i, k);
      if (!ok) continue;
      perm[k] = u;
      sign[k] = s;
      used[u] = true;
      if (place(k + 1)) return true;
      used[u] = false;
    }
    return false;
  }
};

}  // namespace detail

/// Signs D and permutation pi with D pi(A) D = B, if any.
inline std::optional<ContainmentWitness> switching_equivalent(const SeidelMatrix& a, const SeidelMatrix& b) {
  const std::size_t n = a.order();
  if (n != b.order()) return std::nullopt;
  if (n > 1) {
    if (det_exact(a.matrix()) != det_exact(b.matrix())) return std::nullopt;
    if (char_poly(a.matrix()) != char_poly(b.matrix())) return std::nullopt;
  }
  detail::SwitchSearch s{a, b, std::vector<std::size_t>(n), std::vector<int>(n, 1), std::vector<bool>(n, false)};
  if (!s.place(0)) return std::nullopt;
  ContainmentWitness w;
  w.subset.resize(n);
  for (std::size_t i = 0; i < n; ++i) w.subset[i] = i;
  w.switch_signs = std::move(s.sign);
  w.permutation = std::move(s.perm);
  return w;
}

// ---------------------------------------------------------------------------
// Submatrix containment

namespace detail {

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order until f returns true.
template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (f(std::span<const std::size_t>(idx))) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Constant sign c of the target if it is c * (all ones off the diagonal), else 0.
inline int complete_sign(const SeidelMatrix& t) {
  if (t.order() < 2) return 0;
  const auto c = static_cast<int>(t(0, 1));
  for (std::size_t i = 0; i < t.order(); ++i)
    for (std::size_t j = 0; j < t.order(); ++j)
      if (i != j && t(i, j) != c) return 0;
  return c;
}

/// Switch the principal submatrix on `rows` to c * complete, if possible.
inline std::optional<std::vector<int>> complete_switch(const SeidelMatrix& m, std::span<const std::size_t> rows,
                                                       int c) {
  std::vector<int> d(rows.size(), 1);
  for (std::size_t j = 1; j < rows.size(); ++j) d[j] = static_cast<int>(c * m(rows[0], rows[j]));
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (d[i] * d[j] * m(rows[i], rows[j]) != c) return std::nullopt;
  return d;
}

inline std::optional<ContainmentWitness> match_subset(const SeidelMatrix& m, std::span<const std::size_t> rows,
                                                      const SeidelMatrix& t, int complete) {
  if (complete != 0) {
    auto d = complete_switch(m, rows, complete);
    if (!d) return std::nullopt;
    ContainmentWitness w{{rows.begin(), rows.end()}, std::move(*d), {}};
    for (std::size_t i = 0; i < rows.size(); ++i) w.permutation.push_back(i);
    return w;
  }
  auto w = switching_equivalent(m.principal(rows), t);
  if (!w) return std::nullopt;
  w->subset.assign(rows.begin(), rows.end());
  return w;
}

}  // namespace detail

/// Lexicographically first subset of M whose principal submatrix is switching
/// equivalent to T (up to reordering).
inline std::optional<ContainmentWitness> contains_submatrix(const SeidelMatrix& m, const SeidelMatrix& t) {
  if (t.order() > m.order())
    throw Error(ErrorKind::OrderError, "target of order " + std::to_string(t.order()) +
                                           " is larger than the matrix of order " + std::to_string(m.order()));
  const int complete = detail::complete_sign(t);
  std::optional<ContainmentWitness> found;
  detail::for_each_subset(m.order(), t.order(), [&](std::span<const std::size_t> rows) {
    found = detail::match_subset(m, rows, t, complete);
    return found.has_value();
  });
  return found;
}

/// Every subset of M that carries a copy of T.
inline std::vector<ContainmentWitness> all_submatrices(const SeidelMatrix& m, const SeidelMatrix& t) {
  if (t.order() > m.order()) throw Error(ErrorKind::OrderError, "target larger than matrix");
  const int complete = detail::complete_sign(t);
  std::vector<ContainmentWitness> out;
  detail::for_each_subset(m.order(), t.order(), [&](std::span<const std::size_t> rows) {
    if (auto w = detail::match_subset(m, rows, t, complete)) out.push_back(std::move(*w));
    return false;
  });
  return out;
}

/// Ramsey argument for order >= 19: switch row 0 to +1, find a monochromatic
/// K4 among rows 1..18, then add row 0 (negated when the K4 is all -1).
/// The witness maps onto +K5 or -K5; `sign` tells which.
struct K5Witness {
  ContainmentWitness witness;
  int sign = 1;
};

inline K5Witness find_k5(const SeidelMatrix& m) {
  if (m.order() < 19) throw Error(ErrorKind::OrderError, "the K5 guarantee needs order >= 19");
  std::vector<int> d(m.order());
  d[0] = 1;
  for (std::size_t i = 1; i < m.order(); ++i) d[i] = static_cast<int>(m(0, i));
  const SeidelMatrix a = m.switched(d);
  std::optional<K5Witness> out;
  detail::for_each_subset(18, 4, [&](std::span<const std::size_t> q) {
    const std::size_t r[4] = {q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1};
    const auto c = a(r[0], r[1]);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (a(r[i], r[j]) != c) return false;
    K5Witness w;
    w.sign = static_cast<int>(c);
    w.witness.subset = {0, r[0], r[1], r[2], r[3]};
    w.witness.permutation = {0, 1, 2, 3, 4};
    w.witness.switch_signs = {w.sign * d[0], d[r[0]], d[r[1]], d[r[2]], d[r[3]]};
    out = w;
    return true;
  });
  if (!out) throw std::logic_error("no monochromatic K4 among 18 rows; the Ramsey bound R(4,4)=18 is violated");
  return *out;
}

// ---------------------------------------------------------------------------
// Named matrices

enum class MatrixKind { Chirality, Ring, Integer };

struct NamedMatrix {
  std::string name;
  MatrixKind kind;
  IntMatrix matrix;
  std::string source;

  SeidelMatrix seidel() const { return SeidelMatrix(matrix); }
  RingMatrix ring() const { return RingMatrix(matrix); }
};

namespace named {

inline SeidelMatrix K5() { return SeidelMatrix::complete(5, 1); }

inline SeidelMatrix P250() {
  return {{0, 1, 1, -1, -1, -1, 1},  {1, 0, 1, 1, 1, -1, 1},   {1, 1, 0, 1, 1, -1, 1},  {-1, 1, 1, 0, 1, -1, -1},
          {-1, 1, 1, 1, 0, 1, 1},    {-1, -1, -1, -1, 1, 0, 1}, {1, 1, 1, -1, 1, 1, 0}};
}

/// The seven equal round cylinders knot.
inline SeidelMatrix P7() {
  return {{0, 1, 1, 1, 1, 1, 1},  {1, 0, 1, 1, 1, -1, 1},  {1, 1, 0, -1, -1, -1, 1}, {1, 1, -1, 0, -1, 1, 1},
          {1, 1, -1, -1, 0, 1, -1}, {1, -1, -1, 1, 1, 0, 1}, {1, 1, 1, 1, -1, 1, 0}};
}
inline RingMatrix R7() {
  return {{0, 1, 1, 4, 1, 1, 4}, {4, 0, 4, 4, 4, 4, 4}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0},
          {1, 1, 4, 4, 0, 1, 1}, {1, 1, 1, 1, 4, 0, 4}, {0, 0, 0, 0, 0, 0, 0}};
}
inline IntMatrix Q7() {
  return {{6, 4, 0, 2, 0, 2, 4},   {4, 6, 2, 0, -2, -2, 2}, {0, 2, 6, -2, 0, 2, 2}, {2, 0, -2, 6, -2, 2, 4},
          {0, -2, 0, -2, 6, 0, 0}, {2, -2, 2, 2, 0, 6, 0},  {4, 2, 2, 4, 0, 0, 6}};
}

inline SeidelMatrix M11() {
  return {{0, 1, -1, 1, 1, -1, 1, -1, 1, -1, -1},  {1, 0, 1, 1, -1, 1, -1, 1, 1, -1, -1},
          {-1, 1, 0, 1, 1, 1, -1, 1, -1, -1, -1},  {1, 1, 1, 0, 1, 1, 1, -1, -1, -1, 1},
          {1, -1, 1, 1, 0, 1, 1, -1, -1, 1, -1},   {-1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1},
          {1, -1, -1, 1, 1, 1, 0, 1, 1, 1, 1},     {-1, 1, 1, -1, -1, 1, 1, 0, 1, 1, -1},
          {1, 1, -1, -1, -1, 1, 1, 1, 0, -1, 1},   {-1, -1, -1, -1, 1, 1, 1, 1, -1, 0, -1},
          {-1, -1, -1, 1, -1, 1, 1, -1, 1, -1, 0}};
}

inline SeidelMatrix P1625() {
  return {{0, -1, -1, -1, -1, 1, -1, -1}, {-1, 0, -1, 1, 1, 1, -1, 1},   {-1, -1, 0, -1, -1, -1, -1, 1},
          {-1, 1, -1, 0, -1, 1, 1, 1},    {-1, 1, -1, -1, 0, -1, -1, -1}, {1, 1, -1, 1, -1, 0, -1, 1},
          {-1, -1, -1, 1, -1, -1, 0, -1}, {-1, 1, 1, 1, -1, 1, -1, 0}};
}

/// Same class as P1625, arranged to show the two 4x4 diagonal blocks.
inline SeidelMatrix P1625_blocks() {
  return {{0, -1, -1, -1, -1, -1, 1, -1}, {-1, 0, -1, -1, -1, -1, -1, 1}, {-1, -1, 0, -1, 1, -1, -1, -1},
          {-1, -1, -1, 0, -1, 1, -1, -1}, {-1, -1, 1, -1, 0, 1, 1, 1},    {-1, -1, -1, 1, 1, 0, 1, 1},
          {1, -1, -1, -1, 1, 1, 0, 1},    {-1, 1, -1, -1, 1, 1, 1, 0}};
}

inline SeidelMatrix Pm125() {
  return {{0, -1, -1, -1, -1, 1}, {-1, 0, -1, 1, -1, -1}, {-1, -1, 0, -1, 1, -1},
          {-1, 1, -1, 0, 1, 1},   {-1, -1, 1, 1, 0, 1},   {1, -1, -1, 1, 1, 0}};
}

/// Ring matrix of the two realizable det -125 six-knots.
inline RingMatrix R6a() {
  return {{0, 1, 1, 3, 3, 1}, {0, 0, 0, 0, 0, 0}, {3, 1, 0, 1, 1, 3},
          {0, 0, 0, 0, 0, 0}, {1, 3, 3, 1, 0, 1}, {0, 0, 0, 0, 0, 0}};
}
/// Ring matrix of the all-encaged C3 six-cross.
inline RingMatrix R6b() {
  return {{0, 1, 3, 1, 1, 3}, {3, 0, 1, 3, 1, 1}, {1, 3, 0, 1, 3, 1},
          {1, 1, 3, 0, 1, 3}, {3, 1, 1, 3, 0, 1}, {1, 3, 1, 1, 3, 0}};
}

/// Ring matrix of the C4 eight-cross (chirality P1625).
inline RingMatrix R8() {
  return {{0, 0, 0, 0, 0, 0, 0, 0}, {5, 0, 7, 7, 3, 5, 3, 3}, {0, 0, 0, 0, 0, 0, 0, 0}, {3, 3, 5, 0, 7, 7, 3, 5},
          {0, 0, 0, 0, 0, 0, 0, 0}, {3, 5, 3, 3, 5, 0, 7, 7}, {0, 0, 0, 0, 0, 0, 0, 0}, {7, 7, 3, 5, 3, 3, 5, 0}};
}

/// Nine equal elliptic cylinders.
inline SeidelMatrix P9() {
  return {{0, -1, -1, -1, -1, -1, -1, -1, -1}, {-1, 0, -1, -1, 1, -1, -1, 1, -1}, {-1, -1, 0, 1, 1, -1, -1, -1, 1},
          {-1, -1, 1, 0, -1, -1, 1, -1, 1},    {-1, 1, 1, -1, 0, -1, 1, 1, 1},    {-1, -1, -1, -1, -1, 0, 1, -1, 1},
          {-1, -1, -1, 1, 1, 1, 0, -1, 1},     {-1, 1, -1, -1, 1, -1, -1, 0, 1},  {-1, -1, 1, 1, 1, 1, 1, 1, 0}};
}
inline RingMatrix R9() {
  return {{0, 2, 2, 10, 2, 5, 5, 2, 2}, {8, 0, 7, 8, 7, 8, 7, 8, 7}, {0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 0},  {0, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0, 0},
          {3, 3, 6, 3, 9, 9, 0, 3, 6},  {4, 3, 12, 4, 3, 3, 3, 0, 4}, {6, 6, 6, 10, 10, 5, 5, 6, 0}};
}

/// Ten-knot chirality matrix as published. Not symmetric: entries (1,4) and
/// (4,1) disagree, so it is kept as a plain integer matrix.
inline IntMatrix P10_published() {
  return {{0, 1, 1, 1, 1, 1, -1, 1, 1, -1},    {1, 0, 1, 1, 1, -1, -1, 1, -1, -1},
          {1, 1, 0, -1, -1, -1, -1, 1, -1, 1},  {1, 1, -1, 0, -1, 1, -1, -1, -1, 1},
          {1, -1, -1, -1, 0, 1, 1, -1, 1, -1},  {1, -1, -1, 1, 1, 0, -1, -1, -1, -1},
          {-1, -1, -1, -1, 1, -1, 0, 1, 1, 1},  {1, 1, 1, -1, -1, -1, 1, 0, -1, -1},
          {1, -1, -1, -1, 1, -1, 1, -1, 0, -1}, {-1, -1, 1, 1, -1, -1, 1, -1, -1, 0}};
}
inline RingMatrix R10_published() {
  return {{0, 4, 4, 10, 6, 4, 14, 8, 4, 6}, {7, 0, 11, 7, 9, 11, 9, 11, 7, 9}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},   {2, 2, 12, 6, 0, 2, 2, 2, 6, 2},    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},   {4, 4, 6, 4, 4, 14, 10, 0, 8, 6},   {9, 5, 5, 15, 5, 9, 5, 5, 0, 5},
          {8, 6, 14, 6, 12, 6, 8, 6, 6, 0}};
}

/// Published ten-knot chirality matrix with (4,1) set to match (1,4) and
/// (5,9)/(9,5) flipped. Equals the matrix computed from the ten-knot table
/// with lines 6 and 9 reversed.
inline SeidelMatrix P10() {
  IntMatrix m = P10_published();
  m(4, 1) = 1;
  m(5, 9) = m(9, 5) = 1;
  return SeidelMatrix(std::move(m));
}

/// Ring matrix computed from the ten-knot table.
inline RingMatrix R10() {
  return {{0, 2, 2, 12, 2, 2, 6, 6, 2, 2}, {9, 0, 9, 9, 9, 9, 9, 9, 9, 9},   {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  {2, 2, 12, 6, 0, 2, 2, 2, 6, 2},  {1, 1, 1, 1, 7, 0, 7, 1, 1, 1},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  {5, 5, 7, 5, 7, 13, 13, 0, 7, 7}, {9, 5, 5, 15, 5, 9, 5, 5, 0, 5},
          {10, 6, 14, 4, 8, 4, 6, 4, 4, 0}};
}

/// Line reversals that carry the ten-knot table's orientation onto P10.
inline std::vector<int> ten_knot_switch() { return {1, 1, 1, 1, 1, 1, -1, 1, 1, -1}; }

}  // namespace named

inline std::vector<NamedMatrix> catalog() {
  using K = MatrixKind;
  return {
      {"K5", K::Chirality, named::K5().matrix(), "complete five-line pattern, forbidden for mutual contact"},
      {"P250", K::Chirality, named::P250().matrix(), "extreme order-7 pattern (det 250), forbidden"},
      {"P7", K::Chirality, named::P7().matrix(), "seven equal round cylinders knot"},
      {"R7", K::Ring, named::R7().matrix(), "Ring matrix of the seven equal round cylinders knot"},
      {"Q7", K::Integer, named::Q7(), "Q matrix of P7"},
      {"M11", K::Chirality, named::M11().matrix(), "order-11 matrix, det 57122"},
      {"P1625", K::Chirality, named::P1625().matrix(), "order-8 matrix, det 1625, four Pm125 submatrices"},
      {"P1625_blocks", K::Chirality, named::P1625_blocks().matrix(), "P1625 reordered into 4x4 blocks"},
      {"Pm125", K::Chirality, named::Pm125().matrix(), "extreme order-6 matrix, det -125"},
      {"R6a", K::Ring, named::R6a().matrix(), "Ring matrix of the two realizable det -125 six-knots"},
      {"R6b", K::Ring, named::R6b().matrix(), "Ring matrix of the all-encaged C3 six-cross"},
      {"R8", K::Ring, named::R8().matrix(), "Ring matrix of the C4 eight-cross"},
      {"P9", K::Chirality, named::P9().matrix(), "nine equal elliptic cylinders knot"},
      {"R9", K::Ring, named::R9().matrix(), "Ring matrix of the nine equal elliptic cylinders knot"},
      {"P10", K::Chirality, named::P10().matrix(), "ten-knot, consistent with its parameter table"},
      {"R10", K::Ring, named::R10().matrix(), "ten-knot Ring matrix, computed from its parameter table"},
      {"P10_published", K::Integer, named::P10_published(), "ten-knot chirality matrix as printed (asymmetric)"},
      {"R10_published", K::Ring, named::R10_published().matrix(), "ten-knot Ring matrix as printed"},
  };
}

inline NamedMatrix find_named(std::string_view name) {
  for (auto& m : catalog())
    if (m.name == name) return m;
  throw Error(ErrorKind::InvalidArgument, "no catalog entry named '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Knottability

enum class Verdict { Possible, Forbidden4Cross, ForbiddenFree5Cross, ForbiddenSubmatrix };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Possible: return "possible";
    case Verdict::Forbidden4Cross: return "forbidden_4cross";
    case Verdict::ForbiddenFree5Cross: return "forbidden_free5cross";
    case Verdict::ForbiddenSubmatrix: return "forbidden_submatrix";
  }
  return "?";
}

struct KnottabilityVerdict {
  Verdict verdict = Verdict::Possible;
  std::vector<std::size_t> subset;  ///< offending lines
  std::string name;                 ///< forbidden pattern, for the submatrix rule
  std::optional<ContainmentWitness> witness;
  std::string note;

  bool possible() const { return verdict == Verdict::Possible; }
};

/// Patterns whose presence rules out mutual contact, mirrors included.
inline std::vector<std::pair<std::string, SeidelMatrix>> forbidden_patterns() {
  return {{"K5", named::K5()},
          {"-K5", named::K5().negated()},
          {"P250", named::P250()},
          {"-P250", named::P250().negated()}};
}

/// Rules, first hit wins: a 4-line subconfiguration with two or more encaged
/// lines; a 5-line subconfiguration with no rings at all; a forbidden pattern
/// in P. Subset Ring matrices are recomputed from the subset's own lines.
inline KnottabilityVerdict knottability_filter(const Configuration& config) {
  const auto lines = config.lines();
  const std::size_t n = lines.size();
  KnottabilityVerdict v;
  detail::for_each_subset(n, 4, [&](std::span<const std::size_t> s) {
    if (ring_matrix(lines, s).entangled_count() < 2) return false;
    v.verdict = Verdict::Forbidden4Cross;
    v.subset.assign(s.begin(), s.end());
    return true;
  });
  if (!v.possible()) return v;
  detail::for_each_subset(n, 5, [&](std::span<const std::size_t> s) {
    if (!ring_matrix(lines, s).is_zero()) return false;
    v.verdict = Verdict::ForbiddenFree5Cross;
    v.subset.assign(s.begin(), s.end());
    v.note = "subset Ring matrix recomputed from the subset's own lines";
    return true;
  });
  if (!v.possible()) return v;
  const SeidelMatrix p = chirality_matrix(lines);
  for (auto& [name, pattern] : forbidden_patterns()) {
    if (pattern.order() > n) continue;
    if (auto w = contains_submatrix(p, pattern)) {
      v.verdict = Verdict::ForbiddenSubmatrix;
      v.name = name;
      v.subset = w->subset;
      v.witness = std::move(w);
      return v;
    }
  }
  return v;
}

}  // namespace cylknot
