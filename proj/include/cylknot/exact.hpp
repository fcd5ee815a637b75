#pragma once

// Exact integer / rational linear algebra on small dense matrices.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cylknot/matrix.hpp"

namespace cylknot {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = SquareMatrix<Rational>;

/// Fraction-free (Bareiss) elimination with row pivoting. Every intermediate
/// value is a minor of the input, so `Int` only has to hold those.
template <class Int>
Int bareiss_determinant(SquareMatrix<Int> m) {
  const std::size_t n = m.order();
  if (n == 0) return Int(1);
  Int sign(1);
  Int prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == Int(0)) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == Int(0)) ++r;
      if (r == n) return Int(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline BigInt det_exact(const IntMatrix& m) { return bareiss_determinant(m.cast<BigInt>()); }

/// Hot-path determinant for small ±1 matrices; minors of an order-n ±1 matrix
/// are bounded by n^(n/2), so products stay inside 64 bits up to n = 12.
inline std::int64_t det_small(const IntMatrix& m) {
  if (m.order() > 12) return static_cast<std::int64_t>(det_exact(m));
  return bareiss_determinant(m);
}

/// Coefficients of det(xI - M), lowest degree first; the last entry is 1.
/// Faddeev-LeVerrier recursion; each division by k is exact over the integers.
inline std::vector<BigInt> char_poly(const IntMatrix& m) {
  const std::size_t n = m.order();
  const auto a = m.cast<BigInt>();
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  SquareMatrix<BigInt> mk(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    auto next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    const auto amk = a * mk;
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

/// Product of monic factors given as coefficient lists (lowest degree first).
inline std::vector<BigInt> poly_multiply(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline std::vector<BigInt> poly_power(const std::vector<BigInt>& a, unsigned k) {
  std::vector<BigInt> out{1};
  for (unsigned i = 0; i < k; ++i) out = poly_multiply(out, a);
  return out;
}

/// Gauss-Jordan inverse over the rationals; nullopt iff singular.
inline std::optional<RationalMatrix> inverse_exact(RationalMatrix a) {
  const std::size_t n = a.order();
  auto inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// tr(A B) without forming the product.
inline Rational trace_of_product(const RationalMatrix& a, const RationalMatrix& b) {
  Rational t = 0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t k = 0; k < a.order(); ++k) t += a(i, k) * b(k, i);
  return t;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace cylknot
