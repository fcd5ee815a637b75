#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cylknot/error.hpp"

namespace cylknot {

/// Dense row-major square matrix.
template <class T>
class SquareMatrix {
 public:
  using value_type = T;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const T& fill = T{}) : n_(n), data_(n * n, fill) {}

  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) {
        throw Error(ErrorKind::InvalidArgument, "matrix rows must all have length " + std::to_string(n_));
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t order() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * n_, n_}; }

  const std::vector<T>& data() const noexcept { return data_; }

  SquareMatrix transposed() const {
    SquareMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  /// Rows/columns `idx` in the given order.
  SquareMatrix submatrix(std::span<const std::size_t> idx) const {
    SquareMatrix s(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) s(a, b) = (*this)(idx[a], idx[b]);
    return s;
  }

  template <class U>
  SquareMatrix<U> cast() const {
    SquareMatrix<U> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(i, j) = static_cast<U>((*this)(i, j));
    return out;
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw Error(ErrorKind::OrderMismatch, "matrix product of different orders");
    SquareMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw Error(ErrorKind::OrderMismatch, "matrix sum of different orders");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend SquareMatrix operator-(const SquareMatrix& a) {
    SquareMatrix m(a.n_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) m.data_[k] = -a.data_[k];
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using IntMatrix = SquareMatrix<std::int64_t>;
using RealMatrix = SquareMatrix<double>;

/// Chirality matrix: symmetric, zero diagonal, off-diagonal entries +1/-1.
/// Structurally a Seidel adjacency matrix.
class SeidelMatrix {
 public:
  SeidelMatrix() = default;
  explicit SeidelMatrix(IntMatrix m) : m_(std::move(m)) { validate(m_); }
  SeidelMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : SeidelMatrix(IntMatrix(rows)) {}

  /// Every off-diagonal entry equal to `sign`.
  static SeidelMatrix complete(std::size_t n, int sign = 1) {
    IntMatrix m(n, sign);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 0;
    return SeidelMatrix(std::move(m));
  }

  static void validate(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.order(); ++i) {
      if (m(i, i) != 0) throw Error(ErrorKind::InvalidArgument, "Seidel matrix diagonal must be zero", {i});
      for (std::size_t j = 0; j < m.order(); ++j) {
        if (i == j) continue;
        if (m(i, j) != 1 && m(i, j) != -1)
          throw Error(ErrorKind::InvalidArgument, "Seidel matrix off-diagonal entries must be +1 or -1", {i, j});
        if (m(i, j) != m(j, i)) throw Error(ErrorKind::InvalidArgument, "Seidel matrix must be symmetric", {i, j});
      }
    }
  }

  std::size_t order() const noexcept { return m_.order(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const IntMatrix& matrix() const noexcept { return m_; }

  SeidelMatrix negated() const { return SeidelMatrix(-m_, Unchecked{}); }

  /// D M D with D = diag(signs).
  SeidelMatrix switched(std::span<const int> signs) const {
    IntMatrix out = m_;
    for (std::size_t i = 0; i < order(); ++i)
      for (std::size_t j = 0; j < order(); ++j) out(i, j) *= signs[i] * signs[j];
    return SeidelMatrix(std::move(out), Unchecked{});
  }

  SeidelMatrix principal(std::span<const std::size_t> idx) const { return SeidelMatrix(m_.submatrix(idx), Unchecked{}); }

  friend bool operator==(const SeidelMatrix& a, const SeidelMatrix& b) { return a.m_ == b.m_; }

 private:
  struct Unchecked {};
  SeidelMatrix(IntMatrix m, Unchecked) : m_(std::move(m)) {}
  IntMatrix m_;
};

/// Ring matrix: zero diagonal, non-negative counts. Row sums are multiples of 3
/// (each enclosing triangle contributes its three sides).
class RingMatrix {
 public:
  RingMatrix() = default;
  explicit RingMatrix(IntMatrix m) : m_(std::move(m)) { validate(m_); }
  RingMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : RingMatrix(IntMatrix(rows)) {}

  static RingMatrix zero(std::size_t n) { return RingMatrix(IntMatrix(n)); }

  static void validate(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.order(); ++i) {
      if (m(i, i) != 0) throw Error(ErrorKind::InvalidArgument, "Ring matrix diagonal must be zero", {i});
      std::int64_t sum = 0;
      for (std::size_t j = 0; j < m.order(); ++j) {
        if (m(i, j) < 0) throw Error(ErrorKind::InvalidArgument, "Ring matrix entries must be non-negative", {i, j});
        sum += m(i, j);
      }
      if (sum % 3 != 0) throw Error(ErrorKind::InvalidArgument, "Ring matrix row sum must be divisible by 3", {i});
    }
  }

  std::size_t order() const noexcept { return m_.order(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const IntMatrix& matrix() const noexcept { return m_; }

  std::int64_t row_sum(std::size_t i) const {
    std::int64_t s = 0;
    for (auto v : m_.row(i)) s += v;
    return s;
  }
  std::int64_t column_sum(std::size_t j) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < order(); ++i) s += m_(i, j);
    return s;
  }
  /// Number of triangles enclosing line i.
  std::int64_t ring_count(std::size_t i) const { return row_sum(i) / 3; }

  bool is_zero() const {
    return std::all_of(m_.data().begin(), m_.data().end(), [](auto v) { return v == 0; });
  }
  std::size_t entangled_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < order(); ++i) c += row_sum(i) != 0;
    return c;
  }

  RingMatrix permuted(std::span<const std::size_t> idx) const { return RingMatrix(m_.submatrix(idx)); }

  friend bool operator==(const RingMatrix& a, const RingMatrix& b) { return a.m_ == b.m_; }

 private:
  IntMatrix m_;
};

/// Spirality matrix: symmetric, zero diagonal, entries +1/-1; independent of line orientation.
class SpiralityMatrix {
 public:
  SpiralityMatrix() = default;
  explicit SpiralityMatrix(IntMatrix m) : m_(std::move(m)) { SeidelMatrix::validate(m_); }

  std::size_t order() const noexcept { return m_.order(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const IntMatrix& matrix() const noexcept { return m_; }

  friend bool operator==(const SpiralityMatrix& a, const SpiralityMatrix& b) { return a.m_ == b.m_; }

 private:
  IntMatrix m_;
};

// Matrix text format: first line `n`, then n rows of space-separated integers.

inline IntMatrix read_matrix(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n < 0) throw Error(ErrorKind::ParseError, "matrix text must start with its order n");
  IntMatrix m(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if (!(in >> m(i, j)))
        throw Error(ErrorKind::ParseError,
                    "expected integer at row " + std::to_string(i) + ", column " + std::to_string(j));
  std::string trailing;
  if (in >> trailing) throw Error(ErrorKind::ParseError, "unexpected trailing token '" + trailing + "'");
  return m;
}

inline IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

inline void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.order() << '\n';
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
}

inline std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

}  // namespace cylknot
