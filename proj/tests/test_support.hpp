#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cylknot/cylknot.hpp"

namespace cylknot::testing {

inline std::string data_path(const std::string& name) { return std::string(CYLKNOT_DATA_DIR) + "/" + name; }

inline Configuration ten_knot() { return load_configuration(data_path("ten_knot.json")); }

inline SeidelMatrix random_seidel(std::size_t n, std::mt19937_64& rng) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = (rng() & 1) ? 1 : -1;
  return SeidelMatrix(m);
}

inline IntMatrix random_int_matrix(std::size_t n, std::mt19937_64& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(n);
  for (auto i = 0u; i < n; ++i)
    for (auto j = 0u; j < n; ++j) m(i, j) = d(rng);
  return m;
}

/// Random lines whose P and R are well defined; retries past degenerate draws.
inline std::vector<OrientedLine> generic_lines(std::size_t n, std::mt19937_64& rng, double h = 1.0) {
  for (;;) {
    auto lines = random_lines(n, rng, h);
    try {
      chirality_matrix(lines);
      ring_matrix(lines);
      return lines;
    } catch (const Error&) {
    }
  }
}

/// Coefficients (lowest degree first) of a polynomial given as monic factors.
inline std::vector<BigInt> poly(std::initializer_list<std::pair<std::vector<BigInt>, unsigned>> factors) {
  std::vector<BigInt> out{1};
  for (const auto& [f, k] : factors) out = poly_multiply(out, poly_power(f, k));
  return out;
}

inline std::vector<BigInt> up_to_sign(std::vector<BigInt> c, bool negate) {
  if (negate)
    for (auto& v : c) v = -v;
  return c;
}

}  // namespace cylknot::testing
