#pragma once

// Configuration documents (JSON), report JSON, OBJ meshes and census tables.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "cylknot/census.hpp"
#include "cylknot/error.hpp"
#include "cylknot/geometry.hpp"
#include "cylknot/invariants.hpp"

namespace cylknot {

using json = nlohmann::json;

inline json to_json(const Configuration& c) {
  json cyl = json::array();
  for (const auto& e : c.cylinders)
    cyl.push_back({{"t", e.line.t}, {"p", e.line.p}, {"x", e.line.x}, {"y", e.line.y},
                   {"omega", e.omega}, {"a", e.a}, {"b", e.b}});
  return {{"label", c.label}, {"cylinders", cyl}};
}

inline Configuration configuration_from_json(const json& j) {
  try {
    Configuration c;
    c.label = j.value("label", "");
    const auto& arr = j.at("cylinders");
    if (!arr.is_array()) throw Error(ErrorKind::ParseError, "'cylinders' must be an array");
    for (const auto& e : arr) {
      const OrientedLine l{e.at("t").get<double>(), e.at("p").get<double>(), e.at("x").get<double>(),
                           e.at("y").get<double>()};
      const double a = e.at("a").get<double>();
      const double b = e.value("b", a);
      c.cylinders.emplace_back(l, e.value("omega", 0.0), a, b);
    }
    if (c.size() < 2) throw Error(ErrorKind::ParseError, "a configuration needs at least two cylinders");
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

/// Doubles are written in shortest round-trip form, so reading back is bit-exact.
inline std::string dump_configuration(const Configuration& c) { return to_json(c).dump(2) + "\n"; }

inline Configuration parse_configuration(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return configuration_from_json(j);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

inline Configuration load_configuration(const std::string& path) { return parse_configuration(read_text_file(path)); }

inline json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.order(); ++i) rows.push_back(std::vector<std::int64_t>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

inline json to_json(const InvariantReport& r) {
  return {{"det_P", r.det_P.str()},
          {"invariant", r.invariant},
          {"invariant_mirror", r.invariant_mirror},
          {"invariant_n", r.invariant_n},
          {"invariant_n_mirror", r.invariant_n_mirror},
          {"ring_count_per_line", r.ring_count_per_line},
          {"condition_number", r.condition_number}};
}

/// Closed-side prism mesh of every cylinder, cut to +-length/2 along its axis
/// (measured from the puncture point). One OBJ group per cylinder.
inline void write_obj(std::ostream& out, const Configuration& c, double length, int segments) {
  if (segments < 3) throw Error(ErrorKind::InvalidArgument, "segments must be at least 3");
  out << "# " << c.size() << " cylinders, " << segments << " segments\n";
  out << std::setprecision(10);
  std::size_t base = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& cyl = c[i];
    const Vec3d n = cyl.line.direction();
    const Vec3d v = cyl.line.point();
    out << "g cylinder_" << i << "\n";
    for (int end = 0; end < 2; ++end) {
      const Vec3d center = v + (end == 0 ? -0.5 : 0.5) * length * n;
      for (int k = 0; k < segments; ++k) {
        const Vec3d q = center + section_point(cyl, 2 * std::numbers::pi * k / segments);
        out << "v " << q.x() << ' ' << q.y() << ' ' << q.z() << "\n";
      }
    }
    const auto s = static_cast<std::size_t>(segments);
    for (std::size_t k = 0; k < s; ++k) {
      const std::size_t a = base + k, b = base + (k + 1) % s, a2 = a + s, b2 = b + s;
      out << "f " << a << ' ' << b << ' ' << b2 << "\n";
      out << "f " << a << ' ' << b2 << ' ' << a2 << "\n";
    }
    base += 2 * s;
  }
}

/// Tab-separated census table: invariant, count, knottable, invn, invn mirror, sum.
inline void write_census_tsv(std::ostream& out, const CensusResult& r) {
  out << "# samples " << r.samples << "\taccepted " << r.accepted << "\tdegenerate " << r.degenerate << "\n";
  out << "invariant\tcount\tknottable\tinvariant_n\tinvariant_n_mirror\tsum\n";
  out << std::fixed << std::setprecision(5);
  for (const auto& rec : r.records)
    out << rec.invariant << '\t' << rec.count << '\t' << (rec.knottable ? 1 : 0) << '\t' << rec.invariant_n << '\t'
        << rec.invariant_n_mirror << '\t' << rec.invariant_n + rec.invariant_n_mirror << "\n";
}

}  // namespace cylknot
