#pragma once

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "santalo/symmetric_polygon.hpp"

namespace santalo {

/// Reads the polygon text format: one "x y" vertex per line, lines starting
/// with '#' and blank lines ignored.
inline std::vector<Vec2> read_vertices(std::istream& in) {
  std::vector<Vec2> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double x = 0.0, y = 0.0;
    if (!(ls >> x >> y)) throw std::runtime_error("malformed vertex on line " + std::to_string(line_no));
    std::string rest;
    if (ls >> rest) throw std::runtime_error("trailing data on line " + std::to_string(line_no));
    out.emplace_back(x, y);
  }
  return out;
}

inline SymmetricPolygon read_symmetric_polygon(std::istream& in) {
  return SymmetricPolygon::from_vertices(read_vertices(in));
}

inline void write_vertices(std::ostream& out, std::span<const Vec2> vertices) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  // Adding 0.0 turns -0 into 0.
  for (const auto& v : vertices) out << v.x() + 0.0 << ' ' << v.y() + 0.0 << '\n';
  out.flags(flags);
  out.precision(prec);
}

inline void write_polygon(std::ostream& out, const SymmetricPolygon& p, const std::string& comment = {}) {
  if (!comment.empty()) out << "# " << comment << '\n';
  write_vertices(out, p.vertices());
}

}  // namespace santalo
