#pragma once

// Text graph formats.
//
//   edge list:  "n m" header, then m lines "u v" with 0-based ids.
//   DIMACS:     "p edge n m" header, then "e u v" lines with 1-based ids.
//
// Blank lines and lines starting with '#' (or 'c' in DIMACS files) are
// ignored. The format is detected from the first significant line.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mesp/errors.hpp"
#include "mesp/graph.hpp"

namespace mesp {

namespace detail {

inline bool significant(const std::string& line, bool dimacs) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return false;
  if (line[first] == '#') return false;
  if (dimacs && line[first] == 'c') return false;
  return true;
}

inline long long parse_count(std::istringstream& in, const std::string& what, std::size_t line_no) {
  long long value = 0;
  if (!(in >> value)) {
    throw FormatError("line " + std::to_string(line_no) + ": expected " + what);
  }
  return value;
}

inline void expect_end(std::istringstream& in, std::size_t line_no) {
  std::string rest;
  if (in >> rest) throw FormatError("line " + std::to_string(line_no) + ": unexpected token '" + rest + "'");
}

}  // namespace detail

struct ParsedGraph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
};

inline ParsedGraph parse_edge_list(std::istream& in) {
  ParsedGraph out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool dimacs = false;
  long long declared_edges = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!have_header) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#' || line[first] == 'c') continue;
      std::istringstream header(line);
      if (line[first] == 'p') {
        std::string tag;
        std::string kind;
        header >> tag >> kind;
        if (tag != "p" || (kind != "edge" && kind != "col")) {
          throw FormatError("line " + std::to_string(line_no) + ": expected 'p edge n m'");
        }
        dimacs = true;
      }
      const long long n = detail::parse_count(header, "vertex count", line_no);
      declared_edges = detail::parse_count(header, "edge count", line_no);
      detail::expect_end(header, line_no);
      if (n < 0 || declared_edges < 0) throw FormatError("negative counts in header");
      out.vertex_count = static_cast<std::size_t>(n);
      have_header = true;
      continue;
    }
    if (!detail::significant(line, dimacs)) continue;
    std::istringstream row(line);
    if (dimacs) {
      std::string tag;
      row >> tag;
      if (tag != "e") throw FormatError("line " + std::to_string(line_no) + ": expected 'e u v'");
    }
    const long long u = detail::parse_count(row, "edge endpoint", line_no);
    const long long v = detail::parse_count(row, "edge endpoint", line_no);
    detail::expect_end(row, line_no);
    const long long shift = dimacs ? 1 : 0;
    const long long n = static_cast<long long>(out.vertex_count);
    if (u - shift < 0 || v - shift < 0 || u - shift >= n || v - shift >= n) {
      throw FormatError("line " + std::to_string(line_no) + ": vertex id out of range");
    }
    out.edges.emplace_back(static_cast<Vertex>(u - shift), static_cast<Vertex>(v - shift));
  }
  if (!have_header) throw FormatError("missing header line");
  if (static_cast<long long>(out.edges.size()) != declared_edges) {
    throw FormatError("header declares " + std::to_string(declared_edges) + " edges, found " +
                      std::to_string(out.edges.size()));
  }
  return out;
}

// Parses and builds a connected graph.
inline Graph read_graph(std::istream& in) {
  const auto parsed = parse_edge_list(in);
  return build_graph(parsed.vertex_count, parsed.edges);
}

inline Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_graph(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace mesp
