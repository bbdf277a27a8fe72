#pragma once

// Text formats.
//
// Matrix: "R C" on the first line, then R lines of exactly C characters
// from {0,1}.
//
// Tripartite graph: "nA nB nC", then one "P i j" per edge with P in
// {AB, AC, BC}. Blank lines are ignored and '#' starts a comment.
//
// General graph: "n", then one "i j" per undirected edge; same comment rules.

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cbmm/bitmat.hpp"
#include "cbmm/errors.hpp"
#include "cbmm/graph.hpp"

namespace cbmm {

namespace detail {

inline void strip_cr(std::string& s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

// Strips comments; true if anything but whitespace remains.
inline bool meaningful(std::string& s) {
  if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  return s.find_first_not_of(" \t\r") != std::string::npos;
}

template <typename... Ts>
bool scan_exact(const std::string& line, Ts&... out) {
  std::istringstream in(line);
  ((in >> out) && ...);
  if (!in) return false;
  std::string rest;
  return !(in >> rest);
}

// Rejects signs and anything not a plain unsigned decimal.
inline bool parse_count(const std::string& tok, std::size_t& out) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) return false;
  try {
    out = static_cast<std::size_t>(std::stoull(tok));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace detail

inline BitMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw parse_error(1, "missing \"R C\" header");
  ++lineno;
  detail::strip_cr(line);
  std::string rs, cs;
  std::size_t rows = 0, cols = 0;
  if (!detail::scan_exact(line, rs, cs) || !detail::parse_count(rs, rows) || !detail::parse_count(cs, cols)) {
    throw parse_error(lineno, "expected \"R C\" header, got \"" + line + "\"");
  }
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw parse_error(lineno + 1, "expected " + std::to_string(rows) + " rows");
    ++lineno;
    detail::strip_cr(line);
    if (line.size() != cols) {
      throw parse_error(lineno, "row has " + std::to_string(line.size()) + " characters, expected " +
                                    std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (line[j] == '1') {
        m.set(i, j, true);
      } else if (line[j] != '0') {
        throw parse_error(lineno, std::string("unexpected character '") + line[j] + "'");
      }
    }
  }
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (!line.empty()) throw parse_error(lineno, "trailing data after the last row");
  }
  return m;
}

inline void write_matrix(std::ostream& out, const BitMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  std::string row(m.cols(), '0');
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.get(i, j) ? '1' : '0';
    out << row << '\n';
  }
}

inline TripartiteGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  TripartiteGraph g;
  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::meaningful(line)) continue;
    if (!have_header) {
      std::string a, b, c;
      std::size_t na = 0, nb = 0, nc = 0;
      if (!detail::scan_exact(line, a, b, c) || !detail::parse_count(a, na) || !detail::parse_count(b, nb) ||
          !detail::parse_count(c, nc)) {
        throw parse_error(lineno, "expected \"nA nB nC\" header");
      }
      g = TripartiteGraph(na, nb, nc);
      have_header = true;
      continue;
    }
    std::string p, is, js;
    std::size_t i = 0, j = 0;
    if (!detail::scan_exact(line, p, is, js) || !detail::parse_count(is, i) || !detail::parse_count(js, j)) {
      throw parse_error(lineno, "expected \"P i j\"");
    }
    PartPair pair;
    if (p == "AB") {
      pair = PartPair::AB;
    } else if (p == "AC") {
      pair = PartPair::AC;
    } else if (p == "BC") {
      pair = PartPair::BC;
    } else {
      throw parse_error(lineno, "unknown part pair \"" + p + "\"");
    }
    try {
      g.set_edge(pair, i, j);
    } catch (const std::out_of_range& e) {
      throw parse_error(lineno, e.what());
    }
  }
  if (!have_header) throw parse_error(lineno == 0 ? 1 : lineno, "missing \"nA nB nC\" header");
  return g;
}

inline void write_graph(std::ostream& out, const TripartiteGraph& g) {
  out << g.na() << ' ' << g.nb() << ' ' << g.nc() << '\n';
  const std::pair<const char*, PartPair> pairs[] = {{"AB", PartPair::AB}, {"AC", PartPair::AC}, {"BC", PartPair::BC}};
  for (auto [name, p] : pairs) {
    const BitMatrix& m = g.adjacency(p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for_each_set_bit(m.row(i), [&](std::size_t j) { out << name << ' ' << i << ' ' << j << '\n'; });
    }
  }
}

/// Reads a general undirected graph and applies the 3-copy construction.
inline TripartiteGraph read_general_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::meaningful(line)) continue;
    if (!n) {
      std::string tok;
      std::size_t v = 0;
      if (!detail::scan_exact(line, tok) || !detail::parse_count(tok, v)) throw parse_error(lineno, "expected \"n\"");
      n = v;
      continue;
    }
    std::string us, vs;
    std::size_t u = 0, v = 0;
    if (!detail::scan_exact(line, us, vs) || !detail::parse_count(us, u) || !detail::parse_count(vs, v)) {
      throw parse_error(lineno, "expected \"i j\"");
    }
    if (u >= *n || v >= *n) throw parse_error(lineno, "vertex out of range");
    if (u == v) throw parse_error(lineno, "self-loop");
    edges.emplace_back(u, v);
  }
  if (!n) throw parse_error(lineno == 0 ? 1 : lineno, "missing \"n\" header");
  return from_general(*n, edges);
}

}  // namespace cbmm
