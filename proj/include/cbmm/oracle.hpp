#pragma once

// Brute-force references. Deliberately scalar: single-bit reads only, no
// word tricks and nothing shared with the optimized code paths.

#include <cstddef>
#include <stdexcept>
#include <string>

#include "cbmm/bitmat.hpp"
#include "cbmm/graph.hpp"

namespace cbmm {

/// Triple loop over the view; first witness in lexicographic (a, b, c) order.
inline Verdict brute_triangle(const SubInstance& sub) {
  const TripartiteGraph& g = sub.graph();
  for (std::size_t a : sub.a()) {
    for (std::size_t b : sub.b()) {
      for (std::size_t c : sub.c()) {
        if (g.ab().get(a, b) && g.ac().get(a, c) && g.bc().get(b, c)) return Verdict::triangle(a, b, c);
      }
    }
  }
  return Verdict::none();
}

inline Verdict brute_triangle(const TripartiteGraph& g) {
  for (std::size_t a = 0; a < g.na(); ++a) {
    for (std::size_t b = 0; b < g.nb(); ++b) {
      for (std::size_t c = 0; c < g.nc(); ++c) {
        if (g.ab().get(a, b) && g.ac().get(a, c) && g.bc().get(b, c)) return Verdict::triangle(a, b, c);
      }
    }
  }
  return Verdict::none();
}

inline BitMatrix multiply_scalar_oracle(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("multiply_scalar_oracle: inner dimensions differ (" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + ")");
  }
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      bool acc = false;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = acc | (a.get(i, k) & b.get(k, j));
      out.set(i, j, acc);
    }
  }
  return out;
}

}  // namespace cbmm
