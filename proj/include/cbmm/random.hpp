#pragma once

// Seeded instance generator.
//
// The bit stream is std::mt19937_64, whose output sequence is fixed by the
// C++ standard. No std::*_distribution is used (their algorithms are
// implementation-defined), so instances reproduce across platforms:
//   coin(p)        = (next() >> 11) * 2^-53 < p
//   uniform(lo,hi) = lo + next() % (hi - lo + 1)
// Edges are drawn row-major: AB, then AC, then BC.

#include <cstddef>
#include <cstdint>
#include <random>

#include "cbmm/bitmat.hpp"
#include "cbmm/graph.hpp"

namespace cbmm {

class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  bool coin(double p) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return u < p;
  }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(next() % (static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

inline BitMatrix random_matrix(InstanceRng& rng, std::size_t rows, std::size_t cols, double density) {
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (rng.coin(density)) m.set(i, j, true);
    }
  }
  return m;
}

inline TripartiteGraph random_tripartite(InstanceRng& rng, std::size_t na, std::size_t nb, std::size_t nc,
                                         double density) {
  TripartiteGraph g(na, nb, nc);
  for (PartPair p : {PartPair::AB, PartPair::AC, PartPair::BC}) {
    const BitMatrix& m = g.adjacency(p);
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (rng.coin(density)) g.set_edge(p, i, j);
      }
    }
  }
  return g;
}

}  // namespace cbmm
