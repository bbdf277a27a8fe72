#pragma once

// Boolean matrix multiplication through triangle detection, and the converse.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "cbmm/bitmat.hpp"
#include "cbmm/detector.hpp"
#include "cbmm/errors.hpp"
#include "cbmm/fourruss.hpp"
#include "cbmm/graph.hpp"
#include "cbmm/oracle.hpp"

namespace cbmm {

/// Any correct tripartite detector that reports witnesses.
using TriangleDetector = std::function<Verdict(const TripartiteGraph&, RunStats&)>;

inline TriangleDetector recursive_detector(DetectorConfig cfg = {}) {
  return [cfg](const TripartiteGraph& g, RunStats& stats) { return detect(g, cfg, stats); };
}

inline TriangleDetector brute_detector() {
  return [](const TripartiteGraph& g, RunStats&) { return brute_triangle(g); };
}

/// The table detector alone. delta = 1 makes its degree precondition hold on every graph.
inline TriangleDetector sparse_only_detector() {
  return [](const TripartiteGraph& g, RunStats& stats) {
    SparseParams p;
    p.delta = 1;
    return sparse_detect(SubInstance(g), p, stats);
  };
}

inline std::size_t ceil_cbrt(std::size_t n) {
  std::size_t t = 0;
  while (detail::cube(t) < n) ++t;
  return t;
}

struct BlockSpec {
  std::size_t n = 0;
  std::size_t t = 1;

  /// t = max(1, ceil(n^(1/3))).
  static BlockSpec with_default_side(std::size_t n) { return BlockSpec{n, std::max<std::size_t>(1, ceil_cbrt(n))}; }

  std::size_t blocks_per_side() const noexcept { return n == 0 ? 0 : (n + t - 1) / t; }
};

/// Computes a*b with one detector call per discovered output bit plus one
/// terminal call per block triple.
///
/// For each block triple (I, K, J) the detector sees parts I, K, J with edges
/// a[I][K], b[K][J] and the complement of the output bits already known in
/// c[I][J]. Every witness (i, k, j) is a new output bit; it is recorded and
/// its I-J edge removed before the next call.
inline BitMatrix bmm_via_triangle(const BitMatrix& a, const BitMatrix& b, const BlockSpec& spec,
                                  const TriangleDetector& detector, RunStats& stats) {
  const std::size_t n = spec.n;
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n) {
    throw std::invalid_argument("bmm_via_triangle: expected two " + std::to_string(n) + "x" + std::to_string(n) +
                                " matrices");
  }
  if (n > 0 && (spec.t < 1 || spec.t > n)) {
    throw std::invalid_argument("bmm_via_triangle: block side must lie in [1, n]");
  }
  BitMatrix c(n, n);
  const std::size_t blocks = spec.blocks_per_side();
  auto span_of = [&](std::size_t blk) { return std::pair{blk * spec.t, std::min(n, (blk + 1) * spec.t)}; };

  for (std::size_t bi = 0; bi < blocks; ++bi) {
    const auto [i0, i1] = span_of(bi);
    for (std::size_t bk = 0; bk < blocks; ++bk) {
      const auto [k0, k1] = span_of(bk);
      for (std::size_t bj = 0; bj < blocks; ++bj) {
        const auto [j0, j1] = span_of(bj);
        TripartiteGraph g(i1 - i0, k1 - k0, j1 - j0);
        for (std::size_t i = i0; i < i1; ++i) {
          for (std::size_t k = k0; k < k1; ++k) {
            if (a.get(i, k)) g.set_edge(PartPair::AB, i - i0, k - k0);
          }
          for (std::size_t j = j0; j < j1; ++j) {
            if (!c.get(i, j)) g.set_edge(PartPair::AC, i - i0, j - j0);
          }
        }
        for (std::size_t k = k0; k < k1; ++k) {
          for (std::size_t j = j0; j < j1; ++j) {
            if (b.get(k, j)) g.set_edge(PartPair::BC, k - k0, j - j0);
          }
        }
        for (;;) {
          const Verdict v = detector(g, stats);
          if (!v.found()) break;
          const Triangle& w = *v.witness;
          if (!g.is_triangle(w)) throw invariant_violation("detector returned a witness that is not a triangle");
          c.set(i0 + w.a, j0 + w.c, true);
          g.set_edge(PartPair::AC, w.a, w.c, false);
        }
      }
    }
  }
  return c;
}

/// Folklore converse: a triangle exists iff (ab * bc) meets ac somewhere.
inline Verdict triangle_via_bmm(const TripartiteGraph& g) {
  const BitMatrix paths = multiply_bitpacked(g.ab(), g.bc());
  for (std::size_t a = 0; a < g.na(); ++a) {
    const std::size_t c = first_common_bit(paths.row(a), g.ac().row(a));
    if (c == static_cast<std::size_t>(-1)) continue;
    for (std::size_t b = 0; b < g.nb(); ++b) {
      if (g.ab().get(a, b) && g.bc().get(b, c)) return Verdict::triangle(a, b, c);
    }
    throw invariant_violation("path matrix bit without a middle vertex");
  }
  return Verdict::none();
}

}  // namespace cbmm
