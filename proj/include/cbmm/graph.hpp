#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cbmm/bitmat.hpp"

namespace cbmm {

using IndexList = std::vector<std::size_t>;

enum class Part { A, B, C };
enum class PartPair { AB, AC, BC };

struct Edge {
  PartPair pair;
  std::size_t i;
  std::size_t j;
};

struct Triangle {
  std::size_t a;
  std::size_t b;
  std::size_t c;

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// Outcome of a detector: a witness triangle (original-graph indices) or none.
struct Verdict {
  std::optional<Triangle> witness;

  bool found() const noexcept { return witness.has_value(); }

  static Verdict triangle(std::size_t a, std::size_t b, std::size_t c) { return Verdict{Triangle{a, b, c}}; }
  static Verdict none() { return Verdict{}; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Work counters shared by every detector.
struct RunStats {
  std::uint64_t triples_enumerated = 0;
  std::uint64_t pairs_charged = 0;
  std::uint64_t recursion_nodes = 0;
  std::uint64_t table_queries = 0;
  std::uint64_t sparse_calls = 0;

  RunStats& operator+=(const RunStats& o) noexcept {
    triples_enumerated += o.triples_enumerated;
    pairs_charged += o.pairs_charged;
    recursion_nodes += o.recursion_nodes;
    table_queries += o.table_queries;
    sparse_calls += o.sparse_calls;
    return *this;
  }

  friend bool operator==(const RunStats&, const RunStats&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const RunStats& s) {
  return os << "triples_enumerated=" << s.triples_enumerated << '\n'
            << "pairs_charged=" << s.pairs_charged << '\n'
            << "recursion_nodes=" << s.recursion_nodes << '\n'
            << "table_queries=" << s.table_queries << '\n'
            << "sparse_calls=" << s.sparse_calls << '\n';
}

/// Three vertex parts with one bit-packed adjacency matrix per part pair.
class TripartiteGraph {
 public:
  TripartiteGraph() = default;

  TripartiteGraph(std::size_t na, std::size_t nb, std::size_t nc)
      : na_(na), nb_(nb), nc_(nc), ab_(na, nb), ac_(na, nc), bc_(nb, nc) {}

  std::size_t size(Part p) const noexcept {
    switch (p) {
      case Part::A: return na_;
      case Part::B: return nb_;
      case Part::C: return nc_;
    }
    return 0;
  }
  std::size_t na() const noexcept { return na_; }
  std::size_t nb() const noexcept { return nb_; }
  std::size_t nc() const noexcept { return nc_; }

  const BitMatrix& ab() const noexcept { return ab_; }
  const BitMatrix& ac() const noexcept { return ac_; }
  const BitMatrix& bc() const noexcept { return bc_; }

  const BitMatrix& adjacency(PartPair p) const noexcept {
    switch (p) {
      case PartPair::AB: return ab_;
      case PartPair::AC: return ac_;
      case PartPair::BC: return bc_;
    }
    return ab_;
  }

  void set_edge(PartPair p, std::size_t i, std::size_t j, bool present = true) {
    BitMatrix& m = mutable_adjacency(p);
    if (i >= m.rows() || j >= m.cols()) {
      throw std::out_of_range("edge endpoint out of range: (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") for a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " pair");
    }
    m.set(i, j, present);
  }

  bool has_edge(PartPair p, std::size_t i, std::size_t j) const { return adjacency(p).get(i, j); }

  bool is_triangle(const Triangle& t) const noexcept {
    return t.a < na_ && t.b < nb_ && t.c < nc_ && ab_.get(t.a, t.b) && ac_.get(t.a, t.c) && bc_.get(t.b, t.c);
  }

  std::size_t vertex_count() const noexcept { return na_ + nb_ + nc_; }

  friend bool operator==(const TripartiteGraph&, const TripartiteGraph&) = default;

 private:
  BitMatrix& mutable_adjacency(PartPair p) noexcept {
    switch (p) {
      case PartPair::AB: return ab_;
      case PartPair::AC: return ac_;
      case PartPair::BC: return bc_;
    }
    return ab_;
  }

  std::size_t na_ = 0;
  std::size_t nb_ = 0;
  std::size_t nc_ = 0;
  BitMatrix ab_;
  BitMatrix ac_;
  BitMatrix bc_;
};

inline TripartiteGraph from_edge_list(std::size_t na, std::size_t nb, std::size_t nc, std::span<const Edge> edges) {
  TripartiteGraph g(na, nb, nc);
  for (const Edge& e : edges) g.set_edge(e.pair, e.i, e.j);
  return g;
}

inline TripartiteGraph from_edge_list(std::size_t na, std::size_t nb, std::size_t nc,
                                      std::initializer_list<Edge> edges) {
  return from_edge_list(na, nb, nc, std::span<const Edge>(edges.begin(), edges.size()));
}

/// 3-copy construction: every vertex of an undirected simple graph appears
/// once in each part and every edge is placed in all three pair adjacencies.
/// The result has a tripartite triangle iff the input has a triangle.
inline TripartiteGraph from_general(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  TripartiteGraph g(n, n, n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::out_of_range("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range for n=" +
                              std::to_string(n));
    }
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    for (PartPair p : {PartPair::AB, PartPair::AC, PartPair::BC}) {
      g.set_edge(p, u, v);
      g.set_edge(p, v, u);
    }
  }
  return g;
}

namespace detail {

inline bool strictly_increasing(const IndexList& xs) {
  return std::adjacent_find(xs.begin(), xs.end(), [](std::size_t x, std::size_t y) { return x >= y; }) == xs.end();
}

inline IndexList iota_list(std::size_t n) {
  IndexList xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = i;
  return xs;
}

inline std::vector<Word> mask_of(const IndexList& xs, std::size_t universe) {
  std::vector<Word> m(words_for(universe), Word{0});
  for (std::size_t x : xs) m[x / kWordBits] |= Word{1} << (x % kWordBits);
  return m;
}

}  // namespace detail

/// A view of a TripartiteGraph through three sorted index lists. Adjacency is
/// never copied; per-part word masks are built on first use and cached.
class SubInstance {
 public:
  explicit SubInstance(const TripartiteGraph& g)
      : g_(&g), ia_(detail::iota_list(g.na())), ib_(detail::iota_list(g.nb())), ic_(detail::iota_list(g.nc())) {}

  SubInstance(const TripartiteGraph& g, IndexList ia, IndexList ib, IndexList ic)
      : g_(&g), ia_(std::move(ia)), ib_(std::move(ib)), ic_(std::move(ic)) {
    validate(ia_, g.na(), "A");
    validate(ib_, g.nb(), "B");
    validate(ic_, g.nc(), "C");
  }

  const TripartiteGraph& graph() const noexcept { return *g_; }

  const IndexList& a() const noexcept { return ia_; }
  const IndexList& b() const noexcept { return ib_; }
  const IndexList& c() const noexcept { return ic_; }

  const IndexList& indices(Part p) const noexcept {
    switch (p) {
      case Part::A: return ia_;
      case Part::B: return ib_;
      case Part::C: return ic_;
    }
    return ia_;
  }

  std::size_t size(Part p) const noexcept { return indices(p).size(); }

  bool empty_part() const noexcept { return ia_.empty() || ib_.empty() || ic_.empty(); }

  std::uint64_t volume() const noexcept {
    return static_cast<std::uint64_t>(ia_.size()) * ib_.size() * ic_.size();
  }

  bool contains(Part p, std::size_t v) const {
    const IndexList& xs = indices(p);
    return std::binary_search(xs.begin(), xs.end(), v);
  }

  /// Word mask over the whole part with a bit set for every index in the view.
  std::span<const Word> mask(Part p) const {
    std::optional<std::vector<Word>>& slot = mask_cache_[static_cast<int>(p)];
    if (!slot) slot = detail::mask_of(indices(p), g_->size(p));
    return *slot;
  }

 private:
  static void validate(const IndexList& xs, std::size_t n, const char* part) {
    if (!detail::strictly_increasing(xs)) {
      throw std::invalid_argument(std::string("index list for part ") + part + " is not strictly increasing");
    }
    if (!xs.empty() && xs.back() >= n) {
      throw std::out_of_range(std::string("index ") + std::to_string(xs.back()) + " out of range for part " + part);
    }
  }

  const TripartiteGraph* g_;
  IndexList ia_;
  IndexList ib_;
  IndexList ic_;
  mutable std::optional<std::vector<Word>> mask_cache_[3];
};

namespace detail {

inline const BitMatrix& a_rows_towards(const TripartiteGraph& g, Part part) {
  if (part == Part::B) return g.ab();
  if (part == Part::C) return g.ac();
  throw std::invalid_argument("degree/neighborhood part must be B or C");
}

inline void require_in_view(const SubInstance& sub, std::size_t v) {
  if (!sub.contains(Part::A, v)) {
    throw std::invalid_argument("vertex a" + std::to_string(v) + " is not in the sub-instance");
  }
}

// Unchecked variants for hot loops; v must be in the view.
inline std::size_t degree_unchecked(const SubInstance& sub, std::size_t v, Part part) {
  return popcount_and(a_rows_towards(sub.graph(), part).row(v), sub.mask(part));
}

inline IndexList neighborhood_unchecked(const SubInstance& sub, std::size_t v, Part part) {
  std::span<const Word> row = a_rows_towards(sub.graph(), part).row(v);
  std::span<const Word> mask = sub.mask(part);
  IndexList out;
  for (std::size_t w = 0; w < row.size(); ++w) {
    Word x = row[w] & mask[w];
    while (x != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

}  // namespace detail

/// d(v, part) within the view: neighbors of A-vertex v among the view's part indices.
inline std::size_t degree(const SubInstance& sub, std::size_t v, Part part) {
  detail::require_in_view(sub, v);
  return detail::degree_unchecked(sub, v, part);
}

/// Sorted neighbors of A-vertex v among the view's indices of `part`.
inline IndexList neighborhood(const SubInstance& sub, std::size_t v, Part part) {
  detail::require_in_view(sub, v);
  return detail::neighborhood_unchecked(sub, v, part);
}

/// The view's indices of `part` that are not in `xs` (xs sorted).
inline IndexList complement_in(const SubInstance& sub, Part part, const IndexList& xs) {
  const IndexList& all = sub.indices(part);
  IndexList out;
  out.reserve(all.size() - std::min(all.size(), xs.size()));
  std::set_difference(all.begin(), all.end(), xs.begin(), xs.end(), std::back_inserter(out));
  return out;
}

/// Narrower view over the same graph. Each list must be a subset of the current one.
inline SubInstance restrict(const SubInstance& sub, IndexList ia, IndexList ib, IndexList ic) {
  auto check = [](const IndexList& parent, const IndexList& child, const char* part) {
    if (!detail::strictly_increasing(child) || !std::includes(parent.begin(), parent.end(), child.begin(), child.end())) {
      throw std::invalid_argument(std::string("restrict: new ") + part + " list is not a subset of the view");
    }
  };
  check(sub.a(), ia, "A");
  check(sub.b(), ib, "B");
  check(sub.c(), ic, "C");
  return SubInstance(sub.graph(), std::move(ia), std::move(ib), std::move(ic));
}

}  // namespace cbmm
