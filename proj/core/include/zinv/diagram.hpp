#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zinv/errors.hpp"

namespace zinv {

// Half-edge as it appears in interchange form: the incidence (vertex, edge, end),
// where end 0/1 selects the first/second slot of the stored edge pair.
struct HalfEdgeRef {
  int vertex = 0;
  int edge = 0;
  int end = 0;
  friend bool operator==(const HalfEdgeRef&, const HalfEdgeRef&) = default;
  friend auto operator<=>(const HalfEdgeRef&, const HalfEdgeRef&) = default;
};

// Trivalent multigraph without self-loops; 2n vertices, 3n edges. Multiple edges
// are allowed. Optional decorations: per-vertex cyclic orders, per-edge
// orientations, vertex labels {1..2n}, edge labels {1..3n}.
struct Diagram {
  std::vector<int> vertices;                    // distinct ids, external order kept
  std::vector<std::array<int, 2>> edges;        // vertex id pairs, a != b

  // Aligned with `vertices`: a cyclic order of the 3 incident half-edges,
  // linearized (any rotation represents the same orientation).
  std::optional<std::vector<std::array<HalfEdgeRef, 3>>> vertex_orientation;
  // Aligned with `edges`: (origin id, end id), a permutation of the stored pair.
  std::optional<std::vector<std::array<int, 2>>> edge_orientation;
  std::optional<std::map<int, int>> vertex_labels;  // vertex id -> 1..2n
  std::optional<std::map<int, int>> edge_labels;    // edge index -> 1..3n

  int degree() const { return static_cast<int>(vertices.size()) / 2; }
  int vertex_index(int id) const;  // UnknownVertex if absent
};

// Structural validation: trivalence, no self-loops, consistency of every optional
// decoration that is present. Throws InvariantViolation / UnknownVertex /
// MissingOrientation on failure.
void validate(const Diagram& d);

// JSON interchange. parse_diagram throws MalformedInput for shape errors and the
// validate() errors for semantic ones.
Diagram parse_diagram(const nlohmann::json& j);
nlohmann::json diagram_to_json(const Diagram& d);

// --- Internal compact multigraph used by canonicalization and generation ---

// Vertices are 0..nv-1; edges an unordered multiset of pairs (a,b), a < b after
// normalization. This carries exactly the data modulo which unoriented
// isomorphism is decided.
struct Graph {
  int nv = 0;
  std::vector<std::array<int, 2>> edges;  // normalized: a <= b entrywise, list sorted

  void normalize();
  friend bool operator==(const Graph&, const Graph&) = default;
  friend auto operator<=>(const Graph&, const Graph&) = default;
};

// Strip a Diagram to its internal Graph (vertex ids compressed in `vertices`
// order). The inverse mapping is by position.
Graph to_graph(const Diagram& d);
Diagram from_graph(const Graph& g);  // ids 1..nv, no decorations

// Canonical form: the lexicographically least normalized edge list over all
// vertex bijections. Two diagrams are isomorphic (as unoriented multigraphs)
// iff their canonical forms are equal.
Graph canonical_form(const Graph& g);
inline bool is_isomorphic(const Graph& a, const Graph& b) {
  return canonical_form(a) == canonical_form(b);
}

// Automorphism count of the half-edge incidence structure: permutations of
// half-edges induced by compatible (vertex bijection, edge bijection) pairs.
// For a loopless multigraph this is sum over adjacency-preserving vertex
// bijections of the product over parallel classes of m!.
std::uint64_t count_automorphisms(const Graph& g);

// All degree-n diagrams up to isomorphism (connected only, or all), sorted by
// canonical form. Degree capped (DegreeTooLarge beyond it).
std::vector<Graph> generate_diagrams(int n, bool connected_only);

int max_generation_degree();  // default 4, env ZINV_MAX_DEGREE overrides

// Named examples used throughout: theta (2 vertices, triple edge), K4, and the
// "ladder" L (two double edges joined by two single edges).
Graph theta_graph();
Graph k4_graph();
Graph ladder_graph();
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace zinv
