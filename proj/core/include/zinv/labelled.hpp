#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "zinv/diagram.hpp"

namespace zinv {

// Connected diagram with total vertex labels {1..2n}, edge labels {1..3n} and
// edge orientations. Stored as the sequence of ordered endpoint pairs: entry
// k-1 is edge k as (origin, end), endpoints in {1..2n}.
struct Labelled {
  int n = 0;
  std::vector<std::array<int, 2>> edges;

  friend bool operator==(const Labelled&, const Labelled&) = default;
  friend auto operator<=>(const Labelled&, const Labelled&) = default;
};

// Structural check: 3n entries over {1..2n}, no fixed points (self-loops),
// every vertex on exactly 3 half-edges, connected. InvariantViolation otherwise.
void validate(const Labelled& g);

bool is_connected_labelled(const Labelled& g);

// Every element of E_n in lexicographic order of the flattened pair sequence.
// Enumeration is capped at n <= 2 (the counts explode combinatorially);
// DegreeTooLarge beyond.
std::vector<Labelled> enumerate_labelled(int n);

// Closed form sum over iso classes: 2^{3n} (2n)! (3n)! / #Aut(Gamma), connected
// classes only.
std::uint64_t count_labelled(int n);

// Underlying unlabelled multigraph (vertex v -> v-1).
Graph underlying(const Labelled& g);

// Conversions to/from the interchange Diagram form. diagram_to_labelled
// requires total labels and edge orientations (MissingLabels /
// MissingOrientation).
Diagram labelled_to_diagram(const Labelled& g);
Labelled diagram_to_labelled(const Diagram& d);

// A half-edge of a Labelled diagram: edge label 1..3n plus role 0 (origin) or
// 1 (end). Its half-edge id is 2*(edge-1)+end, so the edge-ordered listing of
// all 6n half-edges is the identity sequence.
struct LHalf {
  int edge = 0;  // 1..3n
  int end = 0;   // 0 origin, 1 end
  friend bool operator==(const LHalf&, const LHalf&) = default;
  friend auto operator<=>(const LHalf&, const LHalf&) = default;
};

// Vertex orientation for sign purposes: for each vertex v (index v-1), its 3
// incident half-edges in (a linearization of) cyclic order.
using VertexOrientationL = std::vector<std::array<LHalf, 3>>;

// The half-edges at vertex v sorted by (edge, end): the base linearization.
VertexOrientationL default_vertex_orientation(const Labelled& g);

// Sign of the permutation carrying the edge-ordered listing of H(Gamma) (edges
// by label, origin before end) to the vertex-ordered listing (vertices by
// label, each vertex's half-edges per the given cyclic linearization).
// Invariant under edge relabelings and rotations of any vertex triple; flips
// under a transposition inside a vertex triple and under odd vertex
// relabelings.
int orientation_sign(const Labelled& g, const VertexOrientationL& vo);

}  // namespace zinv
