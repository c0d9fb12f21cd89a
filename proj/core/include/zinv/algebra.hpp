#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "zinv/labelled.hpp"
#include "zinv/rational.hpp"
#include "zinv/rng.hpp"

namespace zinv {

// Concrete vertex-oriented diagram: vertices 0..nv-1, edge list in arbitrary
// order, and for each vertex the cyclic order of its 3 half-edges. Half-edge
// code: 2*edge_index + end.
struct OrientedGraph {
  int nv = 0;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> cyc;

  int degree() const { return nv / 2; }
};

OrientedGraph default_oriented(const Graph& g);          // cyc = sorted half codes
OrientedGraph flip_vertex(const OrientedGraph& g, int v);  // reverse cyclic order at v

// Canonical key of the oriented-isomorphism class: the lexicographically least
// slot-matching encoding over all vertex bijections and per-vertex rotations.
// (A slot is a position in some vertex's cyclic triple; the matching pairs the
// two slots of each edge; rotating a triple does not change the orientation.)
using OrientedKey = std::vector<std::pair<int, int>>;
OrientedKey oriented_key(const OrientedGraph& g);

std::string key_to_string(const OrientedKey& k);

// Term index for algebra elements: (degree, class key).
using GenKey = std::pair<int, OrientedKey>;

// Finite sum of oriented-class generators with exact rational coefficients,
// truncated above `bound`. Zero coefficients are never stored.
struct AlgebraElement {
  int bound = 2;
  std::map<GenKey, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

AlgebraElement zero_element(int bound);
AlgebraElement empty_diagram_element(int bound);  // 1 * [empty], degree 0
AlgebraElement theta_element(int bound);          // 1 * [theta], degree 1

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(const Rat& c, const AlgebraElement& a);

// One relation row over the degree-n generator list: AS rows have 2 entries of
// coefficient 1 (or one entry of coefficient 2 when the flip is realized by an
// isomorphism), IHX rows have 3 entries of coefficient 1.
struct RelationRow {
  enum class Kind { AS, IHX } kind = Kind::AS;
  std::vector<std::pair<int, Rat>> entries;  // (generator index, coefficient)
};

struct RelationSet {
  int n = 0;
  std::vector<OrientedKey> gens;           // sorted; index space for rows
  std::vector<OrientedGraph> reps;         // concrete representative per generator
  std::vector<RelationRow> rows;
};

// Generators and AS/IHX rows at degree n. Cached; n is capped (default 2,
// ZINV_MAX_DEGREE may raise it at your own risk) since generator
// canonicalization is factorial in n. DegreeTooLarge beyond the cap.
const RelationSet& relation_set(int n);

int algebra_degree_cap();

// Normal form modulo the AS/IHX row space, degreewise. Idempotent and linear.
AlgebraElement reduce(const AlgebraElement& x);

// dim A_n = #generators - rank(rows).
int dim_A_n(int n);

// Class of a labelled diagram: coefficient +1 on its canonically vertex-oriented
// class (the orientation with orientation_sign = +1), reduced.
AlgebraElement class_of_labelled(const Labelled& g);

// Disjoint-union product, truncated at min(a.bound, b.bound), then reduced.
AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b);

// exp(x) = sum x^k / k!, truncated; requires zero degree-0 term
// (NonzeroConstantTerm).
AlgebraElement exp_truncated(const AlgebraElement& x);

// Degreewise sign flip x_n -> (-1)^n x_n.
AlgebraElement bar_involution(const AlgebraElement& x);

// The degree-n part, as an element with the same bound.
AlgebraElement degree_part(const AlgebraElement& x, int n);

// Random reduced element with small coefficients, for property tests.
AlgebraElement random_element(Rng& rng, int bound);

// JSON interchange: {"bound": B, "terms": [{"diagram": ..., "coeff": "p/q"}...]}
// Diagrams carry vertex_orientation so classes survive the round trip.
nlohmann::json element_to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const nlohmann::json& j);

// The oriented diagram behind a generator, as an interchange Diagram with
// vertex_orientation set.
Diagram generator_diagram(const GenKey& k);

}  // namespace zinv
