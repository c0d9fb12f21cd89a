#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "zinv/diagram.hpp"

namespace zinv {

namespace {

std::vector<std::vector<int>> multiplicity_matrix(const Graph& g) {
  std::vector<std::vector<int>> m(g.nv, std::vector<int>(g.nv, 0));
  for (const auto& e : g.edges) {
    ++m[e[0]][e[1]];
    ++m[e[1]][e[0]];
  }
  return m;
}

// Lexicographically least column-major upper-triangle multiplicity encoding
// over all vertex orderings, found by backtracking: placing position p fixes
// the entries m[perm[q]][perm[p]] for q < p, which are compared against the
// best complete encoding found so far.
struct CanonicalSearch {
  const std::vector<std::vector<int>>& m;
  int nv;
  std::vector<int> perm;       // position -> vertex
  std::vector<char> used;
  std::vector<int> cur, best;  // encodings
  bool have_best = false;

  explicit CanonicalSearch(const std::vector<std::vector<int>>& mm, int n)
      : m(mm), nv(n), perm(n, -1), used(n, 0) {}

  // strictly_better: the prefix already beats `best` at some earlier entry.
  void place(int p, bool strictly_better) {
    if (p == nv) {
      if (!have_best || strictly_better) {
        best = cur;
        have_best = true;
      }
      return;
    }
    for (int v = 0; v < nv; ++v) {
      if (used[v]) continue;
      bool better = strictly_better;
      bool prune = false;
      std::size_t base = cur.size();
      for (int q = 0; q < p; ++q) {
        int entry = m[perm[q]][v];
        cur.push_back(entry);
        if (have_best && !better) {
          int ref = best[base + q];
          if (entry > ref) {
            prune = true;
            break;
          }
          if (entry < ref) better = true;
        }
      }
      if (!prune) {
        used[v] = 1;
        perm[p] = v;
        place(p + 1, better);
        perm[p] = -1;
        used[v] = 0;
      }
      cur.resize(base);
    }
  }
};

}  // namespace

Graph canonical_form(const Graph& g0) {
  Graph g = g0;
  g.normalize();
  if (g.nv <= 1) return g;
  auto m = multiplicity_matrix(g);
  CanonicalSearch search(m, g.nv);
  search.place(0, false);

  // Rebuild the edge list from the canonical encoding (column-major order:
  // position p contributes entries (q,p) for q < p).
  Graph out;
  out.nv = g.nv;
  std::size_t idx = 0;
  for (int p = 1; p < g.nv; ++p)
    for (int q = 0; q < p; ++q) {
      int mult = search.best[idx++];
      for (int k = 0; k < mult; ++k) out.edges.push_back({q, p});
    }
  out.normalize();
  return out;
}

std::uint64_t count_automorphisms(const Graph& g0) {
  Graph g = g0;
  g.normalize();
  if (g.nv == 0) return 1;
  auto m = multiplicity_matrix(g);

  // Adjacency-preserving vertex bijections, counted by backtracking.
  std::uint64_t vertex_autos = 0;
  std::vector<int> perm(g.nv, -1);
  std::vector<char> used(g.nv, 0);
  auto rec = [&](auto&& self, int p) -> void {
    if (p == g.nv) {
      ++vertex_autos;
      return;
    }
    for (int v = 0; v < g.nv; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int q = 0; q < p && ok; ++q) ok = m[perm[q]][v] == m[q][p];
      if (!ok) continue;
      used[v] = 1;
      perm[p] = v;
      self(self, p + 1);
      perm[p] = -1;
      used[v] = 0;
    }
  };
  rec(rec, 0);

  // Every vertex bijection extends to edge bijections freely and independently
  // within each parallel class (no self-loops, so half-edge images are forced
  // by the (vertex, edge) data).
  std::uint64_t edge_factor = 1;
  for (int i = 0; i < g.nv; ++i)
    for (int j = i + 1; j < g.nv; ++j)
      for (int k = 2; k <= m[i][j]; ++k) edge_factor *= k;
  return vertex_autos * edge_factor;
}

namespace {

bool graph_connected(const Graph& g) {
  if (g.nv == 0) return true;
  std::vector<int> stack{0};
  std::vector<char> seen(g.nv, 0);
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges) {
      int other = -1;
      if (e[0] == v) other = e[1];
      else if (e[1] == v) other = e[0];
      if (other >= 0 && !seen[other]) {
        seen[other] = 1;
        ++count;
        stack.push_back(other);
      }
    }
  }
  return count == g.nv;
}

}  // namespace

std::vector<Graph> generate_diagrams(int n, bool connected_only) {
  require(n >= 0, Err::MalformedInput, "negative degree");
  require(n <= max_generation_degree(), Err::DegreeTooLarge,
          "degree " + std::to_string(n) + " above generation cap");
  if (n == 0) return {Graph{}};

  const int nv = 2 * n;
  std::set<Graph> found;
  std::vector<int> deg(nv, 0);
  std::vector<std::array<int, 2>> edges;

  // Fill vertices in order; vertex i distributes its remaining degree over
  // pairs (i, j), j > i. Row sums force trivalence everywhere.
  auto rec = [&](auto&& self, int i, int j, int need) -> void {
    if (need == 0) {
      if (i + 1 == nv - 1) {
        // Last vertex has no pairs left; its degree must already be 3.
        if (deg[nv - 1] != 3) return;
        Graph g;
        g.nv = nv;
        g.edges = edges;
        if (connected_only && !graph_connected(g)) return;
        found.insert(canonical_form(g));
        return;
      }
      self(self, i + 1, i + 2, 3 - deg[i + 1]);
      return;
    }
    if (j >= nv) return;
    int cap = std::min(need, 3 - deg[j]);
    // Feasibility: the remaining pairs must be able to absorb `need`.
    for (int take = cap; take >= 0; --take) {
      for (int k = 0; k < take; ++k) edges.push_back({i, j});
      deg[i] += take;
      deg[j] += take;
      self(self, i, j + 1, need - take);
      deg[i] -= take;
      deg[j] -= take;
      for (int k = 0; k < take; ++k) edges.pop_back();
    }
  };
  rec(rec, 0, 1, 3);

  return {found.begin(), found.end()};
}

}  // namespace zinv
