#include "zinv/labelled.hpp"

#include <algorithm>
#include <numeric>

namespace zinv {

void validate(const Labelled& g) {
  const int nv = 2 * g.n;
  require(static_cast<int>(g.edges.size()) == 3 * g.n, Err::InvariantViolation,
          "labelled diagram needs 3n edges");
  std::vector<int> deg(nv + 1, 0);
  for (const auto& e : g.edges) {
    require(e[0] >= 1 && e[0] <= nv && e[1] >= 1 && e[1] <= nv,
            Err::UnknownVertex, "labelled edge endpoint out of range");
    require(e[0] != e[1], Err::InvariantViolation, "self-loop");
    ++deg[e[0]];
    ++deg[e[1]];
  }
  for (int v = 1; v <= nv; ++v)
    require(deg[v] == 3, Err::InvariantViolation, "vertex not trivalent");
  require(is_connected_labelled(g), Err::InvariantViolation,
          "labelled diagram must be connected");
}

bool is_connected_labelled(const Labelled& g) {
  const int nv = 2 * g.n;
  if (nv == 0) return true;
  std::vector<char> seen(nv + 1, 0);
  std::vector<int> stack{1};
  seen[1] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges) {
      int other = e[0] == v ? e[1] : (e[1] == v ? e[0] : 0);
      if (other && !seen[other]) {
        seen[other] = 1;
        ++count;
        stack.push_back(other);
      }
    }
  }
  return count == nv;
}

std::vector<Labelled> enumerate_labelled(int n) {
  require(n >= 0, Err::MalformedInput, "negative degree");
  require(n <= 2, Err::DegreeTooLarge,
          "labelled enumeration capped at degree 2");
  if (n == 0) return {Labelled{0, {}}};

  const int nv = 2 * n;
  const int ne = 3 * n;
  std::vector<Labelled> out;
  Labelled g{n, std::vector<std::array<int, 2>>(ne)};
  std::vector<int> deg(nv + 1, 0);

  auto rec = [&](auto&& self, int slot) -> void {
    if (slot == ne) {
      // Degree sum is 6n with each deg <= 3, so all are exactly 3 here.
      if (is_connected_labelled(g)) out.push_back(g);
      return;
    }
    for (int a = 1; a <= nv; ++a) {
      if (deg[a] >= 3) continue;
      for (int b = 1; b <= nv; ++b) {
        if (b == a || deg[b] >= 3) continue;
        g.edges[slot] = {a, b};
        ++deg[a];
        ++deg[b];
        self(self, slot + 1);
        --deg[a];
        --deg[b];
      }
    }
  };
  rec(rec, 0);
  return out;
}

std::uint64_t count_labelled(int n) {
  require(n >= 0, Err::MalformedInput, "negative degree");
  if (n == 0) return 1;
  std::uint64_t factor = 1;  // 2^{3n} (2n)! (3n)!
  for (int k = 0; k < 3 * n; ++k) factor *= 2;
  for (int k = 2; k <= 2 * n; ++k) factor *= k;
  for (int k = 2; k <= 3 * n; ++k) factor *= k;
  std::uint64_t total = 0;
  for (const auto& g : generate_diagrams(n, true)) {
    std::uint64_t aut = count_automorphisms(g);
    require(factor % aut == 0, Err::InvariantViolation,
            "automorphism count does not divide the labelling count");
    total += factor / aut;
  }
  return total;
}

Graph underlying(const Labelled& g) {
  Graph out;
  out.nv = 2 * g.n;
  for (const auto& e : g.edges) out.edges.push_back({e[0] - 1, e[1] - 1});
  out.normalize();
  return out;
}

Diagram labelled_to_diagram(const Labelled& g) {
  Diagram d;
  const int nv = 2 * g.n;
  std::map<int, int> vlab, elab;
  for (int v = 1; v <= nv; ++v) {
    d.vertices.push_back(v);
    vlab[v] = v;
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    d.edges.push_back(g.edges[i]);
    elab[static_cast<int>(i)] = static_cast<int>(i) + 1;
  }
  d.edge_orientation = d.edges;  // stored pairs are already (origin, end)
  d.vertex_labels = vlab;
  d.edge_labels = elab;
  return d;
}

Labelled diagram_to_labelled(const Diagram& d) {
  validate(d);
  require(d.vertex_labels.has_value(), Err::MissingLabels, "vertex labels required");
  require(d.edge_labels.has_value(), Err::MissingLabels, "edge labels required");
  require(d.edge_orientation.has_value(), Err::MissingOrientation,
          "edge orientations required");
  Labelled g;
  g.n = d.degree();
  g.edges.assign(3 * g.n, {0, 0});
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    int lab = d.edge_labels->at(static_cast<int>(e));
    const auto& eo = (*d.edge_orientation)[e];
    g.edges[lab - 1] = {d.vertex_labels->at(eo[0]), d.vertex_labels->at(eo[1])};
  }
  validate(g);
  return g;
}

VertexOrientationL default_vertex_orientation(const Labelled& g) {
  const int nv = 2 * g.n;
  std::vector<std::vector<LHalf>> at(nv + 1);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    at[g.edges[i][0]].push_back({static_cast<int>(i) + 1, 0});
    at[g.edges[i][1]].push_back({static_cast<int>(i) + 1, 1});
  }
  VertexOrientationL vo(nv);
  for (int v = 1; v <= nv; ++v) {
    require(at[v].size() == 3, Err::InvariantViolation, "vertex not trivalent");
    std::sort(at[v].begin(), at[v].end());
    vo[v - 1] = {at[v][0], at[v][1], at[v][2]};
  }
  return vo;
}

int orientation_sign(const Labelled& g, const VertexOrientationL& vo) {
  const int nv = 2 * g.n;
  const int nh = 6 * g.n;
  require(static_cast<int>(vo.size()) == nv, Err::MissingOrientation,
          "vertex orientation must cover every vertex");

  // Build the vertex-ordered listing as a permutation of half-edge ids
  // 2*(edge-1)+end; the edge-ordered listing is the identity.
  std::vector<int> listing;
  listing.reserve(nh);
  std::vector<char> seen(nh, 0);
  for (int v = 1; v <= nv; ++v) {
    for (const auto& h : vo[v - 1]) {
      require(h.edge >= 1 && h.edge <= 3 * g.n && (h.end == 0 || h.end == 1),
              Err::MissingOrientation, "bad half-edge in vertex orientation");
      require(g.edges[h.edge - 1][h.end] == v, Err::MissingOrientation,
              "vertex orientation lists a half-edge not incident to its vertex");
      int id = 2 * (h.edge - 1) + h.end;
      require(!seen[id], Err::MissingOrientation, "half-edge repeated");
      seen[id] = 1;
      listing.push_back(id);
    }
  }

  // Parity by cycle count.
  std::vector<char> visited(nh, 0);
  int transpositions = 0;
  for (int i = 0; i < nh; ++i) {
    if (visited[i]) continue;
    int len = 0;
    int j = i;
    while (!visited[j]) {
      visited[j] = 1;
      j = listing[j];
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

}  // namespace zinv
