#include "zinv/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace zinv {

int Diagram::vertex_index(int id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == id) return static_cast<int>(i);
  fail(Err::UnknownVertex, "vertex id " + std::to_string(id) + " not in diagram");
}

namespace {

// The three incidences of vertex id, in (edge index, end) order.
std::vector<HalfEdgeRef> incidences_at(const Diagram& d, int id) {
  std::vector<HalfEdgeRef> out;
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    for (int end = 0; end < 2; ++end)
      if (d.edges[e][end] == id) out.push_back({id, static_cast<int>(e), end});
  return out;
}

}  // namespace

void validate(const Diagram& d) {
  const auto nv = d.vertices.size();
  const auto ne = d.edges.size();
  require(nv % 2 == 0, Err::InvariantViolation, "odd vertex count");
  require(ne * 2 == nv * 3, Err::InvariantViolation, "edge count is not 3n");
  std::set<int> ids(d.vertices.begin(), d.vertices.end());
  require(ids.size() == nv, Err::InvariantViolation, "duplicate vertex ids");

  std::map<int, int> deg;
  for (const auto& e : d.edges) {
    require(ids.count(e[0]) && ids.count(e[1]), Err::UnknownVertex,
            "edge endpoint not a vertex");
    require(e[0] != e[1], Err::InvariantViolation, "self-loop");
    ++deg[e[0]];
    ++deg[e[1]];
  }
  for (int id : d.vertices)
    require(deg[id] == 3, Err::InvariantViolation,
            "vertex " + std::to_string(id) + " is not trivalent");

  if (d.vertex_orientation) {
    const auto& vo = *d.vertex_orientation;
    require(vo.size() == nv, Err::MissingOrientation,
            "vertex_orientation size mismatch");
    for (std::size_t i = 0; i < nv; ++i) {
      auto inc = incidences_at(d, d.vertices[i]);
      std::array<HalfEdgeRef, 3> given = vo[i];
      std::sort(given.begin(), given.end());
      std::sort(inc.begin(), inc.end());
      require(std::equal(given.begin(), given.end(), inc.begin()),
              Err::MissingOrientation,
              "vertex_orientation at vertex " + std::to_string(d.vertices[i]) +
                  " is not a cyclic order of its incident half-edges");
    }
  }

  if (d.edge_orientation) {
    const auto& eo = *d.edge_orientation;
    require(eo.size() == ne, Err::MissingOrientation, "edge_orientation size mismatch");
    for (std::size_t e = 0; e < ne; ++e) {
      bool same = eo[e][0] == d.edges[e][0] && eo[e][1] == d.edges[e][1];
      bool flip = eo[e][0] == d.edges[e][1] && eo[e][1] == d.edges[e][0];
      require(same || flip, Err::MissingOrientation,
              "edge_orientation " + std::to_string(e) + " does not match the edge");
    }
  }

  if (d.vertex_labels) {
    const auto& vl = *d.vertex_labels;
    require(vl.size() == nv, Err::MissingLabels, "vertex_labels is not total");
    std::set<int> used;
    for (const auto& [id, lab] : vl) {
      require(ids.count(id), Err::UnknownVertex, "label on unknown vertex");
      require(lab >= 1 && lab <= static_cast<int>(nv), Err::MissingLabels,
              "vertex label out of range");
      used.insert(lab);
    }
    require(used.size() == nv, Err::MissingLabels, "vertex labels not a bijection");
  }

  if (d.edge_labels) {
    const auto& el = *d.edge_labels;
    require(el.size() == ne, Err::MissingLabels, "edge_labels is not total");
    std::set<int> used;
    for (const auto& [idx, lab] : el) {
      require(idx >= 0 && idx < static_cast<int>(ne), Err::MalformedInput,
              "edge label on unknown edge index");
      require(lab >= 1 && lab <= static_cast<int>(ne), Err::MissingLabels,
              "edge label out of range");
      used.insert(lab);
    }
    require(used.size() == ne, Err::MissingLabels, "edge labels not a bijection");
  }
}

namespace {

int get_int(const nlohmann::json& j, const char* what) {
  require(j.is_number_integer(), Err::MalformedInput,
          std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

Diagram parse_diagram(const nlohmann::json& j) {
  require(j.is_object(), Err::MalformedInput, "diagram must be a JSON object");
  require(j.contains("degree") && j.contains("vertices") && j.contains("edges"),
          Err::MalformedInput, "diagram needs degree, vertices, edges");

  Diagram d;
  int n = get_int(j.at("degree"), "degree");
  require(n >= 0, Err::MalformedInput, "negative degree");

  require(j.at("vertices").is_array(), Err::MalformedInput, "vertices must be an array");
  for (const auto& v : j.at("vertices")) d.vertices.push_back(get_int(v, "vertex id"));

  require(j.at("edges").is_array(), Err::MalformedInput, "edges must be an array");
  for (const auto& e : j.at("edges")) {
    require(e.is_array() && e.size() == 2, Err::MalformedInput,
            "edge must be a pair");
    d.edges.push_back({get_int(e[0], "edge endpoint"), get_int(e[1], "edge endpoint")});
  }

  require(static_cast<int>(d.vertices.size()) == 2 * n, Err::MalformedInput,
          "degree does not match vertex count");

  if (j.contains("vertex_orientation") && !j.at("vertex_orientation").is_null()) {
    const auto& vo = j.at("vertex_orientation");
    require(vo.is_array(), Err::MalformedInput, "vertex_orientation must be an array");
    std::vector<std::array<HalfEdgeRef, 3>> out;
    for (const auto& triple : vo) {
      require(triple.is_array() && triple.size() == 3, Err::MalformedInput,
              "vertex orientation entry must list 3 half-edges");
      std::array<HalfEdgeRef, 3> t;
      for (int k = 0; k < 3; ++k) {
        const auto& h = triple[k];
        require(h.is_array() && h.size() == 3, Err::MalformedInput,
                "half-edge must be [vertex, edge_index, end]");
        t[k] = {get_int(h[0], "half-edge vertex"), get_int(h[1], "half-edge edge"),
                get_int(h[2], "half-edge end")};
        require(t[k].end == 0 || t[k].end == 1, Err::MalformedInput,
                "half-edge end must be 0 or 1");
      }
      out.push_back(t);
    }
    d.vertex_orientation = std::move(out);
  }

  if (j.contains("edge_orientation") && !j.at("edge_orientation").is_null()) {
    const auto& eo = j.at("edge_orientation");
    require(eo.is_array(), Err::MalformedInput, "edge_orientation must be an array");
    std::vector<std::array<int, 2>> out;
    for (const auto& e : eo) {
      require(e.is_array() && e.size() == 2, Err::MalformedInput,
              "edge orientation entry must be a pair");
      out.push_back({get_int(e[0], "origin"), get_int(e[1], "end")});
    }
    d.edge_orientation = std::move(out);
  }

  auto parse_label_map = [](const nlohmann::json& m, const char* what) {
    require(m.is_object(), Err::MalformedInput, std::string(what) + " must be an object");
    std::map<int, int> out;
    for (auto it = m.begin(); it != m.end(); ++it) {
      int key = 0;
      try {
        key = std::stoi(it.key());
      } catch (const std::exception&) {
        fail(Err::MalformedInput, std::string(what) + " key must be an integer string");
      }
      out[key] = get_int(it.value(), what);
    }
    return out;
  };
  if (j.contains("vertex_labels") && !j.at("vertex_labels").is_null())
    d.vertex_labels = parse_label_map(j.at("vertex_labels"), "vertex_labels");
  if (j.contains("edge_labels") && !j.at("edge_labels").is_null())
    d.edge_labels = parse_label_map(j.at("edge_labels"), "edge_labels");

  validate(d);
  return d;
}

nlohmann::json diagram_to_json(const Diagram& d) {
  nlohmann::json j;
  j["degree"] = d.degree();
  j["vertices"] = d.vertices;
  auto edges = nlohmann::json::array();
  for (const auto& e : d.edges) edges.push_back({e[0], e[1]});
  j["edges"] = edges;
  if (d.vertex_orientation) {
    auto vo = nlohmann::json::array();
    for (const auto& t : *d.vertex_orientation) {
      auto triple = nlohmann::json::array();
      for (const auto& h : t) triple.push_back({h.vertex, h.edge, h.end});
      vo.push_back(triple);
    }
    j["vertex_orientation"] = vo;
  }
  if (d.edge_orientation) {
    auto eo = nlohmann::json::array();
    for (const auto& e : *d.edge_orientation) eo.push_back({e[0], e[1]});
    j["edge_orientation"] = eo;
  }
  auto dump_label_map = [](const std::map<int, int>& m) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, v] : m) out[std::to_string(k)] = v;
    return out;
  };
  if (d.vertex_labels) j["vertex_labels"] = dump_label_map(*d.vertex_labels);
  if (d.edge_labels) j["edge_labels"] = dump_label_map(*d.edge_labels);
  return j;
}

void Graph::normalize() {
  for (auto& e : edges)
    if (e[0] > e[1]) std::swap(e[0], e[1]);
  std::sort(edges.begin(), edges.end());
}

Graph to_graph(const Diagram& d) {
  Graph g;
  g.nv = static_cast<int>(d.vertices.size());
  std::map<int, int> pos;
  for (std::size_t i = 0; i < d.vertices.size(); ++i)
    pos[d.vertices[i]] = static_cast<int>(i);
  for (const auto& e : d.edges) g.edges.push_back({pos.at(e[0]), pos.at(e[1])});
  g.normalize();
  return g;
}

Diagram from_graph(const Graph& g) {
  Diagram d;
  for (int i = 0; i < g.nv; ++i) d.vertices.push_back(i + 1);
  for (const auto& e : g.edges) d.edges.push_back({e[0] + 1, e[1] + 1});
  return d;
}

Graph theta_graph() {
  Graph g;
  g.nv = 2;
  g.edges = {{0, 1}, {0, 1}, {0, 1}};
  return g;
}

Graph k4_graph() {
  Graph g;
  g.nv = 4;
  g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return g;
}

Graph ladder_graph() {
  // Two double edges {0,1},{2,3} joined by the single edges {0,2},{1,3}.
  Graph g;
  g.nv = 4;
  g.edges = {{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}};
  return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g;
  g.nv = a.nv + b.nv;
  g.edges = a.edges;
  for (const auto& e : b.edges) g.edges.push_back({e[0] + a.nv, e[1] + a.nv});
  g.normalize();
  return g;
}

int max_generation_degree() {
  if (const char* s = std::getenv("ZINV_MAX_DEGREE")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  return 4;
}

}  // namespace zinv
