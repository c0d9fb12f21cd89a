#include "zinv/algebra.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace zinv {

OrientedGraph default_oriented(const Graph& g) {
  OrientedGraph out;
  out.nv = g.nv;
  out.edges = g.edges;
  std::vector<std::vector<int>> at(g.nv);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    at[g.edges[e][0]].push_back(2 * static_cast<int>(e));
    at[g.edges[e][1]].push_back(2 * static_cast<int>(e) + 1);
  }
  out.cyc.resize(g.nv);
  for (int v = 0; v < g.nv; ++v) {
    require(at[v].size() == 3, Err::InvariantViolation, "vertex not trivalent");
    std::sort(at[v].begin(), at[v].end());
    out.cyc[v] = {at[v][0], at[v][1], at[v][2]};
  }
  return out;
}

OrientedGraph flip_vertex(const OrientedGraph& g, int v) {
  OrientedGraph out = g;
  std::swap(out.cyc[v][1], out.cyc[v][2]);
  return out;
}

OrientedKey oriented_key(const OrientedGraph& g) {
  const int nv = g.nv;
  const int ne = static_cast<int>(g.edges.size());

  // slot of each half code inside its vertex triple
  std::vector<int> slot(2 * ne, -1), vert(2 * ne, -1);
  for (int v = 0; v < nv; ++v)
    for (int s = 0; s < 3; ++s) {
      slot[g.cyc[v][s]] = s;
      vert[g.cyc[v][s]] = v;
    }

  OrientedKey best;
  bool have = false;
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);  // original -> new position
  std::vector<int> rot(nv, 0);

  do {
    // all rotation vectors in base 3
    std::fill(rot.begin(), rot.end(), 0);
    while (true) {
      OrientedKey enc;
      enc.reserve(ne);
      for (int e = 0; e < ne; ++e) {
        int h0 = 2 * e, h1 = 2 * e + 1;
        int a = 3 * perm[vert[h0]] + (slot[h0] + rot[vert[h0]]) % 3;
        int b = 3 * perm[vert[h1]] + (slot[h1] + rot[vert[h1]]) % 3;
        enc.emplace_back(std::min(a, b), std::max(a, b));
      }
      std::sort(enc.begin(), enc.end());
      if (!have || enc < best) {
        best = std::move(enc);
        have = true;
      }
      int i = 0;
      for (; i < nv; ++i) {
        if (++rot[i] < 3) break;
        rot[i] = 0;
      }
      if (i == nv) break;
      if (nv == 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!have) return {};
  return best;
}

std::string key_to_string(const OrientedKey& k) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) os << ",";
    os << k[i].first << "-" << k[i].second;
  }
  os << "]";
  return os.str();
}

int algebra_degree_cap() {
  if (const char* s = std::getenv("ZINV_MAX_DEGREE")) {
    int v = std::atoi(s);
    if (v >= 1) return std::min(v, 3);
  }
  return 2;
}

namespace {

struct DegreeContext {
  RelationSet rs;
  std::vector<std::vector<Rat>> echelon;  // reduced row echelon over gens
  std::vector<int> pivots;                // pivot column of each echelon row
  int dim = 0;

  int gen_index(const OrientedKey& k) const {
    auto it = std::lower_bound(rs.gens.begin(), rs.gens.end(), k);
    if (it == rs.gens.end() || *it != k) return -1;
    return static_cast<int>(it - rs.gens.begin());
  }
};

DegreeContext build_context(int n) {
  DegreeContext ctx;
  ctx.rs.n = n;

  // Generators: every orientation assignment of every degree-n diagram
  // (disconnected included), up to oriented isomorphism.
  std::vector<std::pair<OrientedKey, OrientedGraph>> found;
  for (const Graph& g : generate_diagrams(n, false)) {
    OrientedGraph base = default_oriented(g);
    const int nv = g.nv;
    for (int mask = 0; mask < (1 << nv); ++mask) {
      OrientedGraph d = base;
      for (int v = 0; v < nv; ++v)
        if (mask & (1 << v)) d = flip_vertex(d, v);
      OrientedKey k = oriented_key(d);
      bool known = false;
      for (const auto& [k2, rep] : found)
        if (k2 == k) {
          known = true;
          break;
        }
      if (!known) found.emplace_back(std::move(k), std::move(d));
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, rep] : found) {
    ctx.rs.gens.push_back(k);
    ctx.rs.reps.push_back(rep);
  }

  // Relation rows. Entries are kept unmerged: AS rows always have 2 entries,
  // IHX rows 3, even when classes coincide.
  std::set<std::vector<std::pair<int, int>>> seen_rows;  // (kind, sorted indices)
  auto add_row = [&](RelationRow::Kind kind, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    std::vector<std::pair<int, int>> sig;
    sig.emplace_back(kind == RelationRow::Kind::AS ? 0 : 1, -1);
    for (int i : idx) sig.emplace_back(i, 0);
    if (!seen_rows.insert(sig).second) return;
    RelationRow row;
    row.kind = kind;
    for (int i : idx) row.entries.emplace_back(i, Rat(1));
    ctx.rs.rows.push_back(std::move(row));
  };

  const int G = static_cast<int>(ctx.rs.gens.size());
  for (int gi = 0; gi < G; ++gi) {
    const OrientedGraph& R = ctx.rs.reps[gi];

    for (int v = 0; v < R.nv; ++v) {
      int j = ctx.gen_index(oriented_key(flip_vertex(R, v)));
      require(j >= 0, Err::InvariantViolation, "flip left the generator set");
      add_row(RelationRow::Kind::AS, {gi, j});
    }

    const int ne = static_cast<int>(R.edges.size());
    auto far_of = [&R](int half) { return R.edges[half / 2][1 - half % 2]; };
    auto vert_of = [&R](int half) { return R.edges[half / 2][half % 2]; };
    for (int e = 0; e < ne; ++e) {
      for (int dir = 0; dir < 2; ++dir) {
        int hu = 2 * e + dir, hv = 2 * e + (1 - dir);
        int u = vert_of(hu), v = vert_of(hv);
        // legs (a,b) at u and (c,d) at v, with the connecting halves last
        auto legs = [&R](int vtx, int h) {
          int i = 0;
          while (R.cyc[vtx][i] != h) ++i;
          return std::array<int, 2>{R.cyc[vtx][(i + 1) % 3],
                                    R.cyc[vtx][(i + 2) % 3]};
        };
        auto [a, b] = legs(u, hu);
        auto [c, d] = legs(v, hv);
        // A reattachment that would close a loop voids the whole row.
        if (far_of(b) == v || far_of(c) == u || far_of(d) == u) continue;

        auto reattach = [&](int to_v, int to_u, std::array<int, 3> cu,
                            std::array<int, 3> cv) {
          OrientedGraph g2 = R;
          g2.edges[to_v / 2][to_v % 2] = v;
          g2.edges[to_u / 2][to_u % 2] = u;
          g2.cyc[u] = cu;
          g2.cyc[v] = cv;
          return g2;
        };
        OrientedGraph g_ac = reattach(b, c, {a, c, hu}, {d, b, hv});
        OrientedGraph g_ad = reattach(b, d, {a, d, hu}, {b, c, hv});
        int i_ac = ctx.gen_index(oriented_key(g_ac));
        int i_ad = ctx.gen_index(oriented_key(g_ad));
        require(i_ac >= 0 && i_ad >= 0, Err::InvariantViolation,
                "reattachment left the generator set");
        add_row(RelationRow::Kind::IHX, {gi, i_ac, i_ad});
      }
    }
  }

  // Reduced row echelon form of the merged rows.
  std::vector<std::vector<Rat>> rows;
  for (const auto& row : ctx.rs.rows) {
    std::vector<Rat> dense(G, Rat(0));
    for (const auto& [i, c] : row.entries) dense[i] += c;
    rows.push_back(std::move(dense));
  }
  std::size_t next = 0;
  for (int col = 0; col < G && next < rows.size(); ++col) {
    std::size_t pivot = next;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[next], rows[pivot]);
    Rat lead = rows[next][col];
    for (auto& x : rows[next]) x /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || rows[r][col] == 0) continue;
      Rat f = rows[r][col];
      for (int j = col; j < G; ++j) rows[r][j] -= f * rows[next][j];
    }
    ctx.pivots.push_back(col);
    ++next;
  }
  rows.resize(next);
  ctx.echelon = std::move(rows);
  ctx.dim = G - static_cast<int>(ctx.echelon.size());
  return ctx;
}

const DegreeContext& context(int n) {
  require(n >= 0, Err::MalformedInput, "negative degree");
  require(n <= algebra_degree_cap(), Err::DegreeTooLarge,
          "algebra operations capped at degree " +
              std::to_string(algebra_degree_cap()));
  static std::mutex mu;
  static std::map<int, std::unique_ptr<DegreeContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::make_unique<DegreeContext>(build_context(n))).first;
  return *it->second;
}

}  // namespace

const RelationSet& relation_set(int n) { return context(n).rs; }

int dim_A_n(int n) { return context(n).dim; }

AlgebraElement zero_element(int bound) { return AlgebraElement{bound, {}}; }

AlgebraElement empty_diagram_element(int bound) {
  AlgebraElement x{bound, {}};
  x.terms[{0, {}}] = Rat(1);
  return x;
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out{std::min(a.bound, b.bound), a.terms};
  for (const auto& [k, c] : b.terms) {
    auto it = out.terms.find(k);
    if (it == out.terms.end()) {
      out.terms[k] = c;
    } else {
      it->second += c;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  std::erase_if(out.terms,
                [&](const auto& kv) { return kv.first.first > out.bound; });
  return out;
}

AlgebraElement scale(const Rat& c, const AlgebraElement& a) {
  AlgebraElement out{a.bound, {}};
  if (c == 0) return out;
  for (const auto& [k, v] : a.terms) out.terms[k] = c * v;
  return out;
}

AlgebraElement reduce(const AlgebraElement& x) {
  AlgebraElement out{x.bound, {}};
  // Group by degree, then subtract echelon rows to clear pivot coordinates.
  std::map<int, std::map<OrientedKey, Rat>> by_degree;
  for (const auto& [k, c] : x.terms) {
    if (k.first > x.bound) continue;
    by_degree[k.first][k.second] = c;
  }
  for (auto& [n, terms] : by_degree) {
    const DegreeContext& ctx = context(n);
    const int G = static_cast<int>(ctx.rs.gens.size());
    std::vector<Rat> vec(G, Rat(0));
    for (const auto& [key, c] : terms) {
      int i = ctx.gen_index(key);
      require(i >= 0, Err::InvariantViolation,
              "term is not a canonical degree-" + std::to_string(n) + " class");
      vec[i] += c;
    }
    for (std::size_t r = 0; r < ctx.echelon.size(); ++r) {
      Rat f = vec[ctx.pivots[r]];
      if (f == 0) continue;
      for (int j = ctx.pivots[r]; j < G; ++j) vec[j] -= f * ctx.echelon[r][j];
    }
    for (int i = 0; i < G; ++i)
      if (vec[i] != 0) out.terms[{n, ctx.rs.gens[i]}] = vec[i];
  }
  return out;
}

namespace {

// Canonical class of a concrete oriented diagram with vertices 1..2n:
// pass to 0-based, take the key.
OrientedKey key_of_oriented(const OrientedGraph& g) { return oriented_key(g); }

// Memo for class_of_labelled: the canonical key of the default orientation of
// a sorted edge multiset (0-based endpoints).
std::map<std::vector<std::array<int, 2>>, OrientedKey> g_class_memo;
std::mutex g_class_memo_mu;

}  // namespace

AlgebraElement class_of_labelled(const Labelled& g) {
  validate(g);
  const int n = g.n;
  const int ne = 3 * n;

  // Normalized edge order: unordered pairs sorted, provenance retained.
  struct Prov {
    std::array<int, 2> pair;  // sorted, 0-based
    int orig;                 // edge index in g
  };
  std::vector<Prov> prov(ne);
  for (int e = 0; e < ne; ++e) {
    int a = g.edges[e][0] - 1, b = g.edges[e][1] - 1;
    prov[e] = {{std::min(a, b), std::max(a, b)}, e};
  }
  std::sort(prov.begin(), prov.end(), [](const Prov& x, const Prov& y) {
    return std::tie(x.pair, x.orig) < std::tie(y.pair, y.orig);
  });

  std::vector<std::array<int, 2>> norm_edges(ne);
  for (int k = 0; k < ne; ++k) norm_edges[k] = prov[k].pair;

  OrientedKey key;
  {
    std::lock_guard<std::mutex> lock(g_class_memo_mu);
    auto it = g_class_memo.find(norm_edges);
    if (it != g_class_memo.end()) {
      key = it->second;
    } else {
      Graph ng;
      ng.nv = 2 * n;
      ng.edges = norm_edges;
      key = key_of_oriented(default_oriented(ng));
      g_class_memo.emplace(norm_edges, key);
    }
  }

  // The same cyclic orders, expressed through g's own half-edges: normalized
  // half (k, end) is the half of edge prov[k].orig at vertex pair[end]+1.
  const int nv = 2 * n;
  std::vector<std::vector<LHalf>> at(nv + 1);
  for (int k = 0; k < ne; ++k)
    for (int end = 0; end < 2; ++end) {
      int v = prov[k].pair[end] + 1;
      int e = prov[k].orig;
      int role = g.edges[e][0] == v ? 0 : 1;
      at[v].push_back({e + 1, role});
    }
  VertexOrientationL vo(nv);
  for (int v = 1; v <= nv; ++v) vo[v - 1] = {at[v][0], at[v][1], at[v][2]};

  int sign = orientation_sign(g, vo);

  AlgebraElement x{std::max(2, n), {}};
  x.terms[{n, key}] = Rat(sign);
  return reduce(x);
}

AlgebraElement theta_element(int bound) {
  AlgebraElement x{bound, {}};
  if (bound < 1) return x;
  x.terms[{1, oriented_key(default_oriented(theta_graph()))}] = Rat(1);
  return reduce(x);
}

AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out{std::min(a.bound, b.bound), {}};
  for (const auto& [ka, ca] : a.terms) {
    const OrientedGraph& ra = context(ka.first).rs.reps[context(ka.first).gen_index(ka.second)];
    for (const auto& [kb, cb] : b.terms) {
      int n = ka.first + kb.first;
      if (n > out.bound) continue;
      const DegreeContext& cb_ctx = context(kb.first);
      const OrientedGraph& rb = cb_ctx.rs.reps[cb_ctx.gen_index(kb.second)];
      OrientedGraph u;
      u.nv = ra.nv + rb.nv;
      u.edges = ra.edges;
      u.cyc = ra.cyc;
      const int shift_e = static_cast<int>(ra.edges.size());
      for (const auto& e : rb.edges) u.edges.push_back({e[0] + ra.nv, e[1] + ra.nv});
      for (const auto& t : rb.cyc)
        u.cyc.push_back({t[0] + 2 * shift_e, t[1] + 2 * shift_e, t[2] + 2 * shift_e});
      GenKey k{n, oriented_key(u)};
      auto it = out.terms.find(k);
      Rat add_c = ca * cb;
      if (it == out.terms.end()) {
        if (add_c != 0) out.terms[k] = add_c;
      } else {
        it->second += add_c;
        if (it->second == 0) out.terms.erase(it);
      }
    }
  }
  return reduce(out);
}

AlgebraElement exp_truncated(const AlgebraElement& x) {
  for (const auto& [k, c] : x.terms)
    require(k.first != 0 || c == 0, Err::NonzeroConstantTerm,
            "exp needs a zero degree-0 term");
  AlgebraElement result = empty_diagram_element(x.bound);
  AlgebraElement term = empty_diagram_element(x.bound);
  for (int k = 1; k <= x.bound; ++k) {
    term = scale(Rat(1, k), product(term, x));
    if (term.is_zero()) break;
    result = add(result, term);
  }
  return reduce(result);
}

AlgebraElement bar_involution(const AlgebraElement& x) {
  AlgebraElement out{x.bound, {}};
  for (const auto& [k, c] : x.terms)
    out.terms[k] = (k.first % 2 == 0) ? c : -c;
  return out;
}

AlgebraElement degree_part(const AlgebraElement& x, int n) {
  AlgebraElement out{x.bound, {}};
  for (const auto& [k, c] : x.terms)
    if (k.first == n) out.terms[k] = c;
  return out;
}

AlgebraElement random_element(Rng& rng, int bound) {
  AlgebraElement out{bound, {}};
  int maxdeg = std::min(bound, algebra_degree_cap());
  for (int n = 0; n <= maxdeg; ++n) {
    const RelationSet& rs = relation_set(n);
    if (rs.gens.empty()) continue;
    int picks = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < picks; ++k) {
      int gi = static_cast<int>(rng.below(rs.gens.size()));
      Rat c(static_cast<long>(rng.below(19)) - 9,
            static_cast<long>(rng.below(9)) + 1);
      if (c == 0) continue;
      GenKey key{n, rs.gens[gi]};
      out.terms[key] += c;
      if (out.terms[key] == 0) out.terms.erase(key);
    }
  }
  return out;
}

Diagram generator_diagram(const GenKey& k) {
  const DegreeContext& ctx = context(k.first);
  int gi = ctx.gen_index(k.second);
  require(gi >= 0, Err::InvariantViolation, "unknown generator key");
  const OrientedGraph& rep = ctx.rs.reps[gi];
  Diagram d;
  for (int v = 0; v < rep.nv; ++v) d.vertices.push_back(v + 1);
  for (const auto& e : rep.edges) d.edges.push_back({e[0] + 1, e[1] + 1});
  std::vector<std::array<HalfEdgeRef, 3>> vo;
  for (int v = 0; v < rep.nv; ++v) {
    std::array<HalfEdgeRef, 3> t;
    for (int s = 0; s < 3; ++s) {
      int h = rep.cyc[v][s];
      t[s] = {v + 1, h / 2, h % 2};
    }
    vo.push_back(t);
  }
  if (rep.nv > 0) d.vertex_orientation = vo;
  return d;
}

nlohmann::json element_to_json(const AlgebraElement& x) {
  nlohmann::json j;
  j["bound"] = x.bound;
  auto terms = nlohmann::json::array();
  for (const auto& [k, c] : x.terms) {
    nlohmann::json t;
    t["diagram"] = diagram_to_json(generator_diagram(k));
    t["coeff"] = rat_to_string(c);
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

AlgebraElement element_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("bound") && j.contains("terms"),
          Err::MalformedInput, "element needs bound and terms");
  AlgebraElement x{j.at("bound").get<int>(), {}};
  require(x.bound >= 0, Err::MalformedInput, "negative bound");
  for (const auto& t : j.at("terms")) {
    require(t.is_object() && t.contains("diagram") && t.contains("coeff"),
            Err::MalformedInput, "term needs diagram and coeff");
    Diagram d = parse_diagram(t.at("diagram"));
    require(d.vertex_orientation.has_value() || d.vertices.empty(),
            Err::MissingOrientation, "algebra terms need vertex_orientation");
    OrientedGraph og;
    og.nv = static_cast<int>(d.vertices.size());
    std::map<int, int> pos;
    for (int i = 0; i < og.nv; ++i) pos[d.vertices[i]] = i;
    for (const auto& e : d.edges) og.edges.push_back({pos.at(e[0]), pos.at(e[1])});
    og.cyc.resize(og.nv);
    for (int i = 0; i < og.nv; ++i) {
      const auto& triple = (*d.vertex_orientation)[i];
      for (int s = 0; s < 3; ++s)
        og.cyc[i][s] = 2 * triple[s].edge + triple[s].end;
    }
    int n = d.degree();
    if (n > x.bound) continue;
    Rat c = rat_from_string(t.at("coeff").get<std::string>());
    GenKey key{n, oriented_key(og)};
    x.terms[key] += c;
    if (x.terms[key] == 0) x.terms.erase(key);
  }
  return x;
}

}  // namespace zinv
