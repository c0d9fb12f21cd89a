#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "zinv/diagram.hpp"
#include "zinv/rng.hpp"

using namespace zinv;

namespace {

// Second opinion on the automorphism count: try every (vertex bijection, edge
// bijection) pair and test incidence preservation directly. Exponential, fine
// for the named examples.
std::uint64_t brute_force_aut(const Graph& g) {
  const int nv = g.nv;
  const int ne = static_cast<int>(g.edges.size());
  std::vector<int> vp(nv), ep(ne);
  std::iota(vp.begin(), vp.end(), 0);
  std::uint64_t count = 0;
  do {
    std::iota(ep.begin(), ep.end(), 0);
    do {
      bool ok = true;
      for (int e = 0; e < ne && ok; ++e) {
        int a = vp[g.edges[e][0]], b = vp[g.edges[e][1]];
        if (a > b) std::swap(a, b);
        ok = g.edges[ep[e]][0] == a && g.edges[ep[e]][1] == b;
      }
      count += ok ? 1 : 0;
    } while (std::next_permutation(ep.begin(), ep.end()));
  } while (std::next_permutation(vp.begin(), vp.end()));
  return count;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  Graph out;
  out.nv = g.nv;
  for (auto [a, b] : g.edges)
    out.edges.push_back({perm[a], perm[b]});
  out.normalize();
  return out;
}

bool is_trivalent_no_loops(const Graph& g) {
  std::vector<int> deg(g.nv, 0);
  for (auto [a, b] : g.edges) {
    if (a == b) return false;
    ++deg[a];
    ++deg[b];
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; });
}

}  // namespace

TEST_CASE("named example automorphism counts, against brute force") {
  Graph th = theta_graph();
  Graph k4 = k4_graph();
  Graph la = ladder_graph();

  CHECK(count_automorphisms(th) == 12);
  CHECK(count_automorphisms(k4) == 24);
  CHECK(count_automorphisms(la) == 16);

  CHECK(brute_force_aut(th) == 12);
  CHECK(brute_force_aut(k4) == 24);
  CHECK(brute_force_aut(la) == 16);

  Graph two_thetas = disjoint_union(th, th);
  CHECK(count_automorphisms(two_thetas) == 288);  // 12 * 12 * 2
  CHECK(brute_force_aut(two_thetas) == 288);
}

TEST_CASE("generation at small degree") {
  auto c1 = generate_diagrams(1, true);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == canonical_form(theta_graph()));

  auto c2 = generate_diagrams(2, true);
  CHECK(c2.size() == 2);
  auto a2 = generate_diagrams(2, false);
  CHECK(a2.size() == 3);

  auto has = [](const std::vector<Graph>& v, const Graph& g) {
    return std::find(v.begin(), v.end(), canonical_form(g)) != v.end();
  };
  CHECK(has(c2, k4_graph()));
  CHECK(has(c2, ladder_graph()));
  CHECK(has(a2, disjoint_union(theta_graph(), theta_graph())));
  CHECK_FALSE(has(c2, disjoint_union(theta_graph(), theta_graph())));
}

TEST_CASE("generated diagrams are valid, distinct and sorted") {
  for (int n = 1; n <= 3; ++n) {
    auto all = generate_diagrams(n, false);
    std::set<Graph> seen;
    for (const auto& g : all) {
      CHECK(g.nv == 2 * n);
      CHECK(g.edges.size() == static_cast<size_t>(3 * n));
      CHECK(is_trivalent_no_loops(g));
      CHECK(canonical_form(g) == g);  // stored canonically
      CHECK(seen.insert(g).second);   // no duplicates
    }
    CHECK(std::is_sorted(all.begin(), all.end()));
  }
}

TEST_CASE("canonical form is relabeling invariant") {
  Rng rng(417);
  for (const Graph& g : {theta_graph(), k4_graph(), ladder_graph()}) {
    std::vector<int> perm(g.nv);
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 20; ++trial) {
      for (int i = g.nv - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(i + 1)]);
      Graph h = relabel(g, perm);
      CHECK(canonical_form(h) == canonical_form(g));
      CHECK(is_isomorphic(g, h));
      CHECK(count_automorphisms(h) == count_automorphisms(g));
    }
  }
  CHECK_FALSE(is_isomorphic(k4_graph(), ladder_graph()));
}

TEST_CASE("degree cap on generation") {
  CHECK(max_generation_degree() >= 2);
  CHECK_THROWS_AS(generate_diagrams(max_generation_degree() + 1, true), Error);
  try {
    generate_diagrams(max_generation_degree() + 1, true);
  } catch (const Error& e) {
    CHECK(e.code() == Err::DegreeTooLarge);
  }
}

TEST_CASE("diagram JSON round trip") {
  Diagram d = from_graph(k4_graph());
  validate(d);
  nlohmann::json j = diagram_to_json(d);
  Diagram back = parse_diagram(j);
  CHECK(to_graph(back) == to_graph(d));
  CHECK(diagram_to_json(back) == j);
}

TEST_CASE("parse errors carry the documented codes") {
  nlohmann::json good = diagram_to_json(from_graph(theta_graph()));

  SUBCASE("self-loop") {
    nlohmann::json j = good;
    j["edges"][0] = {j["vertices"][0], j["vertices"][0]};
    try {
      parse_diagram(j);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::InvariantViolation);
    }
  }

  SUBCASE("non-trivalent vertex") {
    nlohmann::json j = good;
    j["edges"].erase(2);  // drop one of theta's three edges
    try {
      parse_diagram(j);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::InvariantViolation);
    }
  }

  SUBCASE("missing keys") {
    nlohmann::json j = good;
    j.erase("edges");
    try {
      parse_diagram(j);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::MalformedInput);
    }
  }

  SUBCASE("unknown vertex id lookup") {
    Diagram d = from_graph(theta_graph());
    CHECK_THROWS_AS(d.vertex_index(99), Error);
  }
}
