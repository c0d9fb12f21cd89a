#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "zinv/diagram.hpp"
#include "zinv/labelled.hpp"

using namespace zinv;

TEST_CASE("degree 1 census by exhaustive orientation choice") {
  // At n = 1 the underlying graph is forced (theta), the vertex labels are
  // forced, and the three labelled edges each independently run 1->2 or 2->1.
  std::vector<Labelled> oracle;
  for (int o1 = 0; o1 < 2; ++o1)
    for (int o2 = 0; o2 < 2; ++o2)
      for (int o3 = 0; o3 < 2; ++o3) {
        Labelled g;
        g.n = 1;
        auto edge = [](int o) {
          return o ? std::array<int, 2>{2, 1} : std::array<int, 2>{1, 2};
        };
        g.edges = {edge(o1), edge(o2), edge(o3)};
        validate(g);
        oracle.push_back(g);
      }
  std::sort(oracle.begin(), oracle.end());

  auto en = enumerate_labelled(1);
  REQUIRE(en.size() == 8);
  CHECK(std::vector<Labelled>(en.begin(), en.end()) == oracle);
  CHECK(count_labelled(1) == 8);
  // Closed form by hand: 2^3 * 2! * 3! / 12 = 8.
  CHECK(count_labelled(1) == (8ull * 2 * 6) / 12);
}

TEST_CASE("census and closed form agree at degree 2") {
  auto en = enumerate_labelled(2);
  CHECK(en.size() == count_labelled(2));
  CHECK(en.size() == 115200);

  CHECK(std::is_sorted(en.begin(), en.end()));
  std::set<Labelled> dedup(en.begin(), en.end());
  CHECK(dedup.size() == en.size());
}

TEST_CASE("enumerated members validate and are connected") {
  for (const auto& g : enumerate_labelled(1)) {
    validate(g);
    CHECK(is_connected_labelled(g));
    CHECK(underlying(g) == theta_graph());
  }
}

TEST_CASE("enumeration cap") {
  try {
    enumerate_labelled(3);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::DegreeTooLarge);
  }
}

TEST_CASE("labelled to diagram round trip") {
  auto en2 = enumerate_labelled(2);
  for (size_t i = 0; i < en2.size(); i += 9600) {
    Diagram d = labelled_to_diagram(en2[i]);
    validate(d);
    Labelled back = diagram_to_labelled(d);
    CHECK(back == en2[i]);
  }
}

TEST_CASE("diagram without labels cannot convert") {
  Diagram d = from_graph(theta_graph());
  try {
    diagram_to_labelled(d);
    FAIL("expected a throw");
  } catch (const Error& e) {
    bool labels_or_orientation =
        e.code() == Err::MissingLabels || e.code() == Err::MissingOrientation;
    CHECK(labels_or_orientation);
  }
}

TEST_CASE("orientation sign responds to the right moves") {
  auto en2 = enumerate_labelled(2);
  for (size_t i = 0; i < en2.size(); i += 4800) {
    const Labelled& g = en2[i];
    VertexOrientationL vo = default_vertex_orientation(g);
    int s = orientation_sign(g, vo);
    REQUIRE((s == 1 || s == -1));

    // Rotating a triple is a cyclic (even) permutation: sign unchanged.
    for (size_t v = 0; v < vo.size(); ++v) {
      VertexOrientationL rot = vo;
      std::rotate(rot[v].begin(), rot[v].begin() + 1, rot[v].end());
      CHECK(orientation_sign(g, rot) == s);
    }

    // Swapping two half-edges inside a triple reverses the orientation.
    VertexOrientationL swp = vo;
    std::swap(swp[0][0], swp[0][1]);
    CHECK(orientation_sign(g, swp) == -s);
  }
}

TEST_CASE("orientation sign under exhaustive relabelings at degree 1") {
  // Edge relabelings move the two halves of each edge together (blocks of
  // two), an even permutation of H: the sign never changes. An odd vertex
  // relabeling swaps two 3-blocks of the vertex listing: the sign flips.
  for (const Labelled& g : enumerate_labelled(1)) {
    VertexOrientationL vo = default_vertex_orientation(g);
    int s = orientation_sign(g, vo);

    std::array<int, 3> perm{1, 2, 3};
    do {
      Labelled rel;
      rel.n = 1;
      rel.edges.resize(3);
      for (int k = 1; k <= 3; ++k) rel.edges[perm[k - 1] - 1] = g.edges[k - 1];
      VertexOrientationL rvo = vo;
      for (auto& triple : rvo)
        for (auto& h : triple) h.edge = perm[h.edge - 1];
      validate(rel);
      CHECK(orientation_sign(rel, rvo) == s);
    } while (std::next_permutation(perm.begin(), perm.end()));

    Labelled vswap;
    vswap.n = 1;
    for (const auto& e : g.edges) vswap.edges.push_back({3 - e[0], 3 - e[1]});
    VertexOrientationL svo{vo[1], vo[0]};
    validate(vswap);
    CHECK(orientation_sign(vswap, svo) == -s);
  }
}

TEST_CASE("labelled validation rejects malformed data") {
  SUBCASE("self-loop") {
    Labelled g;
    g.n = 1;
    g.edges = {{1, 1}, {1, 2}, {2, 2}};
    CHECK_THROWS_AS(validate(g), Error);
  }
  SUBCASE("disconnected") {
    Labelled g;
    g.n = 2;
    g.edges = {{1, 2}, {1, 2}, {1, 2}, {3, 4}, {3, 4}, {3, 4}};
    CHECK_FALSE(is_connected_labelled(g));
    try {
      validate(g);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::InvariantViolation);
    }
  }
  SUBCASE("wrong valence") {
    Labelled g;
    g.n = 2;
    g.edges = {{1, 2}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {3, 4}};
    // vertex 1 has 3 half-edges only if the count works out; here vertex 1
    // appears 3 times and vertex 2 appears 3 times, but make one slip:
    g.edges[0] = {1, 3};  // now vertex 2 appears twice, vertex 3 four times
    CHECK_THROWS_AS(validate(g), Error);
  }
}
