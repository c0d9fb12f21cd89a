#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "zinv/charts.hpp"
#include "zinv/rng.hpp"
#include "zinv/trees.hpp"

using namespace zinv;

namespace {

int position_of(const NestedTree& t, int label) {
  return static_cast<int>(std::find(t.V.begin(), t.V.end(), label) -
                          t.V.begin());
}

}  // namespace

TEST_CASE("finite round trip at machine precision") {
  Rng rng(101);
  double worst = 0;
  for (int i = 0; i < 40; ++i) {
    FiniteSample s = sample_finite_instance(rng, 5, 3, true);
    ConfigPoint q = chart_xi(s.point, s.tree);
    ChartPoint back = retraction_r(q, s.tree);
    worst = std::max(worst, chart_distance(s.point, back));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("infinity round trip at machine precision") {
  Rng rng(202);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    InfinitySample s = sample_infinity_instance(rng, 5, 2, true);
    ConfigPointInf q = chart_xi_infty(s.point, s.tree);
    ChartPointInf back = retraction_r_infty(q, s.tree);
    worst = std::max(worst, chart_distance_inf(s.point, back));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("xi after r is idempotent near the chart image") {
  Rng rng(303);
  double worst = 0;
  for (int i = 0; i < 25; ++i) {
    FiniteSample s = sample_finite_instance(rng, 5, 3, false);
    ConfigPoint q = chart_xi(s.point, s.tree);

    // Push the configuration coordinates off the exact image: r must land
    // back in the domain, after which r(xi(.)) fixes its output.
    ConfigPoint qp = q;
    for (auto& u : qp.u)
      for (int k = 0; k < 3; ++k) u[k] += rng.uniform(-1e-3, 1e-3);
    for (auto& lam : qp.lambda) lam *= 1.0 + rng.uniform(-1e-3, 1e-3);
    for (auto& ymap : qp.y)
      for (auto& v : ymap)
        for (int k = 0; k < 3; ++k) v[k] += rng.uniform(-1e-3, 1e-3);

    ChartPoint p1;
    try {
      p1 = retraction_r(qp, s.tree);
    } catch (const Error&) {
      continue;  // the perturbation may step over a fence; skip such draws
    }
    ConfigPoint q1 = chart_xi(p1, s.tree);
    ChartPoint p2 = retraction_r(q1, s.tree);
    worst = std::max(worst, chart_distance(p1, p2));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("infinity xi after r is idempotent near the chart image") {
  Rng rng(404);
  double worst = 0;
  for (int i = 0; i < 15; ++i) {
    InfinitySample s = sample_infinity_instance(rng, 5, 2, false);
    ConfigPointInf q = chart_xi_infty(s.point, s.tree);

    ConfigPointInf qp = q;
    for (auto& e : qp.ell_special) e *= 1.0 + rng.uniform(-1e-4, 1e-4);
    for (auto& smap : qp.S)
      for (auto& v : smap)
        for (int k = 0; k < 3; ++k) v[k] += rng.uniform(-1e-4, 1e-4);
    for (auto& [idx, vmap] : qp.v) {
      (void)idx;
      for (auto& v : vmap)
        for (int k = 0; k < 3; ++k) v[k] += rng.uniform(-1e-4, 1e-4);
    }

    ChartPointInf p1;
    try {
      p1 = retraction_r_infty(qp, s.tree);
    } catch (const Error&) {
      continue;
    }
    ConfigPointInf q1 = chart_xi_infty(p1, s.tree);
    ChartPointInf p2 = retraction_r_infty(q1, s.tree);
    worst = std::max(worst, chart_distance_inf(p1, p2));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("every member chart realizes the same configuration") {
  Rng rng(505);
  for (int i = 0; i < 20; ++i) {
    FiniteSample s = sample_finite_instance(rng, 5, 3, true);
    ConfigPoint q = chart_xi(s.point, s.tree);
    VMap realized = realized_map(q, s.tree);

    for (size_t a = 0; a < s.tree.members.size(); ++a) {
      const auto& mb = s.tree.members[a];
      for (int label : mb.set) {
        int pos = position_of(s.tree, label);
        Vec3 via_member = q.u[a] + q.lambda[a] * q.y[a][pos];
        CHECK((via_member - realized[pos]).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("directions seen from nested charts agree up to positive scale") {
  Rng rng(606);
  for (int i = 0; i < 20; ++i) {
    FiniteSample s = sample_finite_instance(rng, 5, 3, true);
    ConfigPoint q = chart_xi(s.point, s.tree);
    TreeLayout L = layout_tree(s.tree);

    for (size_t a = 0; a < s.tree.members.size(); ++a) {
      int parent = L.parent[a];
      if (parent < 0) continue;
      const auto& mb = s.tree.members[a];
      int bpos = position_of(s.tree, mb.b);

      // y_parent(x) - y_parent(b(A)) = c * y_A(x) with one c >= 0 for all x.
      double c = -1;
      for (int label : mb.set) {
        int pos = position_of(s.tree, label);
        Vec3 lhs = q.y[parent][pos] - q.y[parent][bpos];
        Vec3 rhs = q.y[a][pos];
        if (rhs.norm() < 1e-14) {
          CHECK(lhs.norm() < 1e-12);
          continue;
        }
        double ci = lhs.norm() / rhs.norm();
        CHECK((lhs - ci * rhs).norm() < 1e-10);
        if (c < 0)
          c = ci;
        else
          CHECK(std::abs(c - ci) < 1e-10 * (1 + c));
      }
    }
  }
}

TEST_CASE("fences and degeneracies are reported") {
  NestedTree t;
  t.V = {1, 2};
  t.variant = NestedTree::Variant::Finite;
  t.members = {{{1, 2}, 1, 2, false}};

  ChartPoint p;
  p.u = Vec3(0.3, -0.2, 0.1);
  p.mu = {0.7};
  p.w = {{Vec3::Zero(), Vec3(1, 0, 0)}};

  CHECK_NOTHROW(chart_xi(p, t));

  SUBCASE("vanishing direction vector") {
    p.w[0][1] = Vec3::Zero();
    try {
      chart_xi(p, t);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::DegenerateScale);
    }
  }

  SUBCASE("direction below the norm fence") {
    p.w[0][1] = Vec3(0.05, 0, 0);
    try {
      chart_xi(p, t);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::OutsideNeighborhood);
    }
  }

  SUBCASE("children too close after normalization") {
    NestedTree t3;
    t3.V = {1, 2, 3};
    t3.variant = NestedTree::Variant::Finite;
    t3.members = {{{1, 2, 3}, 1, 2, false}};
    ChartPoint p3;
    p3.mu = {0.5};
    p3.w = {{Vec3::Zero(), Vec3(1, 0, 0), Vec3(1, 0.001, 0)}};
    try {
      chart_xi(p3, t3);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::OutsideNeighborhood);
    }
  }
}

TEST_CASE("zero scales collapse children onto the basepoint image") {
  NestedTree t;
  t.V = {1, 2, 3, 4};
  t.variant = NestedTree::Variant::Finite;
  t.members = {
      {{1, 2, 3, 4}, 1, 3, false},
      {{1, 2}, 1, 2, false},
  };

  ChartPoint p;
  p.u = Vec3(0, 0, 0);
  p.mu = {1.0, 0.0};  // inner pair fully collapsed
  VMap w_root = {Vec3::Zero(), Vec3::Zero(), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  VMap w_in = {Vec3::Zero(), Vec3(1, 0, 0), Vec3::Zero(), Vec3::Zero()};
  double n = vmap_norm(w_root);
  for (auto& v : w_root) v /= n;
  p.w = {w_root, w_in};

  ConfigPoint q = chart_xi(p, t);
  VMap realized = realized_map(q, t);
  CHECK((realized[0] - realized[1]).norm() < 1e-15);  // collapsed pair
  CHECK((realized[0] - realized[2]).norm() > 0.1);

  ChartPoint back = retraction_r(q, t);
  CHECK(chart_distance(p, back) < 1e-12);
}

TEST_CASE("realized map is injective exactly when all scales are positive") {
  // Sampled nonzero scales sit above 0.05 and the fences keep child
  // separations above 0.05, so genuine distances stay far from the exact
  // coincidences a zero scale produces.
  Rng rng(808);
  int zeros_seen = 0, positives_seen = 0;
  for (int i = 0; i < 60; ++i) {
    FiniteSample s = sample_finite_instance(rng, 5, 3, true);
    bool has_zero = false;
    for (double m : s.point.mu) has_zero = has_zero || m == 0.0;

    VMap realized = realized_map(chart_xi(s.point, s.tree), s.tree);
    double min_dist = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < realized.size(); ++a)
      for (size_t b = a + 1; b < realized.size(); ++b)
        min_dist = std::min(min_dist, (realized[a] - realized[b]).norm());

    CHECK((min_dist < 1e-9) == has_zero);
    (has_zero ? zeros_seen : positives_seen)++;
  }
  CHECK(zeros_seen > 5);
  CHECK(positives_seen > 5);
}
