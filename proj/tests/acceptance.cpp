// Acceptance gate: the eleven criteria the build must meet, each printed as a
// single PASS/FAIL line with the measured values. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "zinv/algebra.hpp"
#include "zinv/charts.hpp"
#include "zinv/diagram.hpp"
#include "zinv/faces.hpp"
#include "zinv/framing.hpp"
#include "zinv/labelled.hpp"
#include "zinv/linking.hpp"
#include "zinv/map_degree.hpp"
#include "zinv/propagator.hpp"
#include "zinv/quat.hpp"
#include "zinv/rng.hpp"
#include "zinv/trees.hpp"

using namespace zinv;

namespace {

int g_failures = 0;

void run(int id, const char* name, const std::function<bool(std::string&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("ACCEPT %02d %-28s %s  %s  (%.2fs)\n", id, name,
              ok ? "PASS" : "FAIL", detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// --- dense rank over long long fractions, independent of the library ---

struct Frac {
  long long p = 0, q = 1;
};

long long gcd_ll(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

Frac make_frac(long long p, long long q) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  long long g = gcd_ll(p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (p == 0) q = 1;
  return {p, q};
}

Frac add_f(Frac a, Frac b) { return make_frac(a.p * b.q + b.p * a.q, a.q * b.q); }
Frac sub_f(Frac a, Frac b) { return make_frac(a.p * b.q - b.p * a.q, a.q * b.q); }
Frac mul_f(Frac a, Frac b) { return make_frac(a.p * b.p, a.q * b.q); }
Frac div_f(Frac a, Frac b) { return make_frac(a.p * b.q, a.q * b.p); }

int dense_rank(std::vector<std::vector<Frac>> m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c].p != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c].p == 0) continue;
      Frac f = div_f(m[r][c], m[rank][c]);
      for (int cc = c; cc < cols; ++cc)
        m[r][cc] = sub_f(m[r][cc], mul_f(f, m[rank][cc]));
    }
    ++rank;
  }
  return rank;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

int main() {
  // 1. The automorphism constant of theta.
  run(1, "aut-theta", [](std::string& d) {
    auto n = count_automorphisms(theta_graph());
    d = "aut = " + std::to_string(n);
    return n == 12;
  });

  // 2. Labelled census: enumeration against the closed form at n = 1, 2.
  run(2, "labelled-census", [](std::string& d) {
    auto e1 = enumerate_labelled(1).size();
    auto c1 = count_labelled(1);
    auto e2 = enumerate_labelled(2).size();
    auto c2 = count_labelled(2);
    d = "n=1: " + std::to_string(e1) + "/" + std::to_string(c1) +
        ", n=2: " + std::to_string(e2) + "/" + std::to_string(c2);
    return e1 == 8 && c1 == 8 && e2 == c2 && e2 == 115200;
  });

  // 3. Algebra soundness: relations die, reduce is idempotent, dimensions
  //    match an independently coded dense rank.
  run(3, "algebra-soundness", [](std::string& d) {
    bool ok = true;
    for (int n = 1; n <= 2; ++n) {
      const RelationSet& rs = relation_set(n);
      for (const auto& row : rs.rows) {
        AlgebraElement x = zero_element(2);
        for (const auto& [idx, c] : row.entries) {
          GenKey k{n, rs.gens[idx]};
          x.terms[k] += c;
          if (x.terms[k] == 0) x.terms.erase(k);
        }
        ok = ok && reduce(x).is_zero();
      }
    }
    Rng rng(20607);
    for (int t = 0; t < 1000; ++t) {
      AlgebraElement x = random_element(rng, 2);
      AlgebraElement rx = reduce(x);
      ok = ok && reduce(rx) == rx;
    }
    std::string dims;
    for (int n = 0; n <= 2; ++n) {
      const RelationSet& rs = relation_set(n);
      std::vector<std::vector<Frac>> m(rs.rows.size(),
                                       std::vector<Frac>(rs.gens.size()));
      for (size_t r = 0; r < rs.rows.size(); ++r)
        for (const auto& [idx, c] : rs.rows[r].entries) {
          long long p = numerator(c).convert_to<long long>();
          long long q = denominator(c).convert_to<long long>();
          m[r][idx] = add_f(m[r][idx], make_frac(p, q));
        }
      int indep = static_cast<int>(rs.gens.size()) - dense_rank(m);
      ok = ok && dim_A_n(n) == indep;
      dims += (n ? "," : "") + std::to_string(dim_A_n(n));
    }
    d = "dims = " + dims + " (want 1,1,2)";
    return ok && dim_A_n(0) == 1 && dim_A_n(1) == 1 && dim_A_n(2) == 2;
  });

  // 4. Cancellation sweep at n = 1 and n = 2: no gaps, only F(V) survives.
  run(4, "cancellation-sweep", [](std::string& d) {
    CancellationReport r1 = boundary_cancellation_check(1);
    CancellationReport r2 = boundary_cancellation_check(2);
    d = "n=1: " + std::to_string(r1.faces_total) + " faces, " +
        std::to_string(r1.gaps.size()) + " gaps; n=2: " +
        std::to_string(r2.faces_total) + " faces, " +
        std::to_string(r2.ihx_groups) + " IHX groups, " +
        std::to_string(r2.sigma_pairs) + " sigma pairs, " +
        std::to_string(r2.gaps.size()) + " gaps";
    std::vector<std::string> fv{"F(V)"};
    return r1.pass() && r2.pass() && r1.survivors == fv && r2.survivors == fv &&
           r1.faces_total == 32 && r2.faces_total == 2995200 &&
           r2.ihx_groups == 69120 && r2.sigma_pairs == 126720;
  });

  // 5. Chart round trips: finite and infinity variants.
  run(5, "chart-roundtrip", [](std::string& d) {
    Rng rng(515);
    double worst_f = 0, worst_i = 0;
    for (int i = 0; i < 100; ++i) {
      FiniteSample s = sample_finite_instance(rng, 5, 3, true);
      ConfigPoint q = chart_xi(s.point, s.tree);
      ChartPoint back = retraction_r(q, s.tree);
      worst_f = std::max(worst_f, chart_distance(s.point, back));
    }
    for (int i = 0; i < 50; ++i) {
      InfinitySample s = sample_infinity_instance(rng, 5, 2, true);
      ConfigPointInf q = chart_xi_infty(s.point, s.tree);
      ChartPointInf back = retraction_r_infty(q, s.tree);
      worst_i = std::max(worst_i, chart_distance_inf(s.point, back));
    }
    d = "max residual finite = " + fmt(worst_f) + ", infinity = " + fmt(worst_i);
    return worst_f < 1e-9 && worst_i < 1e-9;
  });

  // 6. Codimension law on random trees.
  run(6, "codimension-law", [](std::string& d) {
    Rng rng(616);
    bool ok = true;
    for (int t = 0; t < 500; ++t) {
      NestedTree tr = random_finite_tree(rng, 6, 3);
      ok = ok && validate_tree(tr).empty() &&
           codim(tr) == static_cast<int>(tr.members.size());
    }
    for (int t = 0; t < 500; ++t) {
      NestedTree tr = random_infinity_tree(rng, 6, 3);
      TreeLayout L = layout_tree(tr);
      int degenerate = 0;
      for (const auto& m : tr.members) degenerate += m.degenerate ? 1 : 0;
      ok = ok && validate_tree(tr).empty() &&
           codim(tr) == L.sigma() + degenerate;
    }
    d = "1000 trees";
    return ok;
  });

  // 7. Matrix identities: the resolved conjugator and the block form.
  run(7, "matrix-identities", [](std::string& d) {
    Rng rng(717);
    double worst_g3 = 0, worst_cmr = 0;
    for (int t = 0; t < 1000; ++t) {
      Quat q = random_unit_quat(rng);
      worst_g3 = std::max(worst_g3, g3_residual_conj_inverse(q));
      worst_cmr = std::max(worst_cmr, cmr_block_residual(q));
    }
    d = "g3 residual = " + fmt(worst_g3) + ", block residual = " + fmt(worst_cmr);
    return worst_g3 < 1e-12 && worst_cmr < 1e-12;
  });

  // 8. Degree of the covering, and of the covering precomposed with squaring.
  run(8, "mapping-degree", [](std::string& d) {
    auto est = map_degree_so3(
        [](const Vec4& p) {
          return rho({p[0], p[1], p[2], p[3]});
        },
        1000000, 7);
    auto est_sq = map_degree_so3(
        [](const Vec4& p) {
          Quat q{p[0], p[1], p[2], p[3]};
          return rho(qmul(q, q));
        },
        1000000, 11);
    d = "deg(rho) = " + fmt(est.estimate) + ", deg(rho o sq) = " +
        fmt(est_sq.estimate);
    return std::abs(std::abs(est.estimate) - 2.0) < 0.05 &&
           std::abs(est_sq.estimate - 2.0 * est.estimate) < 0.1;
  });

  // 9. Linking numbers: standard pair, split pair, doubled component, and the
  //    crossing oracle on random links.
  run(9, "linking", [](std::string& d) {
    auto [k1, k2] = hopf_pair();
    double hopf = gauss_linking(k1, k2, 256).estimate;

    Curve far = circle_curve(Vec3(10, 0, 0), Vec3(0, 0, 1), 1.0);
    double split = gauss_linking(k1, far, 256).estimate;

    Curve k2d = k2;
    k2d.turns = 2;
    double doubled = gauss_linking(k1, k2d, 256).estimate;

    Rng rng(919);
    int agree = 0;
    for (int t = 0; t < 20; ++t) {
      auto [c1, c2] = random_link(rng);
      LinkingResult r = gauss_linking(c1, c2, 256);
      long long oracle = crossing_number_oracle(c1, c2, rng);
      agree += r.integer == oracle ? 1 : 0;
    }
    d = "hopf = " + fmt(hopf) + ", split = " + fmt(split) + ", doubled = " +
        fmt(doubled) + ", oracle " + std::to_string(agree) + "/20";
    return std::abs(hopf - 1.0) < 0.02 && std::abs(split) < 0.02 &&
           std::abs(doubled - 2.0 * hopf) < 0.04 && agree == 20;
  });

  // 10. Propagator limits along geometric sequences, all three boundary types.
  run(10, "propagator-limits", [](std::string& d) {
    PropagatorLimitReport r = propagator_limit_check();
    d = "residuals: diag = " + fmt(r.diagonal_residual) + ", inf = " +
        fmt(r.infinity_residual) + ", double = " +
        fmt(r.double_infinity_residual);
    return r.pass && r.diagonal_residual < 1e-5 && r.infinity_residual < 1e-5 &&
           r.double_infinity_residual < 1e-5;
  });

  // 11. Framing and series laws: parity, the degree-1 shift, bar vs exp.
  run(11, "framing-series", [](std::string& d) {
    bool parity_enforced = false;
    try {
      AlgebraElement t = reduce(theta_element(2));
      validate_xi(add(xi_standard(2), product(t, t)));
    } catch (const Error& e) {
      parity_enforced = e.code() == Err::BadXiParity;
    }

    FramedSeries fs;
    fs.z = empty_diagram_element(2);
    fs.p1 = 4;
    fs.z_sphere = true;
    AlgebraElement corrected = framing_correct(fs, xi_standard(2));
    AlgebraElement want = reduce(scale(Rat(-1, 12), theta_element(2)));
    bool shift_ok = degree_part(corrected, 1).terms == want.terms;

    Rng rng(1111);
    bool bar_ok = true;
    for (int t = 0; t < 100; ++t) {
      AlgebraElement x = random_element(rng, 2);
      x = add(x, scale(Rat(-1), degree_part(x, 0)));
      bar_ok = bar_ok &&
               bar_involution(exp_truncated(x)) == exp_truncated(bar_involution(x));
    }
    d = std::string("parity ") + (parity_enforced ? "enforced" : "missed") +
        ", shift " + (shift_ok ? "exact" : "wrong") + ", bar/exp " +
        (bar_ok ? "commute" : "clash");
    return parity_enforced && shift_ok && bar_ok;
  });

  std::printf("ACCEPT -- %d of 11 criteria passed\n", 11 - g_failures);
  return g_failures;
}
