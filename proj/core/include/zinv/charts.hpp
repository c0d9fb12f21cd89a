#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "zinv/rng.hpp"
#include "zinv/trees.hpp"

namespace zinv {

using Vec3 = Eigen::Vector3d;

// A map V -> R^3, stored by position in the tree's V list.
using VMap = std::vector<Vec3>;

double vmap_norm(const VMap& w);                 // sqrt of the sum of squared entries
double vmap_dist(const VMap& a, const VMap& b);  // sup over entries of euclidean gap

// --- finite variant ---

// Chart-domain point: translation u, and per member A a scale mu_A >= 0 and a
// unit direction w_A supported on A, vanishing at b(A), constant on daughters.
struct ChartPoint {
  Vec3 u = Vec3::Zero();
  std::vector<double> mu;  // by member index
  std::vector<VMap> w;     // by member index
};

// Per-member coordinates in the psi(A; phi; b(A)) chart.
struct ConfigPoint {
  std::vector<Vec3> u;          // u_A
  std::vector<double> lambda;   // lambda_A >= 0
  std::vector<VMap> y;          // unit, y_A(b(A)) = 0, supported on A
};

// v_A = sum over members C inside A of (prod of mu_D over C <= D < A) w_C.
// DegenerateScale if some ||v_A|| vanishes.
std::vector<VMap> v_vectors(const ChartPoint& P, const NestedTree& t);

// The admissibility fences that stand in for the unspecified neighborhoods:
// every ||v_A|| >= 0.1 and every normalized v_A separates the children of A by
// >= 0.05. OutsideNeighborhood when violated (chart_xi enforces them).
inline constexpr double kMinVNorm = 0.1;
inline constexpr double kMinChildSep = 0.05;

ConfigPoint chart_xi(const ChartPoint& P, const NestedTree& t);
ChartPoint retraction_r(const ConfigPoint& Q, const NestedTree& t);

// The realized configuration map V -> R^3 of the top-level chart.
VMap realized_map(const ConfigPoint& Q, const NestedTree& t);

double chart_distance(const ChartPoint& a, const ChartPoint& b);

// --- infinity variant ---

// Specials carry (nu_i, s_i); degenerate members carry (mu_A, w_A). A member
// that is both (V(sigma) in tau_d) carries all four.
struct ChartPointInf {
  std::vector<double> nu;             // by chain position 1..sigma
  std::vector<VMap> s;                // by chain position; s_i supported on V(i)\V(i+1)
  std::map<int, double> mu;           // by member index, degenerate members
  std::map<int, VMap> w;              // by member index, degenerate members
};

struct ConfigPointInf {
  // Non-degenerate specials: psi(V(i); phi_inf) coordinates.
  std::vector<double> ell_special;    // by chain position
  std::vector<VMap> S;                // by chain position, unit over V(i)
  // Degenerate members: psi(A; phi_inf; b(A)) coordinates.
  std::map<int, double> ell;          // lambda-type scale
  std::map<int, Vec3> u;              // unit base direction
  std::map<int, double> m;            // inner scale
  std::map<int, VMap> v;              // unit, v_A(b(A)) = 0
};

ConfigPointInf chart_xi_infty(const ChartPointInf& P, const NestedTree& t);
ChartPointInf retraction_r_infty(const ConfigPointInf& Q, const NestedTree& t);

// a -> lambda_1 stilde_1(a): phi_inf of these values is the realized map into
// S^3, so equality of the vectors is the right collision test (0 = infinity).
VMap realized_map_infty(const ConfigPointInf& Q, const NestedTree& t);

double chart_distance_inf(const ChartPointInf& a, const ChartPointInf& b);

// --- sampling for property tests ---

struct FiniteSample {
  NestedTree tree;
  ChartPoint point;
};
struct InfinitySample {
  NestedTree tree;
  ChartPointInf point;
};

// Random admissible instances (tree + chart point passing the fences).
// allow_zero_scales mixes in exact zeros to exercise the collapsed strata.
FiniteSample sample_finite_instance(Rng& rng, int max_v, int max_depth,
                                    bool allow_zero_scales);
InfinitySample sample_infinity_instance(Rng& rng, int max_v, int max_sigma,
                                        bool allow_zero_scales);

}  // namespace zinv
