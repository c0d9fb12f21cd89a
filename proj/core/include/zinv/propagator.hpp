#pragma once

#include <Eigen/Dense>

#include "zinv/errors.hpp"

namespace zinv {

using Vec3 = Eigen::Vector3d;

// The direction map (x,y) -> (y-x)/||y-x|| and its smooth extension to the
// boundary strata of the compactified two-point configuration space of S^3 =
// R^3 cup {inf}:
//   - diagonal: the approach direction itself;
//   - inf x R^3: -x for the incoming direction x at infinity;
//   - R^3 x inf: +y for the direction y;
//   - both at infinity: (||x||^2 y - ||y||^2 x)/||...|| in the phi_inf chart.
Vec3 p_interior(const Vec3& x, const Vec3& y);        // CoincidentPoints if equal
Vec3 p_diagonal(const Vec3& u);                       // u must be nonzero
Vec3 p_infinity_left(const Vec3& xdir);               // direction of x at infinity
Vec3 p_infinity_right(const Vec3& ydir);              // direction of y at infinity
Vec3 p_double_infinity(const Vec3& x, const Vec3& y); // chart coords, x != y scale-wise

struct PropagatorLimitReport {
  double diagonal_residual = 0;     // max over the geometric sequence tail
  double infinity_residual = 0;
  double double_infinity_residual = 0;
  int sequence_points = 0;
  bool pass = false;                // all below tolerance
};

inline constexpr double kPropagatorLimitTol = 1e-5;

// Drive interior evaluations along 10-point geometric sequences approaching
// each boundary stratum and compare with the extension formulas.
PropagatorLimitReport propagator_limit_check();

}  // namespace zinv
