#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "zinv/quat.hpp"
#include "zinv/rng.hpp"

namespace zinv {

using Vec4 = Eigen::Vector4d;

struct DegreeEstimate {
  double estimate = 0;
  double stderr_ = 0;       // standard error of the Monte Carlo mean
  std::uint64_t samples = 0;
  std::uint64_t singular = 0;  // resampled rank-deficient points
};

// Monte Carlo degree of f: S^3 -> S^3: mean over uniform domain samples of the
// Jacobian determinant in positively oriented orthonormal frames (domain
// measure = target measure, so the mean itself estimates the degree).
DegreeEstimate map_degree_s3(const std::function<Vec4(const Vec4&)>& f,
                             std::uint64_t samples, std::uint64_t seed);

// Same for f: S^3 -> SO(3), with the target volume 8 pi^2 fixed by the
// bi-invariant metric <A,B> = tr(A^T B)/2 (the metric in which the standard
// covering has |Jacobian| = 8); orientation of SO(3) declared by the ordered
// frame (L1 R, L2 R, L3 R), L_i = left multiplication generators.
DegreeEstimate map_degree_so3(const std::function<Mat3(const Vec4&)>& f,
                              std::uint64_t samples, std::uint64_t seed);

inline constexpr double kFiniteDiffStep = 1e-6;
inline constexpr double kSingularJacobianTol = 1e-7;

Vec4 random_s3_point(Rng& rng);

}  // namespace zinv
