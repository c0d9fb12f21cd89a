#pragma once

#include <nlohmann/json.hpp>

#include "zinv/algebra.hpp"

namespace zinv {

// A series value together with the framing data it was computed against:
// z = the uncorrected series, p1 = the Pontryagin number of the trivialization.
// z_sphere flags integral-homology-sphere inputs, where p1 must lie in 4Z.
struct FramedSeries {
  AlgebraElement z;
  long long p1 = 0;
  bool z_sphere = false;
};

// Degree-0 term must be exactly 1*[empty]; p1 in 4Z when z_sphere.
void validate_framed(const FramedSeries& fs);

// The correction exponent series: odd degrees only, zero degree-0 term
// (BadXiParity otherwise).
void validate_xi(const AlgebraElement& xi);

// The known degree-1 value xi_1 = -1/12 [theta], as a series up to `bound`
// (even components and unknown higher odd components zero).
AlgebraElement xi_standard(int bound);

// fs.z * exp((p1/4) xi), truncated at fs.z's bound.
AlgebraElement framing_correct(const FramedSeries& fs, const AlgebraElement& xi);

nlohmann::json framed_to_json(const FramedSeries& fs);
FramedSeries framed_from_json(const nlohmann::json& j);

}  // namespace zinv
