#pragma once

#include <complex>

#include <Eigen/Dense>

#include "zinv/errors.hpp"

namespace zinv {

using Mat3 = Eigen::Matrix3d;
using Mat4c = Eigen::Matrix4cd;
using Mat2c = Eigen::Matrix2cd;

// q = x0 + x1 i + x2 j + x3 k. In complex form q = z3 + z4 j with
// z3 = x0 + I x1, z4 = x2 + I x3 (so j*a = conj(a)*j).
struct Quat {
  double x0 = 1, x1 = 0, x2 = 0, x3 = 0;

  std::complex<double> z3() const { return {x0, x1}; }
  std::complex<double> z4() const { return {x2, x3}; }
  double norm() const;
};

Quat qmul(const Quat& a, const Quat& b);
Quat qconj(const Quat& a);
Quat random_unit_quat(class Rng& rng);

inline constexpr double kUnitTol = 1e-12;
void require_unit(const Quat& q);  // NonUnit beyond kUnitTol

// Conjugation action x -> q x q^{-1} on the pure quaternions span(i,j,k),
// assembled column by column from quaternion products.
Mat3 rho(const Quat& q);

// The closed-form matrix in basis (i, j, k) as a function of (z3, z4).
Mat3 rho_closed_form(const Quat& q);

// The gluing rotation g3(z3 + z4 j), closed form.
Mat3 g3(const Quat& q);

// P13: the rotation sending (e1,e2,e3) -> (-e3, e2, e1) used by the
// conjugation identity.
Mat3 p13_matrix();

// Residuals of the two candidate conjugation identities (the source lemma and
// its proof print different conjugators); the numeric run decides which holds.
double g3_residual_conj_inverse(const Quat& q);  // g3 - P13 rho^{-1} P13^{-1}
double g3_residual_conj_plain(const Quat& q);    // g3 - P13 rho^{-1} P13

// Sphere action in stereographic coordinates: (z, h) with h != -1 maps under
// g3(q) to the displayed (z', h').
void g3_stereo_action(const Quat& q, const std::complex<double>& z, double h,
                      std::complex<double>& z_out, double& h_out);

// Stereographic parametrization used by that check:
// (z1 : z2) -> (2 z1 conj(z2), |z2|^2 - |z1|^2)/(|z1|^2+|z2|^2), embedded as
// (Re, Im, h) in S^2.
Eigen::Vector3d stereo_point(const std::complex<double>& z, double h);

// Right multiplication x -> x q on H = C^2 (coordinates (w1, w2) of
// w1 + w2 j): the 2x2 complex matrix [z3, -conj(z4); z4, conj(z3)].
Mat2c m_r_complex(const Quat& q);

// Max entrywise residual of the block decomposition of the complexified right
// multiplication in the hermitian basis
// (1 - I i, j - I k, 1 + I i, j + I k)/sqrt(2):
// blockdiag(m_r_complex(q), conj-block).
double cmr_block_residual(const Quat& q);

}  // namespace zinv
