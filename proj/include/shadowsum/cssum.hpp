#pragma once

#include <complex>
#include <vector>

#include "shadowsum/shadowlink.hpp"

namespace shadowsum {

/// One summand state of the torus-gauge state sum: the exact rational
/// field value B(Y) on every face, determined by alpha_0 and one weight
/// alpha_j per loop through the shifted region indicators.
struct FaceField {
  Weight alpha0;
  std::vector<Weight> alphas;        // one per loop
  std::vector<RatWeight> values;     // per face: (alpha0 + sum alpha_j 1shift)/(k+c_G)
  std::vector<Weight> coloring;      // phi(Y) = (k+c_G) values[Y] - rho
  bool valid = false;                // all values off every affine wall
};

/// Builds the field; alpha0 must satisfy the open-alcove constraint
/// (equivalently alpha0 in rho + alcove) and each alpha_j must be a weight
/// of the corresponding loop color's representation.
FaceField face_field(const Shadow& sh, const ModularData& md, const Weight& alpha0,
                     const std::vector<Weight>& alphas);

/// Regularized determinant: product over faces and positive roots of
/// (2 sin(pi (beta, B(Y))))^{chi(Y)}, signed base.
double det_reg(const ModularData& md, const Shadow& sh, const FaceField& field);

/// Framing factor: product over loops of
/// exp(2 pi i wind_j (alpha_j, (B(Y+_j) + B(Y-_j))/2)).
std::complex<double> framing_phase(const Shadow& sh, const ModularData& md,
                                   const FaceField& field);

/// The torus-gauge Chern-Simons state sum: exhaustive sum over alpha_0 in
/// rho + alcove and alpha_j over the weight system of each loop color,
/// skipping fields that touch an affine wall.  Vertical loops contribute
/// character factors evaluated at the face value.
std::complex<double> cs_state_sum(const Shadow& sh, const ModularData& md);

struct CsConstants {
  double K = 0.0;   // product of 2 sin(pi (beta, rho)/(k+c_G))
  double C1 = 0.0;  // 1 / (K^{2-2g} |X_empty|)
};

CsConstants constants(const ModularData& md, int genus);

/// C1 * cs_state_sum; equals 1 for the empty link.
std::complex<double> wlo_cs(const Shadow& sh, const ModularData& md);

}  // namespace shadowsum
