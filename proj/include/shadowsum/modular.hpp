#pragma once

#include <complex>
#include <map>
#include <vector>

#include "shadowsum/repchar.hpp"

namespace shadowsum {

struct CMatrix {
  int n = 0;
  std::vector<std::complex<double>> a;

  CMatrix() = default;
  explicit CMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}

  std::complex<double>& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const std::complex<double>& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * n + j];
  }

  CMatrix mult(const CMatrix& other) const;
  double max_abs_diff(const CMatrix& other) const;
  static CMatrix identity(int n);
};

/// Level-k modular data: the alcove, the S/T/C matrices, and the data
/// needed to evaluate quantum dimensions and fusion coefficients.
struct ModularData {
  RootSystem rs;
  int level = 0;
  Int kc = 0;  // level + dual Coxeter number
  std::vector<Weight> alcove;
  CMatrix s, t, c;
  Rat central_charge;     // dim(g) k / (k + c_G)
  int exponent_sign = 0;  // sign of the exponent in the S-matrix sum

  int alcove_index(const Weight& w) const;  // -1 when absent

 private:
  friend ModularData build_modular_data(RootSystem rs, int k);
  std::map<Weight, int> index_;
};

/// Dominant weights with (lambda, theta) <= k in graded lexicographic
/// order (weight 0 first).
std::vector<Weight> alcove_weights(const RootSystem& rs, int k);

ModularData build_modular_data(RootSystem rs, int k);
ModularData build_modular_data(const AlgebraSpec& spec, int k, Int weyl_cap = kDefaultWeylCap);

/// Quantum dimension S_{lambda 0}/S_{00}; always checked (at construction)
/// against the sine product.
double qdim(const ModularData& md, const Weight& lambda);

/// Quantum dimension extended off the alcove by the signed sine product:
/// equals sgn(tau) qdim(lambda) for the unique tau in the shifted affine
/// Weyl group folding mu onto alcove weight lambda.  Throws OnWall if
/// (mu + rho)/(k + c_G) lies on an affine wall.
double signed_qdim(const ModularData& md, const Weight& mu);

struct FusionValue {
  double raw = 0.0;
  Int rounded = 0;
};

/// Verlinde sum N_{lambda mu nu} = sum_sigma S S S / S_{0 sigma}.
FusionValue verlinde_fusion3(const ModularData& md, const Weight& lambda, const Weight& mu,
                             const Weight& nu);

struct IdentityReport {
  double max_dev = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Checks sum_lambda dim(lambda) T_{ll} N_{mu lambda}^nu = (TST)_{mu nu}/(T00 S00)
/// over all (mu, nu); passes when the max deviation is below 1e-9.
IdentityReport fusion_matrix_identity_check(const ModularData& md);

}  // namespace shadowsum
