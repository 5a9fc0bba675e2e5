#pragma once

#include <complex>
#include <map>
#include <utility>

#include "shadowsum/liealg.hpp"

namespace shadowsum {

/// Full weight system of an irreducible representation: every weight with
/// its multiplicity, expanded over the Weyl orbits.
struct WeightSystem {
  Weight highest;
  std::map<Weight, Int> mults;
  Int dimension = 0;  // sum of multiplicities
};

/// Freudenthal recursion over the dominant weights below lambda, then
/// Weyl-orbit expansion.
WeightSystem weight_multiplicities(const RootSystem& rs, const Weight& lambda);

/// Second Casimir value (lambda, lambda + 2 rho).
Rat casimir(const RootSystem& rs, const Weight& lambda);

/// (conjugate, rho-shifted conjugate): (-w0 lambda, mu with mu + rho the
/// conjugate of lambda + rho).  Both outputs are dominant.
std::pair<Weight, Weight> conjugates(const RootSystem& rs, const Weight& lambda);

/// Dimension by the Weyl product formula (exact).
Int weyl_dimension(const RootSystem& rs, const Weight& lambda);

/// Character value chi_lambda(exp(b)) = sum_mu m(mu) e^{2 pi i (mu, b)}.
std::complex<double> character_eval(const RootSystem& rs, const Weight& lambda,
                                    const RatWeight& b);
std::complex<double> character_eval(const RootSystem& rs, const WeightSystem& ws,
                                    const RatWeight& b);

/// Weyl-quotient route A(lambda+rho)(b) / A(rho)(b); throws DenominatorZero
/// when b lies on an affine wall.  Verification path only.
std::complex<double> character_eval_quotient(const RootSystem& rs, const Weight& lambda,
                                             const RatWeight& b);

}  // namespace shadowsum
