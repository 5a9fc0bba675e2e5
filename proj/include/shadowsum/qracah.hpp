#pragma once

#include <map>
#include <vector>

#include "shadowsum/modular.hpp"

namespace shadowsum {

/// Result of folding a rational point into the closed fundamental alcove.
/// Interior carries the folded point and the sign of the affine Weyl
/// element used; Boundary means the input lay on some affine wall.
struct FoldResult {
  enum class Kind { Interior, Boundary };
  Kind kind = Kind::Boundary;
  RatWeight folded;
  int sign = 1;
};

/// Iterated reflection into the fundamental alcove, deterministic wall
/// order (simple walls by index, then the theta wall), exact arithmetic.
FoldResult fold_to_alcove(const RootSystem& rs, const RatWeight& y);

/// Quantum Racah formula N^beta_{gamma alpha} as an exact integer:
/// the infinite shifted-affine-Weyl sum reorganized as a finite sum over
/// the weight system of gamma, at most one group element per weight.
Int racah_fusion(const ModularData& md, const Weight& gamma, const Weight& alpha,
                 const Weight& beta);

struct FusionCompareReport {
  double max_abs_dev = 0.0;
  Int mismatches = 0;  // triples where the rounded Verlinde value differs
  Int triples = 0;
  bool pass = false;
};

/// Compares Verlinde and Racah values over the full alcove cube.
FusionCompareReport fusion_table_compare(const ModularData& md);

/// Lazily built per-color tables of Racah integers N^b_{gamma a},
/// stored row-major with a * n + b indexing over alcove positions.
class FusionCache {
 public:
  explicit FusionCache(const ModularData& md) : md_(md) {}

  const std::vector<Int>& table(const Weight& gamma);

 private:
  const ModularData& md_;
  std::map<Weight, std::vector<Int>> tables_;
};

}  // namespace shadowsum
