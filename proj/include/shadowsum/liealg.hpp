#pragma once

#include <string>
#include <vector>

#include "shadowsum/error.hpp"
#include "shadowsum/rational.hpp"

namespace shadowsum {

enum class Family { A, B, C, D, G };

struct AlgebraSpec {
  Family family = Family::A;
  int rank = 1;

  std::string name() const;
};

/// Parses "A1", "b2", "G2", ... (family letter + decimal rank, case-insensitive).
AlgebraSpec parse_algebra_spec(const std::string& text);

/// One Weyl-group element, stored as its action on Dynkin-label coordinates.
struct WeylElement {
  std::vector<Int> matrix;  // rank x rank, row-major
  int sign = 1;             // (-1)^length
  int length = 0;           // Coxeter length
};

constexpr Int kDefaultWeylCap = 10000;

/// Exact root-system data for a simple Lie algebra, normalized so long
/// roots have squared length 2.  All lattice arithmetic happens in
/// Dynkin-label coordinates; `gram` is the matrix of pairings (w_i, w_j)
/// of the fundamental weights, so the form is exactly rational.
struct RootSystem {
  AlgebraSpec spec;
  int rank = 0;
  std::vector<Rat> gram;             // rank x rank, row-major
  std::vector<Weight> simple_roots;  // alpha_i, Dynkin coordinates
  std::vector<Weight> simple_coroots;
  std::vector<Weight> positive_roots;
  Weight rho;    // all-ones vector; equals half the sum of positive roots
  Weight theta;  // highest (long) root
  Int dual_coxeter = 0;
  Int lattice_index = 0;  // |Lambda / Lambda_coroot|
  Int dim_g = 0;          // rank + number of roots
  std::vector<WeylElement> weyl;

  // pairing rows: (positive_roots[b], x) = sum_m posroot_pairing[b][m] x[m]
  std::vector<RatWeight> posroot_pairing;
};

Rat pair_posroot(const RootSystem& rs, int b, const RatWeight& x);
Rat pair_posroot(const RootSystem& rs, int b, const Weight& x);

RootSystem build_root_system(const AlgebraSpec& spec, Int weyl_cap = kDefaultWeylCap);

Rat bilinear(const RootSystem& rs, const Weight& x, const Weight& y);
Rat bilinear(const RootSystem& rs, const RatWeight& x, const RatWeight& y);
Rat bilinear(const RootSystem& rs, const Weight& x, const RatWeight& y);

Weight act(const RootSystem& rs, const WeylElement& w, const Weight& x);

/// Simple reflection s_i on exact rational coordinates.
RatWeight simple_reflect(const RootSystem& rs, int i, const RatWeight& x);

inline Int lattice_index(const RootSystem& rs) { return rs.lattice_index; }

inline bool is_dominant(const Weight& x) {
  for (Int c : x)
    if (c < 0) return false;
  return true;
}

/// Folds x into the dominant chamber with simple reflections.
Weight dominant_representative(const RootSystem& rs, const Weight& x);

/// Classical Weyl group order for the family (table value, for checks).
Int classical_weyl_order(const AlgebraSpec& spec);

}  // namespace shadowsum
