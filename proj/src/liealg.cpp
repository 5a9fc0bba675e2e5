#include "shadowsum/liealg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace shadowsum {

std::string AlgebraSpec::name() const {
  char letter = 'A';
  switch (family) {
    case Family::A: letter = 'A'; break;
    case Family::B: letter = 'B'; break;
    case Family::C: letter = 'C'; break;
    case Family::D: letter = 'D'; break;
    case Family::G: letter = 'G'; break;
  }
  return std::string(1, letter) + std::to_string(rank);
}

AlgebraSpec parse_algebra_spec(const std::string& text) {
  if (text.size() < 2) fail(Errc::UnsupportedAlgebra, "algebra spec too short: '" + text + "'");
  AlgebraSpec spec;
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'A': spec.family = Family::A; break;
    case 'B': spec.family = Family::B; break;
    case 'C': spec.family = Family::C; break;
    case 'D': spec.family = Family::D; break;
    case 'G': spec.family = Family::G; break;
    default: fail(Errc::UnsupportedAlgebra, "unknown family in '" + text + "'");
  }
  for (std::size_t i = 1; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      fail(Errc::UnsupportedAlgebra, "bad rank in '" + text + "'");
  spec.rank = std::stoi(text.substr(1));
  return spec;
}

namespace {

void check_admissible(const AlgebraSpec& spec) {
  const int r = spec.rank;
  bool ok = false;
  switch (spec.family) {
    case Family::A: ok = r >= 1; break;
    case Family::B: ok = r >= 2; break;
    case Family::C: ok = r >= 2; break;
    case Family::D: ok = r >= 4; break;
    case Family::G: ok = r == 2; break;
  }
  if (!ok) fail(Errc::UnsupportedAlgebra, "inadmissible family/rank: " + spec.name());
}

// Cartan matrix A with A[i][j] = (alpha_j, coroot_i) and the weights
// d_i = (alpha_i, alpha_i)/2 in the (theta,theta)=2 normalization.
void cartan_data(const AlgebraSpec& spec, std::vector<std::vector<Int>>& cartan,
                 std::vector<Rat>& d) {
  const int r = spec.rank;
  cartan.assign(r, std::vector<Int>(r, 0));
  for (int i = 0; i < r; ++i) cartan[i][i] = 2;
  d.assign(r, Rat(1));

  auto chain_link = [&](int i, int j) { cartan[i][j] = -1; cartan[j][i] = -1; };

  switch (spec.family) {
    case Family::A:
      for (int i = 0; i + 1 < r; ++i) chain_link(i, i + 1);
      break;
    case Family::B:
      // alpha_r short (Bourbaki); squared length 1.
      for (int i = 0; i + 2 < r; ++i) chain_link(i, i + 1);
      cartan[r - 2][r - 1] = -1;
      cartan[r - 1][r - 2] = -2;
      d[r - 1] = Rat(1, 2);
      break;
    case Family::C:
      // alpha_r long; the others short with squared length 1.
      for (int i = 0; i + 2 < r; ++i) chain_link(i, i + 1);
      cartan[r - 2][r - 1] = -2;
      cartan[r - 1][r - 2] = -1;
      for (int i = 0; i + 1 < r; ++i) d[i] = Rat(1, 2);
      break;
    case Family::D:
      for (int i = 0; i + 3 < r; ++i) chain_link(i, i + 1);
      chain_link(r - 3, r - 2);
      chain_link(r - 3, r - 1);
      break;
    case Family::G:
      // alpha_1 short (squared length 2/3), alpha_2 long.
      cartan[0][1] = -3;
      cartan[1][0] = -1;
      d[0] = Rat(1, 3);
      break;
  }
}

// Exact inverse by Gauss-Jordan over the rationals.
std::vector<Rat> invert(const std::vector<std::vector<Int>>& m, int r) {
  std::vector<std::vector<Rat>> a(r, std::vector<Rat>(2 * r, Rat(0)));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) a[i][j] = Rat(m[i][j]);
    a[i][r + i] = Rat(1);
  }
  for (int col = 0; col < r; ++col) {
    int pivot = -1;
    for (int row = col; row < r; ++row)
      if (a[row][col] != Rat(0)) { pivot = row; break; }
    if (pivot < 0) fail(Errc::UnsupportedAlgebra, "singular Cartan matrix");
    std::swap(a[col], a[pivot]);
    const Rat inv = Rat(1) / a[col][col];
    for (int j = 0; j < 2 * r; ++j) a[col][j] *= inv;
    for (int row = 0; row < r; ++row) {
      if (row == col || a[row][col] == Rat(0)) continue;
      const Rat f = a[row][col];
      for (int j = 0; j < 2 * r; ++j) a[row][j] -= f * a[col][j];
    }
  }
  std::vector<Rat> out(r * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i * r + j] = a[i][r + j];
  return out;
}

Rat rat_det(std::vector<Rat> a, int n) {
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (a[row * n + col] != Rat(0)) { pivot = row; break; }
    if (pivot < 0) return Rat(0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
      det = -det;
    }
    det *= a[col * n + col];
    const Rat inv = Rat(1) / a[col * n + col];
    for (int row = col + 1; row < n; ++row) {
      const Rat f = a[row * n + col] * inv;
      if (f == Rat(0)) continue;
      for (int j = col; j < n; ++j) a[row * n + j] -= f * a[col * n + j];
    }
  }
  return det;
}

}  // namespace

Rat bilinear(const RootSystem& rs, const Weight& x, const Weight& y) {
  if (static_cast<int>(x.size()) != rs.rank || static_cast<int>(y.size()) != rs.rank)
    fail(Errc::DimensionMismatch, "weight size does not match rank " + std::to_string(rs.rank));
  Rat acc(0);
  for (int i = 0; i < rs.rank; ++i) {
    if (x[i] == 0) continue;
    Rat row(0);
    for (int j = 0; j < rs.rank; ++j)
      if (y[j] != 0) row += rs.gram[i * rs.rank + j] * y[j];
    acc += row * x[i];
  }
  return acc;
}

Rat bilinear(const RootSystem& rs, const RatWeight& x, const RatWeight& y) {
  if (static_cast<int>(x.size()) != rs.rank || static_cast<int>(y.size()) != rs.rank)
    fail(Errc::DimensionMismatch, "weight size does not match rank " + std::to_string(rs.rank));
  Rat acc(0);
  for (int i = 0; i < rs.rank; ++i) {
    Rat row(0);
    for (int j = 0; j < rs.rank; ++j) row += rs.gram[i * rs.rank + j] * y[j];
    acc += row * x[i];
  }
  return acc;
}

Rat bilinear(const RootSystem& rs, const Weight& x, const RatWeight& y) {
  return bilinear(rs, to_rat(x), y);
}

Weight act(const RootSystem& rs, const WeylElement& w, const Weight& x) {
  const int r = rs.rank;
  Weight y(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) y[i] += w.matrix[i * r + j] * x[j];
  return y;
}

RatWeight simple_reflect(const RootSystem& rs, int i, const RatWeight& x) {
  // s_i(x) = x - (x, coroot_i) alpha_i; the pairing is just coordinate i.
  RatWeight y = x;
  const Rat c = x[i];
  for (int m = 0; m < rs.rank; ++m) y[m] -= c * rs.simple_roots[i][m];
  return y;
}

Weight dominant_representative(const RootSystem& rs, const Weight& x) {
  Weight y = x;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < rs.rank; ++i) {
      if (y[i] < 0) {
        const Int c = y[i];
        for (int m = 0; m < rs.rank; ++m) y[m] -= c * rs.simple_roots[i][m];
        changed = true;
      }
    }
  }
  return y;
}

Int classical_weyl_order(const AlgebraSpec& spec) {
  const int r = spec.rank;
  auto fact = [](int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (spec.family) {
    case Family::A: return fact(r + 1);
    case Family::B:
    case Family::C: return fact(r) << r;
    case Family::D: return fact(r) << (r - 1);
    case Family::G: return 12;
  }
  return 0;
}

RootSystem build_root_system(const AlgebraSpec& spec, Int weyl_cap) {
  check_admissible(spec);
  const Int order = classical_weyl_order(spec);
  if (order > weyl_cap)
    fail(Errc::WeylCapExceeded, spec.name() + " has Weyl order " + std::to_string(order) +
                                    " > cap " + std::to_string(weyl_cap));

  RootSystem rs;
  rs.spec = spec;
  rs.rank = spec.rank;
  const int r = rs.rank;

  std::vector<std::vector<Int>> cartan;
  std::vector<Rat> d;
  cartan_data(spec, cartan, d);

  // gram = diag(d) * cartan^{-1}: (w_m, w_n) = d_m (A^{-1})_{mn}.
  const std::vector<Rat> cartan_inv = invert(cartan, r);
  rs.gram.assign(r * r, Rat(0));
  for (int m = 0; m < r; ++m)
    for (int n = 0; n < r; ++n) rs.gram[m * r + n] = d[m] * cartan_inv[m * r + n];

  // alpha_j has Dynkin labels A_{mj}; coroot_j has labels A_{jm}/d_m.
  rs.simple_roots.assign(r, Weight(r, 0));
  rs.simple_coroots.assign(r, Weight(r, 0));
  for (int j = 0; j < r; ++j) {
    for (int m = 0; m < r; ++m) {
      rs.simple_roots[j][m] = cartan[m][j];
      const Rat q = Rat(cartan[j][m]) / d[m];
      if (!is_integer(q)) fail(Errc::UnsupportedAlgebra, "non-integral coroot coordinates");
      rs.simple_coroots[j][m] = q.numerator();
    }
  }

  rs.rho.assign(r, 1);

  // Weyl group: BFS closure of the simple reflection matrices.
  {
    std::vector<Int> id(r * r, 0);
    for (int i = 0; i < r; ++i) id[i * r + i] = 1;
    std::vector<std::vector<Int>> gens(r, std::vector<Int>(r * r, 0));
    for (int i = 0; i < r; ++i) {
      // (s_i x)_m = x_m - A_{mi} x_i
      for (int m = 0; m < r; ++m)
        for (int n = 0; n < r; ++n)
          gens[i][m * r + n] = (m == n ? 1 : 0) - (n == i ? cartan[m][i] : 0);
    }
    std::map<std::vector<Int>, int> seen;
    rs.weyl.push_back({id, 1, 0});
    seen.emplace(id, 0);
    for (std::size_t head = 0; head < rs.weyl.size(); ++head) {
      const WeylElement cur = rs.weyl[head];
      for (int i = 0; i < r; ++i) {
        std::vector<Int> prod(r * r, 0);
        for (int m = 0; m < r; ++m)
          for (int n = 0; n < r; ++n) {
            Int s = 0;
            for (int t = 0; t < r; ++t) s += gens[i][m * r + t] * cur.matrix[t * r + n];
            prod[m * r + n] = s;
          }
        if (seen.emplace(prod, static_cast<int>(rs.weyl.size())).second) {
          rs.weyl.push_back({prod, -cur.sign, cur.length + 1});
          if (static_cast<Int>(rs.weyl.size()) > weyl_cap)
            fail(Errc::WeylCapExceeded, "Weyl enumeration exceeded cap");
        }
      }
    }
  }

  // All roots arise as Weyl images of simple roots.
  {
    std::set<Weight> roots;
    for (const auto& w : rs.weyl)
      for (const auto& alpha : rs.simple_roots) roots.insert(act(rs, w, alpha));
    for (const auto& beta : roots)
      if (bilinear(rs, beta, rs.rho) > Rat(0)) rs.positive_roots.push_back(beta);
    if (2 * rs.positive_roots.size() != roots.size())
      fail(Errc::UnsupportedAlgebra, "positive-root split failed");
    rs.dim_g = r + static_cast<Int>(roots.size());
  }

  // rho must be half the sum of positive roots, exactly.
  {
    Weight twice(r, 0);
    for (const auto& beta : rs.positive_roots) twice = add(twice, beta);
    for (int i = 0; i < r; ++i)
      if (twice[i] != 2) fail(Errc::UnsupportedAlgebra, "rho is not the all-ones vector");
  }

  // theta: the dominant root of squared length 2.
  {
    bool found = false;
    for (const auto& beta : rs.positive_roots) {
      if (!is_dominant(beta)) continue;
      if (bilinear(rs, beta, beta) == Rat(2)) {
        if (found) fail(Errc::UnsupportedAlgebra, "highest root not unique");
        rs.theta = beta;
        found = true;
      }
    }
    if (!found) fail(Errc::UnsupportedAlgebra, "no dominant long root");
  }

  {
    const Rat cg = Rat(1) + bilinear(rs, rs.theta, rs.rho);
    if (!is_integer(cg)) fail(Errc::UnsupportedAlgebra, "non-integral dual Coxeter number");
    rs.dual_coxeter = cg.numerator();
  }

  // |Lambda / Lambda_coroot| = det of the coroot Gram matrix.
  {
    std::vector<Rat> cg(r * r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        cg[i * r + j] = bilinear(rs, rs.simple_coroots[i], rs.simple_coroots[j]);
    Rat det = rat_det(cg, r);
    if (det < Rat(0)) det = -det;
    if (!is_integer(det) || det == Rat(0))
      fail(Errc::UnsupportedAlgebra, "coroot Gram determinant not a positive integer");
    rs.lattice_index = det.numerator();
  }

  rs.posroot_pairing.reserve(rs.positive_roots.size());
  for (const auto& beta : rs.positive_roots) {
    RatWeight row(r, Rat(0));
    for (int m = 0; m < r; ++m)
      for (int i = 0; i < r; ++i) row[m] += Rat(beta[i]) * rs.gram[i * r + m];
    rs.posroot_pairing.push_back(std::move(row));
  }

  return rs;
}

Rat pair_posroot(const RootSystem& rs, int b, const RatWeight& x) {
  const RatWeight& row = rs.posroot_pairing[b];
  Rat acc(0);
  for (int m = 0; m < rs.rank; ++m) acc += row[m] * x[m];
  return acc;
}

Rat pair_posroot(const RootSystem& rs, int b, const Weight& x) {
  const RatWeight& row = rs.posroot_pairing[b];
  Rat acc(0);
  for (int m = 0; m < rs.rank; ++m)
    if (x[m] != 0) acc += row[m] * x[m];
  return acc;
}

}  // namespace shadowsum
