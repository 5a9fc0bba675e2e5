#include "shadowsum/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shadowsum/numeric.hpp"
#include "shadowsum/qracah.hpp"

namespace shadowsum {

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kSymmetryTol = 1e-12;
constexpr double kQdimTol = 1e-10;
constexpr double kFusionRoundGuard = 1e-6;
constexpr double kFusionEqTol = 1e-9;

}  // namespace

CMatrix CMatrix::mult(const CMatrix& other) const {
  CMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const std::complex<double> v = at(i, k);
      if (v == std::complex<double>{}) continue;
      for (int j = 0; j < n; ++j) out.at(i, j) += v * other.at(k, j);
    }
  return out;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - other.a[i]));
  return m;
}

CMatrix CMatrix::identity(int n) {
  CMatrix out(n);
  for (int i = 0; i < n; ++i) out.at(i, i) = 1.0;
  return out;
}

int ModularData::alcove_index(const Weight& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

std::vector<Weight> alcove_weights(const RootSystem& rs, int k) {
  if (k < 1) fail(Errc::InvalidLevel, "level must be >= 1");
  const int r = rs.rank;
  std::vector<Rat> comark(r);  // (w_i, theta)
  for (int i = 0; i < r; ++i) {
    Weight ei(r, 0);
    ei[i] = 1;
    comark[i] = bilinear(rs, ei, rs.theta);
  }
  std::vector<Weight> out;
  Weight cur(r, 0);
  auto rec = [&](auto&& self, int pos, const Rat& used) -> void {
    if (pos == r) {
      out.push_back(cur);
      return;
    }
    for (Int ci = 0;; ++ci) {
      const Rat next = used + comark[pos] * ci;
      if (next > Rat(k)) break;
      cur[pos] = ci;
      self(self, pos + 1, next);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, Rat(0));
  std::sort(out.begin(), out.end(), [](const Weight& a, const Weight& b) {
    Int sa = 0, sb = 0;
    for (Int x : a) sa += x;
    for (Int x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

namespace {

// sin(pi (lambda+rho, beta)/kc) / sin(pi (rho, beta)/kc) over positive roots
double qdim_sin_product(const RootSystem& rs, Int kc, const Weight& lambda) {
  const Weight x = add(lambda, rs.rho);
  double out = 1.0;
  for (const auto& beta : rs.positive_roots) {
    const double num = std::sin(std::numbers::pi * to_double(bilinear(rs, x, beta)) / double(kc));
    const double den =
        std::sin(std::numbers::pi * to_double(bilinear(rs, rs.rho, beta)) / double(kc));
    out *= num / den;
  }
  return out;
}

CMatrix build_s_matrix(const RootSystem& rs, Int kc, const std::vector<Weight>& alcove,
                       int sign) {
  const int n = static_cast<int>(alcove.size());
  const int r = rs.rank;
  const int npos = static_cast<int>(rs.positive_roots.size());

  // prefactor i^{|R+|} (k+c_G)^{-r/2} |Lambda/Lambda_coroot|^{-1/2}
  std::complex<double> pref = cpow_int(std::complex<double>{0.0, 1.0}, npos);
  pref *= std::pow(double(kc), -0.5 * r);
  pref *= std::pow(double(rs.lattice_index), -0.5);

  CMatrix s(n);
  std::vector<Weight> shifted(alcove.size());
  for (std::size_t i = 0; i < alcove.size(); ++i) shifted[i] = add(alcove[i], rs.rho);

  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      KahanSum sum;
      for (const auto& w : rs.weyl) {
        const Weight wb = act(rs, w, shifted[b]);
        const double phase = sign * 2.0 * std::numbers::pi *
                             to_double(bilinear(rs, shifted[a], wb)) / double(kc);
        sum.add(double(w.sign) * std::complex<double>{std::cos(phase), std::sin(phase)});
      }
      const std::complex<double> v = pref * sum.value();
      s.at(a, b) = v;
      s.at(b, a) = v;  // exact symmetry of the double Weyl sum
    }
  }
  return s;
}

}  // namespace

ModularData build_modular_data(RootSystem rs, int k) {
  if (k < 1) fail(Errc::InvalidLevel, "level must be >= 1");
  ModularData md;
  md.rs = std::move(rs);
  md.level = k;
  md.kc = k + md.rs.dual_coxeter;
  md.alcove = alcove_weights(md.rs, k);
  const int n = static_cast<int>(md.alcove.size());
  for (int i = 0; i < n; ++i) md.index_[md.alcove[i]] = i;

  md.central_charge = Rat(md.rs.dim_g * k, md.kc);
  const double c = to_double(md.central_charge);

  md.t = CMatrix(n);
  for (int i = 0; i < n; ++i) {
    const double arg = std::numbers::pi * (to_double(casimir(md.rs, md.alcove[i])) / double(md.kc) -
                                           c / 12.0);
    md.t.at(i, i) = std::complex<double>{std::cos(arg), std::sin(arg)};
  }

  md.c = CMatrix(n);
  for (int i = 0; i < n; ++i) {
    const Weight star = conjugates(md.rs, md.alcove[i]).second;
    const int j = md.alcove_index(star);
    if (j < 0) fail(Errc::ModularIdentityFailure, "conjugate weight left the alcove");
    md.c.at(i, j) = 1.0;
  }
  if (md.c.mult(md.c).max_abs_diff(CMatrix::identity(n)) != 0.0)
    fail(Errc::ModularIdentityFailure, "charge conjugation is not an involution");

  // The S-matrix exponent sign is a convention choice; exactly one variant
  // (or both, when -1 lies in the Weyl group with even |R+|) satisfies
  // S^2 = C and (ST)^3 = C.  Try the written +1 first, then -1.
  md.exponent_sign = 0;
  for (int sign : {+1, -1}) {
    CMatrix s = build_s_matrix(md.rs, md.kc, md.alcove, sign);
    const double dev_s2 = s.mult(s).max_abs_diff(md.c);
    const CMatrix st = s.mult(md.t);
    const double dev_st3 = st.mult(st).mult(st).max_abs_diff(md.c);
    if (dev_s2 < kIdentityTol && dev_st3 < kIdentityTol) {
      md.s = std::move(s);
      md.exponent_sign = sign;
      break;
    }
  }
  if (md.exponent_sign == 0)
    fail(Errc::ModularIdentityFailure,
         "neither exponent sign satisfies S^2 = C and (ST)^3 = C for " + md.rs.spec.name() +
             " level " + std::to_string(k));

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (std::abs(md.s.at(a, b) - md.s.at(b, a)) > kSymmetryTol)
        fail(Errc::ModularIdentityFailure, "S-matrix asymmetry beyond tolerance");

  for (int i = 0; i < n; ++i)
    if (std::abs(std::abs(md.t.at(i, i)) - 1.0) > kSymmetryTol)
      fail(Errc::ModularIdentityFailure, "T diagonal is not unimodular");

  // dim via S-ratio must match the sine product everywhere.
  for (int i = 0; i < n; ++i) {
    const double ratio = md.s.at(i, 0).real() / md.s.at(0, 0).real();
    const double prod = qdim_sin_product(md.rs, md.kc, md.alcove[i]);
    if (std::abs(ratio - prod) > kQdimTol * std::max(1.0, std::abs(prod)))
      fail(Errc::ModularIdentityFailure, "quantum dimension routes disagree");
  }

  return md;
}

ModularData build_modular_data(const AlgebraSpec& spec, int k, Int weyl_cap) {
  return build_modular_data(build_root_system(spec, weyl_cap), k);
}

double qdim(const ModularData& md, const Weight& lambda) {
  const int i = md.alcove_index(lambda);
  if (i < 0) fail(Errc::NotInAlcove, "qdim argument outside the level-" +
                                         std::to_string(md.level) + " alcove");
  return qdim_sin_product(md.rs, md.kc, lambda);
}

double signed_qdim(const ModularData& md, const Weight& mu) {
  const RootSystem& rs = md.rs;
  const Weight shifted = add(mu, rs.rho);
  for (const auto& beta : rs.positive_roots) {
    const Rat p = bilinear(rs, shifted, beta) / md.kc;
    if (is_integer(p)) fail(Errc::OnWall, "(mu + rho)/(k + c_G) lies on an affine wall");
  }
  RatWeight y = rat_scale(to_rat(shifted), Rat(1, md.kc));
  const FoldResult fr = fold_to_alcove(rs, y);
  if (fr.kind != FoldResult::Kind::Interior)
    fail(Errc::OnWall, "fold unexpectedly hit a wall");  // excluded by the exact check above
  RatWeight lam_r = rat_scale(fr.folded, Rat(md.kc));
  for (int i = 0; i < rs.rank; ++i) lam_r[i] -= 1;  // subtract rho
  if (!is_integral(lam_r)) fail(Errc::OnWall, "folded weight is not integral");
  const Weight lam = to_int_weight(lam_r);
  return double(fr.sign) * qdim(md, lam);
}

FusionValue verlinde_fusion3(const ModularData& md, const Weight& lambda, const Weight& mu,
                             const Weight& nu) {
  const int a = md.alcove_index(lambda);
  const int b = md.alcove_index(mu);
  const int c = md.alcove_index(nu);
  if (a < 0 || b < 0 || c < 0) fail(Errc::NotInAlcove, "fusion argument outside the alcove");
  const int n = static_cast<int>(md.alcove.size());
  KahanSum sum;
  for (int s = 0; s < n; ++s)
    sum.add(md.s.at(a, s) * md.s.at(b, s) * md.s.at(c, s) / md.s.at(0, s));
  const double raw = sum.value().real();
  // imaginary part is pure cancellation noise; the real part carries the value
  FusionValue out;
  out.raw = raw;
  out.rounded = static_cast<Int>(std::llround(raw));
  if (std::abs(raw - double(out.rounded)) > kFusionRoundGuard || out.rounded < 0)
    fail(Errc::NonIntegerFusion, "Verlinde sum is not close to a nonnegative integer");
  return out;
}

IdentityReport fusion_matrix_identity_check(const ModularData& md) {
  const int n = static_cast<int>(md.alcove.size());
  FusionCache cache(md);

  const CMatrix tst = md.t.mult(md.s).mult(md.t);
  const std::complex<double> norm = md.t.at(0, 0) * md.s.at(0, 0);

  IdentityReport rep;
  rep.tolerance = kFusionEqTol;
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      // N_{mu lambda}^{nu} with the exact Racah integers
      KahanSum lhs;
      const std::vector<Int>& tbl = cache.table(md.alcove[mu]);
      for (int lam = 0; lam < n; ++lam) {
        const Int nval = tbl[static_cast<std::size_t>(lam) * n + nu];
        if (nval == 0) continue;
        lhs.add(double(nval) * qdim(md, md.alcove[lam]) * md.t.at(lam, lam));
      }
      const std::complex<double> rhs = tst.at(mu, nu) / norm;
      rep.max_dev = std::max(rep.max_dev, std::abs(lhs.value() - rhs));
    }
  }
  rep.pass = rep.max_dev < rep.tolerance;
  return rep;
}

}  // namespace shadowsum
