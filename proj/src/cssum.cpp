#include "shadowsum/cssum.hpp"

#include <cmath>
#include <numbers>

#include "shadowsum/numeric.hpp"
#include "shadowsum/parallel.hpp"

namespace shadowsum {

namespace {

// 1shift_{R+_j}(Y) = 1_{R+_j}(Y) - 1_{R+_j}(base) in {-1, 0, +1}.
Int shift_indicator(const Shadow& sh, int face, int loop) {
  const Int here = sh.side[face][loop] > 0 ? 1 : 0;
  const Int base = sh.side[sh.base_face][loop] > 0 ? 1 : 0;
  return here - base;
}

bool alpha0_admissible(const ModularData& md, const Weight& alpha0) {
  // alpha0/(k+c_G) in the open alcove; equivalently alpha0 in rho + alcove.
  for (Int c : alpha0)
    if (c < 1) return false;
  return bilinear(md.rs, alpha0, md.rs.theta) < Rat(md.kc);
}

// Field construction without precondition checks; callers guarantee an
// admissible alpha0 and per-loop weights.
FaceField build_field(const Shadow& sh, const ModularData& md, const Weight& alpha0,
                      const std::vector<Weight>& alphas) {
  const RootSystem& rs = md.rs;
  FaceField field;
  field.alpha0 = alpha0;
  field.alphas = alphas;

  const int fcount = sh.face_count();
  const int r = rs.rank;
  const int npos = static_cast<int>(rs.positive_roots.size());
  field.values.assign(fcount, RatWeight(r, Rat(0)));
  field.coloring.assign(fcount, Weight(r, 0));
  field.valid = true;

  for (int f = 0; f < fcount; ++f) {
    Weight num = alpha0;  // alpha0 + sum_j alpha_j 1shift_{R+_j}(f)
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      const Int s = shift_indicator(sh, f, static_cast<int>(j));
      if (s != 0)
        for (int m = 0; m < r; ++m) num[m] += s * alphas[j][m];
    }
    for (int m = 0; m < r; ++m) {
      field.values[f][m] = Rat(num[m], md.kc);
      field.coloring[f][m] = num[m] - 1;  // (k+c_G) B - rho
    }
    if (field.valid) {
      for (int b = 0; b < npos; ++b) {
        const Rat p = pair_posroot(rs, b, num);  // (beta, B) = p/(k+c_G)
        if ((p / md.kc).denominator() == 1) {
          field.valid = false;
          break;
        }
      }
    }
  }
  return field;
}

}  // namespace

FaceField face_field(const Shadow& sh, const ModularData& md, const Weight& alpha0,
                     const std::vector<Weight>& alphas) {
  if (!alpha0_admissible(md, alpha0))
    fail(Errc::BadAlpha0, "alpha0 must lie in rho + alcove (open-alcove constraint)");
  if (alphas.size() != sh.loops.size())
    fail(Errc::DimensionMismatch, "one alpha per loop required");
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const WeightSystem ws = weight_multiplicities(md.rs, sh.loops[j].color);
    if (!ws.mults.count(alphas[j]))
      fail(Errc::AlphaNotInSupport,
           "alpha_" + std::to_string(j) + " is not a weight of the loop color");
  }
  return build_field(sh, md, alpha0, alphas);
}

double det_reg(const ModularData& md, const Shadow& sh, const FaceField& field) {
  if (!field.valid) fail(Errc::InvalidField, "det_reg needs a field off all affine walls");
  const RootSystem& rs = md.rs;
  const int npos = static_cast<int>(rs.positive_roots.size());
  double out = 1.0;
  for (int f = 0; f < sh.face_count(); ++f) {
    if (sh.euler[f] == 0) continue;
    double face = 1.0;
    for (int b = 0; b < npos; ++b)
      face *= 2.0 * std::sin(std::numbers::pi * to_double(pair_posroot(rs, b, field.values[f])));
    out *= int_pow(face, sh.euler[f]);
  }
  return out;
}

std::complex<double> framing_phase(const Shadow& sh, const ModularData& md,
                                   const FaceField& field) {
  if (!field.valid) fail(Errc::InvalidField, "framing_phase needs a valid field");
  const RootSystem& rs = md.rs;
  double arg = 0.0;
  for (std::size_t j = 0; j < sh.loops.size(); ++j) {
    if (sh.loops[j].winding == 0) continue;
    const RatWeight avg = rat_scale(
        rat_add(field.values[sh.loops[j].plus_face], field.values[sh.loops[j].minus_face]),
        Rat(1, 2));
    arg += 2.0 * std::numbers::pi * double(sh.loops[j].winding) *
           to_double(bilinear(rs, field.alphas[j], avg));
  }
  return {std::cos(arg), std::sin(arg)};
}

CsConstants constants(const ModularData& md, int genus) {
  const RootSystem& rs = md.rs;
  CsConstants out;
  out.K = 1.0;
  for (const auto& beta : rs.positive_roots)
    out.K *= 2.0 * std::sin(std::numbers::pi * to_double(bilinear(rs, beta, rs.rho)) /
                            double(md.kc));

  double x_empty = 0.0;
  for (const auto& lam : md.alcove) x_empty += int_pow(qdim(md, lam), 2 - 2 * Int(genus));
  out.C1 = 1.0 / (int_pow(out.K, 2 - 2 * Int(genus)) * x_empty);
  return out;
}

std::complex<double> cs_state_sum(const Shadow& sh, const ModularData& md) {
  const RootSystem& rs = md.rs;
  const int nloops = static_cast<int>(sh.loops.size());

  for (const auto& loop : sh.loops) {
    if (md.alcove_index(loop.color) < 0)
      fail(Errc::ColorNotInAlcove, "loop '" + loop.id + "' color outside the alcove");
  }
  for (const auto& v : sh.vertical)
    if (md.alcove_index(v.color) < 0)
      fail(Errc::ColorNotInAlcove, "vertical color outside the alcove");

  std::vector<std::vector<std::pair<Weight, Int>>> supports(nloops);
  for (int j = 0; j < nloops; ++j) {
    const WeightSystem ws = weight_multiplicities(rs, sh.loops[j].color);
    supports[j].assign(ws.mults.begin(), ws.mults.end());
  }
  std::vector<WeightSystem> vert_ws;
  vert_ws.reserve(sh.vertical.size());
  for (const auto& v : sh.vertical) vert_ws.push_back(weight_multiplicities(rs, v.color));

  double work = double(md.alcove.size());
  for (int j = 0; j < nloops; ++j) work *= double(supports[j].size());

  // alpha0 ranges over rho + alcove; the outer sum partitions across threads.
  auto worker = [&](int begin, int end) {
    KahanSum acc;
    std::vector<Weight> alphas(nloops);
    for (int a0 = begin; a0 < end; ++a0) {
      const Weight alpha0 = add(md.alcove[a0], rs.rho);
      auto rec = [&](auto&& self, int j, Int mult_prod) -> void {
        if (j == nloops) {
          const FaceField field = build_field(sh, md, alpha0, alphas);
          if (!field.valid) return;
          std::complex<double> term =
              double(mult_prod) * det_reg(md, sh, field) * framing_phase(sh, md, field);
          for (std::size_t v = 0; v < sh.vertical.size(); ++v)
            term *= character_eval(rs, vert_ws[v], field.values[sh.vertical[v].face]);
          acc.add(term);
          return;
        }
        for (const auto& [nu, m] : supports[j]) {
          alphas[j] = nu;
          self(self, j + 1, mult_prod * m);
        }
      };
      rec(rec, 0, 1);
    }
    return acc.value();
  };
  return parallel_sum_slices(static_cast<int>(md.alcove.size()), work > 20000.0, worker);
}

std::complex<double> wlo_cs(const Shadow& sh, const ModularData& md) {
  const CsConstants k = constants(md, sh.genus);
  return k.C1 * cs_state_sum(sh, md);
}

}  // namespace shadowsum
