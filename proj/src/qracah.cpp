#include "shadowsum/qracah.hpp"

#include <cmath>
#include <stdexcept>

namespace shadowsum {

FoldResult fold_to_alcove(const RootSystem& rs, const RatWeight& y) {
  const int r = rs.rank;
  if (static_cast<int>(y.size()) != r) fail(Errc::DimensionMismatch, "fold input size");

  RatWeight cur = y;
  int sign = 1;
  // Every reflection at a strictly violated facet moves the point closer
  // to the alcove interior; the rational orbit is discrete, so this stops.
  for (long long guard = 0;; ++guard) {
    if (guard > 1000000) throw std::logic_error("fold_to_alcove did not terminate");
    bool reflected = false;
    for (int i = 0; i < r; ++i) {
      if (cur[i] < Rat(0)) {
        cur = simple_reflect(rs, i, cur);
        sign = -sign;
        reflected = true;
        break;
      }
    }
    if (reflected) continue;
    const Rat t = bilinear(rs, rs.theta, cur);
    if (t > Rat(1)) {
      // reflection across the wall (x, theta) = 1; theta is its own coroot
      const Rat excess = t - Rat(1);
      for (int m = 0; m < r; ++m) cur[m] -= excess * rs.theta[m];
      sign = -sign;
      continue;
    }
    // no strict violation left: inside the closed alcove
    FoldResult out;
    bool on_wall = (t == Rat(1));
    for (int i = 0; i < r && !on_wall; ++i) on_wall = (cur[i] == Rat(0));
    if (on_wall) {
      out.kind = FoldResult::Kind::Boundary;
    } else {
      out.kind = FoldResult::Kind::Interior;
      out.folded = cur;
      out.sign = sign;
    }
    return out;
  }
}

Int racah_fusion(const ModularData& md, const Weight& gamma, const Weight& alpha,
                 const Weight& beta) {
  const RootSystem& rs = md.rs;
  if (md.alcove_index(gamma) < 0 || md.alcove_index(alpha) < 0 || md.alcove_index(beta) < 0)
    fail(Errc::NotInAlcove, "racah_fusion argument outside the alcove");

  const Rat inv_kc(1, md.kc);
  const RatWeight target = rat_scale(to_rat(add(beta, rs.rho)), inv_kc);

  const WeightSystem ws = weight_multiplicities(rs, gamma);
  Int total = 0;
  for (const auto& [nu, mult] : ws.mults) {
    // candidate tau(beta) = alpha + nu; shift by rho and scale into the alcove picture
    RatWeight y = rat_scale(to_rat(add(add(alpha, nu), rs.rho)), inv_kc);
    const FoldResult fr = fold_to_alcove(rs, y);
    if (fr.kind != FoldResult::Kind::Interior) continue;  // wall points cancel exactly
    if (fr.folded == target) total += fr.sign * mult;
  }
  if (total < 0) fail(Errc::NegativeFusion, "Racah sum came out negative");
  return total;
}

FusionCompareReport fusion_table_compare(const ModularData& md) {
  const int n = static_cast<int>(md.alcove.size());
  FusionCompareReport rep;
  FusionCache cache(md);
  for (int g = 0; g < n; ++g) {
    const std::vector<Int>& tbl = cache.table(md.alcove[g]);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        // Verlinde N^beta_{gamma alpha} = N_{beta* gamma alpha}
        const Weight beta_star = conjugates(md.rs, md.alcove[b]).second;
        const FusionValue v =
            verlinde_fusion3(md, beta_star, md.alcove[g], md.alcove[a]);
        const Int racah = tbl[static_cast<std::size_t>(a) * n + b];
        rep.max_abs_dev = std::max(rep.max_abs_dev, std::abs(v.raw - double(racah)));
        if (v.rounded != racah) ++rep.mismatches;
        ++rep.triples;
      }
    }
  }
  rep.pass = rep.max_abs_dev < 1e-6 && rep.mismatches == 0;
  return rep;
}

const std::vector<Int>& FusionCache::table(const Weight& gamma) {
  auto it = tables_.find(gamma);
  if (it != tables_.end()) return it->second;

  const RootSystem& rs = md_.rs;
  const int n = static_cast<int>(md_.alcove.size());
  if (md_.alcove_index(gamma) < 0) fail(Errc::NotInAlcove, "fusion color outside the alcove");
  const WeightSystem ws = weight_multiplicities(rs, gamma);
  const Rat inv_kc(1, md_.kc);

  std::vector<Int> tbl(static_cast<std::size_t>(n) * n, 0);
  // One fold per (alpha, nu); matching the folded point against all shifted
  // alcove weights fills an entire row at once.
  std::map<RatWeight, int> shifted_index;
  for (int b = 0; b < n; ++b)
    shifted_index[rat_scale(to_rat(add(md_.alcove[b], rs.rho)), inv_kc)] = b;

  for (int a = 0; a < n; ++a) {
    for (const auto& [nu, mult] : ws.mults) {
      RatWeight y = rat_scale(to_rat(add(add(md_.alcove[a], nu), rs.rho)), inv_kc);
      const FoldResult fr = fold_to_alcove(rs, y);
      if (fr.kind != FoldResult::Kind::Interior) continue;
      auto hit = shifted_index.find(fr.folded);
      if (hit != shifted_index.end())
        tbl[static_cast<std::size_t>(a) * n + hit->second] += fr.sign * mult;
    }
  }
  for (Int v : tbl)
    if (v < 0) fail(Errc::NegativeFusion, "Racah table entry came out negative");
  return tables_.emplace(gamma, std::move(tbl)).first->second;
}

}  // namespace shadowsum
