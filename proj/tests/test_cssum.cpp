#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "links.hpp"
#include "shadowsum/cssum.hpp"
#include "shadowsum/numeric.hpp"

using namespace shadowsum;

namespace {

ModularData md_for(const char* name, int k) {
  return build_modular_data(parse_algebra_spec(name), k);
}

bool close_rel(std::complex<double> a, std::complex<double> b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// All (alpha0, alphas) choices with nonzero multiplicity weight, for
// enumeration-style checks on small links.
template <typename Fn>
void for_each_field(const ModularData& md, const Shadow& sh, Fn&& fn) {
  std::vector<std::vector<Weight>> supports(sh.loops.size());
  for (std::size_t j = 0; j < sh.loops.size(); ++j) {
    const WeightSystem ws = weight_multiplicities(md.rs, sh.loops[j].color);
    for (const auto& [nu, m] : ws.mults) {
      (void)m;
      supports[j].push_back(nu);
    }
  }
  std::vector<Weight> alphas(sh.loops.size());
  for (const auto& lam : md.alcove) {
    const Weight alpha0 = add(lam, md.rs.rho);
    auto rec = [&](auto&& self, std::size_t j) -> void {
      if (j == sh.loops.size()) {
        fn(face_field(sh, md, alpha0, alphas));
        return;
      }
      for (const auto& nu : supports[j]) {
        alphas[j] = nu;
        self(self, j + 1);
      }
    };
    rec(rec, 0);
  }
}

}  // namespace

TEST_CASE("face field on the empty shadow") {
  const ModularData md = md_for("A1", 2);
  const Shadow sh = empty_shadow(0);
  const Weight alpha0{2};  // omega + rho
  const FaceField f = face_field(sh, md, alpha0, {});
  REQUIRE(f.values.size() == 1);
  CHECK(f.values[0] == RatWeight{Rat(2, 4)});
  CHECK(f.coloring[0] == Weight{1});
  CHECK(f.valid);
}

TEST_CASE("face field preconditions") {
  const ModularData md = md_for("A1", 2);
  const Shadow sh = derive_shadow(testlinks::example1(Weight{1}, Weight{1}, Weight{0}));
  // alpha0 = 0 is not strictly dominant
  CHECK_THROWS_AS(face_field(sh, md, Weight{0}, {Weight{1}, Weight{1}, Weight{0}}), Error);
  // (alpha0, theta) = 4 = k + c_G violates the open-alcove bound
  try {
    face_field(sh, md, Weight{4}, {Weight{1}, Weight{1}, Weight{0}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadAlpha0);
  }
  // alpha must be a weight of the loop color: 2 is not a weight of omega
  try {
    face_field(sh, md, Weight{1}, {Weight{2}, Weight{1}, Weight{0}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AlphaNotInSupport);
  }
}

TEST_CASE("base face value ignores the loops") {
  const ModularData md = md_for("A1", 3);
  const Shadow sh = derive_shadow(testlinks::example2(Weight{1}, Weight{2}, Weight{1}));
  for_each_field(md, sh, [&](const FaceField& f) {
    CHECK(f.values[sh.base_face] == rat_scale(to_rat(f.alpha0), Rat(1, md.kc)));
  });
}

TEST_CASE("field difference across a loop is alpha_j") {
  const ModularData md = md_for("A1", 2);
  const Shadow sh = derive_shadow(testlinks::example2(Weight{1}, Weight{1}, Weight{2}));
  for_each_field(md, sh, [&](const FaceField& f) {
    for (std::size_t j = 0; j < sh.loops.size(); ++j) {
      const Weight diff =
          sub(f.coloring[sh.loops[j].plus_face], f.coloring[sh.loops[j].minus_face]);
      CHECK(diff == f.alphas[j]);
    }
  });
}

TEST_CASE("det_reg on the empty link") {
  const ModularData md = md_for("A1", 3);  // k + c_G = 5
  const Shadow sh = empty_shadow(0);
  // alpha0 = rho: K^2 = 4 sin^2(pi/5)
  const FaceField f = face_field(sh, md, md.rs.rho, {});
  const double expect = 4.0 * std::pow(std::sin(std::numbers::pi / 5.0), 2);
  CHECK(det_reg(md, sh, f) == doctest::Approx(expect).epsilon(1e-12));
  // general alpha0 = lambda + rho
  for (const auto& lam : md.alcove) {
    const FaceField g = face_field(sh, md, add(lam, md.rs.rho), {});
    const double d = 4.0 * std::pow(std::sin(std::numbers::pi * double(lam[0] + 1) / 5.0), 2);
    CHECK(det_reg(md, sh, g) == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("det_reg factorizes through signed quantum dimensions") {
  // Lemma: det_reg = K^{2-2g} prod_Y sdim(phi(Y))^{chi(Y)}
  for (const auto& [name, k] : std::vector<std::pair<const char*, int>>{
           {"A1", 2}, {"A2", 1}, {"B2", 1}}) {
    const ModularData md = md_for(name, k);
    const Weight unit = md.alcove[1];
    const Shadow sh = derive_shadow(testlinks::example1(unit, unit, Weight(md.rs.rank, 0)));
    const CsConstants cs = constants(md, sh.genus);
    int checked = 0;
    for_each_field(md, sh, [&](const FaceField& f) {
      if (!f.valid) return;
      double rhs = int_pow(cs.K, 2 - 2 * Int(sh.genus));
      for (int face = 0; face < sh.face_count(); ++face)
        rhs *= int_pow(signed_qdim(md, f.coloring[face]), sh.euler[face]);
      const double lhs = det_reg(md, sh, f);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
      ++checked;
    });
    CHECK(checked > 0);
  }
}

TEST_CASE("framing phase trivial cases") {
  const ModularData md = md_for("A1", 2);
  const Shadow empty = empty_shadow(0);
  const FaceField f = face_field(empty, md, md.rs.rho, {});
  CHECK(std::abs(framing_phase(empty, md, f) - std::complex<double>{1.0, 0.0}) < 1e-15);

  // a zero-colored loop forces alpha = 0 and a unit factor
  ColoredLink link;
  link.loops.push_back({"u", Weight{0}, 3, true, {}, {}, {}});
  const Shadow sh = derive_shadow(link);
  const FaceField g = face_field(sh, md, md.rs.rho, {Weight{0}});
  CHECK(std::abs(framing_phase(sh, md, g) - std::complex<double>{1.0, 0.0}) < 1e-15);
}

TEST_CASE("framing phase factorizes through gleams") {
  // Lemma: framing = prod_Y v_{phi(Y)}^{gleam(Y)} with v extended by the
  // Casimir formula off the alcove.
  const ModularData md = md_for("A1", 2);
  const double c = to_double(md.central_charge);
  const Shadow sh = derive_shadow(testlinks::example1(Weight{1}, Weight{2}, Weight{1}));
  int checked = 0;
  for_each_field(md, sh, [&](const FaceField& f) {
    if (!f.valid) return;
    std::complex<double> rhs{1.0, 0.0};
    for (int face = 0; face < sh.face_count(); ++face) {
      const double arg =
          std::numbers::pi *
          (to_double(casimir(md.rs, f.coloring[face])) / double(md.kc) - c / 12.0);
      rhs *= cpow_int({std::cos(arg), std::sin(arg)}, sh.gleam[face]);
    }
    CHECK(std::abs(framing_phase(sh, md, f) - rhs) < 1e-10);
    ++checked;
  });
  CHECK(checked > 0);
}

TEST_CASE("constants") {
  for (int k = 1; k <= 4; ++k) {
    const ModularData md = md_for("A1", k);
    const CsConstants g0 = constants(md, 0);
    CHECK(g0.K == doctest::Approx(2.0 * std::sin(std::numbers::pi / double(k + 2)))
                      .epsilon(1e-12));
    // genus 1: C1 = 1/|alcove|
    const CsConstants g1 = constants(md, 1);
    CHECK(g1.C1 == doctest::Approx(1.0 / double(md.alcove.size())).epsilon(1e-12));
  }
  const ModularData k1 = md_for("A1", 1);
  const CsConstants cs = constants(k1, 0);
  CHECK(cs.C1 == doctest::Approx(1.0 / (cs.K * cs.K * 2.0)).epsilon(1e-12));

  // raw definition: C1 = (sum over alcove points of det(1-exp(ad b))^{1-g})^{-1}
  for (const auto& [name, k, genus] : std::vector<std::tuple<const char*, int, int>>{
           {"A1", 3, 0}, {"A2", 1, 0}, {"A1", 2, 1}, {"B2", 1, 2}}) {
    const ModularData md = md_for(name, k);
    double sum = 0.0;
    for (const auto& lam : md.alcove) {
      double det = 1.0;
      for (const auto& beta : md.rs.positive_roots) {
        const double s = std::sin(std::numbers::pi *
                                  to_double(bilinear(md.rs, beta, add(lam, md.rs.rho))) /
                                  double(md.kc));
        det *= 4.0 * s * s;
      }
      sum += int_pow(det, 1 - Int(genus));
    }
    const CsConstants cc = constants(md, genus);
    CHECK(std::abs(cc.C1 - 1.0 / sum) < 1e-9 * std::abs(cc.C1));
  }
}

TEST_CASE("empty link state sum equals K^{2-2g} |X_empty|") {
  for (const auto& [name, k] : std::vector<std::pair<const char*, int>>{
           {"A1", 3}, {"A2", 1}, {"G2", 1}}) {
    const ModularData md = md_for(name, k);
    for (int g = 0; g <= 2; ++g) {
      const Shadow sh = empty_shadow(g);
      const std::complex<double> st = cs_state_sum(sh, md);
      const std::complex<double> x = shadow_state_sum(md, sh);
      const double kpow = int_pow(constants(md, g).K, 2 - 2 * Int(g));
      CHECK(close_rel(st, kpow * x, 1e-10));
      CHECK(close_rel(wlo_cs(sh, md), {1.0, 0.0}, 1e-10));
    }
  }
}

TEST_CASE("unknot colored zero equals the empty link") {
  const ModularData md = md_for("A1", 2);
  ColoredLink link;
  link.loops.push_back({"u", Weight{0}, 1, true, {}, {}, {}});
  const std::complex<double> a = cs_state_sum(derive_shadow(link), md);
  const std::complex<double> b = cs_state_sum(empty_shadow(0), md);
  CHECK(close_rel(a, b, 1e-10));
}

TEST_CASE("theorem on the worked examples") {
  const ModularData md = md_for("A1", 2);
  const double k2 = int_pow(constants(md, 0).K, 2);
  for (const auto& la : md.alcove)
    for (const auto& mu : md.alcove) {
      const Shadow e1 = derive_shadow(testlinks::example1(la, mu, Weight{1}));
      CHECK(close_rel(cs_state_sum(e1, md), k2 * shadow_state_sum(md, e1), 1e-9));
      const Shadow e2 = derive_shadow(testlinks::example2(la, mu, Weight{1}));
      CHECK(close_rel(cs_state_sum(e2, md), k2 * shadow_state_sum(md, e2), 1e-9));
    }
}

TEST_CASE("base face relocation does not change the state sum") {
  const ModularData md = md_for("A1", 2);
  const Shadow sh = derive_shadow(testlinks::example2(Weight{1}, Weight{2}, Weight{1}));
  const std::complex<double> ref = cs_state_sum(sh, md);
  for (int f = 1; f < sh.face_count(); ++f)
    CHECK(close_rel(cs_state_sum(sh.with_base(f), md), ref, 1e-10));
}

TEST_CASE("lemma-2 bijection by enumeration") {
  const ModularData md = md_for("A1", 1);
  const Shadow sh = derive_shadow(testlinks::example1(Weight{1}, Weight{1}, Weight{0}));
  const int fcount = sh.face_count();

  // (a) distinct valid parameter tuples give distinct colorings
  std::set<std::vector<Weight>> seen;
  int valid_count = 0;
  for_each_field(md, sh, [&](const FaceField& f) {
    if (!f.valid) return;
    CHECK(seen.insert(f.coloring).second);
    ++valid_count;
  });
  CHECK(valid_count == static_cast<int>(seen.size()));

  // (b) every alcove coloring is reached by the reconstructed parameters,
  // with all face values inside the open alcove (test-side reimplementation
  // of the field formula as the independent check)
  const int n = static_cast<int>(md.alcove.size());
  std::vector<int> idx(fcount, 0);
  int total = 0;
  auto next = [&]() {
    for (int f = 0; f < fcount; ++f) {
      if (++idx[f] < n) return true;
      idx[f] = 0;
    }
    return false;
  };
  do {
    std::vector<Weight> phi(fcount);
    for (int f = 0; f < fcount; ++f) phi[f] = md.alcove[idx[f]];
    const Weight alpha0 = add(phi[sh.base_face], md.rs.rho);
    std::vector<Weight> alphas;
    for (const auto& loop : sh.loops)
      alphas.push_back(sub(phi[loop.plus_face], phi[loop.minus_face]));
    // rebuild the coloring from (alpha0, alphas) through the shift indicators
    for (int f = 0; f < fcount; ++f) {
      Weight num = alpha0;
      for (std::size_t j = 0; j < alphas.size(); ++j) {
        const Int here = sh.side[f][j] > 0 ? 1 : 0;
        const Int base = sh.side[sh.base_face][j] > 0 ? 1 : 0;
        if (here - base != 0)
          for (int m = 0; m < md.rs.rank; ++m) num[m] += (here - base) * alphas[j][m];
      }
      const Weight rebuilt = sub(num, md.rs.rho);
      CHECK(rebuilt == phi[f]);
    }
    ++total;
  } while (next());
  CHECK(total == static_cast<int>(std::pow(double(n), fcount)));
}

TEST_CASE("three vertical points give the fusion coefficient via the cs route") {
  const ModularData md = md_for("A1", 2);
  for (const auto& la : md.alcove)
    for (const auto& mu : md.alcove)
      for (const auto& nu : md.alcove) {
        const Shadow sh = derive_shadow(testlinks::vertical_only({la, mu, nu}));
        const std::complex<double> got = wlo_cs(sh, md);
        const double expect = double(verlinde_fusion3(md, la, mu, nu).rounded);
        CHECK(std::abs(got - std::complex<double>{expect, 0.0}) < 1e-8);
      }
}

TEST_CASE("mixed link matches the surgery closed form") {
  const ModularData md = md_for("A1", 2);
  const std::complex<double> s00 = md.s.at(0, 0);
  double x_empty = 0.0;
  for (const auto& lam : md.alcove) x_empty += int_pow(qdim(md, lam), 2);
  for (const auto& la : md.alcove)
    for (const auto& mu : md.alcove)
      for (const auto& nu : md.alcove) {
        const Shadow sh = derive_shadow(testlinks::mixed_fig4(la, mu, nu));
        const std::complex<double> got = wlo_cs(sh, md);
        const int bi = md.alcove_index(mu), ci = md.alcove_index(nu);
        const double n = double(verlinde_fusion3(md, la, mu, nu).rounded);
        const std::complex<double> expect =
            md.t.at(bi, bi) / md.t.at(ci, ci) * n / (x_empty * s00 * s00);
        CHECK(std::abs(got - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
      }
}

TEST_CASE("wlo routes agree on random forests") {
  std::mt19937 rng(41);
  const ModularData md = md_for("A1", 2);
  for (int trial = 0; trial < 10; ++trial) {
    const Shadow sh = derive_shadow(testlinks::random_forest(rng, md.alcove, 3));
    CHECK(close_rel(wlo_cs(sh, md), wlo_shadow(md, sh), 1e-9));
  }
}

TEST_CASE("theorem on the genus-1 shadow") {
  const ModularData md = md_for("A1", 2);
  const Shadow sh = derive_shadow(testlinks::genus1_contractible(Weight{2}, -1));
  const std::complex<double> st = cs_state_sum(sh, md);
  const std::complex<double> x = shadow_state_sum(md, sh);
  CHECK(close_rel(st, x, 1e-9));  // K^0 = 1 at genus 1
}

TEST_CASE("det_reg and framing_phase reject wall-touching fields") {
  const ModularData md = md_for("A1", 1);
  ColoredLink link;
  link.loops.push_back({"u", Weight{1}, 1, true, {}, {}, {}});
  const Shadow sh = derive_shadow(link);
  // alpha0 = rho, alpha = -omega puts the inner face value at zero
  const FaceField f = face_field(sh, md, md.rs.rho, {Weight{-1}});
  REQUIRE_FALSE(f.valid);
  CHECK_THROWS_AS(det_reg(md, sh, f), Error);
  CHECK_THROWS_AS(framing_phase(sh, md, f), Error);
}

TEST_CASE("fig-4 double sum agrees between racah integers and verlinde floats") {
  // sum_{l0 l1} N^{l1}_{la l0} S_{nu l0} S_{mu l1} T_{l0 l0} T^{-1}_{l1 l1}
  //   = (T_{mu mu}/T_{nu nu}) N_{la mu nu}
  for (const char* name : {"A1", "A2"}) {
    const ModularData md = md_for(name, 2);
    const int n = static_cast<int>(md.alcove.size());
    FusionCache cache(md);
    for (const auto& la : md.alcove)
      for (const auto& mu : md.alcove)
        for (const auto& nu : md.alcove) {
          const int bi = md.alcove_index(mu), ci = md.alcove_index(nu);
          const std::vector<Int>& tbl = cache.table(la);
          std::complex<double> via_racah{0.0, 0.0};
          std::complex<double> via_verlinde{0.0, 0.0};
          for (int l0 = 0; l0 < n; ++l0)
            for (int l1 = 0; l1 < n; ++l1) {
              const std::complex<double> weight = md.s.at(ci, l0) * md.s.at(bi, l1) *
                                                  md.t.at(l0, l0) / md.t.at(l1, l1);
              via_racah += double(tbl[static_cast<std::size_t>(l0) * n + l1]) * weight;
              const Weight l1_star = conjugates(md.rs, md.alcove[l1]).second;
              via_verlinde +=
                  verlinde_fusion3(md, l1_star, la, md.alcove[l0]).raw * weight;
            }
          CHECK(std::abs(via_racah - via_verlinde) < 1e-9);
          const std::complex<double> rhs = md.t.at(bi, bi) / md.t.at(ci, ci) *
                                           double(verlinde_fusion3(md, la, mu, nu).rounded);
          CHECK(std::abs(via_racah - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
        }
  }
}

TEST_CASE("thread cap does not change results") {
  // big enough to engage the sliced evaluation
  const ModularData md = md_for("A1", 8);
  ColoredLink link;
  link.loops.push_back({"a", Weight{8}, 1, true, {}, {}, {}});
  link.loops.push_back({"b", Weight{8}, -2, true, std::string("a"), {}, {}});
  link.loops.push_back({"c", Weight{7}, 1, false, {}, {}, {}});
  link.loops.push_back({"d", Weight{6}, 2, true, std::string("c"), {}, {}});
  const Shadow sh = derive_shadow(link);

  setenv("SHADOWSUM_THREADS", "1", 1);
  const std::complex<double> serial = cs_state_sum(sh, md);
  const std::complex<double> shadow_serial = shadow_state_sum(md, sh);
  setenv("SHADOWSUM_THREADS", "4", 1);
  const std::complex<double> parallel = cs_state_sum(sh, md);
  const std::complex<double> shadow_parallel = shadow_state_sum(md, sh);
  unsetenv("SHADOWSUM_THREADS");

  CHECK(std::abs(serial - parallel) <= 1e-12 * std::max(1.0, std::abs(serial)));
  CHECK(std::abs(shadow_serial - shadow_parallel) <=
        1e-12 * std::max(1.0, std::abs(shadow_serial)));
  // and the two routes still agree
  CHECK(close_rel(wlo_cs(sh, md), wlo_shadow(md, sh), 1e-9));
}
