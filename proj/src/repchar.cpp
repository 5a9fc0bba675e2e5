#include "shadowsum/repchar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

namespace shadowsum {

namespace {

void require_dominant(const Weight& lambda, const char* where) {
  if (!is_dominant(lambda)) fail(Errc::NotDominant, std::string(where) + ": weight has a negative Dynkin label");
}

// Dominant weights mu <= lambda: mu = lambda - sum c_i alpha_i with c_i >= 0.
// The box is bounded by (lambda - mu, rho) <= (lambda, rho).
std::vector<Weight> dominant_weights_below(const RootSystem& rs, const Weight& lambda) {
  const int r = rs.rank;
  std::vector<Rat> droot(r);  // (alpha_i, rho)
  for (int i = 0; i < r; ++i) droot[i] = bilinear(rs, rs.simple_roots[i], rs.rho);
  const Rat budget = bilinear(rs, lambda, rs.rho) + bilinear(rs, rs.rho, rs.rho);

  std::vector<Weight> out;
  std::vector<Int> c(r, 0);
  // depth-first over the coefficient cone
  auto rec = [&](auto&& self, int pos, const Rat& used) -> void {
    if (pos == r) {
      Weight mu = lambda;
      for (int i = 0; i < r; ++i)
        for (int m = 0; m < r; ++m) mu[m] -= c[i] * rs.simple_roots[i][m];
      if (is_dominant(mu)) out.push_back(mu);
      return;
    }
    for (Int ci = 0;; ++ci) {
      const Rat next = used + droot[pos] * ci;
      if (next > budget) break;
      c[pos] = ci;
      self(self, pos + 1, next);
    }
    c[pos] = 0;
  };
  rec(rec, 0, Rat(0));
  return out;
}

}  // namespace

Rat casimir(const RootSystem& rs, const Weight& lambda) {
  Weight shifted = lambda;
  for (int i = 0; i < rs.rank; ++i) shifted[i] += 2;  // lambda + 2 rho
  return bilinear(rs, lambda, shifted);
}

Int weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  Weight lr = add(lambda, rs.rho);
  Rat prod(1);
  for (const auto& beta : rs.positive_roots)
    prod *= bilinear(rs, lr, beta) / bilinear(rs, rs.rho, beta);
  if (!is_integer(prod)) fail(Errc::NotDominant, "Weyl dimension formula gave a non-integer");
  return prod.numerator();
}

WeightSystem weight_multiplicities(const RootSystem& rs, const Weight& lambda) {
  require_dominant(lambda, "weight_multiplicities");

  std::vector<Weight> dom = dominant_weights_below(rs, lambda);
  // Process in decreasing height so every m(mu + j beta) is already known.
  std::sort(dom.begin(), dom.end(), [&](const Weight& a, const Weight& b) {
    return bilinear(rs, a, rs.rho) > bilinear(rs, b, rs.rho);
  });

  std::map<Weight, Rat> dominant_mult;
  const Rat top_norm = bilinear(rs, add(lambda, rs.rho), add(lambda, rs.rho));
  for (const auto& mu : dom) {
    if (mu == lambda) {
      dominant_mult[mu] = Rat(1);
      continue;
    }
    // Freudenthal: ((l+r,l+r) - (m+r,m+r)) m(mu) = 2 sum_beta sum_j m(mu+j beta)(mu+j beta, beta)
    Rat num(0);
    for (const auto& beta : rs.positive_roots) {
      // mu + j beta can only be a weight while lambda - (mu + j beta) stays
      // in the positive root cone, so j <= (lambda - mu, rho)/(beta, rho).
      const Rat jmax_r = bilinear(rs, sub(lambda, mu), rs.rho) / bilinear(rs, beta, rs.rho);
      const Int jmax = jmax_r.numerator() / jmax_r.denominator();
      Weight shifted = mu;
      for (Int j = 1; j <= jmax; ++j) {
        shifted = add(shifted, beta);
        const Weight rep = dominant_representative(rs, shifted);
        auto it = dominant_mult.find(rep);
        if (it == dominant_mult.end() || it->second == Rat(0)) continue;
        num += it->second * bilinear(rs, shifted, beta);
      }
    }
    const Rat den = top_norm - bilinear(rs, add(mu, rs.rho), add(mu, rs.rho));
    if (den <= Rat(0)) fail(Errc::NotDominant, "Freudenthal denominator not positive");
    const Rat m = Rat(2) * num / den;
    if (!is_integer(m) || m < Rat(0))
      fail(Errc::NotDominant, "Freudenthal recursion gave a non-integer multiplicity");
    dominant_mult[mu] = m;
  }

  WeightSystem ws;
  ws.highest = lambda;
  for (const auto& [mu, m] : dominant_mult) {
    if (m == Rat(0)) continue;
    const Int mult = m.numerator();
    std::set<Weight> orbit;
    for (const auto& w : rs.weyl) orbit.insert(act(rs, w, mu));
    for (const auto& nu : orbit) ws.mults[nu] = mult;
  }
  for (const auto& [nu, m] : ws.mults) {
    (void)nu;
    ws.dimension += m;
  }
  if (ws.dimension != weyl_dimension(rs, lambda))
    fail(Errc::NotDominant, "weight-system size disagrees with the Weyl dimension formula");
  return ws;
}

std::pair<Weight, Weight> conjugates(const RootSystem& rs, const Weight& lambda) {
  require_dominant(lambda, "conjugates");
  const Weight bar = dominant_representative(rs, negate(lambda));
  // rho-shifted: mu + rho = dominant representative of -(lambda + rho)
  const Weight shifted = dominant_representative(rs, negate(add(lambda, rs.rho)));
  Weight star = sub(shifted, rs.rho);
  return {bar, star};
}

std::complex<double> character_eval(const RootSystem& rs, const WeightSystem& ws,
                                    const RatWeight& b) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [mu, m] : ws.mults) {
    const double phase = 2.0 * std::numbers::pi * to_double(bilinear(rs, mu, b));
    acc += static_cast<double>(m) * std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  return acc;
}

std::complex<double> character_eval(const RootSystem& rs, const Weight& lambda,
                                    const RatWeight& b) {
  return character_eval(rs, weight_multiplicities(rs, lambda), b);
}

namespace {

std::complex<double> alternating_sum(const RootSystem& rs, const Weight& lam, const RatWeight& b) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& w : rs.weyl) {
    const Weight wl = act(rs, w, lam);
    const double phase = 2.0 * std::numbers::pi * to_double(bilinear(rs, wl, b));
    acc += static_cast<double>(w.sign) * std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  return acc;
}

}  // namespace

std::complex<double> character_eval_quotient(const RootSystem& rs, const Weight& lambda,
                                             const RatWeight& b) {
  require_dominant(lambda, "character_eval_quotient");
  // delta(b) = A(rho)(b) vanishes exactly when some (beta, b) is an integer.
  for (const auto& beta : rs.positive_roots)
    if (is_integer(bilinear(rs, beta, b)))
      fail(Errc::DenominatorZero, "Weyl denominator vanishes at this point");
  return alternating_sum(rs, add(lambda, rs.rho), b) / alternating_sum(rs, rs.rho, b);
}

}  // namespace shadowsum
