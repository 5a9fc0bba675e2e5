#include "shadowsum/cli.hpp"

#include <cmath>
#include <sstream>

#include "shadowsum/numeric.hpp"

namespace shadowsum {

namespace {

using nlohmann::ordered_json;

constexpr double kRouteTol = 1e-9;

ordered_json jnum(double x) { return round15(x); }

ordered_json jcomplex(std::complex<double> z) {
  return ordered_json::array({round15(z.real()), round15(z.imag())});
}

ordered_json jweight(const Weight& w) {
  ordered_json a = ordered_json::array();
  for (Int c : w) a.push_back(c);
  return a;
}

ordered_json jmatrix(const CMatrix& m) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) a.push_back(jcomplex(m.at(i, j)));
  return a;
}

std::string rat_string(const Rat& q) {
  std::string s = std::to_string(q.numerator());
  if (q.denominator() != 1) s += "/" + std::to_string(q.denominator());
  return s;
}

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::ModularIdentityFailure:
    case Errc::NonIntegerFusion:
    case Errc::NegativeFusion:
      return 1;
    default:
      return 2;
  }
}

struct CheckList {
  ordered_json checks = ordered_json::array();
  bool all_pass = true;

  void add(const std::string& name, bool pass, double value, double bound) {
    checks.push_back(
        {{"name", name}, {"pass", pass}, {"value", jnum(value)}, {"bound", jnum(bound)}});
    all_pass = all_pass && pass;
  }
  void add(const std::string& name, bool pass) {
    checks.push_back({{"name", name}, {"pass", pass}});
    all_pass = all_pass && pass;
  }
};

void verify_pair(const AlgebraSpec& spec, int level, Int weyl_cap, CheckList& out) {
  const std::string tag = spec.name() + " k=" + std::to_string(level);
  ModularData md = build_modular_data(spec, level, weyl_cap);
  const RootSystem& rs = md.rs;
  const int n = static_cast<int>(md.alcove.size());

  out.add(tag + " theta normalized", bilinear(rs, rs.theta, rs.theta) == Rat(2));
  {
    Weight twice(rs.rank, 0);
    for (const auto& beta : rs.positive_roots) twice = add(twice, beta);
    bool ok = true;
    for (Int c : twice) ok = ok && c == 2;
    out.add(tag + " rho half-sum", ok);
  }
  out.add(tag + " weyl order",
          static_cast<Int>(rs.weyl.size()) == classical_weyl_order(spec));
  {
    // crystallographic: (beta, beta'^vee) integral for every pair of roots
    bool ok = true;
    for (const auto& beta : rs.positive_roots)
      for (const auto& other : rs.positive_roots)
        ok = ok && is_integer(Rat(2) * bilinear(rs, beta, other) / bilinear(rs, other, other));
    out.add(tag + " crystallographic pairings", ok);
  }
  {
    // integral lattice: fundamental weights pair integrally with all coroots
    bool ok = true;
    for (int i = 0; i < rs.rank && ok; ++i) {
      Weight ei(rs.rank, 0);
      ei[i] = 1;
      for (const auto& beta : rs.positive_roots) {
        const Rat coroot_pairing = bilinear(rs, ei, beta) * 2 / bilinear(rs, beta, beta);
        ok = ok && is_integer(coroot_pairing);
      }
    }
    out.add(tag + " weights pair integrally with coroots", ok);
  }
  {
    bool ok = true;
    for (const auto& w : rs.weyl) {
      const Weight x = act(rs, w, rs.rho);
      ok = ok && bilinear(rs, x, x) == bilinear(rs, rs.rho, rs.rho);
    }
    out.add(tag + " weyl acts by isometries", ok);
  }

  {
    double dev_s2 = md.s.mult(md.s).max_abs_diff(md.c);
    CMatrix st = md.s.mult(md.t);
    double dev_st3 = st.mult(st).mult(st).max_abs_diff(md.c);
    out.add(tag + " S^2 = C", dev_s2 < 1e-10, dev_s2, 1e-10);
    out.add(tag + " (ST)^3 = C", dev_st3 < 1e-10, dev_st3, 1e-10);
  }
  {
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
      dev = std::max(dev, std::abs(std::abs(md.t.at(i, i)) - 1.0));
    out.add(tag + " |T_{ll}| = 1", dev < 1e-12, dev, 1e-12);
  }
  {
    // dim via S-ratio vs sine product
    double dev = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ratio = (md.s.at(i, 0) / md.s.at(0, 0)).real();
      const double prod = qdim(md, md.alcove[i]);
      dev = std::max(dev, std::abs(ratio - prod) / std::max(1.0, std::abs(prod)));
    }
    out.add(tag + " qdim routes agree", dev < 1e-10, dev, 1e-10);
  }
  {
    const FusionCompareReport rep = fusion_table_compare(md);
    out.add(tag + " verlinde = racah", rep.pass && rep.max_abs_dev < 1e-8, rep.max_abs_dev,
            1e-8);
  }
  {
    const IdentityReport rep = fusion_matrix_identity_check(md);
    out.add(tag + " fusion matrix identity", rep.pass, rep.max_dev, rep.tolerance);
  }
  {
    // character / S-matrix bridge, argument oriented by the exponent sign
    double dev = 0.0;
    for (int mu = 0; mu < n; ++mu) {
      const WeightSystem ws = weight_multiplicities(rs, md.alcove[mu]);
      for (int lam = 0; lam < n; ++lam) {
        const RatWeight b = rat_scale(to_rat(add(md.alcove[lam], rs.rho)),
                                      Rat(md.exponent_sign, md.kc));
        const std::complex<double> chi = character_eval(rs, ws, b);
        const std::complex<double> ratio = md.s.at(mu, lam) / md.s.at(0, lam);
        dev = std::max(dev, std::abs(chi - ratio));
      }
    }
    out.add(tag + " character bridge", dev < 1e-10, dev, 1e-10);
  }
  {
    // lattice points with (lambda+rho)/(k+c_G) strictly inside the alcove
    // are exactly the alcove weights
    bool ok = true;
    const int pad = 2;
    std::vector<Weight> inside;
    Weight cur(rs.rank, 0);
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == rs.rank) {
        const RatWeight y = rat_scale(to_rat(add(cur, rs.rho)), Rat(1, md.kc));
        bool strict = true;
        for (int i = 0; i < rs.rank && strict; ++i) strict = y[i] > Rat(0);
        if (strict) strict = bilinear(rs, rs.theta, y) < Rat(1);
        if (strict) inside.push_back(cur);
        return;
      }
      for (Int c = -pad; c <= Int(md.level) + pad; ++c) {
        cur[pos] = c;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
    std::sort(inside.begin(), inside.end());
    std::vector<Weight> alc = md.alcove;
    std::sort(alc.begin(), alc.end());
    ok = inside == alc;
    out.add(tag + " alcove = lattice cap open simplex", ok);
  }
  {
    // fusion normalization and conjugation symmetry
    bool ok = true;
    double dev = 0.0;
    for (int a = 0; a < n && ok; ++a) {
      for (int b = 0; b < n; ++b) {
        const Weight bstar = conjugates(rs, md.alcove[b]).second;
        const FusionValue v = verlinde_fusion3(md, bstar, Weight(rs.rank, 0), md.alcove[a]);
        const Int expect = (a == b) ? 1 : 0;
        dev = std::max(dev, std::abs(v.raw - double(expect)));
        if (v.rounded != expect) ok = false;
      }
    }
    out.add(tag + " vacuum fusion is identity", ok, dev, 1e-8);
  }
}

ordered_json error_document(const Error& e) {
  return ordered_json{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
}

ordered_json cmd_modular(const RunConfig& cfg) {
  const ModularData md =
      build_modular_data(parse_algebra_spec(cfg.algebra), cfg.level, cfg.weyl_cap);
  ordered_json doc;
  doc["algebra"] = md.rs.spec.name();
  doc["level"] = md.level;
  doc["dual_coxeter"] = md.rs.dual_coxeter;
  doc["lattice_index"] = md.rs.lattice_index;
  doc["central_charge"] = rat_string(md.central_charge);
  doc["exponent_sign"] = md.exponent_sign;
  ordered_json alcove = ordered_json::array();
  ordered_json dims = ordered_json::array();
  for (const auto& w : md.alcove) {
    alcove.push_back(jweight(w));
    dims.push_back(jnum(qdim(md, w)));
  }
  doc["alcove"] = alcove;
  doc["dims"] = dims;
  doc["S"] = jmatrix(md.s);
  doc["T"] = jmatrix(md.t);
  doc["C"] = jmatrix(md.c);
  return doc;
}

ordered_json cmd_fusion(const RunConfig& cfg, int& exit_code) {
  const ModularData md =
      build_modular_data(parse_algebra_spec(cfg.algebra), cfg.level, cfg.weyl_cap);
  const int n = static_cast<int>(md.alcove.size());
  FusionCache cache(md);

  ordered_json doc;
  doc["algebra"] = md.rs.spec.name();
  doc["level"] = md.level;
  ordered_json alcove = ordered_json::array();
  for (const auto& w : md.alcove) alcove.push_back(jweight(w));
  doc["alcove"] = alcove;

  // racah[g][a][b] = N^b_{g a}; verlinde holds the raw S-matrix sums
  ordered_json racah = ordered_json::array();
  ordered_json verlinde = ordered_json::array();
  double max_dev = 0.0;
  for (int g = 0; g < n; ++g) {
    const std::vector<Int>& tbl = cache.table(md.alcove[g]);
    ordered_json ra = ordered_json::array();
    ordered_json va = ordered_json::array();
    for (int a = 0; a < n; ++a) {
      ordered_json rrow = ordered_json::array();
      ordered_json vrow = ordered_json::array();
      for (int b = 0; b < n; ++b) {
        const Int exact = tbl[static_cast<std::size_t>(a) * n + b];
        const Weight bstar = conjugates(md.rs, md.alcove[b]).second;
        const FusionValue v = verlinde_fusion3(md, bstar, md.alcove[g], md.alcove[a]);
        rrow.push_back(exact);
        vrow.push_back(jnum(v.raw));
        max_dev = std::max(max_dev, std::abs(v.raw - double(exact)));
      }
      ra.push_back(rrow);
      va.push_back(vrow);
    }
    racah.push_back(ra);
    verlinde.push_back(va);
  }
  doc["racah"] = racah;
  doc["verlinde"] = verlinde;
  doc["max_deviation"] = jnum(max_dev);
  const double tol = cfg.tolerance.value_or(1e-8);
  doc["tolerance"] = jnum(tol);
  doc["pass"] = max_dev < tol;
  if (max_dev >= tol) exit_code = 1;
  return doc;
}

ordered_json cmd_link(const RunConfig& cfg, int& exit_code) {
  const LinkDocument ld = parse_link_file(cfg.input_path);
  const std::string algebra = cfg.algebra.empty() ? ld.algebra : cfg.algebra;
  const int level = cfg.level > 0 ? cfg.level : ld.level;
  const ModularData md = build_modular_data(parse_algebra_spec(algebra), level, cfg.weyl_cap);
  const Shadow sh = derive_shadow(ld.link);

  FusionCache cache(md);
  const std::complex<double> x_link = shadow_state_sum(md, sh, cache);
  const std::complex<double> x_empty = shadow_state_sum(md, empty_shadow(sh.genus), cache);
  const std::complex<double> st = cs_state_sum(sh, md);
  const CsConstants cs = constants(md, sh.genus);
  const double kpow = int_pow(cs.K, 2 - 2 * Int(sh.genus));

  const std::complex<double> wlo_s = x_link / x_empty;
  const std::complex<double> wlo_c = cs.C1 * st;

  const double tol = cfg.tolerance.value_or(kRouteTol);
  const double scale = std::max({1.0, std::abs(st), std::abs(kpow * x_link)});
  const double theorem_dev = std::abs(st - kpow * x_link) / scale;
  const double wlo_dev =
      std::abs(wlo_s - wlo_c) / std::max({1.0, std::abs(wlo_s), std::abs(wlo_c)});
  const bool pass = theorem_dev < tol && wlo_dev < tol;

  ordered_json doc;
  doc["algebra"] = md.rs.spec.name();
  doc["level"] = md.level;
  doc["genus"] = sh.genus;
  doc["faces"] = sh.face_count();
  doc["loops"] = static_cast<int>(sh.loops.size());
  doc["vertical"] = static_cast<int>(sh.vertical.size());
  doc["shadow_sum"] = jcomplex(x_link);
  doc["empty_sum"] = jcomplex(x_empty);
  doc["cs_sum"] = jcomplex(st);
  doc["K"] = jnum(cs.K);
  doc["C1"] = jnum(cs.C1);
  doc["wlo_shadow"] = jcomplex(wlo_s);
  doc["wlo_cs"] = jcomplex(wlo_c);
  doc["theorem_deviation"] = jnum(theorem_dev);
  doc["wlo_deviation"] = jnum(wlo_dev);
  doc["tolerance"] = jnum(tol);
  doc["pass"] = pass;
  if (!pass) exit_code = 1;

  if (cfg.command == "wlo")
    doc["value"] = jcomplex(wlo_c);
  else if (cfg.command == "shadow")
    doc["value"] = jcomplex(x_link);
  else
    doc["value"] = jcomplex(st);
  return doc;
}

ordered_json cmd_verify(const RunConfig& cfg, int& exit_code) {
  CheckList list;
  if (!cfg.algebra.empty()) {
    const int level = cfg.level > 0 ? cfg.level : 1;
    verify_pair(parse_algebra_spec(cfg.algebra), level, cfg.weyl_cap, list);
  } else {
    // default verification grid
    for (int k = 1; k <= 8; ++k) verify_pair({Family::A, 1}, k, cfg.weyl_cap, list);
    for (int k = 1; k <= 4; ++k) verify_pair({Family::A, 2}, k, cfg.weyl_cap, list);
    for (int k = 1; k <= 3; ++k) verify_pair({Family::B, 2}, k, cfg.weyl_cap, list);
    for (int k = 1; k <= 2; ++k) verify_pair({Family::G, 2}, k, cfg.weyl_cap, list);
  }
  ordered_json doc;
  doc["checks"] = list.checks;
  doc["pass"] = list.all_pass;
  if (!list.all_pass) exit_code = 1;
  return doc;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult result;
  try {
    if (cfg.command == "modular") {
      result.document = cmd_modular(cfg);
    } else if (cfg.command == "fusion") {
      result.document = cmd_fusion(cfg, result.exit_code);
    } else if (cfg.command == "shadow" || cfg.command == "cs-sum" || cfg.command == "wlo") {
      result.document = cmd_link(cfg, result.exit_code);
    } else if (cfg.command == "verify") {
      result.document = cmd_verify(cfg, result.exit_code);
    } else {
      result.exit_code = 2;
      result.document =
          ordered_json{{"error",
                        {{"code", "ParseError"},
                         {"message", "unknown command '" + cfg.command + "'"}}}};
    }
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.code());
    result.document = error_document(e);
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.document =
        ordered_json{{"error", {{"code", "InternalError"}, {"message", e.what()}}}};
  }
  return result;
}

std::string render(const RunResult& result, const RunConfig& cfg) {
  if (cfg.output_format == "table") {
    std::ostringstream out;
    const ordered_json& d = result.document;
    if (d.contains("error")) {
      out << "error [" << d["error"]["code"].get<std::string>()
          << "]: " << d["error"]["message"].get<std::string>() << "\n";
      return out.str();
    }
    if (d.contains("checks")) {
      for (const auto& c : d["checks"]) {
        out << (c["pass"].get<bool>() ? "PASS  " : "FAIL  ") << c["name"].get<std::string>();
        if (c.contains("value"))
          out << "  (" << c["value"].dump() << " < " << c["bound"].dump() << ")";
        out << "\n";
      }
      out << (d["pass"].get<bool>() ? "all checks passed" : "CHECKS FAILED") << "\n";
      return out.str();
    }
    for (const auto& [key, value] : d.items()) {
      if (key == "S" || key == "T" || key == "C" || key == "racah" || key == "verlinde")
        continue;  // matrices stay in the JSON format
      out << key << ": " << value.dump() << "\n";
    }
    return out.str();
  }
  return result.document.dump(2) + "\n";
}

}  // namespace shadowsum
