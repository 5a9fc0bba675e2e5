#include "shadowsum/shadowlink.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "shadowsum/numeric.hpp"
#include "shadowsum/parallel.hpp"

namespace shadowsum {

namespace {

using nlohmann::json;

Weight parse_color(const json& j, int rank) {
  if (!j.is_array()) fail(Errc::ParseError, "color must be an array of integers");
  Weight w;
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail(Errc::ParseError, "color entries must be integers");
    w.push_back(v.get<Int>());
  }
  if (static_cast<int>(w.size()) != rank)
    fail(Errc::ParseError, "color length does not match the algebra rank");
  return w;
}

}  // namespace

LinkDocument parse_link(const json& doc) {
  if (!doc.is_object()) fail(Errc::ParseError, "link document must be a JSON object");

  LinkDocument out;
  try {
    out.algebra = doc.at("algebra").get<std::string>();
    out.level = doc.at("level").get<int>();
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("missing or malformed algebra/level: ") + e.what());
  }
  const int rank = parse_algebra_spec(out.algebra).rank;
  if (out.level < 1) fail(Errc::InvalidLevel, "level must be >= 1");

  ColoredLink& link = out.link;
  if (doc.contains("surface")) {
    if (!doc["surface"].is_object() || !doc["surface"].contains("genus"))
      fail(Errc::ParseError, "surface must be an object with a genus field");
    link.genus = doc["surface"]["genus"].get<int>();
    if (link.genus < 0) fail(Errc::ParseError, "genus must be nonnegative");
  }

  const std::string model = doc.value("model", std::string("forest"));
  if (model == "forest") {
    link.model = LinkModel::Forest;
  } else if (model == "explicit") {
    link.model = LinkModel::Explicit;
  } else {
    fail(Errc::ParseError, "model must be 'forest' or 'explicit'");
  }
  if (link.model == LinkModel::Forest && link.genus != 0)
    fail(Errc::ForestGenusMismatch, "the forest model describes links on S^2 (genus 0)");

  std::map<std::string, int> loop_ids;
  if (doc.contains("loops")) {
    if (!doc["loops"].is_array()) fail(Errc::ParseError, "loops must be an array");
    for (const auto& lj : doc["loops"]) {
      ColoredLink::Loop loop;
      try {
        loop.id = lj.at("id").get<std::string>();
      } catch (const json::exception&) {
        fail(Errc::ParseError, "every loop needs an id");
      }
      if (!loop_ids.emplace(loop.id, static_cast<int>(link.loops.size())).second)
        fail(Errc::DuplicateId, "duplicate loop id '" + loop.id + "'");
      if (!lj.contains("color")) fail(Errc::ParseError, "loop '" + loop.id + "' has no color");
      loop.color = parse_color(lj["color"], rank);
      loop.winding = lj.value("winding", Int(1));
      loop.inside_is_plus = lj.value("inside_is_plus", true);
      if (lj.contains("parent") && !lj["parent"].is_null())
        loop.parent = lj["parent"].get<std::string>();
      if (lj.contains("plus_face")) loop.plus_face = lj["plus_face"].get<std::string>();
      if (lj.contains("minus_face")) loop.minus_face = lj["minus_face"].get<std::string>();
      link.loops.push_back(std::move(loop));
    }
  }

  if (link.model == LinkModel::Forest) {
    for (const auto& loop : link.loops)
      if (loop.parent && !loop_ids.count(*loop.parent))
        fail(Errc::ParseError, "loop '" + loop.id + "' has unknown parent '" + *loop.parent + "'");
  } else {
    if (!doc.contains("faces") || !doc["faces"].is_array())
      fail(Errc::ParseError, "explicit model requires a faces array");
    std::map<std::string, int> face_ids;
    for (const auto& fj : doc["faces"]) {
      ColoredLink::Face face;
      try {
        face.id = fj.at("id").get<std::string>();
        face.euler = fj.at("euler").get<Int>();
      } catch (const json::exception&) {
        fail(Errc::ParseError, "every face needs an id and an euler number");
      }
      if (!face_ids.emplace(face.id, static_cast<int>(link.faces.size())).second)
        fail(Errc::DuplicateId, "duplicate face id '" + face.id + "'");
      link.faces.push_back(std::move(face));
    }
    if (!link.loops.empty() && (!doc.contains("sides") || !doc["sides"].is_object()))
      fail(Errc::ParseError, "explicit model requires a sides object");
    const json sides = doc.value("sides", json::object());
    for (const auto& [loop_id, row] : sides.items()) {
      if (!loop_ids.count(loop_id))
        fail(Errc::ParseError, "sides mention unknown loop '" + loop_id + "'");
      for (const auto& [face_id, v] : row.items()) {
        if (!face_ids.count(face_id))
          fail(Errc::ParseError, "sides mention unknown face '" + face_id + "'");
        const int s = v.get<int>();
        if (s != 1 && s != -1) fail(Errc::ParseError, "side values must be +1 or -1");
        link.sides[loop_id][face_id] = s;
      }
    }
    if (doc.contains("base_face")) {
      link.base_face = doc["base_face"].get<std::string>();
      if (!face_ids.count(*link.base_face))
        fail(Errc::ParseError, "unknown base face '" + *link.base_face + "'");
    }
  }

  if (doc.contains("vertical")) {
    if (!doc["vertical"].is_array()) fail(Errc::ParseError, "vertical must be an array");
    for (const auto& vj : doc["vertical"]) {
      ColoredLink::Vertical v;
      if (vj.contains("at") && !vj["at"].is_null()) v.at = vj["at"].get<std::string>();
      if (!vj.contains("color")) fail(Errc::ParseError, "vertical point has no color");
      v.color = parse_color(vj["color"], rank);
      link.vertical.push_back(std::move(v));
    }
  }
  return out;
}

LinkDocument parse_link_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return parse_link(doc);
}

LinkDocument parse_link_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open link document '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_link_text(buf.str());
}

namespace {

Shadow derive_forest(const ColoredLink& link) {
  const int n = static_cast<int>(link.loops.size());
  std::map<std::string, int> loop_index;
  for (int j = 0; j < n; ++j) loop_index[link.loops[j].id] = j;

  std::vector<int> parent(n, -1);
  std::vector<std::vector<int>> children(n);
  std::vector<int> roots;
  for (int j = 0; j < n; ++j) {
    if (link.loops[j].parent) {
      parent[j] = loop_index.at(*link.loops[j].parent);
      children[parent[j]].push_back(j);
    } else {
      roots.push_back(j);
    }
  }
  // nesting depth doubles as a cycle check
  std::vector<int> depth(n, -1);
  for (int j = 0; j < n; ++j) {
    int hops = 0, cur = j;
    while (cur >= 0) {
      cur = parent[cur];
      if (++hops > n) fail(Errc::ParseError, "loop parents form a cycle");
    }
    depth[j] = hops;
  }

  Shadow sh;
  sh.genus = 0;
  // face 0: the outer face; face j+1: the region directly inside loop j
  sh.face_ids.push_back("(outer)");
  for (int j = 0; j < n; ++j) sh.face_ids.push_back(link.loops[j].id);
  sh.euler.assign(n + 1, 0);
  sh.euler[0] = 2 - static_cast<Int>(roots.size());
  for (int j = 0; j < n; ++j) sh.euler[j + 1] = 1 - static_cast<Int>(children[j].size());
  sh.base_face = 0;

  auto is_inside = [&](int face, int j) {
    // face j+1 lies inside loop c iff c is j or an ancestor of... the face
    // directly inside loop f is inside loop j iff j is f or an ancestor of f.
    if (face == 0) return false;
    int cur = face - 1;
    while (cur >= 0) {
      if (cur == j) return true;
      cur = parent[cur];
    }
    return false;
  };

  sh.side.assign(n + 1, std::vector<int>(n, -1));
  for (int f = 0; f <= n; ++f)
    for (int j = 0; j < n; ++j)
      sh.side[f][j] = (is_inside(f, j) == link.loops[j].inside_is_plus) ? 1 : -1;

  for (int j = 0; j < n; ++j) {
    Shadow::LoopData ld;
    ld.id = link.loops[j].id;
    ld.color = link.loops[j].color;
    ld.winding = link.loops[j].winding;
    const int inner = j + 1;
    const int outer = parent[j] < 0 ? 0 : parent[j] + 1;
    ld.plus_face = link.loops[j].inside_is_plus ? inner : outer;
    ld.minus_face = link.loops[j].inside_is_plus ? outer : inner;
    sh.loops.push_back(std::move(ld));
  }

  // gleam(Y) sums winding * side over the loops bounding Y
  sh.gleam.assign(n + 1, 0);
  for (int j = 0; j < n; ++j) {
    const int inner = j + 1;
    const int outer = parent[j] < 0 ? 0 : parent[j] + 1;
    sh.gleam[inner] += link.loops[j].winding * sh.side[inner][j];
    sh.gleam[outer] += link.loops[j].winding * sh.side[outer][j];
  }

  for (const auto& v : link.vertical) {
    Shadow::VerticalData vd;
    if (v.at) {
      auto it = loop_index.find(*v.at);
      if (it == loop_index.end())
        fail(Errc::ParseError, "vertical point at unknown loop '" + *v.at + "'");
      vd.face = it->second + 1;
    } else {
      vd.face = 0;
    }
    vd.color = v.color;
    sh.vertical.push_back(std::move(vd));
  }
  return sh;
}

Shadow derive_explicit(const ColoredLink& link) {
  Shadow sh;
  sh.genus = link.genus;
  std::map<std::string, int> face_index;
  for (const auto& f : link.faces) {
    face_index[f.id] = static_cast<int>(sh.face_ids.size());
    sh.face_ids.push_back(f.id);
    sh.euler.push_back(f.euler);
  }
  const int fcount = sh.face_count();
  if (fcount == 0) fail(Errc::ParseError, "explicit shadow needs at least one face");

  Int chi_sum = 0;
  for (Int e : sh.euler) chi_sum += e;
  if (chi_sum != 2 - 2 * static_cast<Int>(sh.genus))
    fail(Errc::EulerMismatch, "face Euler numbers do not sum to 2 - 2g");

  const int n = static_cast<int>(link.loops.size());
  sh.side.assign(fcount, std::vector<int>(n, 0));
  for (int j = 0; j < n; ++j) {
    const auto& loop = link.loops[j];
    if (!loop.plus_face || !loop.minus_face)
      fail(Errc::ParseError, "explicit loop '" + loop.id + "' needs plus_face and minus_face");
    auto pf = face_index.find(*loop.plus_face);
    auto mf = face_index.find(*loop.minus_face);
    if (pf == face_index.end() || mf == face_index.end())
      fail(Errc::ParseError, "loop '" + loop.id + "' references an unknown face");
    if (pf->second == mf->second)
      fail(Errc::SideInconsistent, "loop '" + loop.id + "' must touch two distinct faces");

    auto row = link.sides.find(loop.id);
    if (row == link.sides.end())
      fail(Errc::ParseError, "no side data for loop '" + loop.id + "'");
    for (int f = 0; f < fcount; ++f) {
      auto cell = row->second.find(sh.face_ids[f]);
      if (cell == row->second.end())
        fail(Errc::ParseError, "side of face '" + sh.face_ids[f] + "' w.r.t. loop '" + loop.id +
                                   "' is missing");
      sh.side[f][j] = cell->second;
    }

    Shadow::LoopData ld;
    ld.id = loop.id;
    ld.color = loop.color;
    ld.winding = loop.winding;
    ld.plus_face = pf->second;
    ld.minus_face = mf->second;
    if (sh.side[ld.plus_face][j] != 1 || sh.side[ld.minus_face][j] != -1)
      fail(Errc::SideInconsistent,
           "side matrix disagrees with plus/minus faces of loop '" + loop.id + "'");
    sh.loops.push_back(std::move(ld));
  }

  sh.gleam.assign(fcount, 0);
  for (int j = 0; j < n; ++j) {
    sh.gleam[sh.loops[j].plus_face] += sh.loops[j].winding;
    sh.gleam[sh.loops[j].minus_face] -= sh.loops[j].winding;
  }

  sh.base_face = 0;
  if (link.base_face) sh.base_face = face_index.at(*link.base_face);

  for (const auto& v : link.vertical) {
    if (!v.at) fail(Errc::ParseError, "explicit vertical points need a face id");
    auto it = face_index.find(*v.at);
    if (it == face_index.end())
      fail(Errc::ParseError, "vertical point at unknown face '" + *v.at + "'");
    sh.vertical.push_back({it->second, v.color});
  }
  return sh;
}

}  // namespace

Shadow derive_shadow(const ColoredLink& link) {
  Shadow sh =
      link.model == LinkModel::Forest ? derive_forest(link) : derive_explicit(link);

  Int chi_sum = 0, gleam_sum = 0;
  for (Int e : sh.euler) chi_sum += e;
  for (Int g : sh.gleam) gleam_sum += g;
  if (chi_sum != 2 - 2 * static_cast<Int>(sh.genus))
    fail(Errc::EulerMismatch, "Euler characteristics do not sum to 2 - 2g");
  if (gleam_sum != 0) fail(Errc::SideInconsistent, "gleams do not sum to zero");
  return sh;
}

Shadow empty_shadow(int genus) {
  Shadow sh;
  sh.genus = genus;
  sh.face_ids.push_back("(all)");
  sh.euler.push_back(2 - 2 * static_cast<Int>(genus));
  sh.gleam.push_back(0);
  sh.base_face = 0;
  return sh;
}

namespace {

struct StateSumPlan {
  int n = 0;       // alcove size
  int fcount = 0;  // faces
  // per-face complex weight per color: dim^chi * v^gleam * vertical ratios
  std::vector<std::vector<std::complex<double>>> face_weight;
  // loops grouped by the face position that completes their color pair
  struct LoopFactor {
    const std::vector<Int>* table;  // Racah integers, row-major a*n+b
    int plus_face, minus_face;
  };
  std::vector<std::vector<LoopFactor>> close_at;  // [face] -> factors
};

StateSumPlan make_plan(const ModularData& md, const Shadow& sh, FusionCache& cache) {
  StateSumPlan plan;
  plan.n = static_cast<int>(md.alcove.size());
  plan.fcount = sh.face_count();

  for (const auto& loop : sh.loops)
    if (md.alcove_index(loop.color) < 0)
      fail(Errc::ColorNotInAlcove, "loop '" + loop.id + "' color outside the alcove");
  for (const auto& v : sh.vertical)
    if (md.alcove_index(v.color) < 0)
      fail(Errc::ColorNotInAlcove, "vertical color outside the alcove");

  plan.face_weight.assign(plan.fcount, std::vector<std::complex<double>>(plan.n));
  for (int f = 0; f < plan.fcount; ++f) {
    for (int s = 0; s < plan.n; ++s) {
      const double d = qdim(md, md.alcove[s]);
      std::complex<double> w = int_pow(d, sh.euler[f]);
      w *= cpow_int(md.t.at(s, s), sh.gleam[f]);
      plan.face_weight[f][s] = w;
    }
  }
  for (const auto& v : sh.vertical) {
    const int g = md.alcove_index(v.color);
    for (int s = 0; s < plan.n; ++s)
      plan.face_weight[v.face][s] *= md.s.at(g, s) / md.s.at(0, s);
  }

  plan.close_at.assign(plan.fcount, {});
  for (const auto& loop : sh.loops) {
    StateSumPlan::LoopFactor lf;
    lf.table = &cache.table(loop.color);
    lf.plus_face = loop.plus_face;
    lf.minus_face = loop.minus_face;
    plan.close_at[std::max(loop.plus_face, loop.minus_face)].push_back(lf);
  }
  return plan;
}

// Depth-first over colorings of faces [depth, fcount), with sigma[0..depth)
// already fixed and `partial` their accumulated weight.
void dfs_sum(const StateSumPlan& plan, std::vector<int>& sigma, int depth,
             std::complex<double> partial, KahanSum& acc) {
  if (depth == plan.fcount) {
    acc.add(partial);
    return;
  }
  for (int s = 0; s < plan.n; ++s) {
    sigma[depth] = s;
    double fusion = 1.0;
    for (const auto& lf : plan.close_at[depth]) {
      const Int nval =
          (*lf.table)[static_cast<std::size_t>(sigma[lf.plus_face]) * plan.n +
                      sigma[lf.minus_face]];
      if (nval == 0) {
        fusion = 0.0;
        break;
      }
      fusion *= static_cast<double>(nval);
    }
    if (fusion == 0.0) continue;
    dfs_sum(plan, sigma, depth + 1, partial * fusion * plan.face_weight[depth][s], acc);
  }
}

}  // namespace

std::complex<double> shadow_state_sum(const ModularData& md, const Shadow& sh,
                                      FusionCache& cache) {
  const StateSumPlan plan = make_plan(md, sh, cache);

  double work = 1.0;
  for (int f = 0; f < plan.fcount; ++f) work *= plan.n;

  if (plan.fcount == 0) return {1.0, 0.0};  // empty product; unreachable in practice

  const int slices = plan.n;
  auto worker = [&](int begin, int end) {
    KahanSum acc;
    std::vector<int> sigma(plan.fcount, 0);
    for (int s = begin; s < end; ++s) {
      sigma[0] = s;
      double fusion = 1.0;
      for (const auto& lf : plan.close_at[0]) {
        const Int nval = (*lf.table)[static_cast<std::size_t>(sigma[lf.plus_face]) * plan.n +
                                     sigma[lf.minus_face]];
        if (nval == 0) {
          fusion = 0.0;
          break;
        }
        fusion *= static_cast<double>(nval);
      }
      if (fusion == 0.0) continue;
      dfs_sum(plan, sigma, 1, fusion * plan.face_weight[0][s], acc);
    }
    return acc.value();
  };
  return parallel_sum_slices(slices, work > 250000.0, worker);
}

std::complex<double> shadow_state_sum(const ModularData& md, const Shadow& sh) {
  FusionCache cache(md);
  return shadow_state_sum(md, sh, cache);
}

std::complex<double> wlo_shadow(const ModularData& md, const Shadow& sh) {
  FusionCache cache(md);
  const std::complex<double> xl = shadow_state_sum(md, sh, cache);
  const std::complex<double> xe = shadow_state_sum(md, empty_shadow(sh.genus), cache);
  return xl / xe;
}

}  // namespace shadowsum
