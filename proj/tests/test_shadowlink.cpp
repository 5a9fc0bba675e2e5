#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "links.hpp"
#include "shadowsum/cssum.hpp"
#include "shadowsum/numeric.hpp"

using namespace shadowsum;

namespace {

ModularData md_for(const char* name, int k) {
  return build_modular_data(parse_algebra_spec(name), k);
}

std::complex<double> example1_closed_form(const ModularData& md, const Weight& la,
                                          const Weight& mu, const Weight& nu) {
  const int a = md.alcove_index(la), b = md.alcove_index(mu), c = md.alcove_index(nu);
  const std::complex<double> t00 = md.t.at(0, 0);
  const std::complex<double> s00 = md.s.at(0, 0);
  const double n = double(racah_fusion(md, la, mu, conjugates(md.rs, nu).second));
  // N_{lmn} = N^{nu*}_{l mu}
  return md.t.at(a, a) * md.t.at(b, b) * md.t.at(c, c) / (t00 * t00 * t00 * s00 * s00) * n;
}

std::complex<double> example2_closed_form(const ModularData& md, const Weight& la,
                                          const Weight& mu, const Weight& nu) {
  const int b = md.alcove_index(mu);
  const std::complex<double> t00 = md.t.at(0, 0);
  const std::complex<double> s00 = md.s.at(0, 0);
  const double n = double(racah_fusion(md, la, mu, conjugates(md.rs, nu).second));
  return md.t.at(b, b) * md.t.at(b, b) / (t00 * t00 * s00 * s00) * n;
}

}  // namespace

TEST_CASE("parse the example-1 document") {
  const char* text = R"({
    "algebra": "A1", "level": 2,
    "surface": {"genus": 0},
    "model": "forest",
    "loops": [
      {"id": "l1", "color": [1], "winding": 1, "inside_is_plus": true, "parent": null},
      {"id": "l2", "color": [1], "winding": 1, "inside_is_plus": true, "parent": null},
      {"id": "l3", "color": [2], "winding": 1, "inside_is_plus": true, "parent": null}
    ]
  })";
  const LinkDocument doc = parse_link_text(text);
  CHECK(doc.algebra == "A1");
  CHECK(doc.level == 2);
  CHECK(doc.link.genus == 0);
  CHECK(doc.link.loops.size() == 3);
  CHECK(doc.link.loops[2].color == Weight{2});
}

TEST_CASE("parse rejects malformed documents") {
  CHECK_THROWS_AS(parse_link_text("not json"), Error);
  CHECK_THROWS_AS(parse_link_text(R"({"level": 1})"), Error);
  // duplicate loop ids
  CHECK_THROWS_AS(parse_link_text(R"({
    "algebra": "A1", "level": 1, "model": "forest",
    "loops": [{"id": "x", "color": [1]}, {"id": "x", "color": [0]}]
  })"),
                  Error);
  // forest on a positive-genus surface
  try {
    parse_link_text(R"({
      "algebra": "A1", "level": 1, "surface": {"genus": 1}, "model": "forest",
      "loops": []
    })");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ForestGenusMismatch);
  }
  // color length must match the rank
  CHECK_THROWS_AS(parse_link_text(R"({
    "algebra": "A2", "level": 1, "model": "forest",
    "loops": [{"id": "x", "color": [1]}]
  })"),
                  Error);
  // empty document parses
  CHECK(parse_link_text(R"({"algebra": "A1", "level": 1})").link.loops.empty());
}

TEST_CASE("example 1 shadow combinatorics") {
  const Shadow sh = derive_shadow(testlinks::example1(Weight{1}, Weight{1}, Weight{2}));
  REQUIRE(sh.face_count() == 4);
  // face 0 is the outer face
  CHECK(sh.euler == std::vector<Int>{-1, 1, 1, 1});
  CHECK(sh.gleam == std::vector<Int>{-3, 1, 1, 1});
  for (int j = 0; j < 3; ++j) {
    CHECK(sh.loops[j].plus_face == j + 1);
    CHECK(sh.loops[j].minus_face == 0);
    CHECK(sh.side[j + 1][j] == 1);
    CHECK(sh.side[0][j] == -1);
  }
}

TEST_CASE("example 2 shadow combinatorics") {
  const Shadow sh = derive_shadow(testlinks::example2(Weight{1}, Weight{1}, Weight{2}));
  REQUIRE(sh.face_count() == 4);
  // faces: outer, inside-l1 (annulus), inside-l3, inside-l2
  CHECK(sh.euler == std::vector<Int>{0, 0, 1, 1});
  CHECK(sh.gleam == std::vector<Int>{-2, 0, 1, 1});
}

TEST_CASE("empty link shadow") {
  for (int g = 0; g <= 2; ++g) {
    const Shadow sh = empty_shadow(g);
    CHECK(sh.face_count() == 1);
    CHECK(sh.euler[0] == 2 - 2 * Int(g));
    CHECK(sh.gleam[0] == 0);
  }
}

TEST_CASE("derived shadows satisfy the euler and gleam constraints") {
  std::mt19937 rng(23);
  const ModularData md = md_for("A1", 3);
  for (int trial = 0; trial < 40; ++trial) {
    const ColoredLink link = testlinks::random_forest(rng, md.alcove, 4);
    const Shadow sh = derive_shadow(link);
    Int chi = 0, gl = 0;
    for (Int e : sh.euler) chi += e;
    for (Int g : sh.gleam) gl += g;
    CHECK(chi == 2);
    CHECK(gl == 0);
    // plus/minus faces carry the pinned side values
    for (std::size_t j = 0; j < sh.loops.size(); ++j) {
      CHECK(sh.side[sh.loops[j].plus_face][j] == 1);
      CHECK(sh.side[sh.loops[j].minus_face][j] == -1);
    }
  }
}

TEST_CASE("explicit shadow validation") {
  ColoredLink bad = testlinks::genus1_contractible(Weight{1}, 1);
  bad.faces[0].euler = 5;
  CHECK_THROWS_AS(derive_shadow(bad), Error);

  ColoredLink bad_side = testlinks::genus1_contractible(Weight{1}, 1);
  bad_side.sides["l1"]["in"] = -1;
  bad_side.sides["l1"]["out"] = 1;
  try {
    derive_shadow(bad_side);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SideInconsistent);
  }
}

TEST_CASE("empty link state sum") {
  for (const auto& [name, k] : std::vector<std::pair<const char*, int>>{
           {"A1", 3}, {"A2", 1}, {"B2", 1}}) {
    const ModularData md = md_for(name, k);
    for (int g = 0; g <= 2; ++g) {
      double expect = 0.0;
      for (const auto& lam : md.alcove) expect += int_pow(qdim(md, lam), 2 - 2 * Int(g));
      const std::complex<double> got = shadow_state_sum(md, empty_shadow(g));
      CHECK(std::abs(got - std::complex<double>{expect, 0.0}) < 1e-10 * std::abs(expect));
    }
  }
}

TEST_CASE("example 1 equals its closed form") {
  const ModularData md = md_for("A1", 2);
  for (const auto& la : md.alcove)
    for (const auto& mu : md.alcove)
      for (const auto& nu : md.alcove) {
        const Shadow sh = derive_shadow(testlinks::example1(la, mu, nu));
        const std::complex<double> got = shadow_state_sum(md, sh);
        const std::complex<double> expect = example1_closed_form(md, la, mu, nu);
        CHECK(std::abs(got - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
      }
}

TEST_CASE("example 2 equals its closed form") {
  const ModularData md = md_for("A1", 3);
  for (const auto& la : md.alcove)
    for (const auto& mu : md.alcove)
      for (const auto& nu : md.alcove) {
        const Shadow sh = derive_shadow(testlinks::example2(la, mu, nu));
        const std::complex<double> got = shadow_state_sum(md, sh);
        const std::complex<double> expect = example2_closed_form(md, la, mu, nu);
        CHECK(std::abs(got - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
      }
}

TEST_CASE("a zero-colored unknot changes nothing") {
  const ModularData md = md_for("A1", 3);
  ColoredLink link;
  link.loops.push_back({"u", Weight{0}, 2, true, {}, {}, {}});
  const std::complex<double> with_loop = shadow_state_sum(md, derive_shadow(link));
  const std::complex<double> without = shadow_state_sum(md, empty_shadow(0));
  CHECK(std::abs(with_loop - without) < 1e-10 * std::abs(without));
}

TEST_CASE("deleting a zero-colored loop preserves the state sum") {
  std::mt19937 rng(31);
  const ModularData md = md_for("A1", 2);
  for (int trial = 0; trial < 20; ++trial) {
    ColoredLink link = testlinks::random_forest(rng, md.alcove, 3);
    // recolor one loop to zero
    std::uniform_int_distribution<std::size_t> pick(0, link.loops.size() - 1);
    const std::size_t victim = pick(rng);
    link.loops[victim].color = Weight{0};
    const std::complex<double> full = shadow_state_sum(md, derive_shadow(link));

    ColoredLink reduced = link;
    const std::string victim_id = reduced.loops[victim].id;
    const auto victim_parent = reduced.loops[victim].parent;
    reduced.loops.erase(reduced.loops.begin() + static_cast<long>(victim));
    for (auto& loop : reduced.loops)
      if (loop.parent && *loop.parent == victim_id) loop.parent = victim_parent;
    const std::complex<double> cut = shadow_state_sum(md, derive_shadow(reduced));
    CHECK(std::abs(full - cut) <= 1e-10 * std::max(1.0, std::abs(cut)));
  }
}

TEST_CASE("wlo of the empty link is one") {
  const ModularData md = md_for("A2", 2);
  for (int g = 0; g <= 2; ++g)
    CHECK(std::abs(wlo_shadow(md, empty_shadow(g)) - std::complex<double>{1.0, 0.0}) < 1e-12);
}

TEST_CASE("three vertical points give the fusion coefficient") {
  const ModularData md = md_for("A1", 2);
  for (const auto& la : md.alcove)
    for (const auto& mu : md.alcove)
      for (const auto& nu : md.alcove) {
        const Shadow sh = derive_shadow(testlinks::vertical_only({la, mu, nu}));
        const std::complex<double> got = wlo_shadow(md, sh);
        const double expect = double(verlinde_fusion3(md, la, mu, nu).rounded);
        CHECK(std::abs(got - std::complex<double>{expect, 0.0}) < 1e-8);
      }
}

TEST_CASE("state sums reject colors outside the alcove") {
  const ModularData md = md_for("A1", 1);
  ColoredLink link;
  link.loops.push_back({"big", Weight{4}, 1, true, {}, {}, {}});
  CHECK_THROWS_AS(shadow_state_sum(md, derive_shadow(link)), Error);
}

TEST_CASE("genus-1 contractible loop evaluates") {
  const ModularData md = md_for("A1", 2);
  const Shadow sh = derive_shadow(testlinks::genus1_contractible(Weight{1}, 1));
  CHECK(std::isfinite(shadow_state_sum(md, sh).real()));
}

TEST_CASE("bundled link documents parse and evaluate") {
  for (const char* file : {"link_example1.json", "link_example2.json", "link_vertical3.json",
                           "link_mixed.json", "link_genus1.json"}) {
    const LinkDocument doc =
        parse_link_file(std::string(SHADOWSUM_TEST_DATA) + "/" + file);
    const ModularData md = build_modular_data(parse_algebra_spec(doc.algebra), doc.level);
    const Shadow sh = derive_shadow(doc.link);
    CHECK(std::isfinite(shadow_state_sum(md, sh).real()));
  }
}
