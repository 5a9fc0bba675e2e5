#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shadowsum/qracah.hpp"

namespace shadowsum {

enum class LinkModel { Forest, Explicit };

/// Combinatorial colored link in Sigma x S^1 without double points.
/// Forest model: non-intersecting loops on S^2 described by their nesting
/// forest.  Explicit model: arbitrary genus, with faces, Euler numbers and
/// the face/loop side matrix supplied directly.
struct ColoredLink {
  int genus = 0;
  LinkModel model = LinkModel::Forest;

  struct Loop {
    std::string id;
    Weight color;
    Int winding = 1;
    bool inside_is_plus = true;               // forest only
    std::optional<std::string> parent;        // forest only
    std::optional<std::string> plus_face;     // explicit only
    std::optional<std::string> minus_face;    // explicit only
  };
  std::vector<Loop> loops;

  struct Vertical {
    std::optional<std::string> at;  // forest: innermost enclosing loop id (none = outer face);
                                    // explicit: face id
    Weight color;
  };
  std::vector<Vertical> vertical;

  // explicit model only
  struct Face {
    std::string id;
    Int euler = 0;
  };
  std::vector<Face> faces;
  std::map<std::string, std::map<std::string, int>> sides;  // loop id -> face id -> +-1
  std::optional<std::string> base_face;
};

struct LinkDocument {
  std::string algebra;
  int level = 0;
  ColoredLink link;
};

LinkDocument parse_link(const nlohmann::json& doc);
LinkDocument parse_link_text(const std::string& text);
LinkDocument parse_link_file(const std::string& path);

/// The combinatorial shadow: faces with Euler characteristics and gleams,
/// the two faces adjacent to each loop, and the full side matrix.
struct Shadow {
  int genus = 0;
  std::vector<std::string> face_ids;
  std::vector<Int> euler;
  std::vector<Int> gleam;
  int base_face = 0;

  struct LoopData {
    std::string id;
    Weight color;
    Int winding = 1;
    int plus_face = 0;
    int minus_face = 0;
  };
  std::vector<LoopData> loops;

  std::vector<std::vector<int>> side;  // [face][loop] in {+1, -1}

  struct VerticalData {
    int face = 0;
    Weight color;
  };
  std::vector<VerticalData> vertical;

  int face_count() const { return static_cast<int>(face_ids.size()); }

  Shadow with_base(int face) const {
    Shadow s = *this;
    s.base_face = face;
    return s;
  }
};

Shadow derive_shadow(const ColoredLink& link);

/// Shadow of the empty link on a genus-g surface: one face, no loops.
Shadow empty_shadow(int genus);

/// The shadow state sum: exhaustive sum over area colorings of
/// dim^chi * v^gleam * fusion factors, with vertical points contributing
/// S-matrix ratios.  Fusion factors are exact Racah integers; branches
/// with a zero factor are pruned before dim/v evaluation.
std::complex<double> shadow_state_sum(const ModularData& md, const Shadow& sh);
std::complex<double> shadow_state_sum(const ModularData& md, const Shadow& sh,
                                      FusionCache& cache);

/// |X_L| / |X_empty| at the same genus.
std::complex<double> wlo_shadow(const ModularData& md, const Shadow& sh);

}  // namespace shadowsum
