#pragma once

#include <string>
#include <vector>

#include "aisnav/rng.hpp"

namespace aisnav::sim {

struct Circle {
  double x = 0.0, y = 0.0, r = 0.0;
};

struct Box {
  double cx = 0.0, cy = 0.0, hw = 0.0, hh = 0.0;  // center + half extents
};

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
};

// A shape placed at build time rather than authored at a fixed position.
struct ScatterSpec {
  enum Kind { kPillar, kBlock } kind = kPillar;
  int count = 0;
  double a = 0.0;  // radius, or block width
  double b = 0.0;  // block height
};

// Editable world description (the on-disk format).
struct WorldTemplate {
  std::string name;
  double width = 0.0, height = 0.0;
  double target_radius = 0.0;
  Rect mission_zone, wanderer_zone, target_zone;
  std::vector<Circle> pillars;
  std::vector<Box> blocks;
  std::vector<ScatterSpec> scatter;
  bool wanderer = true;
};

// A fully placed arena: every shape and the target have positions.
struct WorldSpec {
  std::string name;
  double width = 0.0, height = 0.0;
  std::vector<Circle> pillars;
  std::vector<Box> blocks;
  Circle target;
  Rect mission_zone, wanderer_zone;
  bool wanderer = true;
};

// Key-value + shape-list text format. Throws with the offending line on
// malformed input.
WorldTemplate parse_world(const std::string& text);
std::string serialize_world(const WorldTemplate& tmpl);

// Built-in arena definitions: world1, world2, pen.
const std::string& builtin_world_text(const std::string& name);
std::vector<std::string> builtin_world_names();

// Builtin name, or a path to a world file.
WorldTemplate load_world(const std::string& name_or_path);

// Resolve target placement and scattered shapes, retrying until the
// coarse-grid flood fill confirms the target is reachable from every free
// cell of the mission zone.
WorldSpec build_world(const WorldTemplate& tmpl, Rng& rng);
WorldSpec build_world(const std::string& name_or_path, Rng& rng);

bool target_reachable(const WorldSpec& world);

}  // namespace aisnav::sim
