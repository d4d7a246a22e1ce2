#include "aisnav/genome.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace aisnav {
namespace {

constexpr AttributeRange used(double lo, double hi) { return {lo, hi, true}; }
constexpr AttributeRange unused() { return {}; }

const std::array<GenomeRanges, kGenomeTypes> kRanges = {{
    {"wander_single", used(50, 400), used(10, 90), used(10, 110), true,
     unused(), unused()},
    {"wander_both", used(50, 400), used(10, 90), used(10, 110), false,
     used(10, 90), used(10, 110)},
    {"forward_turn", used(50, 400), unused(), used(20, 200), true, unused(),
     unused()},
    {"static_turn", used(50, 100), unused(), used(100, 100), true, unused(),
     unused()},
    {"reverse_turn", used(300, 400), unused(), used(20, 200), true, unused(),
     unused()},
    {"track_target", used(50, 400), unused(), used(0, 30), false, unused(),
     unused()},
}};

void check_attr(const char* type_name, const char* attr,
                const std::optional<double>& value, const AttributeRange& r) {
  if (!r.used) {
    if (value)
      throw std::invalid_argument(std::string("genome: type ") + type_name +
                                  " does not use attribute " + attr);
    return;
  }
  if (!value)
    throw std::invalid_argument(std::string("genome: type ") + type_name +
                                " is missing attribute " + attr);
  if (*value < r.lo || *value > r.hi) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "genome: %s=%g out of range [%g, %g] for type %s",
                  attr, *value, r.lo, r.hi, type_name);
    throw std::invalid_argument(buf);
  }
}

}  // namespace

const GenomeRanges& genome_ranges(int type) {
  if (type < 0 || type >= kGenomeTypes)
    throw std::invalid_argument("genome: unknown type " + std::to_string(type));
  return kRanges[static_cast<size_t>(type)];
}

void validate_genome(const AntibodyGenome& g) {
  const GenomeRanges& r = genome_ranges(g.type);
  if (g.speed < r.speed.lo || g.speed > r.speed.hi) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "genome: S=%g out of range [%g, %g] for type %s",
                  g.speed, r.speed.lo, r.speed.hi, r.name);
    throw std::invalid_argument(buf);
  }
  check_attr(r.name, "F", g.turn_freq, r.turn_freq);
  check_attr(r.name, "A", g.turn_angle, r.turn_angle);
  check_attr(r.name, "Rf", g.right_freq, r.right_freq);
  check_attr(r.name, "Ra", g.right_angle, r.right_angle);
  if (r.uses_dir && !g.turn_dir)
    throw std::invalid_argument(std::string("genome: type ") + r.name +
                                " is missing attribute D");
  if (!r.uses_dir && g.turn_dir)
    throw std::invalid_argument(std::string("genome: type ") + r.name +
                                " does not use attribute D");
}

std::string genome_to_string(const AntibodyGenome& g) {
  char buf[64];
  std::string out = "type=" + std::to_string(g.type);
  auto num = [&](const char* k, double v) {
    std::snprintf(buf, sizeof(buf), " %s=%.17g", k, v);
    out += buf;
  };
  num("S", g.speed);
  if (g.turn_freq) num("F", *g.turn_freq);
  if (g.turn_angle) num("A", *g.turn_angle);
  if (g.turn_dir) out += std::string(" D=") + side_name(*g.turn_dir);
  if (g.right_freq) num("Rf", *g.right_freq);
  if (g.right_angle) num("Ra", *g.right_angle);
  return out;
}

}  // namespace aisnav
