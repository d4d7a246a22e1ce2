#pragma once

#include <optional>
#include <string>

namespace aisnav {

enum class TurnSide { kLeft, kRight };

inline const char* side_name(TurnSide s) {
  return s == TurnSide::kLeft ? "left" : "right";
}

// One behavior: a type code plus its attribute values. Attributes a type
// does not use are left empty.
//
//   0 wander, one turning wheel      S, F, A, D
//   1 wander, both wheels            S, F, A, Rf, Ra
//   2 forward turn                   S, A, D
//   3 static (pivot) turn            S, A=100, D
//   4 reverse turn                   S, A, D
//   5 track target                   S, A
struct AntibodyGenome {
  int type = 0;                       // 0..5
  double speed = 0.0;                 // S, speed units/s
  std::optional<double> turn_freq;    // F, % of ticks the turn fires
  std::optional<double> turn_angle;   // A, % wheel-speed reduction
  std::optional<TurnSide> turn_dir;   // D, which wheel is reduced
  std::optional<double> right_freq;   // Rf, % of ticks for the right wheel
  std::optional<double> right_angle;  // Ra, % right-wheel reduction

  bool operator==(const AntibodyGenome&) const = default;
};

inline constexpr int kGenomeTypes = 6;

struct AttributeRange {
  double lo = 0.0;
  double hi = 0.0;
  bool used = false;
};

struct GenomeRanges {
  const char* name = "";
  AttributeRange speed;
  AttributeRange turn_freq;
  AttributeRange turn_angle;
  bool uses_dir = false;
  AttributeRange right_freq;
  AttributeRange right_angle;
};

// Per-type attribute limits.
const GenomeRanges& genome_ranges(int type);

// Strict range/presence validation; throws std::invalid_argument naming
// the first violated constraint.
void validate_genome(const AntibodyGenome& g);

// name=value rendering used by seed files and traces.
std::string genome_to_string(const AntibodyGenome& g);

}  // namespace aisnav
