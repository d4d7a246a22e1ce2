#pragma once

#include <optional>

#include "aisnav/genome.hpp"
#include "aisnav/rng.hpp"
#include "aisnav/sensor.hpp"

namespace aisnav::behavior {

// Hard wheel-command cap, speed units/s.
inline constexpr double kMaxWheelSpeed = 400.0;

struct WheelCommand {
  double left = 0.0;
  double right = 0.0;
};

// Translate a genome into this tick's wheel speeds. Turn frequencies are
// independent Bernoulli draws per tick; reductions above 100% reverse the
// wheel. Rejects genomes outside the actuation envelope (type, attribute
// presence, speed/angle caps); full per-type range checking lives in
// validate_genome.
WheelCommand actuate(const AntibodyGenome& genome, const TargetSighting& sighting,
                     Rng& rng);

// Fixed baseline controller: random wander when idle, steer toward a
// sighted target, steer away from obstacles, back-turn out of collisions.
WheelCommand hand_designed(const SensorFrame& frame, Rng& rng);

// Uniform draw over types (or the given type) and attribute ranges.
// Draw order: type, S, F, A, D, Rf, Ra.
AntibodyGenome random_genome(std::optional<int> type_filter, Rng& rng);

}  // namespace aisnav::behavior
