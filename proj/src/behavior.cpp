#include "aisnav/behavior.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "aisnav/immune.hpp"

namespace aisnav::behavior {
namespace {

double reduced(double wheel, double percent) {
  return wheel * (1.0 - percent / 100.0);
}

// Structural validity only: the per-tick path accepts any attribute value
// inside the global actuation envelope so that degenerate settings (e.g.
// F=0, never turn) still actuate.
void check_envelope(const AntibodyGenome& g) {
  const GenomeRanges& r = genome_ranges(g.type);  // throws on unknown type
  auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string("actuate: ") + what + " for type " +
                                r.name);
  };
  if (!(g.speed >= 0.0 && g.speed <= kMaxWheelSpeed)) fail("speed out of envelope");
  auto need = [&](const std::optional<double>& v, const AttributeRange& range,
                  double env_lo, double env_hi, const char* name) {
    if (!range.used) return;
    if (!v) fail(name);
    if (!(*v >= env_lo && *v <= env_hi)) fail(name);
  };
  need(g.turn_freq, r.turn_freq, 0.0, 100.0, "turn frequency out of envelope");
  need(g.turn_angle, r.turn_angle, 0.0, 200.0, "turn angle out of envelope");
  need(g.right_freq, r.right_freq, 0.0, 100.0, "right frequency out of envelope");
  need(g.right_angle, r.right_angle, 0.0, 200.0, "right angle out of envelope");
  if (r.uses_dir && !g.turn_dir) fail("missing turn direction");
}

double& dir_wheel(WheelCommand& cmd, TurnSide side) {
  return side == TurnSide::kLeft ? cmd.left : cmd.right;
}

WheelCommand wander_step(double speed, Rng& rng) {
  // Straight most of the time, otherwise a forward turn to a random side.
  if (rng.bernoulli(0.9)) return {speed, speed};
  bool left = rng.bernoulli(0.5);
  double cut = rng.uniform(40.0, 80.0);
  WheelCommand cmd{speed, speed};
  dir_wheel(cmd, left ? TurnSide::kLeft : TurnSide::kRight) = reduced(speed, cut);
  return cmd;
}

}  // namespace

WheelCommand actuate(const AntibodyGenome& g, const TargetSighting& sighting,
                     Rng& rng) {
  check_envelope(g);
  const double s = g.speed;
  WheelCommand cmd{s, s};
  switch (g.type) {
    case 0:
      if (rng.bernoulli(*g.turn_freq / 100.0))
        dir_wheel(cmd, *g.turn_dir) = reduced(s, *g.turn_angle);
      break;
    case 1: {
      bool fire_left = rng.bernoulli(*g.turn_freq / 100.0);
      bool fire_right = rng.bernoulli(*g.right_freq / 100.0);
      if (fire_left) cmd.left = reduced(s, *g.turn_angle);
      if (fire_right) cmd.right = reduced(s, *g.right_angle);
      break;
    }
    case 2:
      dir_wheel(cmd, *g.turn_dir) = reduced(s, *g.turn_angle);
      break;
    case 3:
      dir_wheel(cmd, *g.turn_dir) = 0.0;
      break;
    case 4:
      cmd = {-s, -s};
      dir_wheel(cmd, *g.turn_dir) = reduced(-s, *g.turn_angle);
      break;
    case 5: {
      if (sighting.pixel_count <= 0 || sighting.offset == 0.0) break;
      double off = std::min(std::abs(sighting.offset), 1.0);
      double cut = *g.turn_angle * off;
      // steer toward the target: reduce the wheel on the sighting side
      if (sighting.offset < 0.0)
        cmd.left = reduced(s, cut);
      else
        cmd.right = reduced(s, cut);
      break;
    }
    default:
      throw std::invalid_argument("actuate: unknown type");
  }
  return cmd;
}

WheelCommand hand_designed(const SensorFrame& frame, Rng& rng) {
  const double s = 300.0;
  int antigen = immune::classify_antigen(frame);
  switch (antigen) {
    case 0:
      return wander_step(s, rng);
    case 1: {
      // proportional steer toward the target, 30% cut at the image edge
      double cut = 30.0 * std::min(std::abs(frame.offset), 1.0);
      if (frame.offset < 0.0) return {reduced(s, cut), s};
      return {s, reduced(s, cut)};
    }
    case 2:  // obstacle right: turn left
      return {s * 0.3, s};
    case 3:  // obstacle rear: drive straight out
      return {s, s};
    case 4:  // obstacle left: turn right
      return {s, s * 0.3};
    case 5:  // collision right: back out swinging away
      return {-s * 0.3, -s};
    case 6: {
      // collision rear: forward-biased escape turn
      bool left = rng.bernoulli(0.5);
      return left ? WheelCommand{s * 0.3, s} : WheelCommand{s, s * 0.3};
    }
    case 7:  // collision left
      return {-s, -s * 0.3};
    default:
      return {0.0, 0.0};
  }
}

AntibodyGenome random_genome(std::optional<int> type_filter, Rng& rng) {
  int type = type_filter ? *type_filter : rng.uniform_int(0, kGenomeTypes - 1);
  const GenomeRanges& r = genome_ranges(type);
  AntibodyGenome g;
  g.type = type;
  g.speed = rng.uniform(r.speed.lo, r.speed.hi);
  if (r.turn_freq.used) g.turn_freq = rng.uniform(r.turn_freq.lo, r.turn_freq.hi);
  if (r.turn_angle.used)
    g.turn_angle = rng.uniform(r.turn_angle.lo, r.turn_angle.hi);
  if (r.uses_dir)
    g.turn_dir = rng.bernoulli(0.5) ? TurnSide::kLeft : TurnSide::kRight;
  if (r.right_freq.used)
    g.right_freq = rng.uniform(r.right_freq.lo, r.right_freq.hi);
  if (r.right_angle.used)
    g.right_angle = rng.uniform(r.right_angle.lo, r.right_angle.hi);
  return g;
}

}  // namespace aisnav::behavior
