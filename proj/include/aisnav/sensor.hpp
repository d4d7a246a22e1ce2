#pragma once

#include <array>

namespace aisnav {

// IR readings saturate at this value when touching an obstacle.
inline constexpr double kIrCeiling = 4095.0;

// Eight IR rays at e-puck-like body angles, radians from the heading,
// positive counterclockwise. Rays 0..3 sweep the right side front to
// rear, rays 4..7 mirror them on the left.
inline constexpr std::array<double, 8> kIrRayAngles = {
    -0.296706, -0.855211, -1.570796, -2.617994,
    2.617994,  1.570796,  0.855211,  0.296706,
};

enum class IrSector { kRight, kRear, kLeft };

// Sector partition used for antigen classification: rays 0..2 right,
// 3..4 rear, 5..7 left.
inline IrSector ir_sector(int ray) {
  if (ray <= 2) return IrSector::kRight;
  if (ray <= 4) return IrSector::kRear;
  return IrSector::kLeft;
}

// One 32 ms sensor snapshot: IR ring plus the camera's view of the
// target. offset is the target's horizontal position in the image,
// -1 at the left edge, +1 at the right, meaningful when pixel_count > 0.
struct SensorFrame {
  std::array<double, 8> ir{};  // 0..4095, larger means closer
  int pixel_count = 0;         // lit target pixels, 0..45
  double offset = 0.0;
  long tick = 0;

  double ir_max() const {
    double v = ir[0];
    for (double r : ir)
      if (r > v) v = r;
    return v;
  }
  int ir_argmax() const {
    int best = 0;
    for (int k = 1; k < 8; ++k)
      if (ir[k] > ir[best]) best = k;
    return best;
  }
};

struct TargetSighting {
  int pixel_count = 0;
  double offset = 0.0;
};

inline TargetSighting sighting_of(const SensorFrame& frame) {
  return {frame.pixel_count, frame.offset};
}

}  // namespace aisnav
