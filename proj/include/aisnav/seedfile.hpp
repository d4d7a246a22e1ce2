#pragma once

#include <array>
#include <string>
#include <vector>

#include "aisnav/genome.hpp"

namespace aisnav::ga {

inline constexpr int kSeedSets = 5;
inline constexpr int kSlotsPerSet = 8;  // one behavior per antigen

// One evolved antibody set plus the trial statistics used for seeding.
struct SeedSet {
  std::array<AntibodyGenome, kSlotsPerSet> genomes{};
  double tau = 0.0;          // task completion time, s
  double collisions = 0.0;   // collision count
  std::array<double, kSlotsPerSet> rl_totals{};  // cumulative reward per slot
};

struct SeedFile {
  int version = 1;
  std::string world;
  std::vector<SeedSet> sets;  // exactly kSeedSets

  bool operator==(const SeedFile&) const = default;
};

// Plain-text, line-oriented serialization; round-trips exactly.
std::string serialize_seed(const SeedFile& file);

// Parses and validates: set count, genome attribute ranges, positive tau.
// Errors name the offending record.
SeedFile parse_seed(const std::string& text);

void write_seed(const std::string& path, const SeedFile& file);
SeedFile read_seed(const std::string& path);

}  // namespace aisnav::ga
