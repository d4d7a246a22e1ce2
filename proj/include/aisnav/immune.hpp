#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aisnav/genome.hpp"
#include "aisnav/grid.hpp"
#include "aisnav/rng.hpp"
#include "aisnav/sensor.hpp"

namespace aisnav::ga {
struct SeedFile;
}

namespace aisnav::immune {

// Antigen codes. Exactly one is active per tick.
enum Antigen : int {
  kTargetUnseen = 0,
  kTargetSeen = 1,
  kObstacleRight = 2,
  kObstacleRear = 3,
  kObstacleLeft = 4,
  kCollisionRight = 5,
  kCollisionRear = 6,
  kCollisionLeft = 7,
};

inline constexpr int kAntigenCount = 8;
inline constexpr int kAntibodySets = 5;

// Max-IR boundaries between the antigen classes.
inline constexpr double kObstacleIr = 250.0;
inline constexpr double kCollisionIr = 2400.0;

struct ImmuneParams {
  double rho = 8.0;   // collision weight in set fitness
  double phi = 20.0;  // seed score scale
  double b = 100.0;   // clone count per unit strength-of-match
  double k1 = 0.85;   // stimulation gain
  double k2 = 1.10;   // suppression gain
  double k3 = 0.0;    // clone death rate
  double concentration_scale = 25.0;  // total concentration budget
  double base_clones = 1000.0;

  int idiotope_period = 120;  // ticks between idiotope rebuilds
  int wander_limit = 250;     // consecutive target-unseen ticks tolerated
  int obstacle_limit = 15;    // consecutive obstacle/collision ticks tolerated
  double penalty_idiotypic = 0.5;
  double penalty_plain = 1.0;
  double replace_threshold = 0.1;

  bool idiotypic = true;
  bool seeded = true;
};

// Evolved-set statistics read from a seed file: completion time, collision
// count, and per-antibody cumulative reinforcement totals.
struct SeedStats {
  std::vector<double> tau;
  std::vector<double> collisions;
  Grid<double> rl_totals;  // sets x antigens
};

// The full antibody system: one genome per (set, antigen) cell plus the
// live selection state derived from them.
struct Repertoire {
  Grid<AntibodyGenome> antibodies;
  Grid<double> paratope;       // match scores in [0, 1]
  Grid<uint8_t> idiotope;      // 0/1 flags, at most one per set
  Grid<double> clones;         // refreshed by idiotypic_select
  Grid<double> concentration;  // refreshed by idiotypic_select
  std::vector<double> initial_column_means;

  int sets() const { return paratope.rows(); }
  int antigens() const { return paratope.cols(); }
};

// --- classification -------------------------------------------------------

// Map a sensor frame to the active antigen: the max IR reading picks the
// severity band, the arg-max ray's sector picks the side, and the camera
// splits target seen/unseen when nothing is near.
int classify_antigen(const SensorFrame& frame);

// --- seeding --------------------------------------------------------------

// Relative fitness of each evolved set; weights sum to 1. Rejects any set
// whose tau + rho*c is not positive.
std::vector<double> relative_fitness(const SeedStats& stats, double rho);

// Seed score for one antibody: rl_total * mu / phi, clamped to [0, 1].
double paratope_from_seed(double rl_total, double mu, double phi);

// Fresh random repertoire: genomes drawn uniformly over all types, scores
// uniform in [0.25, 0.75]. Draw order: all genomes row-major, then all
// scores row-major, then the idiotope.
Repertoire init_unseeded(Rng& rng);

// Repertoire built from an evolved seed file.
Repertoire init_seeded(const ga::SeedFile& seed, const ImmuneParams& params,
                       Rng& rng);

// --- matrix maintenance ----------------------------------------------------

std::vector<double> column_means(const Grid<double>& paratope);

// Flag candidate weak spots (score below its column mean), then keep at
// most one flag per set, chosen uniformly among that set's candidates.
Grid<uint8_t> rebuild_idiotope(const Grid<double>& paratope, Rng& rng);

// Rescale every column so its mean returns to the initial value. Returns
// the number of cells clamped back into [0, 1]. Throws on a zero current
// column mean (degenerate column).
int renormalize(Grid<double>& paratope, const std::vector<double>& sigma0);

// Same, but leaves degenerate columns (zero current or zero initial mean)
// untouched instead of throwing; used on the per-tick update path.
int renormalize_lenient(Grid<double>& paratope, const std::vector<double>& sigma0);

// --- clone dynamics and selection ------------------------------------------

// Clone count for one antibody at the given strength-of-match.
double clone_count(double strength, const ImmuneParams& params);

// Normalized concentrations; their sum equals the concentration budget.
// Rejects an all-zero clone matrix.
Grid<double> concentrations(const Grid<double>& clones, double scale);

// Highest score in the antigen's column; ties go to the lowest set index.
int stage1_select(const Grid<double>& paratope, int antigen);

// Strength-of-match increase driven by the winner's idiotope.
double stimulation(int set, int winner, const Grid<double>& paratope,
                   const Grid<uint8_t>& idiotope, const Grid<double>& conc,
                   const ImmuneParams& params);

// Strength-of-match reduction driven by this set's own idiotope.
double suppression(int set, int winner, const Grid<double>& paratope,
                   const Grid<uint8_t>& idiotope, const Grid<double>& conc,
                   const ImmuneParams& params);

struct Selection {
  int winner = 0;   // final (stage-3) set index
  int stage1 = 0;   // paratope arg-max set index
  bool differed = false;
  std::vector<double> activation;  // stage-3 score per set
};

// Three-stage selection: paratope arg-max, stimulation/suppression
// adjustment, then activation (concentration x adjusted strength).
// Clone and concentration state is recomputed from the current scores on
// every call and stored back into the repertoire.
Selection idiotypic_select(Repertoire& rep, int antigen, const ImmuneParams& params);

// --- reinforcement ----------------------------------------------------------

// Inputs for the transition-dependent reward rows.
struct ScoreContext {
  double marker_offset = 0.0;  // current target offset in the image, [-1, 1]
  double ir_old = 0.0;         // previous max IR reading
  double ir_new = 0.0;         // current max IR reading
};

// Reward for the antigen transition old -> new:
//   0->0 +0.05   1->0 -0.10   2..7->0 +0.10   0->1 +0.10   2..7->1 +0.20
//   0->1..7 and 1->2..7 -0.05
//   1->1: 0.05 scaled linearly by how centered the target is
//   2..7->2..7: -0.40 + 0.90*g, where g grades the IR/severity change
double rl_score(int old_antigen, int new_antigen, const ScoreContext& ctx);

// Add a reward to the active antibody's score, clamp to [0, 1], then
// renormalize column means. Returns the renormalization clamp count.
int apply_rl(Repertoire& rep, int set, int antigen, double score);

struct StagnationCounters {
  int wander = 0;    // consecutive target-unseen ticks
  int obstacle = 0;  // consecutive obstacle/collision ticks
};

// If either counter exceeded its limit, dock the active antibody's score
// (0.5 idiotypic, 1.0 otherwise), clamp, renormalize, and reset the
// tripped counter. Returns whether a penalty fired.
bool stagnation_penalty(Repertoire& rep, int set, int antigen,
                        StagnationCounters& counters, const ImmuneParams& params);

// Unseeded systems only: antibodies scoring below the threshold are
// replaced by fresh random genomes with scores redrawn from [0.25, 0.75].
// Returns the number replaced; no-op when seeded.
int replace_weak(Repertoire& rep, Rng& rng, const ImmuneParams& params);

// --- controller --------------------------------------------------------------

// Per-tick antibody arbitration: classify the antigen, score the previous
// antibody, apply stagnation penalties and replacement, rebuild the
// idiotope on its cadence, then select the next antibody.
class ImmuneController {
 public:
  ImmuneController(Repertoire rep, ImmuneParams params, Rng rng);

  const AntibodyGenome& step(const SensorFrame& frame);

  const Repertoire& repertoire() const { return rep_; }
  const ImmuneParams& params() const { return params_; }

  long ticks() const { return tick_; }
  long idiotypic_differences() const { return diff_count_; }
  long rl_events() const { return rl_events_; }
  long penalties() const { return penalties_; }
  long replacements() const { return replacements_; }
  long renorm_clamps() const { return clamp_count_; }
  double diff_rate() const {
    return tick_ > 0 ? static_cast<double>(diff_count_) / static_cast<double>(tick_) : 0.0;
  }

  int last_antigen() const { return last_antigen_; }
  int last_set() const { return last_set_; }
  double last_score() const { return last_score_; }

 private:
  Repertoire rep_;
  ImmuneParams params_;
  Rng rng_;

  long tick_ = 0;
  long diff_count_ = 0;
  long rl_events_ = 0;
  long penalties_ = 0;
  long replacements_ = 0;
  long clamp_count_ = 0;

  std::optional<int> prev_antigen_;
  int prev_set_ = 0;
  double prev_ir_max_ = 0.0;
  StagnationCounters counters_;

  int last_antigen_ = -1;
  int last_set_ = -1;
  double last_score_ = 0.0;
};

}  // namespace aisnav::immune
