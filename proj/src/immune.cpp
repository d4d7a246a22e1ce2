#include "aisnav/immune.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aisnav/behavior.hpp"
#include "aisnav/seedfile.hpp"

namespace aisnav::immune {
namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_antigen(int code) {
  if (code < 0 || code >= kAntigenCount)
    throw std::invalid_argument("antigen code out of range: " + std::to_string(code));
}

}  // namespace

int classify_antigen(const SensorFrame& frame) {
  for (double v : frame.ir)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("classify_antigen: bad IR reading");
  double vm = frame.ir_max();
  if (vm < kObstacleIr) return frame.pixel_count > 0 ? kTargetSeen : kTargetUnseen;
  bool collision = vm >= kCollisionIr;
  switch (ir_sector(frame.ir_argmax())) {
    case IrSector::kRight:
      return collision ? kCollisionRight : kObstacleRight;
    case IrSector::kRear:
      return collision ? kCollisionRear : kObstacleRear;
    case IrSector::kLeft:
      return collision ? kCollisionLeft : kObstacleLeft;
  }
  return kTargetUnseen;  // unreachable
}

std::vector<double> relative_fitness(const SeedStats& stats, double rho) {
  size_t x = stats.tau.size();
  if (x == 0 || stats.collisions.size() != x)
    throw std::invalid_argument("relative_fitness: malformed stats");
  double inv_sum = 0.0;
  for (size_t k = 0; k < x; ++k) {
    double d = stats.tau[k] + rho * stats.collisions[k];
    if (!(d > 0.0))
      throw std::invalid_argument("relative_fitness: non-positive tau + rho*c for set " +
                                  std::to_string(k));
    inv_sum += 1.0 / d;
  }
  std::vector<double> mu(x);
  for (size_t i = 0; i < x; ++i)
    mu[i] = 1.0 / ((stats.tau[i] + rho * stats.collisions[i]) * inv_sum);
  return mu;
}

double paratope_from_seed(double rl_total, double mu, double phi) {
  if (!(phi > 0.0)) throw std::invalid_argument("paratope_from_seed: phi must be positive");
  return clamp01(rl_total * mu / phi);
}

Repertoire init_unseeded(Rng& rng) {
  Repertoire rep;
  rep.antibodies = Grid<AntibodyGenome>(kAntibodySets, kAntigenCount);
  rep.paratope = Grid<double>(kAntibodySets, kAntigenCount);
  for (int i = 0; i < kAntibodySets; ++i)
    for (int j = 0; j < kAntigenCount; ++j)
      rep.antibodies(i, j) = behavior::random_genome(std::nullopt, rng);
  for (int i = 0; i < kAntibodySets; ++i)
    for (int j = 0; j < kAntigenCount; ++j)
      rep.paratope(i, j) = rng.uniform(0.25, 0.75);
  rep.initial_column_means = column_means(rep.paratope);
  rep.idiotope = rebuild_idiotope(rep.paratope, rng);
  rep.clones = Grid<double>(kAntibodySets, kAntigenCount);
  rep.concentration = Grid<double>(kAntibodySets, kAntigenCount);
  return rep;
}

Repertoire init_seeded(const ga::SeedFile& seed, const ImmuneParams& params,
                       Rng& rng) {
  const int x = static_cast<int>(seed.sets.size());
  if (x == 0) throw std::invalid_argument("init_seeded: empty seed file");
  SeedStats stats;
  stats.rl_totals = Grid<double>(x, kAntigenCount);
  for (int i = 0; i < x; ++i) {
    stats.tau.push_back(seed.sets[static_cast<size_t>(i)].tau);
    stats.collisions.push_back(seed.sets[static_cast<size_t>(i)].collisions);
    for (int j = 0; j < kAntigenCount; ++j)
      stats.rl_totals(i, j) = seed.sets[static_cast<size_t>(i)].rl_totals[static_cast<size_t>(j)];
  }
  std::vector<double> mu = relative_fitness(stats, params.rho);

  Repertoire rep;
  rep.antibodies = Grid<AntibodyGenome>(x, kAntigenCount);
  rep.paratope = Grid<double>(x, kAntigenCount);
  for (int i = 0; i < x; ++i)
    for (int j = 0; j < kAntigenCount; ++j) {
      rep.antibodies(i, j) = seed.sets[static_cast<size_t>(i)].genomes[static_cast<size_t>(j)];
      rep.paratope(i, j) =
          paratope_from_seed(stats.rl_totals(i, j), mu[static_cast<size_t>(i)], params.phi);
    }
  rep.initial_column_means = column_means(rep.paratope);
  rep.idiotope = rebuild_idiotope(rep.paratope, rng);
  rep.clones = Grid<double>(x, kAntigenCount);
  rep.concentration = Grid<double>(x, kAntigenCount);
  return rep;
}

std::vector<double> column_means(const Grid<double>& paratope) {
  if (paratope.rows() == 0) throw std::invalid_argument("column_means: empty matrix");
  std::vector<double> sigma(static_cast<size_t>(paratope.cols()), 0.0);
  for (int j = 0; j < paratope.cols(); ++j) {
    double sum = 0.0;
    for (int i = 0; i < paratope.rows(); ++i) sum += paratope(i, j);
    sigma[static_cast<size_t>(j)] = sum / paratope.rows();
  }
  return sigma;
}

Grid<uint8_t> rebuild_idiotope(const Grid<double>& paratope, Rng& rng) {
  std::vector<double> sigma = column_means(paratope);
  Grid<uint8_t> idiotope(paratope.rows(), paratope.cols(), 0);
  std::vector<int> candidates;
  for (int i = 0; i < paratope.rows(); ++i) {
    candidates.clear();
    for (int j = 0; j < paratope.cols(); ++j)
      if (paratope(i, j) < sigma[static_cast<size_t>(j)]) candidates.push_back(j);
    if (candidates.empty()) continue;
    int keep = candidates.size() == 1
                   ? candidates[0]
                   : candidates[static_cast<size_t>(
                         rng.uniform_int(0, static_cast<int>(candidates.size()) - 1))];
    idiotope(i, keep) = 1;
  }
  return idiotope;
}

namespace {

int renormalize_impl(Grid<double>& paratope, const std::vector<double>& sigma0,
                     bool lenient) {
  if (sigma0.size() != static_cast<size_t>(paratope.cols()))
    throw std::invalid_argument("renormalize: sigma0 size mismatch");
  std::vector<double> current = column_means(paratope);
  int clamps = 0;
  for (int j = 0; j < paratope.cols(); ++j) {
    double cur = current[static_cast<size_t>(j)];
    double init = sigma0[static_cast<size_t>(j)];
    if (cur <= 0.0 || (lenient && init <= 0.0)) {
      if (!lenient)
        throw std::runtime_error("renormalize: degenerate column " + std::to_string(j));
      continue;
    }
    double scale = init / cur;
    for (int i = 0; i < paratope.rows(); ++i) {
      double v = paratope(i, j) * scale;
      if (v > 1.0) {
        v = 1.0;
        ++clamps;
      } else if (v < 0.0) {
        v = 0.0;
        ++clamps;
      }
      paratope(i, j) = v;
    }
  }
  return clamps;
}

}  // namespace

int renormalize(Grid<double>& paratope, const std::vector<double>& sigma0) {
  return renormalize_impl(paratope, sigma0, false);
}

int renormalize_lenient(Grid<double>& paratope, const std::vector<double>& sigma0) {
  return renormalize_impl(paratope, sigma0, true);
}

double clone_count(double strength, const ImmuneParams& params) {
  if (!std::isfinite(strength))
    throw std::invalid_argument("clone_count: non-finite strength");
  return params.b * strength + params.base_clones * (1.0 - params.k3);
}

Grid<double> concentrations(const Grid<double>& clones, double scale) {
  double total = 0.0;
  for (double n : clones) total += n;
  if (!(total > 0.0))
    throw std::invalid_argument("concentrations: clone counts sum to zero");
  Grid<double> conc(clones.rows(), clones.cols());
  for (int i = 0; i < clones.rows(); ++i)
    for (int j = 0; j < clones.cols(); ++j)
      conc(i, j) = scale * clones(i, j) / total;
  return conc;
}

int stage1_select(const Grid<double>& paratope, int antigen) {
  if (antigen < 0 || antigen >= paratope.cols())
    throw std::invalid_argument("stage1_select: antigen column out of range");
  int best = 0;
  for (int i = 1; i < paratope.rows(); ++i)
    if (paratope(i, antigen) > paratope(best, antigen)) best = i;
  return best;
}

double stimulation(int set, int winner, const Grid<double>& paratope,
                   const Grid<uint8_t>& idiotope, const Grid<double>& conc,
                   const ImmuneParams& params) {
  double sum = 0.0;
  for (int j = 0; j < paratope.cols(); ++j)
    if (idiotope(winner, j))
      sum += (1.0 - paratope(set, j)) * conc(set, j) * conc(winner, j);
  return params.k1 * sum;
}

double suppression(int set, int winner, const Grid<double>& paratope,
                   const Grid<uint8_t>& idiotope, const Grid<double>& conc,
                   const ImmuneParams& params) {
  double sum = 0.0;
  for (int j = 0; j < paratope.cols(); ++j)
    if (idiotope(set, j))
      sum += paratope(winner, j) * conc(set, j) * conc(winner, j);
  return params.k2 * sum;
}

Selection idiotypic_select(Repertoire& rep, int antigen, const ImmuneParams& params) {
  check_antigen(antigen);
  const Grid<double>& paratope = rep.paratope;
  const int x = paratope.rows();

  Selection sel;
  sel.stage1 = stage1_select(paratope, antigen);

  // Clone counts over the whole grid from the current match scores, then
  // the concentrations they imply.
  Grid<double> clones(x, paratope.cols());
  for (int i = 0; i < x; ++i)
    for (int j = 0; j < paratope.cols(); ++j)
      clones(i, j) = clone_count(paratope(i, j), params);
  Grid<double> conc = concentrations(clones, params.concentration_scale);

  // Stage 2: adjust the active column's strengths by the winner's
  // stimulation and each set's own suppression.
  std::vector<double> strength(static_cast<size_t>(x));
  for (int i = 0; i < x; ++i)
    strength[static_cast<size_t>(i)] =
        paratope(i, antigen) +
        stimulation(i, sel.stage1, paratope, rep.idiotope, conc, params) -
        suppression(i, sel.stage1, paratope, rep.idiotope, conc, params);

  // Clone counts for the active column follow the adjusted strengths.
  for (int i = 0; i < x; ++i)
    clones(i, antigen) = clone_count(strength[static_cast<size_t>(i)], params);
  conc = concentrations(clones, params.concentration_scale);

  // Stage 3: activation = concentration x adjusted strength.
  sel.activation.resize(static_cast<size_t>(x));
  for (int i = 0; i < x; ++i)
    sel.activation[static_cast<size_t>(i)] =
        conc(i, antigen) * strength[static_cast<size_t>(i)];
  int best = 0;
  for (int i = 1; i < x; ++i)
    if (sel.activation[static_cast<size_t>(i)] > sel.activation[static_cast<size_t>(best)])
      best = i;
  sel.winner = best;
  sel.differed = sel.winner != sel.stage1;

  rep.clones = std::move(clones);
  rep.concentration = std::move(conc);
  return sel;
}

double rl_score(int old_antigen, int new_antigen, const ScoreContext& ctx) {
  check_antigen(old_antigen);
  check_antigen(new_antigen);
  if (new_antigen == kTargetUnseen) {
    if (old_antigen == kTargetUnseen) return 0.05;
    if (old_antigen == kTargetSeen) return -0.10;
    return 0.10;  // moved clear of an obstacle
  }
  if (new_antigen == kTargetSeen) {
    if (old_antigen == kTargetUnseen) return 0.10;
    if (old_antigen == kTargetSeen) {
      double off = std::min(std::abs(ctx.marker_offset), 1.0);
      return 0.05 * (1.0 - off);
    }
    return 0.20;  // cleared an obstacle and holds the target
  }
  // new antigen is an obstacle or collision
  if (old_antigen <= kTargetSeen) return -0.05;
  // obstacle-to-obstacle transition, graded by how the situation changed
  bool was_collision = old_antigen >= kCollisionRight;
  bool is_collision = new_antigen >= kCollisionRight;
  bool ir_fell = ctx.ir_new < ctx.ir_old;
  double g;
  if (!is_collision && was_collision && ir_fell)
    g = 1.0;  // de-escalated from contact range
  else if (is_collision == was_collision && ir_fell)
    g = 0.5;
  else
    g = std::clamp((ctx.ir_old - ctx.ir_new) / kIrCeiling, 0.0, 1.0);
  return -0.40 + 0.90 * g;
}

int apply_rl(Repertoire& rep, int set, int antigen, double score) {
  double& p = rep.paratope(set, antigen);
  p = clamp01(p + score);
  return renormalize_lenient(rep.paratope, rep.initial_column_means);
}

bool stagnation_penalty(Repertoire& rep, int set, int antigen,
                        StagnationCounters& counters, const ImmuneParams& params) {
  bool wander_trip = counters.wander > params.wander_limit;
  bool obstacle_trip = counters.obstacle > params.obstacle_limit;
  if (!wander_trip && !obstacle_trip) return false;
  double amount = params.idiotypic ? params.penalty_idiotypic : params.penalty_plain;
  double& p = rep.paratope(set, antigen);
  p = clamp01(p - amount);
  renormalize_lenient(rep.paratope, rep.initial_column_means);
  if (wander_trip) counters.wander = 0;
  if (obstacle_trip) counters.obstacle = 0;
  return true;
}

int replace_weak(Repertoire& rep, Rng& rng, const ImmuneParams& params) {
  if (params.seeded) return 0;
  int replaced = 0;
  for (int i = 0; i < rep.sets(); ++i)
    for (int j = 0; j < rep.antigens(); ++j)
      if (rep.paratope(i, j) < params.replace_threshold) {
        rep.antibodies(i, j) = behavior::random_genome(std::nullopt, rng);
        rep.paratope(i, j) = rng.uniform(0.25, 0.75);
        ++replaced;
      }
  return replaced;
}

ImmuneController::ImmuneController(Repertoire rep, ImmuneParams params, Rng rng)
    : rep_(std::move(rep)), params_(params), rng_(rng) {
  if (rep_.paratope.rows() == 0 || rep_.paratope.cols() != kAntigenCount)
    throw std::invalid_argument("ImmuneController: malformed repertoire");
}

const AntibodyGenome& ImmuneController::step(const SensorFrame& frame) {
  int antigen = classify_antigen(frame);

  if (tick_ > 0 && params_.idiotope_period > 0 &&
      tick_ % params_.idiotope_period == 0)
    rep_.idiotope = rebuild_idiotope(rep_.paratope, rng_);

  if (prev_antigen_) {
    ScoreContext ctx{frame.offset, prev_ir_max_, frame.ir_max()};
    last_score_ = rl_score(*prev_antigen_, antigen, ctx);
    clamp_count_ += apply_rl(rep_, prev_set_, *prev_antigen_, last_score_);
    ++rl_events_;
  }

  if (antigen == kTargetUnseen)
    ++counters_.wander;
  else
    counters_.wander = 0;
  if (antigen >= kObstacleRight)
    ++counters_.obstacle;
  else
    counters_.obstacle = 0;
  if (prev_antigen_ &&
      stagnation_penalty(rep_, prev_set_, *prev_antigen_, counters_, params_))
    ++penalties_;

  if (!params_.seeded) replacements_ += replace_weak(rep_, rng_, params_);

  int winner;
  if (params_.idiotypic) {
    Selection sel = idiotypic_select(rep_, antigen, params_);
    winner = sel.winner;
    if (sel.differed) ++diff_count_;
  } else {
    winner = stage1_select(rep_.paratope, antigen);
  }

  prev_antigen_ = antigen;
  prev_set_ = winner;
  prev_ir_max_ = frame.ir_max();
  ++tick_;
  last_antigen_ = antigen;
  last_set_ = winner;
  return rep_.antibodies(winner, antigen);
}

}  // namespace aisnav::immune
