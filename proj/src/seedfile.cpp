#include "aisnav/seedfile.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace aisnav::ga {
namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error("seed file: " + where + ": " + what);
}

double parse_double(const std::string& where, const std::string& s) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(where, "bad number '" + s + "'");
  }
}

AntibodyGenome parse_genome_fields(const std::string& where,
                                   const std::vector<std::string>& fields) {
  std::map<std::string, std::string> kv;
  for (const std::string& f : fields) {
    auto eq = f.find('=');
    if (eq == std::string::npos) fail(where, "expected name=value, got '" + f + "'");
    if (!kv.emplace(f.substr(0, eq), f.substr(eq + 1)).second)
      fail(where, "duplicate attribute '" + f.substr(0, eq) + "'");
  }
  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  AntibodyGenome g;
  auto type = take("type");
  if (!type) fail(where, "missing type");
  g.type = static_cast<int>(parse_double(where, *type));
  auto speed = take("S");
  if (!speed) fail(where, "missing S");
  g.speed = parse_double(where, *speed);
  if (auto v = take("F")) g.turn_freq = parse_double(where, *v);
  if (auto v = take("A")) g.turn_angle = parse_double(where, *v);
  if (auto v = take("D")) {
    if (*v == "left")
      g.turn_dir = TurnSide::kLeft;
    else if (*v == "right")
      g.turn_dir = TurnSide::kRight;
    else
      fail(where, "bad direction '" + *v + "'");
  }
  if (auto v = take("Rf")) g.right_freq = parse_double(where, *v);
  if (auto v = take("Ra")) g.right_angle = parse_double(where, *v);
  if (!kv.empty()) fail(where, "unknown attribute '" + kv.begin()->first + "'");
  try {
    validate_genome(g);
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  return g;
}

}  // namespace

std::string serialize_seed(const SeedFile& file) {
  std::ostringstream out;
  out << "# evolved antibody sets\n";
  out << "version " << file.version << "\n";
  out << "world " << file.world << "\n";
  out << "sets " << file.sets.size() << "\n";
  for (size_t i = 0; i < file.sets.size(); ++i) {
    const SeedSet& s = file.sets[i];
    out << "\nset " << i << "\n";
    out << "tau " << fmt_double(s.tau) << "\n";
    out << "collisions " << fmt_double(s.collisions) << "\n";
    for (int j = 0; j < kSlotsPerSet; ++j)
      out << "antibody " << j << " " << genome_to_string(s.genomes[static_cast<size_t>(j)])
          << " L=" << fmt_double(s.rl_totals[static_cast<size_t>(j)]) << "\n";
  }
  return out.str();
}

SeedFile parse_seed(const std::string& text) {
  SeedFile file;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int declared_sets = -1;
  int current_set = -1;
  std::vector<bool> slot_seen;

  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    std::string where = "line " + std::to_string(line_no);

    if (tok[0] == "version" && tok.size() == 2) {
      file.version = static_cast<int>(parse_double(where, tok[1]));
    } else if (tok[0] == "world" && tok.size() == 2) {
      file.world = tok[1];
    } else if (tok[0] == "sets" && tok.size() == 2) {
      declared_sets = static_cast<int>(parse_double(where, tok[1]));
    } else if (tok[0] == "set" && tok.size() == 2) {
      current_set = static_cast<int>(parse_double(where, tok[1]));
      if (current_set != static_cast<int>(file.sets.size()))
        fail(where, "expected set " + std::to_string(file.sets.size()));
      file.sets.emplace_back();
      slot_seen.assign(kSlotsPerSet, false);
    } else if (tok[0] == "tau" && tok.size() == 2) {
      if (current_set < 0) fail(where, "tau before any set");
      file.sets.back().tau = parse_double(where, tok[1]);
    } else if (tok[0] == "collisions" && tok.size() == 2) {
      if (current_set < 0) fail(where, "collisions before any set");
      file.sets.back().collisions = parse_double(where, tok[1]);
    } else if (tok[0] == "antibody" && tok.size() >= 3) {
      if (current_set < 0) fail(where, "antibody before any set");
      int slot = static_cast<int>(parse_double(where, tok[1]));
      if (slot < 0 || slot >= kSlotsPerSet) fail(where, "antibody index out of range");
      std::string rec = "set " + std::to_string(current_set) + " antibody " +
                        std::to_string(slot) + " (" + where + ")";
      if (slot_seen[static_cast<size_t>(slot)]) fail(rec, "duplicate antibody");
      std::vector<std::string> fields(tok.begin() + 2, tok.end());
      std::optional<double> rl;
      for (auto it = fields.begin(); it != fields.end();) {
        if (it->rfind("L=", 0) == 0) {
          rl = parse_double(rec, it->substr(2));
          it = fields.erase(it);
        } else {
          ++it;
        }
      }
      if (!rl) fail(rec, "missing L");
      file.sets.back().genomes[static_cast<size_t>(slot)] = parse_genome_fields(rec, fields);
      file.sets.back().rl_totals[static_cast<size_t>(slot)] = *rl;
      slot_seen[static_cast<size_t>(slot)] = true;
    } else {
      fail(where, "unrecognized directive '" + tok[0] + "'");
    }
  }

  if (declared_sets >= 0 && declared_sets != static_cast<int>(file.sets.size()))
    fail("file", "declared " + std::to_string(declared_sets) + " sets but found " +
                     std::to_string(file.sets.size()));
  if (static_cast<int>(file.sets.size()) != kSeedSets)
    fail("file", "expected " + std::to_string(kSeedSets) + " sets, found " +
                     std::to_string(file.sets.size()));
  for (size_t i = 0; i < file.sets.size(); ++i) {
    if (!(file.sets[i].tau > 0.0))
      fail("set " + std::to_string(i), "tau must be positive");
    if (file.sets[i].collisions < 0.0)
      fail("set " + std::to_string(i), "collisions must be non-negative");
  }
  return file;
}

void write_seed(const std::string& path, const SeedFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("seed file: cannot write " + path);
  out << serialize_seed(file);
  if (!out) throw std::runtime_error("seed file: write failed for " + path);
}

SeedFile read_seed(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("seed file: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_seed(buf.str());
}

}  // namespace aisnav::ga
