// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

// Batch front end for episodes and the estimator study, with replay checks.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "empower/empowerment.hpp"
#include "empower/errors.hpp"
#include "empower/parallel.hpp"
#include "empower/scenario_io.hpp"
#include "empower/scenarios.hpp"
#include "empower/snapshot.hpp"

namespace fs = std::filesystem;
using namespace empower;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> turns;
  std::optional<int> horizon;
  std::optional<int> samples;
  std::optional<int> snapshot_every;
  bool counterfactuals = false;
};

ScenarioConfig load_scenario(const std::string& source, const Overrides& o) {
  ScenarioConfig c;
  if (auto b = builtin_scenario(source, o.seed.value_or(0))) {
    c = *b;
  } else if (fs::exists(source)) {
    c = read_config_file(source);
  } else {
    throw ConfigError("unknown scenario '" + source +
                      "' (expected exp1-climb, exp1-noclimb, exp1-fly, exp2, exp3 or a file)");
  }
  if (o.seed) c.seed = *o.seed;
  if (o.turns) c.turns = *o.turns;
  if (o.horizon) c.horizon = *o.horizon;
  if (o.samples) c.samples = *o.samples;
  if (o.snapshot_every) c.snapshot_every = *o.snapshot_every;
  if (o.counterfactuals) c.counterfactuals = true;
  c.validate();
  return c;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string snapshot_name(std::uint32_t turn) {
  std::ostringstream s;
  s << "snapshot_" << std::setw(5) << std::setfill('0') << turn << ".txt";
  return s.str();
}

/// Writes config.txt, trace.csv and snapshot files into `dir`.
void write_episode(const fs::path& dir, const ScenarioConfig& c, const EpisodeResult& r) {
  fs::create_directories(dir);
  write_file(dir / "config.txt", output_header(c) + "\n" + write_config(c));
  write_file(dir / "trace.csv", trace_text(c, r.trace));
  for (const auto& s : r.snapshots) {
    write_file(dir / snapshot_name(s.turn), output_header(c) + "\n" + s.text);
  }
}

std::string summary(const ScenarioConfig& c, const EpisodeResult& r) {
  const auto& w = r.final_world;
  const Vec3 p = w.agent_pos();
  std::ostringstream s;
  s << "scenario=" << c.name << " seed=" << c.seed << " config_hash=" << hex64(config_hash(c))
    << " turns=" << c.turns << " final=(" << p.x << ',' << p.y << ',' << p.z << ")"
    << " alive=" << (w.alive() ? 1 : 0);
  if (c.lava_period && c.name == "exp3") s << " outcome=" << to_string(classify_outcome_exp3(w));
  if (c.name == "exp2") {
    bool crossed = false;
    for (const auto& t : r.trace) crossed = crossed || t.position.x >= exp2::kFarRegionMinX;
    crossed = crossed || p.x >= exp2::kFarRegionMinX;
    s << " crossed=" << (crossed ? 1 : 0);
  }
  return s.str();
}

/// "1:100:1,110:1000:10" or plain comma-separated values.
std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> grid;
  std::stringstream all(text);
  std::string part;
  while (std::getline(all, part, ',')) {
    std::vector<int> f;
    std::stringstream ps(part);
    std::string tok;
    while (std::getline(ps, tok, ':')) {
      try {
        f.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ConfigError("bad --grid entry '" + part + "'");
      }
    }
    if (f.size() == 1) f = {f[0], f[0], 1};
    if (f.size() != 3 || f[0] < 1 || f[1] < f[0] || f[2] < 1) {
      throw ConfigError("bad --grid entry '" + part + "' (want m or lo:hi:step)");
    }
    for (int m = f[0]; m <= f[1]; m += f[2]) grid.push_back(m);
  }
  if (grid.empty()) throw ConfigError("--grid is empty");
  return grid;
}

int cmd_run(const std::string& scenario, const Overrides& o, const std::string& out_dir,
            Parallelism par) {
  const ScenarioConfig c = load_scenario(scenario, o);
  const EpisodeResult r = run_episode(c, par);
  write_episode(out_dir, c, r);
  std::cout << summary(c, r) << '\n';
  return 0;
}

int cmd_estimator_study(int reps, std::uint64_t seed, const std::string& grid_text,
                        const std::string& out_dir, Parallelism par) {
  const auto grid = grid_text.empty() ? default_sample_grid() : parse_grid(grid_text);
  const auto rows = run_estimator_study(grid, reps, seed, par);
  fs::create_directories(out_dir);
  const std::string header = "# estimator-study seed=" + std::to_string(seed) +
                             " reps=" + std::to_string(reps) + "\n";
  for (std::size_t k = 0; k < 5; ++k) {
    std::ostringstream est;
    std::ostringstream mod;
    est << header << "# m mean_estimate_nats\n" << std::setprecision(10);
    mod << header << "# m model_nats\n" << std::setprecision(10);
    for (const auto& row : rows) {
      est << row.m << ' ' << row.estimate[k] << '\n';
      mod << row.m << ' ' << row.model[k] << '\n';
    }
    const std::string stem = "p" + std::to_string(k + 1);
    write_file(fs::path(out_dir) / (stem + "_estimate.dat"), est.str());
    write_file(fs::path(out_dir) / (stem + "_model.dat"), mod.str());
  }
  const auto& last = rows.back();
  std::cout << "estimator-study seed=" << seed << " reps=" << reps << " points=" << rows.size()
            << " m_max=" << last.m << std::setprecision(6);
  for (std::size_t k = 0; k < 5; ++k) std::cout << " p" << k + 1 << '=' << last.estimate[k];
  std::cout << '\n';
  return 0;
}

int cmd_exact_vs_sparse(const std::string& scenario, const Overrides& o, Parallelism par) {
  const ScenarioConfig c = load_scenario(scenario, o);
  const WorldState w = c.initial_world();
  const auto sparse = sparse_empowerment(
      w, c.embodiment, c.horizon, c.samples,
      StreamKey{c.seed, w.turn(), 0, StreamPurpose::Standalone}, par);
  const auto exact = exact_empowerment(w, c.embodiment, c.horizon);
  std::cout << output_header(c) << '\n'
            << "horizon=" << c.horizon << " samples=" << c.samples << std::setprecision(8)
            << " exact_count=" << exact.reachable_count << " exact_nats=" << exact.nats
            << " sparse_count=" << sparse.reachable_count << " sparse_nats=" << sparse.nats
            << " gap_nats=" << exact.nats - sparse.nats << '\n';
  return 0;
}

/// Re-runs the episode stored in `dir` and compares every file byte-for-byte.
int cmd_replay(const std::string& dir, Parallelism par) {
  const fs::path d(dir);
  const ScenarioConfig c = read_config_file((d / "config.txt").string());
  const EpisodeResult r = run_episode(c, par);
  int mismatches = 0;
  auto check = [&](const std::string& name, const std::string& expected) {
    const fs::path p = d / name;
    if (!fs::exists(p) || read_file(p) != expected) {
      std::cout << "mismatch " << name << '\n';
      ++mismatches;
    }
  };
  check("trace.csv", trace_text(c, r.trace));
  for (const auto& s : r.snapshots) check(snapshot_name(s.turn), output_header(c) + "\n" + s.text);
  std::cout << summary(c, r) << " replay=" << (mismatches == 0 ? "identical" : "DIFFERENT")
            << '\n';
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empowerment-driven agents in a 3-D block world"};
  app.require_subcommand(1);

  Overrides o;
  std::string scenario;
  std::string out_dir = "out";
  unsigned threads = Parallelism::hardware().threads;
  int reps = 1000;
  std::uint64_t study_seed = 0;
  std::string grid;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Master seed (echoed in every output header)");
    sub->add_option("--horizon", o.horizon, "Action-sequence length n");
    sub->add_option("--samples", o.samples, "Sampled sequences m");
    sub->add_option("--threads", threads, "Worker threads (results do not depend on this)");
  };

  auto* run = app.add_subcommand("run", "Run a scenario and write trace and snapshots");
  run->add_option("scenario", scenario, "Built-in name or scenario file")->required();
  add_common(run);
  run->add_option("--turns", o.turns, "Number of decisions");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--snapshot-every", o.snapshot_every, "Snapshot interval in turns");
  run->add_flag("--counterfactuals", o.counterfactuals,
                "Also estimate all three embodiments at each position");

  auto* study = app.add_subcommand("estimator-study", "Sparse-estimator bias study");
  study->add_option("--reps", reps, "Repetitions per sample size");
  study->add_option("--seed", study_seed, "Master seed");
  study->add_option("--grid", grid, "Sample sizes, e.g. 1:100:1,110:1000:10");
  study->add_option("--out", out_dir, "Output directory");
  study->add_option("--threads", threads, "Worker threads");

  auto* evs = app.add_subcommand("exact-vs-sparse", "Compare exact and sampled estimates");
  evs->add_option("scenario", scenario, "Built-in name or scenario file")->required();
  add_common(evs);

  std::string replay_dir;
  auto* replay = app.add_subcommand("replay", "Re-run a recorded episode and compare outputs");
  replay->add_option("dir", replay_dir, "Directory written by `run`")->required();
  replay->add_option("--threads", threads, "Worker threads");

  CLI11_PARSE(app, argc, argv);
  const Parallelism par{std::max(1u, threads)};

  try {
    if (*run) return cmd_run(scenario, o, out_dir, par);
    if (*study) return cmd_estimator_study(reps, study_seed, grid, out_dir, par);
    if (*evs) return cmd_exact_vs_sparse(scenario, o, par);
    if (*replay) return cmd_replay(replay_dir, par);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what()
              << "\nhint: lower --horizon or use `run`, which samples instead of enumerating\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
