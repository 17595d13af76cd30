// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edlab/edcore.hpp"
#include "edlab/lattice.hpp"

namespace edlab
{

/// Values taken by one model field (dotted path such as chainA.v) in a sweep.
struct GridAxis
{
  std::string path;
  std::vector<double> values;
};

struct Scenario
{
  std::string name;
  std::string task;
  ModelSpec model;
  /// Model section as written, re-read with overrides at every sweep point.
  std::string model_source;
  /// task_params section as YAML text (may be empty).
  std::string task_params_source;
  std::vector<GridAxis> axes;
  /// Master seed. Ensemble member i draws with seed + i; a single disorder
  /// draw without its own seed uses this value.
  std::uint64_t seed = 0;
  std::string output_dir;
};

/// Task names accepted in the `task` key.
const std::vector<std::string> &task_names();

Scenario parse_scenario(const std::string &text);
Scenario load_scenario(const std::string &path);

/// The model with each axis path set to the matching value.
ModelSpec model_at(const Scenario &scenario, const std::vector<GridAxis> &axes,
                   const std::vector<double> &values);

struct SweepPoint
{
  std::vector<double> coords;
  bool ok = false;
  std::string error;
  double similarity = 0.0;
  double mean_G_A = 0.0;
  double mean_G_B = 0.0;
  /// Mean gauge of the non-edge eigenstates of the full operator.
  double mean_G_bulk = 0.0;
  double min_singular = 0.0;
  Verdict verdict = Verdict::NoED;
};

/// Scalar metrics at one model. With reverse coupling present only
/// mean_G_bulk is computed (the blocks no longer separate).
SweepPoint evaluate_point(const ModelSpec &spec);

/// Cartesian product of the axes (last axis fastest). Rows come back in grid
/// order whatever the worker count; failing points are recorded, not thrown.
std::vector<SweepPoint> sweep(const Scenario &scenario, const std::vector<GridAxis> &axes,
                              int workers = 1);

struct EnsembleResult
{
  std::vector<std::uint64_t> seeds;
  std::vector<double> values;
  std::vector<double> mean_G;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  int failures = 0;
  std::vector<std::string> errors;
};

/// Cosine similarity over seeds scenario.seed + 0 .. n_seeds - 1 with the
/// disorder section of task_params.
EnsembleResult disorder_ensemble(const Scenario &scenario, int n_seeds, int workers = 1);

struct OutputFile
{
  std::string path;
  std::string hash;
};

struct TaskOutcome
{
  std::string scenario;
  std::string task;
  bool ok = false;
  std::string error;
  std::vector<OutputFile> files;
};

struct RunOptions
{
  /// Overrides the scenario's output_dir when non-empty.
  std::string output_dir;
  int workers = 1;
  /// Forces the sweep task family on any scenario with axes.
  bool force_sweep = false;
  /// Ensemble size override for the disorder-ensemble task (0 keeps the config).
  int seeds = 0;
};

/// Runs the task, writes <name>_*.csv/json under the output directory and
/// returns the files written with their content hashes. Errors are recorded in
/// the outcome instead of being thrown.
TaskOutcome run_scenario(const Scenario &scenario, const RunOptions &options = {});

/// Writes manifest.json listing every file under dir (except itself) with its
/// hash, plus the per-task outcomes.
void write_manifest(const std::string &dir, const std::vector<TaskOutcome> &outcomes);

/// Built-in exact-model checks, written as an oracle-suite scenario.
Scenario default_oracle_scenario();

}  // namespace edlab
