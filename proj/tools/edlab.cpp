// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edlab/config.hpp"
#include "edlab/scenario.hpp"

namespace fs = std::filesystem;

namespace
{

struct Job
{
  edlab::Scenario scenario;
  edlab::RunOptions options;
};

std::string output_dir_of(const Job &job)
{
  if (!job.options.output_dir.empty())
  {
    return job.options.output_dir;
  }
  return job.scenario.output_dir.empty() ? "out" : job.scenario.output_dir;
}

int run_jobs(const std::vector<Job> &jobs)
{
  std::map<std::string, std::vector<edlab::TaskOutcome>> by_dir;
  std::map<std::string, std::set<std::string>> names;
  bool ok = true;
  for (const Job &job : jobs)
  {
    const std::string dir = output_dir_of(job);
    if (!names[dir].insert(job.scenario.name).second)
    {
      edlab::TaskOutcome dup;
      dup.scenario = job.scenario.name;
      dup.task = job.scenario.task;
      dup.error = "duplicate scenario name in " + dir;
      by_dir[dir].push_back(dup);
      std::cerr << job.scenario.name << ": " << dup.error << "\n";
      ok = false;
      continue;
    }
    edlab::RunOptions options = job.options;
    options.output_dir = dir;
    const edlab::TaskOutcome outcome = edlab::run_scenario(job.scenario, options);
    std::cout << (outcome.ok ? "ok    " : "error ") << job.scenario.name << " ("
              << job.scenario.task << ")";
    if (!outcome.ok)
    {
      std::cout << ": " << outcome.error;
    }
    std::cout << "\n";
    ok = ok && outcome.ok;
    by_dir[dir].push_back(outcome);
  }
  for (const auto &[dir, outcomes] : by_dir)
  {
    edlab::write_manifest(dir, outcomes);
    std::cout << "manifest: " << (fs::path(dir) / "manifest.json").string() << "\n";
  }
  return ok ? 0 : 1;
}

std::vector<std::string> figure_files(const std::string &dir)
{
  std::vector<std::string> files;
  if (fs::is_directory(dir))
  {
    for (const auto &entry : fs::directory_iterator(dir))
    {
      if (entry.path().extension() == ".yaml")
      {
        files.push_back(entry.path().string());
      }
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"edlab: exceptional-deficiency analysis of one-way coupled chains"};
  app.require_subcommand(1);
  app.fallthrough();
  int workers = 1;
  std::string out_dir;
  app.add_option("--workers", workers, "Concurrent sweep/ensemble points")
    ->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory (overrides output_dir in configs)");

  std::vector<std::string> run_configs;
  auto *run = app.add_subcommand("run", "Run one or more scenario configs");
  run->add_option("configs", run_configs, "Scenario YAML files")->required();

  std::string sweep_config;
  auto *sweep = app.add_subcommand("sweep", "Run the sweep axes of a scenario");
  sweep->add_option("config", sweep_config, "Scenario YAML file")->required();

  std::string ensemble_config;
  int seeds = 100;
  auto *ensemble = app.add_subcommand("ensemble", "Run a disorder ensemble");
  ensemble->add_option("config", ensemble_config, "Scenario YAML file")->required();
  ensemble->add_option("--seeds", seeds, "Ensemble size")->check(CLI::PositiveNumber);

  auto *oracle = app.add_subcommand("oracle-suite", "Exact-model consistency checks");

  std::string figures_dir = EDLAB_FIGURES_DIR;
  auto *list = app.add_subcommand("list-figures", "List the bundled figure configs");
  list->add_option("--dir", figures_dir, "Figure config directory");

  CLI11_PARSE(app, argc, argv);

  try
  {
    edlab::RunOptions options;
    options.workers = workers;
    options.output_dir = out_dir;
    std::vector<Job> jobs;
    if (*run)
    {
      for (const auto &path : run_configs)
      {
        jobs.push_back({edlab::load_scenario(path), options});
      }
    }
    else if (*sweep)
    {
      options.force_sweep = true;
      jobs.push_back({edlab::load_scenario(sweep_config), options});
    }
    else if (*ensemble)
    {
      edlab::Scenario s = edlab::load_scenario(ensemble_config);
      if (s.task != "disorder-ensemble")
      {
        throw edlab::ConfigError("task", "disorder-ensemble for the ensemble command");
      }
      options.seeds = seeds;
      jobs.push_back({s, options});
    }
    else if (*oracle)
    {
      jobs.push_back({edlab::default_oracle_scenario(), options});
    }
    else if (*list)
    {
      for (const auto &path : figure_files(figures_dir))
      {
        const edlab::Scenario s = edlab::load_scenario(path);
        std::cout << fs::path(path).filename().string() << "  " << s.name << "  " << s.task
                  << "\n";
      }
      return 0;
    }
    return run_jobs(jobs);
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
