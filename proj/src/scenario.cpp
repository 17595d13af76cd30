// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/LU>
#include <nlohmann/json.hpp>

#include "config_yaml.hpp"
#include "edlab/dynamics.hpp"
#include "edlab/oracle.hpp"
#include "edlab/response.hpp"
#include "edlab/serialize.hpp"
#include "edlab/spectral.hpp"

namespace edlab
{

using nlohmann::json;
namespace fs = std::filesystem;
using detail::get_bool;
using detail::get_complex;
using detail::get_int;
using detail::get_real;
using detail::get_string;
using detail::get_uint;
using detail::join;

const std::vector<std::string> &task_names()
{
  static const std::vector<std::string> names = {
    "spectrum",  "gbz",      "similarity-surface", "eigenstates",       "dynamics",
    "response",  "ed-circle", "disorder-ensemble", "criticality-sweep", "oracle-suite"};
  return names;
}

namespace
{

const double nan_value = std::numeric_limits<double>::quiet_NaN();

std::string strip_model_prefix(const std::string &path)
{
  const std::string prefix = "model.";
  return path.rfind(prefix, 0) == 0 ? path.substr(prefix.size()) : path;
}

YAML::Node load_yaml(const std::string &text, const std::string &what)
{
  try
  {
    return YAML::Load(text);
  }
  catch (const YAML::Exception &e)
  {
    throw ConfigError(what, std::string("well-formed YAML (") + e.what() + ")");
  }
}

std::string dump(const YAML::Node &node)
{
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << node;
  return out.c_str();
}

void set_path(YAML::Node root, const std::string &path, double value)
{
  std::vector<std::string> parts;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');)
  {
    parts.push_back(part);
  }
  if (parts.empty())
  {
    throw ConfigError("sweep", "a dotted model path");
  }
  // yaml-cpp nodes are handles: assigning through a child list keeps the tree.
  std::vector<YAML::Node> chain{root};
  for (std::size_t i = 0; i + 1 < parts.size(); ++i)
  {
    YAML::Node child = chain.back()[parts[i]];
    if (!child.IsMap())
    {
      throw ConfigError("sweep." + path, "a path to an existing model field");
    }
    chain.push_back(child);
  }
  if (!chain.back()[parts.back()])
  {
    throw ConfigError("sweep." + path, "a path to an existing model field");
  }
  chain.back()[parts.back()] = value;
}

std::vector<double> parse_grid(const YAML::Node &node, const std::string &key)
{
  std::vector<double> values;
  if (node.IsSequence())
  {
    for (std::size_t i = 0; i < node.size(); ++i)
    {
      values.push_back(get_real(node[i], key));
    }
  }
  else if (node.IsMap())
  {
    const double from = get_real(detail::require(node, "from", key), join(key, "from"));
    const double to = get_real(detail::require(node, "to", key), join(key, "to"));
    const int num = get_int(detail::require(node, "num", key), join(key, "num"));
    if (num < 1)
    {
      throw ConfigError(join(key, "num"), "a positive integer");
    }
    for (int i = 0; i < num; ++i)
    {
      values.push_back(num == 1 ? from : from + (to - from) * i / (num - 1));
    }
  }
  if (values.empty())
  {
    throw ConfigError(key, "a nonempty list or a {from, to, num} grid");
  }
  return values;
}

/// Lookup helpers for the free-form task_params section.
struct Params
{
  YAML::Node node;

  bool has(const std::string &k) const { return node && node.IsMap() && node[k]; }
  std::string key(const std::string &k) const { return join("task_params", k); }
  double real(const std::string &k, double fallback) const
  {
    return has(k) ? get_real(node[k], key(k)) : fallback;
  }
  int integer(const std::string &k, int fallback) const
  {
    return has(k) ? get_int(node[k], key(k)) : fallback;
  }
  std::string text(const std::string &k, const std::string &fallback) const
  {
    return has(k) ? get_string(node[k], key(k)) : fallback;
  }
  bool flag(const std::string &k, bool fallback) const
  {
    return has(k) ? get_bool(node[k], key(k)) : fallback;
  }
  Params child(const std::string &k) const { return {has(k) ? node[k] : YAML::Node()}; }
};

Params params_of(const Scenario &s)
{
  if (s.task_params_source.empty())
  {
    return {YAML::Node()};
  }
  return {load_yaml(s.task_params_source, "task_params")};
}

Chain parse_chain_name(const std::string &text, const std::string &key)
{
  if (text == "A" || text == "a")
  {
    return Chain::A;
  }
  if (text == "B" || text == "b")
  {
    return Chain::B;
  }
  throw ConfigError(key, "chain A or B");
}

std::optional<DisorderSpec> optional_disorder(const Params &p, std::uint64_t seed)
{
  if (!p.has("disorder"))
  {
    return std::nullopt;
  }
  DisorderSpec d = detail::parse_disorder(p.node["disorder"], "task_params.disorder");
  if (!p.node["disorder"]["seed"])
  {
    d.seed = seed;
  }
  return d;
}

SiteRef parse_source(const Params &p, const ModelSpec &spec)
{
  if (p.has("source_site"))
  {
    return site_from_physical(p.integer("source_site", 1));
  }
  const Params s = p.child("source");
  SiteRef ref;
  ref.chain = parse_chain_name(s.text("chain", "A"), "task_params.source.chain");
  ref.index = s.integer("index", chain_length(spec) / 2);
  return ref;
}

template <class Fn>
void parallel_for(std::size_t count, int workers, Fn fn)
{
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (n <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
    {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < n; ++w)
  {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++)
      {
        fn(i);
      }
    });
  }
  for (auto &t : pool)
  {
    t.join();
  }
}

double mean_of(const std::vector<double> &v)
{
  return v.empty() ? nan_value : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

class Writer
{
public:
  Writer(std::string dir, std::string name) : dir_(std::move(dir)), name_(std::move(name))
  {
    fs::create_directories(dir_);
  }

  void write(const std::string &suffix, const std::string &content)
  {
    const std::string file = name_ + "_" + suffix;
    std::ofstream out(fs::path(dir_) / file, std::ios::binary);
    out << content;
    if (!out)
    {
      throw Error("could not write " + file);
    }
    files.push_back({file, fnv1a64_hex(content)});
  }

  std::vector<OutputFile> files;

private:
  std::string dir_;
  std::string name_;
};

std::string sweep_csv(const std::vector<GridAxis> &axes, const std::vector<SweepPoint> &points)
{
  std::ostringstream out;
  for (const auto &a : axes)
  {
    out << a.path << ',';
  }
  out << "similarity,mean_G_A,mean_G_B,mean_G_bulk,min_singular,verdict,status\n";
  for (const auto &p : points)
  {
    for (double c : p.coords)
    {
      out << format_double(c) << ',';
    }
    if (p.ok)
    {
      out << format_double(p.similarity) << ',' << format_double(p.mean_G_A) << ','
          << format_double(p.mean_G_B) << ',' << format_double(p.mean_G_bulk) << ','
          << format_double(p.min_singular) << ','
          << (std::isnan(p.similarity) ? "" : to_string(p.verdict)) << ",ok\n";
    }
    else
    {
      out << ",,,,,," << '"' << p.error << '"' << '\n';
    }
  }
  return out.str();
}

std::vector<GridAxis> axes_or_throw(const Scenario &s)
{
  if (s.axes.empty())
  {
    throw ConfigError("sweep", "at least one axis for task " + s.task);
  }
  return s.axes;
}

void run_sweep_task(const Scenario &s, const RunOptions &o, Writer &w)
{
  const std::vector<GridAxis> axes = axes_or_throw(s);
  const std::vector<SweepPoint> points = sweep(s, axes, o.workers);
  w.write("sweep.csv", sweep_csv(axes, points));
  if (s.task != "ed-circle")
  {
    return;
  }
  int iv = -1;
  int id = -1;
  for (std::size_t a = 0; a < axes.size(); ++a)
  {
    const std::string p = strip_model_prefix(axes[a].path);
    iv = p == "chainA.v" ? static_cast<int>(a) : iv;
    id = p == "chainB.delta" ? static_cast<int>(a) : id;
  }
  if (axes.size() != 2 || iv < 0 || id < 0)
  {
    throw ConfigError("sweep", "exactly the axes chainA.v and chainB.delta for ed-circle");
  }
  const std::vector<double> &vs = axes[iv].values;
  const std::vector<double> &ds = axes[id].values;
  const double step = vs.size() > 1 ? std::abs(vs[1] - vs[0]) : 1.0;
  const auto *b = std::get_if<SSHChainParams>(&s.model.chainB);
  if (!b)
  {
    throw ConfigError("model.chainB", "an SSH chain for ed-circle");
  }
  std::ostringstream out;
  out << "delta,v1_argmax,v1_circle,offset_cells\n";
  double worst = 0.0;
  for (std::size_t j = 0; j < ds.size(); ++j)
  {
    double best = -1.0;
    double arg = nan_value;
    for (std::size_t i = 0; i < vs.size(); ++i)
    {
      const std::size_t idx = iv == 0 ? i * ds.size() + j : j * vs.size() + i;
      if (points[idx].ok && points[idx].similarity > best)
      {
        best = points[idx].similarity;
        arg = vs[i];
      }
    }
    const double r2 = b->v * b->v - ds[j] * ds[j];
    const double circle = r2 >= 0.0 ? -std::sqrt(r2) : nan_value;
    const double offset = std::abs(arg - circle) / step;
    worst = std::isfinite(offset) ? std::max(worst, offset) : worst;
    out << format_double(ds[j]) << ',' << format_double(arg) << ',' << format_double(circle) << ','
        << format_double(offset) << '\n';
  }
  w.write("ridge.csv", out.str());
  w.write("ridge.json", json{{"max_offset_cells", worst}}.dump(2) + "\n");
}

void run_spectrum(const Scenario &s, const Params &p, Writer &w)
{
  ModelSpec open = s.model;
  open.boundary = Boundary::OBC;
  ModelSpec periodic = s.model;
  periodic.boundary = Boundary::PBC;
  const SpectrumSet pbc = pbc_spectrum(periodic, p.integer("num_k", 512));
  const SpectrumSet obc = obc_spectrum(open);
  w.write("pbc.csv", spectrum_csv(pbc));
  w.write("obc.csv", spectrum_csv(obc));
  json j;
  j["pbc"] = json::parse(spectrum_json(pbc));
  j["obc"] = json::parse(spectrum_json(obc));
  w.write("spectrum.json", j.dump(2) + "\n");
}

void run_gbz(const Scenario &s, Writer &w)
{
  ModelSpec open = s.model;
  open.boundary = Boundary::OBC;
  const GBZPortrait g = gbz_portrait(open);
  w.write("gbz.csv", gbz_csv(g));
  w.write("gbz.json", gbz_json(g));
}

void run_eigenstates(const Scenario &s, const Params &p, Writer &w)
{
  const auto disorder = optional_disorder(p, s.seed);
  const EigenspacePair pair = extract_eigenspaces(s.model, disorder);
  w.write("states.csv", states_csv(pair));
  w.write("profiles.csv", profiles_csv(pair));
  w.write("ed_report.json", ed_report_json(ed_condition_check(s.model, {}, disorder)));
}

void run_dynamics(const Scenario &s, const Params &p, Writer &w)
{
  const Params inj = p.child("injection");
  WavepacketSpec wp;
  wp.chain = parse_chain_name(inj.text("chain", "B"), "task_params.injection.chain");
  wp.center_cell = inj.integer("center_cell", s.model.cells / 2);
  wp.width = inj.real("width", 1.0);
  wp.carrier_k = inj.real("carrier_k", 0.0);
  const std::string method_name = p.text("method", "exact-propagator");
  Method method;
  if (method_name == "exact-propagator")
  {
    method = Method::ExactPropagator;
  }
  else if (method_name == "RK4" || method_name == "rk4")
  {
    method = Method::RK4;
  }
  else
  {
    throw ConfigError("task_params.method", "one of exact-propagator, RK4");
  }
  const double t_max = p.real("t_max", 40.0);
  const double dt = p.real("dt", 0.01);
  const int store_every = p.integer("store_every", 10);
  const ComplexVector psi0 = prepare_wavepacket(s.model, wp);
  // Metrics use every step; the stored trajectory is downsampled.
  const TrajectoryField full = evolve(s.model, psi0, t_max, dt, method, 1);
  TrajectoryField stored = full;
  stored.times.clear();
  stored.amplitudes.clear();
  stored.store_every = store_every;
  for (std::size_t i = 0; i < full.times.size(); ++i)
  {
    if (i % store_every == 0 || i + 1 == full.times.size())
    {
      stored.times.push_back(full.times[i]);
      stored.amplitudes.push_back(full.amplitudes[i]);
    }
  }
  stored.injection = wp;
  const SEAPMetrics seap = seap_metrics(full);
  const PESEMetrics pese = pese_metrics(full);
  w.write("trajectory.csv", trajectory_csv(stored));
  json j;
  j["injection"] = {{"chain", to_string(wp.chain)},
                    {"center_cell", wp.center_cell},
                    {"width", wp.width},
                    {"carrier_k", wp.carrier_k}};
  j["method"] = to_string(method);
  j["dt"] = dt;
  j["t_max"] = t_max;
  j["store_every"] = store_every;
  j["seap"] = {{"peak_amplification", seap.peak_amplification},
               {"peak_time", seap.peak_time},
               {"peak_site", seap.peak_site},
               {"left_arrival_time", seap.left_arrival_time},
               {"reversal", seap.reversal}};
  j["pese"] = {{"final_left_fraction", pese.final_left_fraction},
               {"reflection_time", pese.reflection_time},
               {"reflected_amplification", pese.reflected_amplification}};
  w.write("dynamics.json", j.dump(2) + "\n");
}

void run_response(const Scenario &s, const Params &p, Writer &w)
{
  const SiteRef source = parse_source(p, s.model);
  const std::string mode = p.text("mode", p.has("f") ? "single" : "band");
  ResponseField r;
  if (mode == "single")
  {
    if (!p.has("f"))
    {
      throw ConfigError("task_params.f", "a frequency for a single-frequency response");
    }
    r = greens_response(s.model, p.real("f", 0.0), source);
  }
  else if (mode == "band")
  {
    r = integrated_response(s.model, p.real("f1", 10.5), p.real("f2", 15.5),
                            p.integer("num_f", 256), source);
  }
  else
  {
    throw ConfigError("task_params.mode", "one of single, band");
  }
  w.write("response.csv", response_csv(r));
  json j;
  j["f1"] = r.f1;
  j["f2"] = r.f2;
  j["num_f"] = r.num_f;
  j["source"] = {{"chain", to_string(r.source.chain)},
                 {"index", r.source.index},
                 {"site", physical_site(r.source)}};
  j["loss"] = r.loss;
  j["chain_A_share"] = chain_share(r, Chain::A);
  j["chain_B_share"] = chain_share(r, Chain::B);
  j["left_quarter_share"] = left_quarter_share(r);
  j["skipped"] = r.skipped;
  w.write("response.json", j.dump(2) + "\n");
}

void run_ensemble(const Scenario &s, const Params &p, const RunOptions &o, Writer &w)
{
  const int n = o.seeds > 0 ? o.seeds : p.integer("n_seeds", 100);
  const EnsembleResult e = disorder_ensemble(s, n, o.workers);
  std::ostringstream out;
  out << "seed,similarity,mean_G\n";
  for (std::size_t i = 0; i < e.seeds.size(); ++i)
  {
    out << e.seeds[i] << ',' << format_double(e.values[i]) << ',' << format_double(e.mean_G[i])
        << '\n';
  }
  w.write("ensemble.csv", out.str());
  json j;
  j["mean"] = e.mean;
  j["min"] = e.min;
  j["max"] = e.max;
  j["count"] = e.count;
  j["failures"] = e.failures;
  j["errors"] = e.errors;
  j["mean_G"] = mean_of(e.mean_G);
  j["master_seed"] = s.seed;
  w.write("ensemble.json", j.dump(2) + "\n");
}

struct OracleSet
{
  std::string label;
  ExactChainParams params;
};

std::vector<OracleSet> oracle_sets(const Params &p)
{
  std::vector<OracleSet> sets;
  if (!p.has("sets"))
  {
    sets = {{"ed-r-below-1", {{0.3, 0.5}, 1.0, 1.0, 0.8, 2}},
            {"ed-r-equal-1", {{0.0, 0.5}, 1.0, 1.0, 1.0, 2}},
            {"ed-r-above-1", {{0.0, 0.5}, 1.0, 1.0, 1.25, 2}},
            {"bounded", {{0.0, 0.5}, 0.3, 1.0, 0.8, 2}}};
    return sets;
  }
  const YAML::Node list = p.node["sets"];
  if (!list.IsSequence())
  {
    throw ConfigError("task_params.sets", "a list of parameter sets");
  }
  for (std::size_t i = 0; i < list.size(); ++i)
  {
    const std::string where = "task_params.sets[" + std::to_string(i) + "]";
    Params item{list[i]};
    OracleSet set;
    set.label = item.text("label", "set" + std::to_string(i));
    set.params.V = item.has("V") ? get_complex(list[i]["V"], join(where, "V")) : Complex(0.0);
    set.params.J = item.real("J", 1.0);
    set.params.t = item.real("t", 1.0);
    set.params.r = item.real("r", 1.0);
    sets.push_back(set);
  }
  return sets;
}

void run_oracle(const Scenario &s, const Params &p, Writer &w)
{
  const double kappa = p.real("kappa", 1.0);
  const int check_L = p.integer("check_L", 12);
  const double q_fraction = p.real("q_fraction", 0.5);
  std::vector<int> L_values = {20, 40, 80};
  if (p.has("L_values"))
  {
    L_values.clear();
    for (std::size_t i = 0; i < p.node["L_values"].size(); ++i)
    {
      L_values.push_back(get_int(p.node["L_values"][i], "task_params.L_values"));
    }
  }
  json report = json::array();
  std::ostringstream scan;
  scan << "set,L,q,ratio,regime,marginal\n";
  bool all_ok = true;
  for (const OracleSet &set : oracle_sets(p))
  {
    double eig_err = 0.0;
    double vec_err = 0.0;
    double res_err = 0.0;
    for (int L = 2; L <= check_L; ++L)
    {
      ExactChainParams ep = set.params;
      ep.L = L;
      const ExactSolution sol = exact_eigensystem(ep, kappa);
      const EigenDecomposition d = eig(build_realspace(exact_model(ep, kappa)));
      const ComplexMatrix ha = block_of(build_realspace(exact_model(ep, kappa)), L, Chain::A, Chain::A);
      for (int j = 0; j < L; ++j)
      {
        Eigen::Index best = 0;
        (d.values.array() - sol.eigenvalues[j]).abs().minCoeff(&best);
        eig_err = std::max(eig_err, std::abs(d.values(best) - sol.eigenvalues[j]));
        const ComplexVector v = d.vectors.col(best);
        const Complex overlap = sol.eigenvectors.col(j).dot(v);
        const Complex phase = overlap / std::abs(overlap);
        vec_err = std::max(vec_err, (v * std::conj(phase) - sol.eigenvectors.col(j)).norm());
        ComplexMatrix shifted = ha;
        shifted.diagonal().array() -= sol.eigenvalues[j];
        const ComplexMatrix numeric = Eigen::PartialPivLU<ComplexMatrix>(shifted).inverse();
        const ComplexMatrix closed = exact_resolvent(ep, sol.eigenvalues[j]);
        res_err = std::max(res_err, (numeric - closed).cwiseAbs().maxCoeff() /
                                      numeric.cwiseAbs().maxCoeff());
      }
    }
    const std::vector<RatioRow> rows = ratio_scan(set.params, L_values, q_fraction, kappa);
    bool growing = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
      growing = growing && rows[i].ratio > rows[i - 1].ratio;
    }
    const bool unbounded = growing && rows.back().ratio / rows.front().ratio > 10.0;
    const bool plateau = rows.size() >= 2 &&
                         std::abs(rows.back().ratio - rows[rows.size() - 2].ratio) /
                             rows[rows.size() - 2].ratio <
                           0.1;
    bool consistent = true;
    bool marginal = false;
    for (const auto &r : rows)
    {
      marginal = marginal || r.regime.marginal;
      consistent = consistent && (r.regime.regime == Regime::AsymptoticED ? unbounded : plateau);
      scan << set.label << ',' << r.L << ',' << format_double(r.q) << ',' << format_double(r.ratio)
           << ',' << to_string(r.regime.regime) << ',' << r.regime.marginal << '\n';
    }
    const bool ok = eig_err < 1e-8 && vec_err < 1e-8 && res_err < 1e-10 && (consistent || marginal);
    all_ok = all_ok && ok;
    report.push_back({{"label", set.label},
                      {"V", json::array({set.params.V.real(), set.params.V.imag()})},
                      {"J", set.params.J},
                      {"t", set.params.t},
                      {"r", set.params.r},
                      {"max_eigenvalue_error", eig_err},
                      {"max_eigenvector_error", vec_err},
                      {"max_resolvent_error", res_err},
                      {"regime", to_string(rows.front().regime.regime)},
                      {"marginal", marginal},
                      {"trend_consistent", consistent},
                      {"ok", ok}});
  }
  w.write("ratio_scan.csv", scan.str());
  w.write("oracle.json", json{{"kappa", kappa}, {"check_L", check_L}, {"sets", report}}.dump(2) + "\n");
  if (!all_ok)
  {
    throw Error("oracle checks failed; see " + s.name + "_oracle.json");
  }
}

}  // namespace

Scenario parse_scenario(const std::string &text)
{
  const YAML::Node root = load_yaml(text, "scenario");
  if (!root.IsMap())
  {
    throw ConfigError("scenario", "a map with name, task and model");
  }
  for (const auto &kv : root)
  {
    const std::string k = kv.first.as<std::string>();
    static const std::vector<std::string> allowed = {"name",  "task",        "seed", "output_dir",
                                                     "model", "task_params", "sweep"};
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
    {
      throw ConfigError(k, "no such key (allowed: name, task, seed, output_dir, model, "
                           "task_params, sweep)");
    }
  }
  Scenario s;
  s.name = get_string(detail::require(root, "name", ""), "name");
  if (s.name.empty() || s.name.find('/') != std::string::npos)
  {
    throw ConfigError("name", "a nonempty string without '/'");
  }
  s.task = get_string(detail::require(root, "task", ""), "task");
  const auto &names = task_names();
  if (std::find(names.begin(), names.end(), s.task) == names.end())
  {
    std::string list;
    for (const auto &n : names)
    {
      list += (list.empty() ? "" : ", ") + n;
    }
    throw ConfigError("task", "one of " + list);
  }
  if (root["seed"])
  {
    s.seed = get_uint(root["seed"], "seed");
  }
  if (root["output_dir"])
  {
    s.output_dir = get_string(root["output_dir"], "output_dir");
  }
  if (root["task_params"])
  {
    if (!root["task_params"].IsMap())
    {
      throw ConfigError("task_params", "a map");
    }
    s.task_params_source = dump(root["task_params"]);
  }
  if (root["model"])
  {
    s.model_source = dump(root["model"]);
    s.model = detail::parse_model(root["model"], "model");
  }
  else if (s.task != "oracle-suite")
  {
    throw ConfigError("model", "a value (key is required)");
  }
  if (root["sweep"])
  {
    const YAML::Node sw = root["sweep"];
    if (!sw.IsMap())
    {
      throw ConfigError("sweep", "a map from model paths to grids");
    }
    for (const auto &kv : sw)
    {
      const std::string path = kv.first.as<std::string>();
      s.axes.push_back({path, parse_grid(kv.second, "sweep." + path)});
    }
    // Surface bad paths now rather than at the first grid point.
    std::vector<double> first;
    for (const auto &a : s.axes)
    {
      first.push_back(a.values.front());
    }
    model_at(s, s.axes, first);
  }
  return s;
}

Scenario load_scenario(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError(path, "a readable scenario file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

ModelSpec model_at(const Scenario &scenario, const std::vector<GridAxis> &axes,
                   const std::vector<double> &values)
{
  YAML::Node node = load_yaml(scenario.model_source, "model");
  for (std::size_t a = 0; a < axes.size(); ++a)
  {
    set_path(node, strip_model_prefix(axes[a].path), values[a]);
  }
  return detail::parse_model(node, "model");
}

SweepPoint evaluate_point(const ModelSpec &spec)
{
  SweepPoint p;
  try
  {
    const std::vector<double> g = bulk_gauges(build_realspace(spec), chain_length(spec));
    p.mean_G_bulk = mean_of(g);
    if (spec.reverse_coupling != 0.0)
    {
      p.similarity = p.mean_G_A = p.mean_G_B = p.min_singular = nan_value;
    }
    else
    {
      const EDReport r = ed_condition_check(spec);
      p.similarity = r.similarity;
      p.mean_G_A = r.mean_G_A;
      p.mean_G_B = r.mean_G_B;
      p.min_singular = r.min_singular_of_eigenbasis;
      p.verdict = r.verdict;
    }
    p.ok = true;
  }
  catch (const Error &e)
  {
    p.ok = false;
    p.error = e.what();
  }
  return p;
}

std::vector<SweepPoint> sweep(const Scenario &scenario, const std::vector<GridAxis> &axes,
                              int workers)
{
  std::size_t total = 1;
  for (const auto &a : axes)
  {
    if (a.values.empty())
    {
      throw PreconditionError("sweep axis " + a.path + " has no values");
    }
    total *= a.values.size();
  }
  std::vector<SweepPoint> points(total);
  parallel_for(total, workers, [&](std::size_t idx) {
    std::vector<double> coords(axes.size());
    std::size_t rest = idx;
    for (std::size_t a = axes.size(); a-- > 0;)
    {
      coords[a] = axes[a].values[rest % axes[a].values.size()];
      rest /= axes[a].values.size();
    }
    SweepPoint p;
    try
    {
      p = evaluate_point(model_at(scenario, axes, coords));
    }
    catch (const Error &e)
    {
      p.ok = false;
      p.error = e.what();
    }
    p.coords = coords;
    points[idx] = p;
  });
  return points;
}

EnsembleResult disorder_ensemble(const Scenario &scenario, int n_seeds, int workers)
{
  if (n_seeds < 1)
  {
    throw PreconditionError("an ensemble needs at least one seed");
  }
  const Params p = params_of(scenario);
  if (!p.has("disorder"))
  {
    throw ConfigError("task_params.disorder", "a disorder section for the ensemble");
  }
  const DisorderSpec base = detail::parse_disorder(p.node["disorder"], "task_params.disorder");
  struct Slot
  {
    bool ok = false;
    double c = 0.0;
    double g = 0.0;
    std::string error;
  };
  std::vector<Slot> slots(n_seeds);
  parallel_for(static_cast<std::size_t>(n_seeds), workers, [&](std::size_t i) {
    DisorderSpec d = base;
    d.seed = scenario.seed + i;
    try
    {
      const EigenspacePair pair = extract_eigenspaces(scenario.model, d);
      double g = 0.0;
      int count = 0;
      for (const auto &st : pair.states)
      {
        if (!st.edge)
        {
          g += st.gauge;
          ++count;
        }
      }
      slots[i] = {true, cosine_similarity(pair), g / count, ""};
    }
    catch (const Error &e)
    {
      slots[i] = {false, 0.0, 0.0, e.what()};
    }
  });
  EnsembleResult r;
  for (int i = 0; i < n_seeds; ++i)
  {
    if (!slots[i].ok)
    {
      ++r.failures;
      r.errors.push_back("seed " + std::to_string(scenario.seed + i) + ": " + slots[i].error);
      continue;
    }
    r.seeds.push_back(scenario.seed + i);
    r.values.push_back(slots[i].c);
    r.mean_G.push_back(slots[i].g);
  }
  r.count = static_cast<int>(r.values.size());
  if (r.count > 0)
  {
    r.mean = mean_of(r.values);
    r.min = *std::min_element(r.values.begin(), r.values.end());
    r.max = *std::max_element(r.values.begin(), r.values.end());
  }
  else
  {
    r.mean = r.min = r.max = nan_value;
  }
  return r;
}

TaskOutcome run_scenario(const Scenario &s, const RunOptions &o)
{
  TaskOutcome outcome;
  outcome.scenario = s.name;
  outcome.task = s.task;
  const std::string dir = !o.output_dir.empty() ? o.output_dir
                          : !s.output_dir.empty() ? s.output_dir
                                                  : std::string("out");
  try
  {
    Writer w(dir, s.name);
    try
    {
      const Params p = params_of(s);
      const bool sweep_task = s.task == "similarity-surface" || s.task == "ed-circle" ||
                              s.task == "criticality-sweep";
      if (sweep_task || (o.force_sweep && !s.axes.empty()))
      {
        run_sweep_task(s, o, w);
      }
      else if (o.force_sweep)
      {
        throw ConfigError("sweep", "at least one axis for the sweep command");
      }
      else if (s.task == "spectrum")
      {
        run_spectrum(s, p, w);
      }
      else if (s.task == "gbz")
      {
        run_gbz(s, w);
      }
      else if (s.task == "eigenstates")
      {
        run_eigenstates(s, p, w);
      }
      else if (s.task == "dynamics")
      {
        run_dynamics(s, p, w);
      }
      else if (s.task == "response")
      {
        run_response(s, p, w);
      }
      else if (s.task == "disorder-ensemble")
      {
        run_ensemble(s, p, o, w);
      }
      else if (s.task == "oracle-suite")
      {
        run_oracle(s, p, w);
      }
      outcome.ok = true;
    }
    catch (const std::exception &e)
    {
      outcome.error = e.what();
    }
    outcome.files = w.files;
  }
  catch (const std::exception &e)
  {
    outcome.error = e.what();
  }
  return outcome;
}

void write_manifest(const std::string &dir, const std::vector<TaskOutcome> &outcomes)
{
  fs::create_directories(dir);
  std::vector<std::string> paths;
  for (const auto &entry : fs::recursive_directory_iterator(dir))
  {
    if (entry.is_regular_file())
    {
      const std::string rel = fs::relative(entry.path(), dir).generic_string();
      if (rel != "manifest.json")
      {
        paths.push_back(rel);
      }
    }
  }
  std::sort(paths.begin(), paths.end());
  json files = json::array();
  for (const auto &rel : paths)
  {
    std::ifstream in(fs::path(dir) / rel, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    files.push_back({{"path", rel}, {"fnv1a64", fnv1a64_hex(buffer.str())}});
  }
  json tasks = json::array();
  for (const auto &o : outcomes)
  {
    json f = json::array();
    for (const auto &file : o.files)
    {
      f.push_back({{"path", file.path}, {"fnv1a64", file.hash}});
    }
    tasks.push_back({{"scenario", o.scenario},
                     {"task", o.task},
                     {"status", o.ok ? "ok" : "error"},
                     {"error", o.error},
                     {"files", f}});
  }
  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
  out << json{{"files", files}, {"tasks", tasks}}.dump(2) << "\n";
}

Scenario default_oracle_scenario()
{
  Scenario s;
  s.name = "oracle_suite";
  s.task = "oracle-suite";
  return s;
}

}  // namespace edlab
