// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>

#include "config_yaml.hpp"

namespace edlab
{

ConfigError::ConfigError(const std::string &key, const std::string &expected)
  : Error("config key '" + key + "': expected " + expected), key_name(key)
{
}

namespace detail
{

std::string join(const std::string &where, const std::string &child)
{
  return where.empty() ? child : where + "." + child;
}

namespace
{

bool is_scalar(const YAML::Node &n) { return n && n.IsScalar(); }

double scalar_real(const YAML::Node &n, const std::string &key)
{
  if (!is_scalar(n))
  {
    throw ConfigError(key, "a real number");
  }
  try
  {
    return n.as<double>();
  }
  catch (const YAML::Exception &)
  {
    throw ConfigError(key, "a real number");
  }
}

std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void reject_unknown(const YAML::Node &node, const std::string &where,
                    const std::set<std::string> &allowed)
{
  for (const auto &kv : node)
  {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key))
    {
      throw ConfigError(join(where, key), "no such key (allowed keys are listed in the README)");
    }
  }
}

YAML::Node complex_node(Complex c)
{
  if (c.imag() == 0.0)
  {
    return YAML::Node(c.real());
  }
  YAML::Node n(YAML::NodeType::Sequence);
  n.push_back(c.real());
  n.push_back(c.imag());
  n.SetStyle(YAML::EmitterStyle::Flow);
  return n;
}

ChainParams parse_chain(const YAML::Node &node, const std::string &where, Chain role)
{
  if (!node || !node.IsMap())
  {
    throw ConfigError(where, "a map describing a chain");
  }
  const std::string type = lower(get_string(require(node, "type", where), join(where, "type")));
  auto opt_real = [&](const char *k) {
    return node[k] ? get_real(node[k], join(where, k)) : 0.0;
  };
  auto opt_complex = [&](const char *k) {
    return node[k] ? get_complex(node[k], join(where, k)) : Complex(0.0);
  };
  if (type == "ssh")
  {
    reject_unknown(node, where, {"type", "v", "w", "delta", "onsite"});
    SSHChainParams p;
    const YAML::Node v = require(node, "v", where);
    if (is_scalar(v) && v.as<std::string>() == "v_e")
    {
      // Resolved once chain B is known; NaN marks the placeholder.
      p.v = std::numeric_limits<double>::quiet_NaN();
      if (role != Chain::A)
      {
        throw ConfigError(join(where, "v"), "a real number (v_e is only valid on chain A)");
      }
    }
    else
    {
      p.v = get_real(v, join(where, "v"));
    }
    p.w = get_real(require(node, "w", where), join(where, "w"));
    p.delta = opt_real("delta");
    p.onsite = opt_complex("onsite");
    return p;
  }
  if (type == "hn")
  {
    reject_unknown(node, where, {"type", "t", "delta", "onsite"});
    HNChainParams p;
    p.t = get_real(require(node, "t", where), join(where, "t"));
    p.delta = opt_real("delta");
    p.onsite = opt_complex("onsite");
    return p;
  }
  if (type == "exact")
  {
    reject_unknown(node, where, {"type", "V", "J", "t", "r", "L"});
    ExactChainParams p;
    p.V = opt_complex("V");
    p.J = opt_real("J");
    p.t = node["t"] ? get_real(node["t"], join(where, "t")) : 1.0;
    p.r = node["r"] ? get_real(node["r"], join(where, "r")) : 1.0;
    p.L = get_int(require(node, "L", where), join(where, "L"));
    return p;
  }
  throw ConfigError(join(where, "type"), "one of ssh, hn, exact");
}

}  // namespace

YAML::Node require(const YAML::Node &node, const std::string &child, const std::string &where)
{
  if (!node || !node.IsMap() || !node[child])
  {
    throw ConfigError(join(where, child), "a value (key is required)");
  }
  return node[child];
}

double get_real(const YAML::Node &node, const std::string &key) { return scalar_real(node, key); }

int get_int(const YAML::Node &node, const std::string &key)
{
  if (!is_scalar(node))
  {
    throw ConfigError(key, "an integer");
  }
  try
  {
    return node.as<int>();
  }
  catch (const YAML::Exception &)
  {
    throw ConfigError(key, "an integer");
  }
}

std::uint64_t get_uint(const YAML::Node &node, const std::string &key)
{
  if (!is_scalar(node))
  {
    throw ConfigError(key, "a non-negative integer");
  }
  try
  {
    return node.as<std::uint64_t>();
  }
  catch (const YAML::Exception &)
  {
    throw ConfigError(key, "a non-negative integer");
  }
}

std::string get_string(const YAML::Node &node, const std::string &key)
{
  if (!is_scalar(node))
  {
    throw ConfigError(key, "a string");
  }
  return node.as<std::string>();
}

bool get_bool(const YAML::Node &node, const std::string &key)
{
  if (!is_scalar(node))
  {
    throw ConfigError(key, "a boolean");
  }
  try
  {
    return node.as<bool>();
  }
  catch (const YAML::Exception &)
  {
    throw ConfigError(key, "a boolean");
  }
}

Complex get_complex(const YAML::Node &node, const std::string &key)
{
  const char *expected = "a complex number (scalar, [re, im] or {re, im})";
  if (is_scalar(node))
  {
    return {scalar_real(node, key), 0.0};
  }
  if (node && node.IsSequence() && node.size() == 2)
  {
    return {scalar_real(node[0], key), scalar_real(node[1], key)};
  }
  if (node && node.IsMap() && node.size() == 2 && node["re"] && node["im"])
  {
    return {scalar_real(node["re"], key), scalar_real(node["im"], key)};
  }
  throw ConfigError(key, expected);
}

ModelSpec parse_model(const YAML::Node &node, const std::string &where)
{
  if (!node || !node.IsMap())
  {
    throw ConfigError(where, "a map describing the model");
  }
  reject_unknown(node, where,
                 {"chainA", "chainB", "coupling", "direction", "reverse_coupling", "offsetB",
                  "cells", "boundary"});
  ModelSpec spec;
  spec.chainA = parse_chain(require(node, "chainA", where), join(where, "chainA"), Chain::A);
  spec.chainB = parse_chain(require(node, "chainB", where), join(where, "chainB"), Chain::B);
  if (auto *a = std::get_if<SSHChainParams>(&spec.chainA); a && std::isnan(a->v))
  {
    const auto *b = std::get_if<SSHChainParams>(&spec.chainB);
    if (!b)
    {
      throw ConfigError(join(where, "chainA.v"), "a real number (v_e needs an SSH chain B)");
    }
    a->v = coincidence_hopping(*b);
    if (std::isnan(a->v))
    {
      throw ConfigError(join(where, "chainA.v"),
                        "a real number (v_e is undefined for these chain-B parameters)");
    }
  }
  if (node["coupling"])
  {
    spec.coupling = get_real(node["coupling"], join(where, "coupling"));
  }
  if (node["direction"])
  {
    const std::string key = join(where, "direction");
    const std::string d = lower(get_string(node["direction"], key));
    if (d == "b-to-a" || d == "system-i")
    {
      spec.direction = CouplingDirection::BToA;
    }
    else if (d == "a-to-b" || d == "system-ii")
    {
      spec.direction = CouplingDirection::AToB;
    }
    else
    {
      throw ConfigError(key, "one of B-to-A, A-to-B");
    }
  }
  if (node["reverse_coupling"])
  {
    spec.reverse_coupling = get_real(node["reverse_coupling"], join(where, "reverse_coupling"));
  }
  if (node["offsetB"])
  {
    spec.offsetB = get_complex(node["offsetB"], join(where, "offsetB"));
  }
  spec.cells = get_int(require(node, "cells", where), join(where, "cells"));
  if (node["boundary"])
  {
    const std::string key = join(where, "boundary");
    const std::string b = lower(get_string(node["boundary"], key));
    if (b == "obc")
    {
      spec.boundary = Boundary::OBC;
    }
    else if (b == "pbc")
    {
      spec.boundary = Boundary::PBC;
    }
    else
    {
      throw ConfigError(key, "one of OBC, PBC");
    }
  }
  try
  {
    validate(spec);
  }
  catch (const PreconditionError &e)
  {
    throw ConfigError(where, std::string("a valid model (") + e.what() + ")");
  }
  return spec;
}

DisorderSpec parse_disorder(const YAML::Node &node, const std::string &where)
{
  if (!node || !node.IsMap())
  {
    throw ConfigError(where, "a map describing the disorder");
  }
  reject_unknown(node, where, {"amplitude", "fraction", "seed", "target"});
  DisorderSpec d;
  d.amplitude = get_real(require(node, "amplitude", where), join(where, "amplitude"));
  d.fraction = get_real(require(node, "fraction", where), join(where, "fraction"));
  if (node["seed"])
  {
    d.seed = get_uint(node["seed"], join(where, "seed"));
  }
  if (node["target"])
  {
    const std::string key = join(where, "target");
    const std::string t = lower(get_string(node["target"], key));
    if (t == "onsite")
    {
      d.target = DisorderTarget::Onsite;
    }
    else if (t == "in-chain-hopping")
    {
      d.target = DisorderTarget::InChainHopping;
    }
    else
    {
      throw ConfigError(key, "one of onsite, in-chain-hopping");
    }
  }
  if (!(d.amplitude >= 0.0))
  {
    throw ConfigError(join(where, "amplitude"), "a non-negative real number");
  }
  if (!(d.fraction >= 0.0 && d.fraction <= 1.0))
  {
    throw ConfigError(join(where, "fraction"), "a real number in [0, 1]");
  }
  return d;
}

YAML::Node model_node(const ModelSpec &spec)
{
  YAML::Node n;
  auto chain = [](const ChainParams &params) {
    YAML::Node c;
    if (const auto *p = std::get_if<SSHChainParams>(&params))
    {
      c["type"] = "ssh";
      c["v"] = p->v;
      c["w"] = p->w;
      c["delta"] = p->delta;
      c["onsite"] = complex_node(p->onsite);
    }
    else if (const auto *p = std::get_if<HNChainParams>(&params))
    {
      c["type"] = "hn";
      c["t"] = p->t;
      c["delta"] = p->delta;
      c["onsite"] = complex_node(p->onsite);
    }
    else
    {
      const auto &e = std::get<ExactChainParams>(params);
      c["type"] = "exact";
      c["V"] = complex_node(e.V);
      c["J"] = e.J;
      c["t"] = e.t;
      c["r"] = e.r;
      c["L"] = e.L;
    }
    return c;
  };
  n["chainA"] = chain(spec.chainA);
  n["chainB"] = chain(spec.chainB);
  n["coupling"] = spec.coupling;
  n["direction"] = spec.direction == CouplingDirection::BToA ? "B-to-A" : "A-to-B";
  n["reverse_coupling"] = spec.reverse_coupling;
  n["offsetB"] = complex_node(spec.offsetB);
  n["cells"] = spec.cells;
  n["boundary"] = spec.boundary == Boundary::OBC ? "OBC" : "PBC";
  return n;
}

}  // namespace detail

ModelSpec model_from_yaml(const std::string &text)
{
  YAML::Node node;
  try
  {
    node = YAML::Load(text);
  }
  catch (const YAML::Exception &e)
  {
    throw ConfigError("model", std::string("well-formed YAML (") + e.what() + ")");
  }
  return detail::parse_model(node, "model");
}

std::string model_to_yaml(const ModelSpec &spec)
{
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << detail::model_node(spec);
  return out.c_str();
}

DisorderSpec disorder_from_yaml(const std::string &text)
{
  YAML::Node node;
  try
  {
    node = YAML::Load(text);
  }
  catch (const YAML::Exception &e)
  {
    throw ConfigError("disorder", std::string("well-formed YAML (") + e.what() + ")");
  }
  return detail::parse_disorder(node, "disorder");
}

}  // namespace edlab
