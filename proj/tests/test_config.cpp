// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <string>

#include "edlab/config.hpp"
#include "support/oracles.hpp"

using namespace edlab;

namespace
{

const char *base_model = R"(
chainA: {type: ssh, v: -0.765, w: -1.565, delta: 0.0, onsite: [13.09, -0.03]}
chainB: {type: ssh, v: -0.885, w: -1.565, delta: -0.453, onsite: 13.09}
coupling: -1.081
direction: B-to-A
cells: 8
boundary: OBC
)";

std::string error_key(const std::string &text)
{
  try
  {
    model_from_yaml(text);
  }
  catch (const ConfigError &e)
  {
    return e.key();
  }
  return "";
}

bool same_chain(const ChainParams &a, const ChainParams &b)
{
  if (a.index() != b.index())
  {
    return false;
  }
  if (const auto *x = std::get_if<SSHChainParams>(&a))
  {
    const auto &y = std::get<SSHChainParams>(b);
    return x->v == y.v && x->w == y.w && x->delta == y.delta && x->onsite == y.onsite;
  }
  if (const auto *x = std::get_if<HNChainParams>(&a))
  {
    const auto &y = std::get<HNChainParams>(b);
    return x->t == y.t && x->delta == y.delta && x->onsite == y.onsite;
  }
  const auto &x = std::get<ExactChainParams>(a);
  const auto &y = std::get<ExactChainParams>(b);
  return x.V == y.V && x.J == y.J && x.t == y.t && x.r == y.r && x.L == y.L;
}

bool same_model(const ModelSpec &a, const ModelSpec &b)
{
  return same_chain(a.chainA, b.chainA) && same_chain(a.chainB, b.chainB) &&
         a.coupling == b.coupling && a.direction == b.direction &&
         a.reverse_coupling == b.reverse_coupling && a.offsetB == b.offsetB &&
         a.cells == b.cells && a.boundary == b.boundary;
}

}  // namespace

TEST_CASE("model fields parse")
{
  const ModelSpec s = model_from_yaml(base_model);
  const auto &a = std::get<SSHChainParams>(s.chainA);
  const auto &b = std::get<SSHChainParams>(s.chainB);
  CHECK(a.v == -0.765);
  CHECK(a.onsite == Complex(13.09, -0.03));
  CHECK(b.delta == -0.453);
  CHECK(b.onsite == Complex(13.09, 0.0));
  CHECK(s.coupling == -1.081);
  CHECK(s.direction == CouplingDirection::BToA);
  CHECK(s.cells == 8);
  CHECK(s.boundary == Boundary::OBC);
  CHECK(s.reverse_coupling == 0.0);
  CHECK(s.offsetB == Complex(0.0));
}

TEST_CASE("direction aliases")
{
  std::string text = base_model;
  text.replace(text.find("B-to-A"), 6, "system-II");
  CHECK(model_from_yaml(text).direction == CouplingDirection::AToB);
  text = base_model;
  text.replace(text.find("B-to-A"), 6, "a-to-b");
  CHECK(model_from_yaml(text).direction == CouplingDirection::AToB);
}

TEST_CASE("v_e placeholder resolves to the coincidence hopping")
{
  std::string text = base_model;
  text.replace(text.find("-0.765"), 6, "v_e");
  const ModelSpec s = model_from_yaml(text);
  CHECK(std::get<SSHChainParams>(s.chainA).v ==
        doctest::Approx(oracle::coincidence_v1(oracle::exp_v2, oracle::exp_delta)).epsilon(1e-14));
  CHECK(std::get<SSHChainParams>(s.chainA).v == doctest::Approx(-0.7602736349499435).epsilon(1e-12));
}

TEST_CASE("v_e is rejected where it has no meaning")
{
  CHECK(error_key(R"(
chainA: {type: ssh, v: -0.7, w: -1.565}
chainB: {type: ssh, v: v_e, w: -1.565}
cells: 8
)") == "model.chainB.v");
  CHECK(error_key(R"(
chainA: {type: ssh, v: v_e, w: -1.565}
chainB: {type: hn, t: 1.0}
cells: 8
)") == "model.chainA.v");
}

TEST_CASE("round trip through YAML")
{
  ModelSpec s = model_from_yaml(base_model);
  s.offsetB = Complex(1.03, -0.25);
  s.reverse_coupling = 0.1;
  s.direction = CouplingDirection::AToB;
  CHECK(same_model(model_from_yaml(model_to_yaml(s)), s));

  ModelSpec hn;
  hn.chainA = HNChainParams{1.0, 0.3, Complex(0.0, -0.2)};
  hn.chainB = HNChainParams{0.7, -0.1, 0.0};
  hn.coupling = 0.4;
  hn.cells = 16;
  hn.boundary = Boundary::PBC;
  CHECK(same_model(model_from_yaml(model_to_yaml(hn)), hn));

  ModelSpec ex;
  ex.chainA = ExactChainParams{Complex(0.3, 0.5), 1.0, 1.0, 1.0, 12};
  ex.chainB = ExactChainParams{0.0, 0.0, 1.0, 0.8, 12};
  ex.coupling = 1.0;
  ex.cells = 12;
  CHECK(same_model(model_from_yaml(model_to_yaml(ex)), ex));
}

TEST_CASE("complex forms")
{
  const ModelSpec s = model_from_yaml(R"(
chainA: {type: hn, t: 1.0, onsite: {re: 0.5, im: -1.5}}
chainB: {type: hn, t: 1.0, onsite: [2.0, 3.0]}
offsetB: 0.25
cells: 4
)");
  CHECK(std::get<HNChainParams>(s.chainA).onsite == Complex(0.5, -1.5));
  CHECK(std::get<HNChainParams>(s.chainB).onsite == Complex(2.0, 3.0));
  CHECK(s.offsetB == Complex(0.25, 0.0));
}

TEST_CASE("errors name the offending key")
{
  std::string text = base_model;
  text.replace(text.find("-0.765"), 6, "abc");
  CHECK(error_key(text) == "model.chainA.v");

  text = base_model;
  text.replace(text.find("cells: 8"), 8, "cells: eight");
  CHECK(error_key(text) == "model.cells");

  text = base_model;
  text.replace(text.find("cells: 8"), 8, "");
  CHECK(error_key(text) == "model.cells");

  CHECK(error_key(std::string(base_model) + "colour: red\n") == "model.colour");

  text = base_model;
  text.replace(text.find("B-to-A"), 6, "sideways");
  CHECK(error_key(text) == "model.direction");

  text = base_model;
  text.replace(text.find("type: ssh"), 9, "type: ladder");
  CHECK(error_key(text) == "model.chainA.type");

  text = base_model;
  text.replace(text.find("onsite: [13.09, -0.03]"), 22, "onsite: [1, 2, 3]");
  CHECK(error_key(text) == "model.chainA.onsite");

  CHECK(error_key(R"(
chainA: {type: hn, t: 1.0, delta: 0.0, hop: 2}
chainB: {type: hn, t: 1.0}
cells: 4
)") == "model.chainA.hop");

  CHECK(error_key("[1, 2") == "model");
}

TEST_CASE("message carries key and expectation")
{
  std::string text = base_model;
  text.replace(text.find("OBC"), 3, "open");
  try
  {
    model_from_yaml(text);
    FAIL("expected ConfigError");
  }
  catch (const ConfigError &e)
  {
    const std::string what = e.what();
    CHECK(what.find("model.boundary") != std::string::npos);
    CHECK(what.find("OBC") != std::string::npos);
  }
}

TEST_CASE("model preconditions surface as config errors")
{
  std::string text = base_model;
  text.replace(text.find("cells: 8"), 8, "cells: 0");
  CHECK(error_key(text) == "model");
}

TEST_CASE("disorder section")
{
  const DisorderSpec d =
    disorder_from_yaml("{amplitude: 0.1, fraction: 0.25, seed: 7, target: in-chain-hopping}");
  CHECK(d.amplitude == 0.1);
  CHECK(d.fraction == 0.25);
  CHECK(d.seed == 7);
  CHECK(d.target == DisorderTarget::InChainHopping);

  const DisorderSpec def = disorder_from_yaml("{amplitude: 0.0, fraction: 1}");
  CHECK(def.seed == 0);
  CHECK(def.target == DisorderTarget::Onsite);

  auto key_of = [](const char *text) {
    try
    {
      disorder_from_yaml(text);
    }
    catch (const ConfigError &e)
    {
      return e.key();
    }
    return std::string();
  };
  CHECK(key_of("{amplitude: 0.1}") == "disorder.fraction");
  CHECK(key_of("{amplitude: -0.1, fraction: 0.5}") == "disorder.amplitude");
  CHECK(key_of("{amplitude: 0.1, fraction: 1.5}") == "disorder.fraction");
  CHECK(key_of("{amplitude: 0.1, fraction: 0.5, target: everything}") == "disorder.target");
  CHECK(key_of("{amplitude: 0.1, fraction: 0.5, seed: -3}") == "disorder.seed");
  CHECK(key_of("{amplitude: 0.1, fraction: 0.5, sigma: 2}") == "disorder.sigma");
}
