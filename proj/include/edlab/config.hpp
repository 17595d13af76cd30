// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "edlab/common.hpp"
#include "edlab/lattice.hpp"

namespace edlab
{

/// A configuration value is missing or has the wrong type.
class ConfigError : public Error
{
public:
  ConfigError(const std::string &key, const std::string &expected);
  const std::string &key() const { return key_name; }

private:
  std::string key_name;
};

/// Parses a model section written in YAML. Chains carry a `type` of ssh, hn
/// or exact; complex values are a scalar, a [re, im] pair or {re, im}; an SSH
/// chain-A hopping `v: v_e` resolves to the value at which the open spectra of
/// the two SSH chains coincide.
ModelSpec model_from_yaml(const std::string &text);

/// YAML text that model_from_yaml maps back to the same spec.
std::string model_to_yaml(const ModelSpec &spec);

/// Parses a disorder section (amplitude, fraction, seed, target).
DisorderSpec disorder_from_yaml(const std::string &text);

}  // namespace edlab
