// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include <yaml-cpp/yaml.h>

#include "edlab/config.hpp"

namespace edlab::detail
{

ModelSpec parse_model(const YAML::Node &node, const std::string &where);
DisorderSpec parse_disorder(const YAML::Node &node, const std::string &where);
YAML::Node model_node(const ModelSpec &spec);

double get_real(const YAML::Node &node, const std::string &key);
int get_int(const YAML::Node &node, const std::string &key);
std::uint64_t get_uint(const YAML::Node &node, const std::string &key);
std::string get_string(const YAML::Node &node, const std::string &key);
Complex get_complex(const YAML::Node &node, const std::string &key);
bool get_bool(const YAML::Node &node, const std::string &key);

/// Child lookup that raises ConfigError naming the full key when absent.
YAML::Node require(const YAML::Node &node, const std::string &child, const std::string &where);

std::string join(const std::string &where, const std::string &child);

}  // namespace edlab::detail
