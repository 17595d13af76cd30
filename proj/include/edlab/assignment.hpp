// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace edlab
{

/// Minimum-cost perfect matching of a square cost matrix (Hungarian method).
/// Returns column[row].
std::vector<int> min_cost_assignment(const Eigen::MatrixXd &cost);

}  // namespace edlab
