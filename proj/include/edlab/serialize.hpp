// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edlab/dynamics.hpp"
#include "edlab/edcore.hpp"
#include "edlab/oracle.hpp"
#include "edlab/response.hpp"
#include "edlab/spectral.hpp"

namespace edlab
{

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double x);

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string &bytes);

/// Columns re, im, label, conditioning.
std::string spectrum_csv(const SpectrumSet &s);
std::string spectrum_json(const SpectrumSet &s);

/// Columns re_E, im_E, re_beta, im_beta, factor.
std::string gbz_csv(const GBZPortrait &g);
std::string gbz_json(const GBZPortrait &g);

std::string ed_report_json(const EDReport &r);

/// One row per eigenstate: index, re, im, block, edge, ambiguous, G.
std::string states_csv(const EigenspacePair &p);

/// Long-format eigenvector magnitudes: state, site, chain, chain_index, amplitude.
std::string profiles_csv(const EigenspacePair &p);

/// Columns t, site, abs2, re, im with the physical site index.
std::string trajectory_csv(const TrajectoryField &t);

/// Columns site, chain, chain_index, amplitude.
std::string response_csv(const ResponseField &r);

/// Columns L, q, ratio, regime, marginal.
std::string ratio_scan_csv(const std::vector<RatioRow> &rows);

}  // namespace edlab
