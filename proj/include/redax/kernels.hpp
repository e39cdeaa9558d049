/* Copyright 2026 The redax Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include "redax/graph_algo.hpp"
#include "redax/netlist.hpp"

#include <vector>

namespace redax::kernels {

enum class Exec { Serial, Parallel };

/// Transitive fan-in (gates + driver leaves) and fan-out cone sizes of one vertex.
struct ConeSize {
    int fan_in = 0;
    int fan_out = 0;
    friend bool operator==(const ConeSize&, const ConeSize&) = default;
};

/// Cone sizes of every live gate and register (zeros elsewhere). A register's fan-in is
/// the cone of its data input; its fan-out starts at its output.
std::vector<ConeSize> cone_sizes(const Hypergraph& g, Exec exec = Exec::Parallel);
/// Same values, computed one vertex at a time with fan_in_cone/fan_out_cone.
std::vector<ConeSize> cone_sizes_reference(const Hypergraph& g);

/// Structural features of one cut-point.
struct CutFeatures {
    int fi_gates = 0;
    int fi_drivers = 0;
    int fo_size = 0; // 0 for primary outputs
    int fi_size() const { return fi_gates + fi_drivers; }
    friend bool operator==(const CutFeatures&, const CutFeatures&) = default;
};

std::vector<CutFeatures> cut_features(const Hypergraph& g, const std::vector<CutPoint>& cps, Exec exec = Exec::Parallel);
std::vector<CutFeatures> cut_features_reference(const Hypergraph& g, const std::vector<CutPoint>& cps);

} // namespace redax::kernels
