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

#include "redax/netlist.hpp"

#include <vector>

namespace redax {

/// Topological order of all live vertices. Register outputs are sources (their data
/// edge is ignored); ties are broken by ascending id. Throws GraphError naming one
/// combinational cycle.
std::vector<VertexId> topological_sort(const Hypergraph& g);

/// Position of every vertex in `order` (-1 for vertices not listed).
std::vector<int> positions(const Hypergraph& g, const std::vector<VertexId>& order);

/// Maximum fanout-free cone rooted at a gate or register, ascending ids, root included.
/// Members other than the root are combinational gates whose consumers all lie inside
/// the cone. Throws DomainError for ports and config bits.
std::vector<VertexId> extract_mffc(const Hypergraph& g, VertexId root);
/// Same, reusing positions from a topological order of `g`.
std::vector<VertexId> extract_mffc(const Hypergraph& g, VertexId root, const std::vector<int>& pos);

enum class CutPointKind { Po, PseudoPo };

/// A primary output, or the data input of a register (identified by the register vertex).
struct CutPoint {
    VertexId vertex = kNoVertex;
    CutPointKind kind = CutPointKind::Po;
    friend bool operator==(const CutPoint&, const CutPoint&) = default;
};

/// Every PO and every register, ascending vertex id.
std::vector<CutPoint> identify_cut_points(const Hypergraph& g);

struct FanInCone {
    std::vector<VertexId> gates;   // combinational members, ascending
    std::vector<VertexId> drivers; // PIs, register outputs and config bits feeding the cone
};

/// Transitive fanin of the cut-point's data signal, stopping at sources.
FanInCone fan_in_cone(const Hypergraph& g, const CutPoint& cp);
/// Transitive fanout of v through combinational logic, stopping at POs and registers
/// (which are not included). v itself is not included.
std::vector<VertexId> fan_out_cone(const Hypergraph& g, VertexId v);

} // namespace redax
