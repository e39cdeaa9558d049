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

#include "redax/graph_algo.hpp"

#include "redax/errors.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace redax {

namespace {

/// Edge u -> v is combinational unless v is a register.
bool comb_edge_into(const Vertex& v) { return !is_register(v.kind); }

std::string describe_cycle(const Hypergraph& g, const std::vector<int>& indeg) {
    // Every leftover vertex has a leftover combinational predecessor; walk back until repeat.
    VertexId start = kNoVertex;
    for (const Vertex& v : g.vertices())
        if (v.alive && indeg[v.id] > 0) {
            start = v.id;
            break;
        }
    std::vector<int> seen(g.size(), -1);
    std::vector<VertexId> path;
    VertexId cur = start;
    while (seen[cur] < 0) {
        seen[cur] = static_cast<int>(path.size());
        path.push_back(cur);
        for (VertexId f : g.vertex(cur).fanins)
            if (indeg[f] > 0) {
                cur = f;
                break;
            }
    }
    std::vector<VertexId> cycle(path.begin() + seen[cur], path.end());
    std::reverse(cycle.begin(), cycle.end());
    std::string msg = "combinational cycle:";
    for (VertexId v : cycle) msg += " " + g.vertex(v).name + " ->";
    msg += " " + g.vertex(cycle.front()).name;
    return msg;
}

} // namespace

std::vector<VertexId> topological_sort(const Hypergraph& g) {
    std::vector<int> indeg(g.size(), 0);
    for (const Vertex& v : g.vertices())
        if (v.alive && comb_edge_into(v)) indeg[v.id] = static_cast<int>(v.fanins.size());

    std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
    for (const Vertex& v : g.vertices())
        if (v.alive && indeg[v.id] == 0) ready.push(v.id);

    std::vector<VertexId> order;
    order.reserve(g.size());
    while (!ready.empty()) {
        const VertexId u = ready.top();
        ready.pop();
        order.push_back(u);
        for (VertexId c : g.fanouts(u)) {
            const Vertex& cv = g.vertex(c);
            if (!comb_edge_into(cv)) continue;
            // A consumer may read u on several slots.
            const auto uses = std::count(cv.fanins.begin(), cv.fanins.end(), u);
            indeg[c] -= static_cast<int>(uses);
            if (indeg[c] == 0) ready.push(c);
        }
    }
    if (order.size() != g.alive_count()) throw GraphError(describe_cycle(g, indeg));
    return order;
}

std::vector<int> positions(const Hypergraph& g, const std::vector<VertexId>& order) {
    std::vector<int> pos(g.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    return pos;
}

std::vector<VertexId> extract_mffc(const Hypergraph& g, VertexId root) {
    return extract_mffc(g, root, positions(g, topological_sort(g)));
}

std::vector<VertexId> extract_mffc(const Hypergraph& g, VertexId root, const std::vector<int>& pos) {
    const Vertex& r = g.vertex(root);
    if (!r.alive || r.kind == VertexKind::Pi || r.kind == VertexKind::Po || r.kind == VertexKind::Cfg)
        throw DomainError("MFFC root '" + r.name + "' must be a gate or register");

    // Collect the transitive combinational fanin, then decide membership from the root
    // downwards: consumers always sit later in topological order than their drivers.
    std::vector<char> in_cone(g.size(), 0), visited(g.size(), 0);
    std::vector<VertexId> candidates, stack(r.fanins.begin(), r.fanins.end());
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        if (visited[u]) continue;
        visited[u] = 1;
        if (!is_comb_gate(g.vertex(u).kind) || u == root) continue;
        candidates.push_back(u);
        for (VertexId f : g.vertex(u).fanins) stack.push_back(f);
    }
    std::sort(candidates.begin(), candidates.end(), [&](VertexId a, VertexId b) { return pos[a] > pos[b]; });

    in_cone[root] = 1;
    for (VertexId u : candidates) {
        const auto& outs = g.fanouts(u);
        if (!outs.empty() && std::all_of(outs.begin(), outs.end(), [&](VertexId c) { return in_cone[c] != 0; }))
            in_cone[u] = 1;
    }
    std::vector<VertexId> cone;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (in_cone[i]) cone.push_back(static_cast<VertexId>(i));
    return cone;
}

std::vector<CutPoint> identify_cut_points(const Hypergraph& g) {
    std::vector<CutPoint> out;
    for (const Vertex& v : g.vertices()) {
        if (!v.alive) continue;
        if (v.kind == VertexKind::Po)
            out.push_back({v.id, CutPointKind::Po});
        else if (is_register(v.kind))
            out.push_back({v.id, CutPointKind::PseudoPo});
    }
    return out;
}

FanInCone fan_in_cone(const Hypergraph& g, const CutPoint& cp) {
    const Vertex& anchor = g.vertex(cp.vertex);
    if (!anchor.alive || (anchor.kind != VertexKind::Po && !is_register(anchor.kind)))
        throw DomainError("'" + anchor.name + "' is not a cut-point");
    FanInCone cone;
    std::vector<char> seen(g.size(), 0);
    std::vector<VertexId> stack(anchor.fanins.begin(), anchor.fanins.end());
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = 1;
        const Vertex& uv = g.vertex(u);
        if (is_source(uv.kind)) {
            cone.drivers.push_back(u);
            continue;
        }
        cone.gates.push_back(u);
        for (VertexId f : uv.fanins) stack.push_back(f);
    }
    std::sort(cone.gates.begin(), cone.gates.end());
    std::sort(cone.drivers.begin(), cone.drivers.end());
    return cone;
}

std::vector<VertexId> fan_out_cone(const Hypergraph& g, VertexId v) {
    std::vector<char> seen(g.size(), 0);
    std::vector<VertexId> out;
    std::vector<VertexId> stack(g.fanouts(v).begin(), g.fanouts(v).end());
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = 1;
        const Vertex& uv = g.vertex(u);
        if (uv.kind == VertexKind::Po || is_register(uv.kind)) continue;
        out.push_back(u);
        for (VertexId c : g.fanouts(u)) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace redax
