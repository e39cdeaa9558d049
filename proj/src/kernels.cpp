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

#include "redax/kernels.hpp"

#include <cstdint>

namespace redax::kernels {

namespace {

/// Epoch-stamped visit marks: clearing between traversals is a counter bump.
class Marks {
public:
    explicit Marks(std::size_t n) : stamp_(n, 0) {}
    void next() { ++epoch_; }
    bool test_and_set(VertexId v) {
        if (stamp_[v] == epoch_) return true;
        stamp_[v] = epoch_;
        return false;
    }

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

/// Counts gates and source leaves reachable backwards from `seeds`.
void count_fan_in(const Hypergraph& g, const std::vector<VertexId>& seeds, Marks& marks, std::vector<VertexId>& stack,
                  int& gates, int& drivers) {
    marks.next();
    gates = drivers = 0;
    stack.assign(seeds.begin(), seeds.end());
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        if (marks.test_and_set(u)) continue;
        const Vertex& v = g.vertex(u);
        if (is_source(v.kind)) {
            ++drivers;
            continue;
        }
        ++gates;
        stack.insert(stack.end(), v.fanins.begin(), v.fanins.end());
    }
}

int count_fan_out(const Hypergraph& g, VertexId root, Marks& marks, std::vector<VertexId>& stack) {
    marks.next();
    int n = 0;
    stack.assign(g.fanouts(root).begin(), g.fanouts(root).end());
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        if (marks.test_and_set(u)) continue;
        const Vertex& v = g.vertex(u);
        if (v.kind == VertexKind::Po || is_register(v.kind)) continue;
        ++n;
        stack.insert(stack.end(), g.fanouts(u).begin(), g.fanouts(u).end());
    }
    return n;
}

bool sized(const Vertex& v) { return v.alive && (is_comb_gate(v.kind) || is_register(v.kind)); }

} // namespace

std::vector<ConeSize> cone_sizes(const Hypergraph& g, Exec exec) {
    const auto n = static_cast<std::int64_t>(g.size());
    std::vector<ConeSize> out(g.size());
#pragma omp parallel if (exec == Exec::Parallel)
    {
        Marks marks(g.size());
        std::vector<VertexId> stack;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < n; ++i) {
            const Vertex& v = g.vertex(static_cast<VertexId>(i));
            if (!sized(v)) continue;
            int gates = 0, drivers = 0;
            count_fan_in(g, v.fanins, marks, stack, gates, drivers);
            out[i].fan_in = gates + drivers;
            out[i].fan_out = count_fan_out(g, v.id, marks, stack);
        }
    }
    return out;
}

std::vector<ConeSize> cone_sizes_reference(const Hypergraph& g) {
    std::vector<ConeSize> out(g.size());
    for (const Vertex& v : g.vertices()) {
        if (!sized(v)) continue;
        if (is_register(v.kind)) {
            const FanInCone c = fan_in_cone(g, {v.id, CutPointKind::PseudoPo});
            out[v.id].fan_in = static_cast<int>(c.gates.size() + c.drivers.size());
        } else {
            // Gates are not cut-points; walk their fanins the same way fan_in_cone does.
            std::vector<char> seen(g.size(), 0);
            std::vector<VertexId> stack(v.fanins.begin(), v.fanins.end());
            int n = 0;
            while (!stack.empty()) {
                const VertexId u = stack.back();
                stack.pop_back();
                if (seen[u]) continue;
                seen[u] = 1;
                ++n;
                if (!is_source(g.vertex(u).kind))
                    for (VertexId f : g.vertex(u).fanins) stack.push_back(f);
            }
            out[v.id].fan_in = n;
        }
        out[v.id].fan_out = static_cast<int>(fan_out_cone(g, v.id).size());
    }
    return out;
}

std::vector<CutFeatures> cut_features(const Hypergraph& g, const std::vector<CutPoint>& cps, Exec exec) {
    const auto n = static_cast<std::int64_t>(cps.size());
    std::vector<CutFeatures> out(cps.size());
#pragma omp parallel if (exec == Exec::Parallel)
    {
        Marks marks(g.size());
        std::vector<VertexId> stack;
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t i = 0; i < n; ++i) {
            const Vertex& anchor = g.vertex(cps[i].vertex);
            count_fan_in(g, anchor.fanins, marks, stack, out[i].fi_gates, out[i].fi_drivers);
            out[i].fo_size = anchor.kind == VertexKind::Po ? 0 : count_fan_out(g, anchor.id, marks, stack);
        }
    }
    return out;
}

std::vector<CutFeatures> cut_features_reference(const Hypergraph& g, const std::vector<CutPoint>& cps) {
    std::vector<CutFeatures> out;
    for (const CutPoint& cp : cps) {
        const FanInCone c = fan_in_cone(g, cp);
        CutFeatures f;
        f.fi_gates = static_cast<int>(c.gates.size());
        f.fi_drivers = static_cast<int>(c.drivers.size());
        f.fo_size = cp.kind == CutPointKind::Po ? 0 : static_cast<int>(fan_out_cone(g, cp.vertex).size());
        out.push_back(f);
    }
    return out;
}

} // namespace redax::kernels
