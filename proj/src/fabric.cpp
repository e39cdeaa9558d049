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

#include "redax/fabric.hpp"

#include "redax/errors.hpp"
#include "redax/graph_algo.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace redax {

std::string_view element_kind_name(ElementKind k) {
    switch (k) {
    case ElementKind::Clut: return "CLUT";
    case ElementKind::Csb: return "CSB";
    case ElementKind::Cpi: return "CPI";
    }
    return "?";
}

int select_width(std::size_t n) {
    int w = 0;
    while ((std::size_t{1} << w) < n) ++w;
    return w;
}

std::size_t FabricElement::segment_length() const {
    if (kind == ElementKind::Cpi) return static_cast<std::size_t>(select_width(roles.size()));
    return std::size_t{1} << width();
}

std::vector<bool> FabricElement::segment_bits() const {
    if (kind != ElementKind::Cpi) return bits.to_bits();
    std::vector<bool> out(segment_length());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (select >> i) & 1u;
    return out;
}

TruthTable encode_truth_table(const Hypergraph& g, std::span<const VertexId> cone, VertexId output,
                              std::span<const VertexId> inputs) {
    if (inputs.size() > static_cast<std::size_t>(kMaxTableWidth))
        throw DomainError("cone support " + std::to_string(inputs.size()) + " exceeds the width cap of 6");
    const int width = static_cast<int>(inputs.size());
    std::unordered_map<VertexId, std::uint64_t> value;
    for (int j = 0; j < width; ++j) value[inputs[j]] = kVarMask[j];
    const std::unordered_set<VertexId> members(cone.begin(), cone.end());

    // Post-order over the cone from the output; the cone is acyclic and small.
    std::vector<std::pair<VertexId, bool>> stack{{output, false}};
    std::uint64_t buf[kMaxTableWidth];
    while (!stack.empty()) {
        auto [u, expanded] = stack.back();
        stack.pop_back();
        if (value.count(u)) continue;
        const Vertex& v = g.vertex(u);
        if (!members.count(u))
            throw DomainError("cone reads '" + v.name + "', which is neither a member nor an input");
        if (!is_comb_gate(v.kind) || v.kind == VertexKind::Cpi)
            throw DomainError("'" + v.name + "' cannot be folded into a truth table");
        if (!expanded) {
            stack.push_back({u, true});
            for (VertexId f : v.fanins)
                if (!value.count(f)) stack.push_back({f, false});
            continue;
        }
        for (std::size_t i = 0; i < v.fanins.size(); ++i) buf[i] = value.at(v.fanins[i]);
        value[u] = eval_table_word(builtin_function(v), std::span<const std::uint64_t>(buf, v.fanins.size()));
    }
    return TruthTable(width, value.at(output));
}

bool clut_eval(const std::vector<bool>& bits, std::span<const bool> inputs) {
    if (inputs.size() >= 63 || bits.size() != (std::size_t{1} << inputs.size()))
        throw DomainError("CLUT of " + std::to_string(bits.size()) + " bits evaluated on " +
                          std::to_string(inputs.size()) + " inputs");
    std::size_t k = 0;
    for (std::size_t j = 0; j < inputs.size(); ++j)
        if (inputs[j]) k |= std::size_t{1} << j;
    return bits[k];
}

bool cpi_eval(std::span<const bool> select_bits, std::span<const bool> inputs) {
    if (inputs.size() < 2 || static_cast<int>(select_bits.size()) != select_width(inputs.size()))
        throw DomainError("CPI of " + std::to_string(inputs.size()) + " inputs needs " +
                          std::to_string(select_width(inputs.size())) + " select bits");
    std::size_t s = 0;
    for (std::size_t j = 0; j < select_bits.size(); ++j)
        if (select_bits[j]) s |= std::size_t{1} << j;
    if (s >= inputs.size()) throw DomainError("CPI select index out of range");
    return inputs[s];
}

std::vector<bool> extend_with_dummy(const std::vector<bool>& bits, int insert_position) {
    return TruthTable::from_bits(bits).extend_with_dummy(insert_position).to_bits();
}

std::vector<bool> permute_inputs(const std::vector<bool>& bits, std::span<const int> new_position) {
    return TruthTable::from_bits(bits).permute(new_position).to_bits();
}

std::vector<bool> invert_output(const std::vector<bool>& bits) {
    return TruthTable::from_bits(bits).inverted().to_bits();
}

namespace {

struct TreeBuilder {
    Hypergraph& g;
    std::string cell;
    std::int32_t element;
    int mux_count = 0;

    VertexId cfg(int k, const std::optional<bool>& value) {
        const VertexId c = g.add_vertex(VertexKind::Cfg, g.unique_name(cell + ".c" + std::to_string(k)));
        g.set_element(c, element);
        g.set_cfg_bit(c, k);
        if (value) g.set_function(c, TruthTable(0, *value ? 1 : 0));
        return c;
    }

    VertexId mux(VertexId sel, VertexId a, VertexId b, bool root) {
        const std::string name = root ? cell : g.unique_name(cell + ".m" + std::to_string(mux_count));
        ++mux_count;
        return g.add_vertex(VertexKind::Mux2, name, {sel, a, b});
    }

    /// Level j selects with selects[j]; an unpaired trailing item moves up unchanged.
    /// The last mux created is the root and carries the cell name.
    VertexId reduce(std::vector<VertexId> items, const std::vector<VertexId>& selects) {
        if (items.size() == 1) return items[0];
        std::size_t total = items.size() - 1;
        for (std::size_t j = 0; items.size() > 1; ++j) {
            std::vector<VertexId> next;
            for (std::size_t k = 0; k + 1 < items.size(); k += 2) {
                --total;
                next.push_back(mux(selects[j], items[k], items[k + 1], total == 0));
            }
            if (items.size() % 2) next.push_back(items.back());
            items = std::move(next);
        }
        return items[0];
    }
};

/// Builds the gate-level cell for fabric vertex `v` of `src` into `dst`; `fanins` are the
/// already-mapped sources. Returns the vertex carrying the cell's output net.
VertexId build_cell(Hypergraph& dst, const Vertex& v, const std::vector<VertexId>& fanins) {
    TreeBuilder tb{dst, v.name, v.element};
    const int n = static_cast<int>(fanins.size());
    if (v.kind == VertexKind::Cpi) {
        const int m = select_width(fanins.size());
        std::vector<VertexId> selects;
        for (int k = 0; k < m; ++k) {
            std::optional<bool> value;
            if (v.select) value = ((*v.select >> k) & 1u) != 0;
            selects.push_back(tb.cfg(k, value));
        }
        return tb.reduce(fanins, selects);
    }
    std::vector<VertexId> leaves;
    for (int k = 0; k < (1 << n); ++k) {
        std::optional<bool> value;
        if (v.function) value = v.function->row(static_cast<std::size_t>(k));
        leaves.push_back(tb.cfg(k, value));
    }
    if (n == 0) {
        // A width-0 cell is its single config bit; keep the cell name on a buffer.
        return dst.add_vertex(VertexKind::Buf, v.name, {leaves[0]});
    }
    return tb.reduce(leaves, fanins);
}

} // namespace

Hypergraph expand_to_gates(ElementKind kind, int width, const std::vector<bool>& config) {
    if (width < (kind == ElementKind::Cpi ? 2 : 1) || (kind != ElementKind::Cpi && width > kMaxTableWidth))
        throw DomainError("element width " + std::to_string(width) + " out of range");
    Hypergraph src("cell");
    std::vector<VertexId> ins;
    for (int i = 0; i < width; ++i) ins.push_back(src.add_pi("I" + std::to_string(i)));
    const VertexKind vk = kind == ElementKind::Clut ? VertexKind::Clut
                          : kind == ElementKind::Csb ? VertexKind::Csb
                                                     : VertexKind::Cpi;
    const VertexId cell = src.add_vertex(vk, "O", ins);
    src.set_element(cell, 0);
    if (!config.empty()) {
        if (kind == ElementKind::Cpi) {
            if (static_cast<int>(config.size()) != select_width(static_cast<std::size_t>(width)))
                throw DomainError("CPI config length mismatch");
            std::uint32_t s = 0;
            for (std::size_t k = 0; k < config.size(); ++k)
                if (config[k]) s |= 1u << k;
            src.set_select(cell, s);
        } else {
            src.set_function(cell, TruthTable::from_bits(config));
            if (src.vertex(cell).function->width() != width) throw DomainError("config length mismatch");
        }
    }
    src.add_po("O", cell);
    if (kind == ElementKind::Csb) {
        const VertexId q = src.add_vertex(VertexKind::CsbReg, "Q", {cell});
        src.set_element(q, 0);
        src.add_po("Q", q);
    }
    return expand_design(src);
}

Hypergraph expand_design(const Hypergraph& g) {
    Hypergraph out(g.model());
    std::vector<VertexId> map(g.size(), kNoVertex);
    // Registers are created first (without fanins) so that feedback through them resolves.
    for (const Vertex& v : g.vertices()) {
        if (!v.alive) continue;
        if (v.kind == VertexKind::Pi)
            map[v.id] = out.add_pi(v.name);
    }
    for (const Vertex& v : g.vertices()) {
        if (!v.alive || !is_register(v.kind)) continue;
        map[v.id] = out.add_vertex(VertexKind::Dff, v.name);
    }
    std::vector<VertexId> pos_list;
    for (VertexId u : topological_sort(g)) {
        const Vertex& v = g.vertex(u);
        if (v.kind == VertexKind::Pi || is_register(v.kind)) continue;
        std::vector<VertexId> fanins;
        for (VertexId f : v.fanins) fanins.push_back(map[f]);
        if (v.kind == VertexKind::Po) {
            pos_list.push_back(u);
            continue;
        }
        if (v.kind == VertexKind::Clut || v.kind == VertexKind::Csb || v.kind == VertexKind::Cpi) {
            map[u] = build_cell(out, v, fanins);
        } else {
            const VertexId w = out.add_vertex(v.kind, v.name, std::move(fanins));
            out.set_function(w, v.function);
            out.set_element(w, v.element);
            out.set_cfg_bit(w, v.cfg_bit);
            map[u] = w;
        }
    }
    for (const Vertex& v : g.vertices())
        if (v.alive && is_register(v.kind)) out.set_fanins(map[v.id], {map[v.fanins[0]]});
    // POs keep their relative order (ascending original id).
    std::sort(pos_list.begin(), pos_list.end());
    for (VertexId p : pos_list) out.add_po(g.vertex(p).name, map[g.vertex(p).fanins[0]]);
    Hypergraph canon = out.canonical();
    canon.validate();
    return canon;
}

} // namespace redax
