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

#include "redax/truth_table.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace redax {

using VertexId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;

enum class VertexKind : std::uint8_t {
    Pi,
    Po,
    Const0,
    Const1,
    Buf,
    Not,
    And,
    Or,
    Nand,
    Nor,
    Xor,
    Xnor,
    Mux2, // fanins (sel, a, b): sel ? b : a
    Table,
    Dff,
    // Configurable fabric cells.
    Clut,
    Csb,    // combinational half of a CSB (its CLUT)
    CsbReg, // registered half of a CSB; single fanin is the matching Csb vertex
    Cpi,
    Cfg, // bitstream register; only present in gate-level expansions
};

std::string_view kind_name(VertexKind kind);
std::optional<VertexKind> kind_from_name(std::string_view name);

/// Sequential state holders. Their outputs start combinational paths.
inline bool is_register(VertexKind k) { return k == VertexKind::Dff || k == VertexKind::CsbReg; }
/// Vertices without a combinational predecessor.
inline bool is_source(VertexKind k) { return k == VertexKind::Pi || is_register(k) || k == VertexKind::Cfg; }
inline bool is_fabric(VertexKind k) {
    return k == VertexKind::Clut || k == VertexKind::Csb || k == VertexKind::CsbReg || k == VertexKind::Cpi ||
           k == VertexKind::Cfg;
}
/// Combinational logic: everything that is neither a port, a register nor a config bit.
inline bool is_comb_gate(VertexKind k) {
    return k != VertexKind::Pi && k != VertexKind::Po && !is_register(k) && k != VertexKind::Cfg;
}

struct Vertex {
    VertexId id = kNoVertex;
    VertexKind kind = VertexKind::Buf;
    std::vector<VertexId> fanins;
    std::string name;
    /// Table: its function. Clut/Csb: programmed function, when known. Cfg: width-0 table holding the value.
    std::optional<TruthTable> function;
    /// Cpi: programmed select index, when known.
    std::optional<std::uint32_t> select;
    /// Fabric cells: creation id of the owning element. Cfg: owning element too.
    std::int32_t element = -1;
    /// Cfg: bit index inside the owning element's segment.
    std::int32_t cfg_bit = -1;
    bool alive = true;
};

/// Gate-level circuit IR. Nets are implicit: every vertex drives one net named after it,
/// and the fanout index lists its consumers (ascending id, one entry per consumer).
///
/// Primary outputs live in their own namespace so a PO may share the name of its driver.
class Hypergraph {
public:
    Hypergraph() = default;
    explicit Hypergraph(std::string model) : model_(std::move(model)) {}

    const std::string& model() const noexcept { return model_; }
    void set_model(std::string m) { model_ = std::move(m); }

    std::size_t size() const noexcept { return vertices_.size(); }
    std::size_t alive_count() const;
    const Vertex& vertex(VertexId v) const { return vertices_.at(static_cast<std::size_t>(v)); }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    /// Distinct consumers of `v`, ascending; a consumer reading `v` twice appears once.
    const std::vector<VertexId>& fanouts(VertexId v) const { return fanouts_.at(static_cast<std::size_t>(v)); }

    VertexId add_vertex(VertexKind kind, std::string name, std::vector<VertexId> fanins = {});
    VertexId add_pi(std::string name) { return add_vertex(VertexKind::Pi, std::move(name)); }
    VertexId add_po(std::string name, VertexId driver) { return add_vertex(VertexKind::Po, std::move(name), {driver}); }
    VertexId add_table(std::string name, std::vector<VertexId> fanins, TruthTable fn);

    void set_fanins(VertexId v, std::vector<VertexId> fanins);
    void replace_fanin(VertexId v, std::size_t slot, VertexId source);
    void set_kind(VertexId v, VertexKind kind) { mut(v).kind = kind; }
    void set_function(VertexId v, std::optional<TruthTable> fn) { mut(v).function = fn; }
    void set_select(VertexId v, std::optional<std::uint32_t> s) { mut(v).select = s; }
    void set_element(VertexId v, std::int32_t e) { mut(v).element = e; }
    void set_cfg_bit(VertexId v, std::int32_t b) { mut(v).cfg_bit = b; }
    void rename(VertexId v, std::string name);
    /// Detaches and tombstones a vertex. It must have no live consumers.
    void remove(VertexId v);

    /// Signal (non-PO) lookup by net name.
    std::optional<VertexId> find_signal(std::string_view name) const;
    std::optional<VertexId> find_output(std::string_view name) const;
    /// `base` if unused as a signal or output name, otherwise `base` + "_<n>" for the smallest free n.
    std::string unique_name(const std::string& base) const;

    std::vector<VertexId> pis() const { return ids_of(VertexKind::Pi); }
    std::vector<VertexId> pos() const { return ids_of(VertexKind::Po); }
    std::vector<VertexId> dffs() const { return ids_of(VertexKind::Dff); }
    /// Dff and CsbReg vertices, ascending id.
    std::vector<VertexId> registers() const;
    std::vector<VertexId> ids_of(VertexKind kind) const;

    /// Throws GraphError on arity, dangling-reference or inverse-index violations and on
    /// combinational cycles.
    void validate() const;

    /// Copy without tombstones, renumbered [PIs][POs][everything else]; each CsbReg directly
    /// follows its Csb. `old_to_new` (optional) receives the id mapping (kNoVertex for removed).
    Hypergraph canonical(std::vector<VertexId>* old_to_new = nullptr) const;

private:
    Vertex& mut(VertexId v) { return vertices_.at(static_cast<std::size_t>(v)); }
    void link(VertexId consumer);
    void unlink(VertexId consumer);

    std::string model_ = "top";
    std::vector<Vertex> vertices_;
    std::vector<std::vector<VertexId>> fanouts_;
    std::unordered_map<std::string, VertexId> signal_names_;
    std::unordered_map<std::string, VertexId> output_names_;
};

/// Function of a built-in gate (Buf..Mux2, constants, Table) with `arity` inputs.
TruthTable builtin_function(const Vertex& v);

/// Expected fanin count, or -1 when the count is variable.
int fixed_arity(VertexKind kind);
/// Arity rule check for one vertex; returns an empty string when valid.
std::string arity_violation(const Vertex& v);

} // namespace redax
