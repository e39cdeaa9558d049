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
#include "redax/truth_table.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace redax {

enum class ElementKind : std::uint8_t { Clut = 0, Csb = 1, Cpi = 2 };
enum class BindingRole : std::uint8_t { Functional, Dummy };

std::string_view element_kind_name(ElementKind k);

/// One configurable element of the redacted fabric.
///
/// `vertex` is the Clut/Csb combinational vertex or the Cpi vertex; a Csb also owns the
/// CsbReg vertex `reg`. `roles[i]` classifies fanin slot i of `vertex`.
struct FabricElement {
    std::int32_t id = -1;
    ElementKind kind = ElementKind::Clut;
    VertexId vertex = kNoVertex;
    VertexId reg = kNoVertex;
    /// Csb: the registered output carries the redacted flip-flop's value.
    bool reg_functional = false;
    std::vector<BindingRole> roles;
    TruthTable bits;          // Clut/Csb programmed function over the fanin slots
    std::uint32_t select = 0; // Cpi programmed select index

    int rt1_width = 0;       // width after mapping, before dummy-input expansion
    int dummies_added = 0;   // d of the input-space expansion
    bool inverted = false;   // output inversion absorbed by the consumers
    bool converted = false;  // Clut turned into a Csb with a dummy register
    bool dummy_block = false; // Csb created from scratch with a dummy register

    int width() const { return static_cast<int>(roles.size()); }
    /// Bits in this element's bitstream segment.
    std::size_t segment_length() const;
    /// Bitstream segment contents, LSB-first.
    std::vector<bool> segment_bits() const;
};

/// ceil(log2 n) for n >= 1: select bits of an n-input CPI.
int select_width(std::size_t n);

/// Exact truth table of `output` over `inputs` (input j = bit j of the row index),
/// evaluating every vertex in `cone`. `output` may itself be one of the inputs.
/// Throws DomainError for more than 6 inputs or when the cone reads a vertex outside
/// `cone` and `inputs`.
TruthTable encode_truth_table(const Hypergraph& g, std::span<const VertexId> cone, VertexId output,
                              std::span<const VertexId> inputs);

/// bits[sum v_j 2^j]. Throws DomainError when |bits| != 2^|inputs|.
bool clut_eval(const std::vector<bool>& bits, std::span<const bool> inputs);
/// inputs[select], with the select index read LSB-first from `select_bits`.
bool cpi_eval(std::span<const bool> select_bits, std::span<const bool> inputs);

// Bit-vector forms of the expansion kernels; they delegate to TruthTable.
std::vector<bool> extend_with_dummy(const std::vector<bool>& bits, int insert_position);
std::vector<bool> permute_inputs(const std::vector<bool>& bits, std::span<const int> new_position);
std::vector<bool> invert_output(const std::vector<bool>& bits);

/// Standalone gate-level model of one element: inputs I0..I{n-1} as PIs, outputs O (and Q
/// for a CSB) as POs, config bits as Cfg vertices. A non-empty `config` loads their values.
Hypergraph expand_to_gates(ElementKind kind, int width, const std::vector<bool>& config = {});

/// Replaces every fabric cell of `g` by its MUX-tree implementation. Config bits are
/// named "<cell>.c<k>", tree muxes "<cell>.m<k>"; the root mux keeps the cell name and a
/// CSB's flip-flop keeps its register name. Clut/Csb functions and Cpi selects present on
/// the cells are loaded into the config bits; otherwise the bits are left free.
Hypergraph expand_design(const Hypergraph& g);

} // namespace redax
