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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace redax {

/// Compiled 64-lane simulator. Each bit position of a word is an independent lane.
///
/// Free inputs are the PIs followed by config bits without a loaded value (ascending id).
/// Registers (Dff, CsbReg) update synchronously; loaded config bits and programmed fabric
/// cells evaluate as constants and tables. Unprogrammed Clut/Csb/Cpi cells are rejected.
class Simulator {
public:
    explicit Simulator(const Hypergraph& g);

    const std::vector<VertexId>& inputs() const noexcept { return inputs_; }
    const std::vector<VertexId>& outputs() const noexcept { return outputs_; }
    const std::vector<VertexId>& registers() const noexcept { return registers_; }
    std::size_t vertex_count() const noexcept { return n_; }

    /// One clock cycle. `values` (size vertex_count()) receives every net; `state` (one word
    /// per register) is read as the current state and overwritten with the next state.
    void step(std::span<const std::uint64_t> in, std::span<std::uint64_t> state, std::span<std::uint64_t> values) const;

private:
    enum class Op : std::uint8_t { Input, Reg, Zero, One, Buf, Not, And, Or, Nand, Nor, Xor, Xnor, Mux, Table };
    struct Node {
        Op op;
        VertexId out;
        std::uint32_t first; // offset into args_
        std::uint32_t count;
        std::uint32_t slot;  // input or register index, table index
    };

    std::size_t n_ = 0;
    std::vector<Node> nodes_;
    std::vector<VertexId> args_;
    std::vector<TruthTable> tables_;
    std::vector<VertexId> inputs_, outputs_, registers_;
    std::vector<VertexId> reg_data_; // data input of each register
};

/// Scalar reference evaluator (one bool per net), kept for cross-checking the word engine.
namespace reference {
/// Evaluates one cycle; returns PO values (ascending PO id) and advances `state`.
std::vector<bool> step(const Hypergraph& g, const std::vector<bool>& inputs, std::vector<bool>& state);
/// PO trace over `stimuli.size()` cycles from the all-zero state.
std::vector<std::vector<bool>> run(const Hypergraph& g, const std::vector<std::vector<bool>>& stimuli);
} // namespace reference

/// PO values (ascending id) for one combinational vector (PI order ascending id).
std::vector<bool> simulate_comb(const Hypergraph& g, const std::vector<bool>& pi_vector);
/// PO trace from the all-zero state; stimuli[c] holds the PI values of cycle c.
std::vector<std::vector<bool>> simulate_seq(const Hypergraph& g, const std::vector<std::vector<bool>>& stimuli);

struct Counterexample {
    std::vector<std::string> input_names;
    /// Input vectors of cycles 0..cycle (a single vector for combinational checks).
    std::vector<std::vector<bool>> trace;
    std::size_t cycle = 0;
    std::string output;
    bool expected = false; // value in design a
    bool actual = false;   // value in design b
};

struct EquivResult {
    bool equivalent = true;
    std::uint64_t vectors = 0; // input vectors (lanes x cycles) applied
    std::optional<Counterexample> counterexample;
};

/// All input vectors. `a` must be combinational; registers of `b` (dummy registers of a
/// redacted design) are enumerated as free state alongside the PIs, so a pass shows that
/// b's outputs never depend on them. Throws InterfaceError on port mismatch, DomainError
/// above `max_inputs` PIs plus states or when `a` has registers.
EquivResult exhaustive_equiv(const Hypergraph& a, const Hypergraph& b, std::size_t max_inputs = 20);
/// `n_vectors` uniform random vectors, each from the all-zero state for one cycle.
EquivResult random_miter_equiv(const Hypergraph& a, const Hypergraph& b, std::uint64_t n_vectors, std::uint32_t seed);
/// 64 independent random traces of `cycles` cycles from the all-zero state; only POs are
/// compared.
EquivResult seq_cosim_equiv(const Hypergraph& a, const Hypergraph& b, std::uint64_t cycles, std::uint32_t seed);

/// Stimulus word of input `index` for lane group `word` in cycle `cycle`: counter-based, so
/// the value does not depend on evaluation order or thread count.
std::uint64_t stimulus_word(std::uint64_t seed, std::uint64_t word, std::uint64_t cycle, std::uint64_t index);

} // namespace redax
