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

#include "redax/bitstream.hpp"
#include "redax/netlist.hpp"
#include "redax/netlist_io.hpp"
#include "redax/redact.hpp"
#include "redax/sim.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace redax::test {

inline std::string fixture_path(const std::string& name) { return std::string(REDAX_FIXTURE_DIR) + "/" + name; }

inline Hypergraph load_fixture(const std::string& name) {
    return parse_netlist(read_text_file(fixture_path(name)), format_for_path(name));
}

inline const std::vector<std::string>& combinational_fixtures() {
    static const std::vector<std::string> f{"c17.blif", "adder4.blif", "mult3.json", "alu4.blif", "cmp_mux.blif"};
    return f;
}

inline const std::vector<std::string>& sequential_fixtures() {
    static const std::vector<std::string> f{"s27.blif", "lfsr_acc.blif"};
    return f;
}

inline std::vector<std::string> all_fixtures() {
    auto v = combinational_fixtures();
    for (const auto& s : sequential_fixtures()) v.push_back(s);
    return v;
}

/// Random legal netlist: `n_pi` inputs, `n_gates` built-in gates reading earlier signals,
/// `n_ff` flip-flops whose data inputs are wired last (so feedback through them is legal).
/// Every sink-free signal becomes a PO. Deterministic in `seed`.
inline Hypergraph random_netlist(std::uint32_t seed, int n_pi, int n_gates, int n_ff) {
    std::mt19937 rng(seed);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint32_t>(n)); };
    Hypergraph g("rand" + std::to_string(seed));
    std::vector<VertexId> sig;
    for (int i = 0; i < n_pi; ++i) sig.push_back(g.add_pi("i" + std::to_string(i)));
    std::vector<VertexId> ffs;
    for (int i = 0; i < n_ff; ++i) {
        ffs.push_back(g.add_vertex(VertexKind::Dff, "q" + std::to_string(i)));
        sig.push_back(ffs.back());
    }
    static const VertexKind kinds[] = {VertexKind::And, VertexKind::Or,  VertexKind::Nand, VertexKind::Nor,
                                       VertexKind::Xor, VertexKind::Xnor, VertexKind::Not, VertexKind::Mux2};
    for (int i = 0; i < n_gates; ++i) {
        const VertexKind k = kinds[pick(8)];
        int arity = k == VertexKind::Not ? 1 : k == VertexKind::Mux2 ? 3 : (k == VertexKind::Xor || k == VertexKind::Xnor) ? 2 : 2 + pick(3);
        std::vector<VertexId> fi;
        for (int j = 0; j < arity; ++j) {
            // Bias towards recent signals so cones get deep.
            const int n = static_cast<int>(sig.size());
            fi.push_back(sig[pick(2) ? n - 1 - pick(std::min(n, 6)) : pick(n)]);
        }
        sig.push_back(g.add_vertex(k, "g" + std::to_string(i), fi));
    }
    for (VertexId q : ffs) g.set_fanins(q, {sig[static_cast<std::size_t>(n_pi + pick(static_cast<int>(sig.size()) - n_pi))]});
    int n_po = 0;
    for (VertexId v : sig)
        if (g.fanouts(v).empty() && g.vertex(v).kind != VertexKind::Pi) g.add_po("o" + std::to_string(n_po++), v);
    if (n_po == 0) g.add_po("o0", sig.back());
    g.validate();
    return g.canonical();
}

/// Programs `d` with its own bitstream and checks it against `original`: exhaustively when
/// the original is combinational, else by co-simulation for `cycles` cycles.
inline EquivResult verify_redaction(const Hypergraph& original, const RedactedDesign& d, std::uint64_t cycles = 2000,
                                    std::uint32_t seed = 1) {
    const Hypergraph programmed = program(d.graph, generate_bitstream(d));
    if (original.dffs().empty()) return exhaustive_equiv(original, programmed);
    return seq_cosim_equiv(original, programmed, cycles, seed);
}

} // namespace redax::test
