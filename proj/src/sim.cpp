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

#include "redax/sim.hpp"

#include "redax/errors.hpp"
#include "redax/graph_algo.hpp"
#include "redax/rng.hpp"
#include "redax/truth_table.hpp"

#include <algorithm>
#include <bit>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace redax {

Simulator::Simulator(const Hypergraph& g) : n_(g.size()) {
    std::vector<std::uint32_t> slot(g.size(), 0);
    for (const Vertex& v : g.vertices()) {
        if (!v.alive) continue;
        if (v.kind == VertexKind::Pi) {
            slot[v.id] = static_cast<std::uint32_t>(inputs_.size());
            inputs_.push_back(v.id);
        }
    }
    for (const Vertex& v : g.vertices()) {
        if (!v.alive) continue;
        if (v.kind == VertexKind::Cfg && !v.function) {
            slot[v.id] = static_cast<std::uint32_t>(inputs_.size());
            inputs_.push_back(v.id);
        } else if (is_register(v.kind)) {
            slot[v.id] = static_cast<std::uint32_t>(registers_.size());
            registers_.push_back(v.id);
            reg_data_.push_back(v.fanins[0]);
        } else if (v.kind == VertexKind::Po) {
            outputs_.push_back(v.id);
        }
    }

    for (VertexId u : topological_sort(g)) {
        const Vertex& v = g.vertex(u);
        Node node{Op::Buf, u, static_cast<std::uint32_t>(args_.size()), 0, 0};
        auto take = [&](std::span<const VertexId> fanins) {
            args_.insert(args_.end(), fanins.begin(), fanins.end());
            node.count = static_cast<std::uint32_t>(fanins.size());
        };
        switch (v.kind) {
        case VertexKind::Pi: node.op = Op::Input, node.slot = slot[u]; break;
        case VertexKind::Dff:
        case VertexKind::CsbReg: node.op = Op::Reg, node.slot = slot[u]; break;
        case VertexKind::Cfg:
            if (v.function)
                node.op = v.function->row(0) ? Op::One : Op::Zero;
            else
                node.op = Op::Input, node.slot = slot[u];
            break;
        case VertexKind::Const0: node.op = Op::Zero; break;
        case VertexKind::Const1: node.op = Op::One; break;
        case VertexKind::Po:
        case VertexKind::Buf: node.op = Op::Buf, take(v.fanins); break;
        case VertexKind::Not: node.op = Op::Not, take(v.fanins); break;
        case VertexKind::And: node.op = Op::And, take(v.fanins); break;
        case VertexKind::Or: node.op = Op::Or, take(v.fanins); break;
        case VertexKind::Nand: node.op = Op::Nand, take(v.fanins); break;
        case VertexKind::Nor: node.op = Op::Nor, take(v.fanins); break;
        case VertexKind::Xor: node.op = Op::Xor, take(v.fanins); break;
        case VertexKind::Xnor: node.op = Op::Xnor, take(v.fanins); break;
        case VertexKind::Mux2: node.op = Op::Mux, take(v.fanins); break;
        case VertexKind::Cpi: {
            if (!v.select) throw DomainError("CPI '" + v.name + "' is not programmed");
            if (*v.select >= v.fanins.size()) throw DomainError("CPI '" + v.name + "' select out of range");
            const VertexId chosen = v.fanins[*v.select];
            node.op = Op::Buf;
            take(std::span<const VertexId>(&chosen, 1));
            break;
        }
        case VertexKind::Table:
        case VertexKind::Clut:
        case VertexKind::Csb:
            if (!v.function) throw DomainError(std::string(kind_name(v.kind)) + " '" + v.name + "' is not programmed");
            node.op = Op::Table;
            node.slot = static_cast<std::uint32_t>(tables_.size());
            tables_.push_back(*v.function);
            take(v.fanins);
            break;
        }
        nodes_.push_back(node);
    }
}

void Simulator::step(std::span<const std::uint64_t> in, std::span<std::uint64_t> state,
                     std::span<std::uint64_t> values) const {
    std::uint64_t buf[kMaxTableWidth];
    for (const Node& nd : nodes_) {
        const VertexId* a = args_.data() + nd.first;
        std::uint64_t r = 0;
        switch (nd.op) {
        case Op::Input: r = in[nd.slot]; break;
        case Op::Reg: r = state[nd.slot]; break;
        case Op::Zero: r = 0; break;
        case Op::One: r = ~std::uint64_t{0}; break;
        case Op::Buf: r = values[a[0]]; break;
        case Op::Not: r = ~values[a[0]]; break;
        case Op::And:
        case Op::Nand:
            r = ~std::uint64_t{0};
            for (std::uint32_t i = 0; i < nd.count; ++i) r &= values[a[i]];
            if (nd.op == Op::Nand) r = ~r;
            break;
        case Op::Or:
        case Op::Nor:
            r = 0;
            for (std::uint32_t i = 0; i < nd.count; ++i) r |= values[a[i]];
            if (nd.op == Op::Nor) r = ~r;
            break;
        case Op::Xor: r = values[a[0]] ^ values[a[1]]; break;
        case Op::Xnor: r = ~(values[a[0]] ^ values[a[1]]); break;
        case Op::Mux: r = (values[a[0]] & values[a[2]]) | (~values[a[0]] & values[a[1]]); break;
        case Op::Table:
            for (std::uint32_t i = 0; i < nd.count; ++i) buf[i] = values[a[i]];
            r = eval_table_word(tables_[nd.slot], std::span<const std::uint64_t>(buf, nd.count));
            break;
        }
        values[nd.out] = r;
    }
    for (std::size_t i = 0; i < registers_.size(); ++i) state[i] = values[reg_data_[i]];
}

namespace reference {

std::vector<bool> step(const Hypergraph& g, const std::vector<bool>& inputs, std::vector<bool>& state) {
    std::vector<bool> value(g.size(), false);
    const auto pis = g.pis();
    const auto regs = g.registers();
    if (inputs.size() != pis.size()) throw DomainError("input vector length mismatch");
    for (std::size_t i = 0; i < pis.size(); ++i) value[pis[i]] = inputs[i];
    for (std::size_t i = 0; i < regs.size(); ++i) value[regs[i]] = state[i];
    for (VertexId u : topological_sort(g)) {
        const Vertex& v = g.vertex(u);
        if (v.kind == VertexKind::Pi || is_register(v.kind)) continue;
        if (v.kind == VertexKind::Cfg) {
            if (!v.function) throw DomainError("config bit '" + v.name + "' has no value");
            value[u] = v.function->row(0);
            continue;
        }
        if (v.kind == VertexKind::Po) {
            value[u] = value[v.fanins[0]];
            continue;
        }
        if (v.kind == VertexKind::Cpi) {
            if (!v.select) throw DomainError("CPI '" + v.name + "' is not programmed");
            value[u] = value[v.fanins.at(*v.select)];
            continue;
        }
        bool in[kMaxTableWidth] = {};
        for (std::size_t i = 0; i < v.fanins.size(); ++i) in[i] = value[v.fanins[i]];
        value[u] = builtin_function(v).eval(std::span<const bool>(in, v.fanins.size()));
    }
    for (std::size_t i = 0; i < regs.size(); ++i) state[i] = value[g.vertex(regs[i]).fanins[0]];
    std::vector<bool> out;
    for (VertexId p : g.pos()) out.push_back(value[p]);
    return out;
}

std::vector<std::vector<bool>> run(const Hypergraph& g, const std::vector<std::vector<bool>>& stimuli) {
    std::vector<bool> state(g.registers().size(), false);
    std::vector<std::vector<bool>> trace;
    for (const auto& in : stimuli) trace.push_back(step(g, in, state));
    return trace;
}

} // namespace reference

std::vector<bool> simulate_comb(const Hypergraph& g, const std::vector<bool>& pi_vector) {
    return simulate_seq(g, {pi_vector}).front();
}

std::vector<std::vector<bool>> simulate_seq(const Hypergraph& g, const std::vector<std::vector<bool>>& stimuli) {
    Simulator sim(g);
    std::vector<std::uint64_t> in(sim.inputs().size()), state(sim.registers().size(), 0), values(sim.vertex_count());
    std::vector<std::vector<bool>> trace;
    for (const auto& vec : stimuli) {
        if (vec.size() != sim.inputs().size()) throw DomainError("input vector length mismatch");
        for (std::size_t i = 0; i < vec.size(); ++i) in[i] = vec[i] ? 1 : 0;
        sim.step(in, state, values);
        std::vector<bool> out;
        for (VertexId p : sim.outputs()) out.push_back(values[p] & 1u);
        trace.push_back(std::move(out));
    }
    return trace;
}

std::uint64_t stimulus_word(std::uint64_t seed, std::uint64_t word, std::uint64_t cycle, std::uint64_t index) {
    return mix64(mix64(mix64(seed) ^ word) ^ (cycle * 0x9E3779B97F4A7C15ull + index));
}

namespace {

struct Pairing {
    std::vector<std::string> input_names;
    std::vector<std::size_t> b_input;  // b input slot of a's input i
    std::vector<std::string> output_names;
    std::vector<VertexId> a_out, b_out;
};

Pairing pair_interfaces(const Hypergraph& a, const Simulator& sa, const Hypergraph& b, const Simulator& sb) {
    auto names = [](const Hypergraph& g, const std::vector<VertexId>& ids, const char* what) {
        std::map<std::string, std::size_t> m;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const Vertex& v = g.vertex(ids[i]);
            if (v.kind == VertexKind::Cfg)
                throw DomainError(std::string("config bit '") + v.name + "' has no value; program the design first");
            m.emplace(v.name, i);
        }
        (void)what;
        return m;
    };
    const auto ai = names(a, sa.inputs(), "input"), bi = names(b, sb.inputs(), "input");
    std::map<std::string, VertexId> ao, bo;
    for (VertexId p : sa.outputs()) ao.emplace(a.vertex(p).name, p);
    for (VertexId p : sb.outputs()) bo.emplace(b.vertex(p).name, p);
    auto keys = [](const auto& m) {
        std::vector<std::string> k;
        for (const auto& [n, _] : m) k.push_back(n);
        return k;
    };
    if (keys(ai) != keys(bi)) throw InterfaceError("designs expose different primary inputs");
    if (keys(ao) != keys(bo)) throw InterfaceError("designs expose different primary outputs");
    Pairing p;
    for (VertexId v : sa.inputs()) {
        p.input_names.push_back(a.vertex(v).name);
        p.b_input.push_back(bi.at(a.vertex(v).name));
    }
    for (VertexId v : sa.outputs()) {
        p.output_names.push_back(a.vertex(v).name);
        p.a_out.push_back(v);
        p.b_out.push_back(bo.at(a.vertex(v).name));
    }
    return p;
}

enum class Stimulus { Exhaustive, Random };

struct Mismatch {
    std::uint64_t cycle = ~std::uint64_t{0};
    int lane = 0;
    std::size_t output = 0;
    bool expected = false, actual = false;
};

std::uint64_t input_word(Stimulus kind, std::uint64_t seed, std::uint64_t word, std::uint64_t cycle, std::size_t i) {
    if (kind == Stimulus::Random) return stimulus_word(seed, word, cycle, i);
    if (i < 6) return kVarMask[i];
    return ((word >> (i - 6)) & 1u) ? ~std::uint64_t{0} : 0;
}

/// With `free_state_b`, the registers of b are extra stimulus inputs after the PIs (one
/// cycle only), so a pass means b's outputs agree with a's for every state of b.
EquivResult compare(const Hypergraph& a, const Hypergraph& b, Stimulus kind, std::uint64_t words, std::uint64_t cycles,
                    std::uint64_t last_mask, std::uint64_t seed, bool free_state_b = false) {
    const Simulator sa(a), sb(b);
    const Pairing pr = pair_interfaces(a, sa, b, sb);
    const std::size_t n_in = pr.input_names.size();
    const std::size_t n_free = n_in + (free_state_b ? sb.registers().size() : 0);
    std::vector<Mismatch> found(words);

#pragma omp parallel
    {
        std::vector<std::uint64_t> ina(n_in), inb(n_in), va(sa.vertex_count()), vb(sb.vertex_count());
        std::vector<std::uint64_t> qa(sa.registers().size()), qb(sb.registers().size());
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t wi = 0; wi < static_cast<std::int64_t>(words); ++wi) {
            const auto w = static_cast<std::uint64_t>(wi);
            const std::uint64_t mask = w + 1 == words ? last_mask : ~std::uint64_t{0};
            std::fill(qa.begin(), qa.end(), 0);
            std::fill(qb.begin(), qb.end(), 0);
            if (free_state_b)
                for (std::size_t k = 0; k < qb.size(); ++k) qb[k] = input_word(kind, seed, w, 0, n_in + k);
            for (std::uint64_t c = 0; c < cycles; ++c) {
                for (std::size_t i = 0; i < n_in; ++i) {
                    ina[i] = input_word(kind, seed, w, c, i);
                    inb[pr.b_input[i]] = ina[i];
                }
                sa.step(ina, qa, va);
                sb.step(inb, qb, vb);
                std::uint64_t diff = 0;
                for (std::size_t o = 0; o < pr.a_out.size(); ++o) diff |= (va[pr.a_out[o]] ^ vb[pr.b_out[o]]);
                diff &= mask;
                if (diff) {
                    Mismatch m;
                    m.cycle = c;
                    m.lane = std::countr_zero(diff);
                    for (std::size_t o = 0; o < pr.a_out.size(); ++o) {
                        if (((va[pr.a_out[o]] ^ vb[pr.b_out[o]]) >> m.lane) & 1u) {
                            m.output = o;
                            m.expected = (va[pr.a_out[o]] >> m.lane) & 1u;
                            m.actual = (vb[pr.b_out[o]] >> m.lane) & 1u;
                            break;
                        }
                    }
                    found[w] = m;
                    break;
                }
            }
        }
    }

    EquivResult r;
    r.vectors = 0;
    for (std::uint64_t w = 0; w < words; ++w) {
        const std::uint64_t mask = w + 1 == words ? last_mask : ~std::uint64_t{0};
        r.vectors += static_cast<std::uint64_t>(std::popcount(mask)) * cycles;
    }
    for (std::uint64_t w = 0; w < words; ++w) {
        const Mismatch& m = found[w];
        if (m.cycle == ~std::uint64_t{0}) continue;
        r.equivalent = false;
        Counterexample cx;
        cx.input_names = pr.input_names;
        if (free_state_b)
            for (VertexId q : sb.registers()) cx.input_names.push_back(b.vertex(q).name + "@state");
        cx.cycle = m.cycle;
        cx.output = pr.output_names[m.output];
        cx.expected = m.expected;
        cx.actual = m.actual;
        for (std::uint64_t c = 0; c <= m.cycle; ++c) {
            std::vector<bool> vec(n_free);
            for (std::size_t i = 0; i < n_free; ++i) vec[i] = (input_word(kind, seed, w, c, i) >> m.lane) & 1u;
            cx.trace.push_back(std::move(vec));
        }
        r.counterexample = std::move(cx);
        break;
    }
    return r;
}

void require_combinational(const Hypergraph& g) {
    if (!g.registers().empty()) throw DomainError("exhaustive checking needs a combinational design");
}

} // namespace

EquivResult exhaustive_equiv(const Hypergraph& a, const Hypergraph& b, std::size_t max_inputs) {
    require_combinational(a);
    const std::size_t n = a.pis().size() + b.registers().size();
    if (n > max_inputs)
        throw DomainError("exhaustive checking is capped at " + std::to_string(max_inputs) + " inputs and states, got " +
                          std::to_string(n));
    const std::uint64_t words = n <= 6 ? 1 : std::uint64_t{1} << (n - 6);
    const std::uint64_t mask = n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
    return compare(a, b, Stimulus::Exhaustive, words, 1, mask, 0, true);
}

EquivResult random_miter_equiv(const Hypergraph& a, const Hypergraph& b, std::uint64_t n_vectors, std::uint32_t seed) {
    if (n_vectors == 0) throw DomainError("random miter needs at least one vector");
    const std::uint64_t words = (n_vectors + 63) / 64;
    const std::uint64_t rem = n_vectors % 64;
    const std::uint64_t mask = rem ? (std::uint64_t{1} << rem) - 1 : ~std::uint64_t{0};
    return compare(a, b, Stimulus::Random, words, 1, mask, seed);
}

EquivResult seq_cosim_equiv(const Hypergraph& a, const Hypergraph& b, std::uint64_t cycles, std::uint32_t seed) {
    if (cycles == 0) throw DomainError("co-simulation needs at least one cycle");
    return compare(a, b, Stimulus::Random, 1, cycles, ~std::uint64_t{0}, seed);
}

} // namespace redax
