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

#include "redax/netlist.hpp"

#include "redax/errors.hpp"
#include "redax/graph_algo.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace redax {

namespace {

constexpr std::array<std::pair<VertexKind, std::string_view>, 20> kKindNames{{
    {VertexKind::Pi, "PI"},       {VertexKind::Po, "PO"},     {VertexKind::Const0, "CONST0"},
    {VertexKind::Const1, "CONST1"}, {VertexKind::Buf, "BUF"},  {VertexKind::Not, "NOT"},
    {VertexKind::And, "AND"},     {VertexKind::Or, "OR"},     {VertexKind::Nand, "NAND"},
    {VertexKind::Nor, "NOR"},     {VertexKind::Xor, "XOR"},   {VertexKind::Xnor, "XNOR"},
    {VertexKind::Mux2, "MUX2"},   {VertexKind::Table, "TABLE"}, {VertexKind::Dff, "DFF"},
    {VertexKind::Clut, "CLUT"},   {VertexKind::Csb, "CSB"},   {VertexKind::CsbReg, "CSBQ"},
    {VertexKind::Cpi, "CPI"},     {VertexKind::Cfg, "CFG"},
}};

} // namespace

std::string_view kind_name(VertexKind kind) {
    for (const auto& [k, n] : kKindNames)
        if (k == kind) return n;
    return "?";
}

std::optional<VertexKind> kind_from_name(std::string_view name) {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

int fixed_arity(VertexKind kind) {
    switch (kind) {
    case VertexKind::Pi:
    case VertexKind::Const0:
    case VertexKind::Const1:
    case VertexKind::Cfg: return 0;
    case VertexKind::Po:
    case VertexKind::Buf:
    case VertexKind::Not:
    case VertexKind::Dff:
    case VertexKind::CsbReg: return 1;
    case VertexKind::Xor:
    case VertexKind::Xnor: return 2;
    case VertexKind::Mux2: return 3;
    default: return -1;
    }
}

TruthTable builtin_function(const Vertex& v) {
    const int n = static_cast<int>(v.fanins.size());
    std::uint64_t bits = 0;
    const std::size_t rows = std::size_t{1} << n;
    for (std::size_t k = 0; k < rows; ++k) {
        const int ones = std::popcount(k);
        bool out = false;
        switch (v.kind) {
        case VertexKind::Const0: out = false; break;
        case VertexKind::Const1: out = true; break;
        case VertexKind::Buf: out = k & 1u; break;
        case VertexKind::Not: out = !(k & 1u); break;
        case VertexKind::And: out = ones == n; break;
        case VertexKind::Nand: out = ones != n; break;
        case VertexKind::Or: out = ones > 0; break;
        case VertexKind::Nor: out = ones == 0; break;
        case VertexKind::Xor: out = ones & 1; break;
        case VertexKind::Xnor: out = !(ones & 1); break;
        case VertexKind::Mux2: out = (k & 1u) ? (k >> 2) & 1u : (k >> 1) & 1u; break;
        case VertexKind::Table:
        case VertexKind::Clut:
        case VertexKind::Csb:
            if (!v.function) throw DomainError("'" + v.name + "' has no function");
            return *v.function;
        default: throw DomainError(std::string(kind_name(v.kind)) + " '" + v.name + "' is not a logic gate");
        }
        if (out) bits |= std::uint64_t{1} << k;
    }
    return TruthTable(n, bits);
}

std::string arity_violation(const Vertex& v) {
    const int n = static_cast<int>(v.fanins.size());
    const std::string who = std::string(kind_name(v.kind)) + " '" + v.name + "'";
    const int fixed = fixed_arity(v.kind);
    if (fixed >= 0) {
        if (n != fixed) return who + " has " + std::to_string(n) + " fanins, expected " + std::to_string(fixed);
        return {};
    }
    switch (v.kind) {
    case VertexKind::And:
    case VertexKind::Or:
    case VertexKind::Nand:
    case VertexKind::Nor:
        if (n < 2 || n > 4) return who + " arity " + std::to_string(n) + " outside [2,4]";
        return {};
    case VertexKind::Table:
        if (!v.function) return who + " has no truth table";
        if (n < 1 || n > kMaxTableWidth) return who + " width " + std::to_string(n) + " outside [1,6]";
        if (v.function->width() != n) return who + " truth table width does not match its fanin count";
        return {};
    case VertexKind::Clut:
    case VertexKind::Csb:
        if (n < 1 || n > kMaxTableWidth) return who + " width " + std::to_string(n) + " outside [1,6]";
        if (v.function && v.function->width() != n) return who + " programmed width does not match fanins";
        return {};
    case VertexKind::Cpi:
        if (n < 2) return who + " needs at least two inputs";
        if (v.select && *v.select >= static_cast<std::uint32_t>(n)) return who + " select index out of range";
        return {};
    default: return {};
    }
}

std::size_t Hypergraph::alive_count() const {
    return static_cast<std::size_t>(
        std::count_if(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.alive; }));
}

VertexId Hypergraph::add_vertex(VertexKind kind, std::string name, std::vector<VertexId> fanins) {
    auto& names = kind == VertexKind::Po ? output_names_ : signal_names_;
    if (names.count(name))
        throw GraphError("net '" + name + "' is multiply driven");
    for (VertexId f : fanins)
        if (f < 0 || static_cast<std::size_t>(f) >= vertices_.size() || !vertices_[f].alive)
            throw GraphError("fanin of '" + name + "' references a missing vertex");
    const auto id = static_cast<VertexId>(vertices_.size());
    Vertex v;
    v.id = id;
    v.kind = kind;
    v.fanins = std::move(fanins);
    v.name = std::move(name);
    names.emplace(v.name, id);
    vertices_.push_back(std::move(v));
    fanouts_.emplace_back();
    link(id);
    return id;
}

VertexId Hypergraph::add_table(std::string name, std::vector<VertexId> fanins, TruthTable fn) {
    const VertexId v = add_vertex(VertexKind::Table, std::move(name), std::move(fanins));
    mut(v).function = fn;
    return v;
}

void Hypergraph::link(VertexId consumer) {
    for (VertexId f : vertices_[consumer].fanins) {
        auto& list = fanouts_[f];
        auto it = std::lower_bound(list.begin(), list.end(), consumer);
        if (it == list.end() || *it != consumer) list.insert(it, consumer);
    }
}

void Hypergraph::unlink(VertexId consumer) {
    for (VertexId f : vertices_[consumer].fanins) {
        auto& list = fanouts_[f];
        auto it = std::lower_bound(list.begin(), list.end(), consumer);
        if (it != list.end() && *it == consumer) list.erase(it);
    }
}

void Hypergraph::set_fanins(VertexId v, std::vector<VertexId> fanins) {
    for (VertexId f : fanins)
        if (f < 0 || static_cast<std::size_t>(f) >= vertices_.size() || !vertices_[f].alive)
            throw GraphError("fanin references a missing vertex");
    unlink(v);
    mut(v).fanins = std::move(fanins);
    link(v);
}

void Hypergraph::replace_fanin(VertexId v, std::size_t slot, VertexId source) {
    auto f = vertex(v).fanins;
    f.at(slot) = source;
    set_fanins(v, std::move(f));
}

void Hypergraph::rename(VertexId v, std::string name) {
    Vertex& x = mut(v);
    auto& names = x.kind == VertexKind::Po ? output_names_ : signal_names_;
    if (name == x.name) return;
    if (names.count(name)) throw GraphError("net '" + name + "' is multiply driven");
    names.erase(x.name);
    x.name = std::move(name);
    names.emplace(x.name, v);
}

void Hypergraph::remove(VertexId v) {
    Vertex& x = mut(v);
    if (!x.alive) return;
    if (!fanouts_[v].empty()) throw GraphError("cannot remove '" + x.name + "': it still has consumers");
    unlink(v);
    (x.kind == VertexKind::Po ? output_names_ : signal_names_).erase(x.name);
    x.fanins.clear();
    x.alive = false;
}

std::optional<VertexId> Hypergraph::find_signal(std::string_view name) const {
    auto it = signal_names_.find(std::string(name));
    if (it == signal_names_.end()) return std::nullopt;
    return it->second;
}

std::optional<VertexId> Hypergraph::find_output(std::string_view name) const {
    auto it = output_names_.find(std::string(name));
    if (it == output_names_.end()) return std::nullopt;
    return it->second;
}

std::string Hypergraph::unique_name(const std::string& base) const {
    auto taken = [&](const std::string& n) { return signal_names_.count(n) || output_names_.count(n); };
    if (!taken(base)) return base;
    for (int n = 1;; ++n) {
        std::string candidate = base + "_" + std::to_string(n);
        if (!taken(candidate)) return candidate;
    }
}

std::vector<VertexId> Hypergraph::ids_of(VertexKind kind) const {
    std::vector<VertexId> out;
    for (const Vertex& v : vertices_)
        if (v.alive && v.kind == kind) out.push_back(v.id);
    return out;
}

std::vector<VertexId> Hypergraph::registers() const {
    std::vector<VertexId> out;
    for (const Vertex& v : vertices_)
        if (v.alive && is_register(v.kind)) out.push_back(v.id);
    return out;
}

void Hypergraph::validate() const {
    for (const Vertex& v : vertices_) {
        if (!v.alive) continue;
        if (auto msg = arity_violation(v); !msg.empty()) throw GraphError(msg);
        for (VertexId f : v.fanins) {
            if (f < 0 || static_cast<std::size_t>(f) >= vertices_.size() || !vertices_[f].alive)
                throw GraphError("'" + v.name + "' references a missing vertex");
            if (vertices_[f].kind == VertexKind::Po) throw GraphError("'" + v.name + "' is fed by a primary output");
            if (!std::binary_search(fanouts_[f].begin(), fanouts_[f].end(), v.id))
                throw GraphError("fanout index misses edge into '" + v.name + "'");
        }
        if (v.kind == VertexKind::CsbReg && vertices_[v.fanins[0]].kind != VertexKind::Csb)
            throw GraphError("CSB register '" + v.name + "' is not fed by its CSB");
        for (VertexId c : fanouts_[v.id]) {
            const auto& fi = vertices_[c].fanins;
            if (!vertices_[c].alive || std::find(fi.begin(), fi.end(), v.id) == fi.end())
                throw GraphError("fanout index of '" + v.name + "' lists a non-consumer");
        }
    }
    (void)topological_sort(*this);
}

Hypergraph Hypergraph::canonical(std::vector<VertexId>* old_to_new) const {
    std::vector<VertexId> order;
    for (const Vertex& v : vertices_)
        if (v.alive && v.kind == VertexKind::Pi) order.push_back(v.id);
    for (const Vertex& v : vertices_)
        if (v.alive && v.kind == VertexKind::Po) order.push_back(v.id);
    std::vector<VertexId> reg_of(vertices_.size(), kNoVertex);
    for (const Vertex& v : vertices_)
        if (v.alive && v.kind == VertexKind::CsbReg) reg_of[v.fanins[0]] = v.id;
    for (const Vertex& v : vertices_) {
        if (!v.alive || v.kind == VertexKind::Pi || v.kind == VertexKind::Po || v.kind == VertexKind::CsbReg) continue;
        order.push_back(v.id);
        if (v.kind == VertexKind::Csb && reg_of[v.id] != kNoVertex) order.push_back(reg_of[v.id]);
    }
    std::vector<VertexId> map(vertices_.size(), kNoVertex);
    for (std::size_t i = 0; i < order.size(); ++i) map[order[i]] = static_cast<VertexId>(i);

    Hypergraph g(model_);
    g.vertices_.reserve(order.size());
    for (VertexId old : order) {
        Vertex v = vertices_[old];
        v.id = map[old];
        for (VertexId& f : v.fanins) f = map[f];
        (v.kind == VertexKind::Po ? g.output_names_ : g.signal_names_).emplace(v.name, v.id);
        g.vertices_.push_back(std::move(v));
        g.fanouts_.emplace_back();
    }
    for (const Vertex& v : g.vertices_) g.link(v.id);
    if (old_to_new) *old_to_new = std::move(map);
    return g;
}

} // namespace redax
