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

#include "redax/redact.hpp"

#include "redax/errors.hpp"
#include "redax/graph_algo.hpp"
#include "redax/kernels.hpp"
#include "redax/sim.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace redax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

int parse_int_value(std::string_view key, std::string_view v) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ParseError("parameter '" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
    return out;
}

double parse_double_value(std::string_view key, std::string_view v) {
    std::string s(v);
    std::istringstream in(s);
    in.imbue(std::locale::classic());
    double out = 0;
    in >> out;
    if (!in || !in.eof()) {
        // A fraction such as 1/3 is accepted for the rcf weights.
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            const double num = parse_double_value(key, s.substr(0, slash));
            const double den = parse_double_value(key, s.substr(slash + 1));
            if (den == 0) throw ParseError("parameter '" + std::string(key) + "' divides by zero");
            return num / den;
        }
        throw ParseError("parameter '" + std::string(key) + "' expects a number, got '" + s + "'");
    }
    return out;
}

bool parse_bool_value(std::string_view key, std::string_view v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ParseError("parameter '" + std::string(key) + "' expects a boolean, got '" + std::string(v) + "'");
}

/// ceil(f * n) with a guard against 0.1 * 30 = 3.0000000000000004.
std::uint32_t scaled_count(double f, std::size_t n) {
    const double x = f * static_cast<double>(n);
    return static_cast<std::uint32_t>(std::ceil(x - 1e-9));
}

FabricElement& element_of(RedactedDesign& d, VertexId v) { return d.elements.at(d.graph.vertex(v).element); }

void grow_positions(RedactedDesign& d, double value) {
    d.position.resize(d.graph.size(), value);
    d.position.back() = value;
}

/// Dummy-source candidates for a binding into `target`: sources (PIs, registers) or
/// vertices strictly earlier than `target_pos`. Ports, constants and existing fanins are
/// excluded.
std::vector<VertexId> dummy_candidates(const RedactedDesign& d, VertexId target, double target_pos,
                                       const std::vector<VertexId>& exclude) {
    const Hypergraph& g = d.graph;
    std::vector<char> skip(g.size(), 0);
    if (target != kNoVertex) {
        skip[target] = 1;
        for (VertexId f : g.vertex(target).fanins) skip[f] = 1;
    }
    for (VertexId x : exclude) skip[x] = 1;
    std::vector<VertexId> out;
    for (const Vertex& v : g.vertices()) {
        if (!v.alive || skip[v.id]) continue;
        switch (v.kind) {
        case VertexKind::Po:
        case VertexKind::Const0:
        case VertexKind::Const1:
        case VertexKind::Cfg: continue;
        default: break;
        }
        if (v.kind == VertexKind::Pi || is_register(v.kind) || d.position[v.id] < target_pos) out.push_back(v.id);
    }
    return out;
}

/// Random pick, or (rng == nullptr) the nearest earlier candidate.
std::optional<VertexId> pick_dummy(const RedactedDesign& d, VertexId target, double target_pos, Rng* rng,
                                   const std::vector<VertexId>& exclude = {}) {
    const auto cand = dummy_candidates(d, target, target_pos, exclude);
    if (cand.empty()) return std::nullopt;
    if (rng) return cand[rng->below(static_cast<std::uint32_t>(cand.size()))];
    VertexId best = kNoVertex;
    for (VertexId c : cand)
        if (d.position[c] < target_pos && (best == kNoVertex || d.position[c] > d.position[best])) best = c;
    if (best == kNoVertex)
        best = *std::min_element(cand.begin(), cand.end(),
                                 [&](VertexId a, VertexId b) { return d.position[a] < d.position[b]; });
    return best;
}

/// Appends a dummy binding on `source` to element `e` (function unchanged).
void add_dummy_binding(RedactedDesign& d, FabricElement& e, VertexId source) {
    auto fanins = d.graph.vertex(e.vertex).fanins;
    fanins.push_back(source);
    d.graph.set_fanins(e.vertex, std::move(fanins));
    e.bits = e.bits.extend_with_dummy(e.width());
    e.roles.push_back(BindingRole::Dummy);
}

void pad_to_min(RedactedDesign& d, FabricElement& e, int gamma_min, Rng* rng) {
    while (e.width() < gamma_min && e.width() < kMaxTableWidth) {
        const auto src = pick_dummy(d, e.vertex, d.position[e.vertex], rng);
        if (!src) break;
        add_dummy_binding(d, e, *src);
    }
}

struct Cover {
    VertexId root = kNoVertex;
    bool sequential = false;
    std::vector<VertexId> members; // combinational members (the root too, for gates)
    std::vector<VertexId> leaves;
    TruthTable function;
};

/// Greedy root-first growth: repeatedly absorbs the leaf closest to the root whose
/// consumers all lie in the cover, while the support stays within the limit.
Cover grow_cover(const Hypergraph& g, VertexId root, int r_size, const std::vector<std::int32_t>& absorbed,
                 const std::vector<int>& pos, const std::vector<char>& in_mffc) {
    Cover c;
    c.root = root;
    c.sequential = g.vertex(root).kind == VertexKind::Dff;
    std::unordered_set<VertexId> cover{root};
    if (!c.sequential) c.members.push_back(root);
    std::vector<VertexId> leaves = g.vertex(root).fanins;
    std::sort(leaves.begin(), leaves.end());
    leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
    const std::size_t limit = std::max<std::size_t>(static_cast<std::size_t>(r_size), leaves.size());

    for (;;) {
        std::vector<VertexId> order = leaves;
        std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
            return pos[a] != pos[b] ? pos[a] > pos[b] : a < b;
        });
        bool grown = false;
        for (VertexId x : order) {
            const Vertex& xv = g.vertex(x);
            if (!in_mffc[x] || absorbed[x] >= 0 || !is_comb_gate(xv.kind)) continue;
            const auto& outs = g.fanouts(x);
            if (!std::all_of(outs.begin(), outs.end(), [&](VertexId o) { return cover.count(o) != 0; })) continue;
            std::vector<VertexId> next;
            for (VertexId l : leaves)
                if (l != x) next.push_back(l);
            next.insert(next.end(), xv.fanins.begin(), xv.fanins.end());
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            if (next.size() > limit || next.empty()) continue;
            cover.insert(x);
            c.members.push_back(x);
            leaves = std::move(next);
            grown = true;
            break;
        }
        if (!grown) break;
    }
    c.leaves = std::move(leaves);
    const VertexId out = c.sequential ? g.vertex(root).fanins[0] : root;
    c.function = encode_truth_table(g, c.members, out, c.leaves);
    return c;
}

Eq2Record audit_cover(const Hypergraph& g, VertexId root, const std::vector<int>& pos,
                      const std::vector<std::int32_t>& absorbed, const std::vector<Cover>& covers,
                      const std::vector<std::int32_t>& element_of_root) {
    Eq2Record r;
    r.root = root;
    const auto mffc = extract_mffc(g, root, pos);
    std::unordered_set<VertexId> in(mffc.begin(), mffc.end());
    std::unordered_set<VertexId> leaves;
    for (VertexId m : mffc)
        for (VertexId f : g.vertex(m).fanins)
            if (!in.count(f)) leaves.insert(f);
    r.n = static_cast<int>(leaves.size());
    for (VertexId m : mffc) {
        if (element_of_root[m] >= 0)
            r.widths.push_back(static_cast<int>(covers[element_of_root[m]].leaves.size()));
        else if (absorbed[m] < 0)
            r.widths.push_back(static_cast<int>(g.vertex(m).fanins.size())); // left as a gate
    }
    return r;
}

void apply_permutation(RedactedDesign& d, FabricElement& e, const std::vector<int>& new_position) {
    const auto& old = d.graph.vertex(e.vertex).fanins;
    std::vector<VertexId> fanins(old.size());
    std::vector<BindingRole> roles(old.size());
    for (std::size_t i = 0; i < old.size(); ++i) {
        fanins[new_position[i]] = old[i];
        roles[new_position[i]] = e.roles[i];
    }
    d.graph.set_fanins(e.vertex, std::move(fanins));
    e.roles = std::move(roles);
    e.bits = e.bits.permute(new_position);
}

/// Inversion is absorbable when every consumer of the output (other than the element's
/// own dummy register) is a CLUT/CSB that can complement its cofactors.
bool invertible(const RedactedDesign& d, const FabricElement& e) {
    if (e.kind == ElementKind::Csb && e.reg_functional) return false;
    for (VertexId c : d.graph.fanouts(e.vertex)) {
        if (c == e.reg) continue;
        const VertexKind k = d.graph.vertex(c).kind;
        if (k != VertexKind::Clut && k != VertexKind::Csb) return false;
    }
    return true;
}

void invert(RedactedDesign& d, FabricElement& e) {
    e.bits = e.bits.inverted();
    e.inverted = !e.inverted;
    const std::vector<VertexId> loads = d.graph.fanouts(e.vertex);
    for (VertexId c : loads) {
        if (c == e.reg) continue;
        FabricElement& ce = element_of(d, c);
        const auto& fi = d.graph.vertex(c).fanins;
        for (std::size_t s = 0; s < fi.size(); ++s)
            if (fi[s] == e.vertex) ce.bits = ce.bits.flip_input(static_cast<int>(s));
    }
}

/// Elements able to take one more dummy binding in the dummy-CSB pass.
std::vector<std::int32_t> binding_targets(const RedactedDesign& d, const RedactionParams& p, std::int32_t except) {
    const int limit = std::min(kMaxTableWidth, p.gamma_min + p.d_max);
    std::vector<std::int32_t> out;
    for (const FabricElement& e : d.elements)
        if (e.kind != ElementKind::Cpi && e.id != except && e.width() < limit) out.push_back(e.id);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------------------------

void RedactionParams::validate() const {
    auto fraction = [](const char* name, double v) {
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
    };
    if (gamma_min < 2 || gamma_min > gamma_max || gamma_max > kMaxTableWidth)
        throw DomainError("need 2 <= gamma_min <= gamma_max <= 6");
    fraction("gamma_a_max", gamma_a_max);
    fraction("gamma_b_max", gamma_b_max);
    fraction("cpi_fraction", cpi_fraction);
    fraction("coverage", coverage);
    if (d_max < 0) throw DomainError("d_max must be non-negative");
    if (w_fi < 0 || w_fo < 0 || w_H < 0) throw DomainError("rcf weights must be non-negative");
    if (entropy_samples < 1) throw DomainError("entropy_samples must be positive");
}

void RedactionParams::set(std::string_view key, std::string_view value) {
    if (key == "gamma_min") gamma_min = parse_int_value(key, value);
    else if (key == "gamma_max") gamma_max = parse_int_value(key, value);
    else if (key == "gamma_a_max") gamma_a_max = parse_double_value(key, value);
    else if (key == "gamma_b_max") gamma_b_max = parse_double_value(key, value);
    else if (key == "cpi_fraction") cpi_fraction = parse_double_value(key, value);
    else if (key == "coverage") coverage = parse_double_value(key, value);
    else if (key == "d_max") d_max = parse_int_value(key, value);
    else if (key == "w_fi") w_fi = parse_double_value(key, value);
    else if (key == "w_fo") w_fo = parse_double_value(key, value);
    else if (key == "w_H") w_H = parse_double_value(key, value);
    else if (key == "entropy_samples") entropy_samples = parse_int_value(key, value);
    else if (key == "randomize") randomize = parse_bool_value(key, value);
    else if (key == "converted_csb_eligible") converted_csb_eligible = parse_bool_value(key, value);
    else throw ParseError("unknown parameter '" + std::string(key) + "'");
}

RedactionParams RedactionParams::parse(std::string_view text) {
    RedactionParams p;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        const std::string t = trim(line);
        if (!t.empty()) {
            const auto eq = t.find('=');
            if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, 1);
            try {
                p.set(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line_no, 1);
            }
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    p.validate();
    return p;
}

std::string RedactionParams::to_text() const {
    std::ostringstream o;
    o.imbue(std::locale::classic());
    o.precision(17);
    o << "gamma_min = " << gamma_min << "\ngamma_max = " << gamma_max << "\ngamma_a_max = " << gamma_a_max
      << "\ngamma_b_max = " << gamma_b_max << "\ncpi_fraction = " << cpi_fraction << "\ncoverage = " << coverage
      << "\nd_max = " << d_max << "\nw_fi = " << w_fi << "\nw_fo = " << w_fo << "\nw_H = " << w_H
      << "\nentropy_samples = " << entropy_samples << "\nrandomize = " << (randomize ? "true" : "false")
      << "\nconverted_csb_eligible = " << (converted_csb_eligible ? "true" : "false") << "\n";
    return o.str();
}

int RedactionParams::width_cap() const { return std::min(kMaxTableWidth, gamma_max + d_max); }

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

std::vector<double> signal_entropies(const Hypergraph& g, int samples, Rng& rng) {
    if (samples < 1) throw DomainError("entropy needs at least one sample");
    const Simulator sim(g);
    std::vector<std::uint64_t> in(sim.inputs().size()), state(sim.registers().size(), 0), values(sim.vertex_count());
    std::vector<std::uint64_t> ones(g.size(), 0);
    const auto cycles = static_cast<std::uint64_t>((samples + 63) / 64);
    for (std::uint64_t c = 0; c < cycles; ++c) {
        for (auto& w : in) w = rng.next_u64();
        sim.step(in, state, values);
        const int live = c + 1 == cycles && samples % 64 ? samples % 64 : 64;
        const std::uint64_t mask = live == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << live) - 1;
        for (std::size_t v = 0; v < g.size(); ++v) ones[v] += static_cast<std::uint64_t>(std::popcount(values[v] & mask));
    }
    std::vector<double> h(g.size(), 0.0);
    for (const Vertex& v : g.vertices())
        if (v.alive) h[v.id] = binary_entropy(static_cast<double>(ones[v.id]) / samples);
    return h;
}

double signal_entropy(const Hypergraph& g, VertexId v, int samples, Rng& rng) {
    const Vertex& x = g.vertex(v);
    if (!x.alive || x.kind == VertexKind::Po) throw DomainError("'" + x.name + "' is not a gate or register output");
    return signal_entropies(g, samples, rng).at(v);
}

CriticalSet identify_critical_nodes(const Hypergraph& g, std::uint32_t seed, const RedactionParams& p) {
    if (g.alive_count() == 0) throw DomainError("cannot redact an empty graph");
    CriticalSet cs;
    cs.rcf.assign(g.size(), 0.0);
    std::vector<VertexId> pool;
    for (const Vertex& v : g.vertices())
        if (v.alive && (v.kind == VertexKind::Dff || (is_comb_gate(v.kind) && v.kind != VertexKind::Const0 &&
                                                      v.kind != VertexKind::Const1)))
            pool.push_back(v.id);
    if (pool.empty()) return cs;

    const auto sizes = kernels::cone_sizes(g);
    Rng entropy_rng(seed, Stream::Entropy);
    const auto h = p.w_H > 0 ? signal_entropies(g, p.entropy_samples, entropy_rng) : std::vector<double>(g.size(), 0.0);
    int max_fi = 0, max_fo = 0;
    for (VertexId v : pool) {
        max_fi = std::max(max_fi, sizes[v].fan_in);
        max_fo = std::max(max_fo, sizes[v].fan_out);
    }
    for (VertexId v : pool) {
        double r = p.w_H * h[v];
        if (max_fi) r += p.w_fi * sizes[v].fan_in / max_fi;
        if (max_fo) r += p.w_fo * sizes[v].fan_out / max_fo;
        cs.rcf[v] = r;
    }
    std::stable_sort(pool.begin(), pool.end(), [&](VertexId a, VertexId b) {
        return cs.rcf[a] != cs.rcf[b] ? cs.rcf[a] > cs.rcf[b] : a < b;
    });
    pool.resize(std::min<std::size_t>(pool.size(), scaled_count(p.coverage, pool.size())));
    if (p.randomize) {
        Rng rng(seed, Stream::Shuffle);
        rng.shuffle(std::span<VertexId>(pool));
    }
    cs.order = std::move(pool);
    return cs;
}

bool Eq2Record::holds() const { return std::accumulate(widths.begin(), widths.end(), 0) >= n; }

std::size_t RedactedDesign::count(ElementKind k) const {
    return static_cast<std::size_t>(
        std::count_if(elements.begin(), elements.end(), [k](const FabricElement& e) { return e.kind == k; }));
}

int RedactedDesign::cut_points() const {
    return static_cast<int>(graph.pos().size() + graph.registers().size());
}

RedactedDesign begin_redaction(const Hypergraph& original) {
    RedactedDesign d;
    for (const Vertex& v : original.vertices())
        if (v.alive && is_fabric(v.kind))
            throw DomainError("input netlist already contains fabric cell '" + v.name + "'");
    d.graph = original;
    d.absorbed.assign(original.size(), -1);
    const auto order = topological_sort(original);
    d.position.assign(original.size(), 0.0);
    for (std::size_t i = 0; i < order.size(); ++i) d.position[order[i]] = static_cast<double>(i);
    d.original_ffs = original.dffs();
    d.n_o = static_cast<int>(original.pos().size() + d.original_ffs.size());
    return d;
}

void map_critical_logic(RedactedDesign& d, const Hypergraph& original, const std::vector<VertexId>& critical,
                        std::uint32_t seed, const RedactionParams& p) {
    Rng mapping(seed, Stream::Mapping);
    const auto pos = positions(original, topological_sort(original));
    std::vector<Cover> covers;
    std::vector<std::int32_t> element_of_root(original.size(), -1);
    std::vector<char> in_mffc(original.size(), 0);

    for (VertexId v : critical) {
        const std::uint32_t span = static_cast<std::uint32_t>(p.gamma_max - p.gamma_min + 1);
        const std::uint32_t draw = mapping.below(span);
        const int r_size = p.randomize ? p.gamma_min + static_cast<int>(draw) : p.gamma_min;
        if (d.absorbed[v] >= 0) continue;
        const auto mffc = extract_mffc(original, v, pos);
        for (VertexId m : mffc) in_mffc[m] = 1;
        Cover c = grow_cover(original, v, r_size, d.absorbed, pos, in_mffc);
        for (VertexId m : mffc) in_mffc[m] = 0;
        const auto id = static_cast<std::int32_t>(covers.size());
        d.absorbed[v] = id;
        for (VertexId m : c.members) d.absorbed[m] = id;
        element_of_root[v] = id;
        covers.push_back(std::move(c));
    }
    d.critical = critical;

    for (const Cover& c : covers)
        d.eq2.push_back(audit_cover(original, c.root, pos, d.absorbed, covers, element_of_root));

    // Rewire roots first, then drop interior members consumers-first.
    Hypergraph& g = d.graph;
    for (std::size_t i = 0; i < covers.size(); ++i) {
        const Cover& c = covers[i];
        FabricElement e;
        e.id = static_cast<std::int32_t>(d.elements.size());
        e.bits = c.function;
        e.roles.assign(c.leaves.size(), BindingRole::Functional);
        if (!c.sequential) {
            e.kind = ElementKind::Clut;
            e.vertex = c.root;
            g.set_kind(c.root, VertexKind::Clut);
            g.set_function(c.root, std::nullopt);
            g.set_fanins(c.root, c.leaves);
        } else {
            e.kind = ElementKind::Csb;
            e.reg = c.root;
            e.reg_functional = true;
            e.vertex = g.add_vertex(VertexKind::Csb, g.unique_name(g.vertex(c.root).name + ".d"), c.leaves);
            grow_positions(d, kInf);
            g.set_kind(c.root, VertexKind::CsbReg);
            g.set_fanins(c.root, {e.vertex});
            g.set_element(c.root, e.id);
        }
        g.set_element(e.vertex, e.id);
        d.elements.push_back(std::move(e));
    }
    std::vector<VertexId> interior;
    for (const Cover& c : covers)
        for (VertexId m : c.members)
            if (m != c.root) interior.push_back(m);
    std::sort(interior.begin(), interior.end(), [&](VertexId a, VertexId b) { return pos[a] > pos[b]; });
    for (VertexId m : interior) g.remove(m);

    Rng padding(seed, Stream::Padding);
    for (FabricElement& e : d.elements) {
        pad_to_min(d, e, p.gamma_min, p.randomize ? &padding : nullptr);
        e.rt1_width = e.width();
    }
}

void place_dummy_csbs(RedactedDesign& d, std::uint32_t seed, const RedactionParams& p) {
    if (!p.randomize) return;
    Rng rng(seed, Stream::DummyCsb);
    Hypergraph& g = d.graph;

    const std::uint32_t mod_a = scaled_count(p.gamma_a_max, d.count(ElementKind::Clut));
    std::uint32_t n_a = mod_a ? rng.below(mod_a) : 0;
    for (; n_a > 0; --n_a) {
        std::vector<std::int32_t> cluts;
        for (const FabricElement& e : d.elements)
            if (e.kind == ElementKind::Clut) cluts.push_back(e.id);
        if (cluts.empty()) break;
        const std::int32_t pick = cluts[rng.below(static_cast<std::uint32_t>(cluts.size()))];
        const auto targets = binding_targets(d, p, pick);
        if (targets.empty()) continue;
        const std::int32_t target = targets[rng.below(static_cast<std::uint32_t>(targets.size()))];

        FabricElement& e = d.elements[pick];
        e.kind = ElementKind::Csb;
        e.converted = true;
        e.reg_functional = false;
        g.set_kind(e.vertex, VertexKind::Csb);
        e.reg = g.add_vertex(VertexKind::CsbReg, g.unique_name(g.vertex(e.vertex).name + ".q"), {e.vertex});
        g.set_element(e.reg, e.id);
        grow_positions(d, kInf);
        add_dummy_binding(d, d.elements[target], e.reg);
        ++d.n_a;
    }

    const std::uint32_t mod_b = scaled_count(p.gamma_b_max, d.original_ffs.size());
    std::uint32_t n_b = mod_b ? rng.below(mod_b) : 0;
    for (; n_b > 0; --n_b) {
        const VertexId flop = d.original_ffs[rng.below(static_cast<std::uint32_t>(d.original_ffs.size()))];
        const auto targets = binding_targets(d, p, -1);
        if (targets.empty()) continue;
        const std::int32_t target = targets[rng.below(static_cast<std::uint32_t>(targets.size()))];

        FabricElement e;
        e.id = static_cast<std::int32_t>(d.elements.size());
        e.kind = ElementKind::Csb;
        e.dummy_block = true;
        e.bits = TruthTable::projection(1, 0);
        e.roles = {BindingRole::Functional};
        const std::string base = g.vertex(flop).name + ".xb";
        e.vertex = g.add_vertex(VertexKind::Csb, g.unique_name(base), {flop});
        grow_positions(d, kInf);
        e.reg = g.add_vertex(VertexKind::CsbReg, g.unique_name(base + "q"), {e.vertex});
        grow_positions(d, kInf);
        g.set_element(e.vertex, e.id);
        g.set_element(e.reg, e.id);
        d.elements.push_back(std::move(e));
        FabricElement& added = d.elements.back();
        pad_to_min(d, added, p.gamma_min, &rng);
        added.rt1_width = added.width();
        add_dummy_binding(d, d.elements[target], added.reg);
        ++d.n_b;
    }
}

void randomize_elements(RedactedDesign& d, std::uint32_t seed, const RedactionParams& p) {
    if (!p.randomize) return;
    Rng rng(seed, Stream::Randomize);
    std::vector<std::int32_t> visit;
    for (const FabricElement& e : d.elements)
        if (e.kind == ElementKind::Clut) visit.push_back(e.id);
    for (const FabricElement& e : d.elements)
        if (e.kind == ElementKind::Csb && (p.converted_csb_eligible || !e.converted)) visit.push_back(e.id);

    const int cap = p.width_cap();
    for (std::int32_t id : visit) {
        if (!rng.coin()) continue;
        {
            FabricElement& e = d.elements[id];
            int want = p.d_max > 0 ? 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(p.d_max))) : 0;
            want = std::max(0, std::min(want, cap - e.width()));
            for (int k = 0; k < want; ++k) {
                const auto src = pick_dummy(d, e.vertex, d.position[e.vertex], &rng);
                if (!src) break;
                add_dummy_binding(d, e, *src);
                ++e.dummies_added;
            }
            std::vector<int> perm(static_cast<std::size_t>(e.width()));
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(std::span<int>(perm));
            apply_permutation(d, e, perm);
        }
        if (rng.coin() && invertible(d, d.elements[id])) invert(d, d.elements[id]);
    }
}

void place_cpis(RedactedDesign& d, std::uint32_t seed, const RedactionParams& p) {
    Rng rng(seed, Stream::Cpi);
    Hypergraph& g = d.graph;

    struct Candidate {
        VertexId output;
        VertexId own_reg; // consumer that stays on the raw output
    };
    std::vector<Candidate> cand;
    // A register keeps its direct connection to a PO of the same name: BLIF has one net
    // namespace, and the register name is what identifies its cut-point.
    auto rewired = [&](VertexId v, VertexId l, VertexId except) {
        if (l == except) return false;
        const Vertex& lv = g.vertex(l);
        return !(is_register(g.vertex(v).kind) && lv.kind == VertexKind::Po && lv.name == g.vertex(v).name);
    };
    auto has_loads = [&](VertexId v, VertexId except) {
        const auto& f = g.fanouts(v);
        return std::any_of(f.begin(), f.end(), [&](VertexId c) { return rewired(v, c, except); });
    };
    for (const FabricElement& e : d.elements) {
        if (e.kind == ElementKind::Cpi) continue;
        const bool comb = e.kind == ElementKind::Clut || e.converted;
        const VertexId out = comb ? e.vertex : e.reg;
        const VertexId except = comb ? e.reg : kNoVertex;
        if (has_loads(out, except)) cand.push_back({out, except});
    }
    bool gate_free = true;
    for (const Vertex& v : g.vertices())
        if (v.alive && is_comb_gate(v.kind)) gate_free = false;
    if (d.elements.empty() && gate_free) {
        // Wires only: the interconnect between ports is all there is to hide.
        std::vector<VertexId> drivers;
        for (VertexId po : g.pos()) drivers.push_back(g.vertex(po).fanins[0]);
        std::sort(drivers.begin(), drivers.end());
        drivers.erase(std::unique(drivers.begin(), drivers.end()), drivers.end());
        for (VertexId v : drivers) cand.push_back({v, kNoVertex});
    }

    d.cpi_candidates = cand.size();
    const auto p_count = static_cast<std::uint32_t>(cand.size());
    const std::uint32_t r = std::min(p_count, scaled_count(p.cpi_fraction, cand.size()));
    std::vector<std::uint32_t> idx(p_count);
    std::iota(idx.begin(), idx.end(), 0u);
    for (std::uint32_t i = 0; i < r; ++i) std::swap(idx[i], idx[i + rng.below(p_count - i)]);
    std::vector<std::uint32_t> chosen(idx.begin(), idx.begin() + r);
    std::sort(chosen.begin(), chosen.end());

    for (std::uint32_t ci : chosen) {
        const Candidate c = cand[ci];
        std::vector<VertexId> loads;
        bool takes_po_name = false;
        for (VertexId l : g.fanouts(c.output)) {
            if (!rewired(c.output, l, c.own_reg)) continue;
            loads.push_back(l);
            const Vertex& lv = g.vertex(l);
            if (lv.kind == VertexKind::Po && lv.name == g.vertex(c.output).name) takes_po_name = true;
        }
        double min_load = kInf;
        for (VertexId l : loads)
            if (!is_register(g.vertex(l).kind)) min_load = std::min(min_load, d.position[l]);
        const double src_pos = d.position[c.output];
        double at;
        if (min_load == kInf)
            at = kInf;
        else if (is_source(g.vertex(c.output).kind))
            at = min_load - 0.25;
        else
            at = (src_pos + min_load) / 2;

        const auto dummy = pick_dummy(d, kNoVertex, at, p.randomize ? &rng : nullptr, {c.output});
        if (!dummy) continue;
        const bool functional_first = p.randomize ? rng.coin() : true;
        std::vector<VertexId> fanins = functional_first ? std::vector<VertexId>{c.output, *dummy}
                                                        : std::vector<VertexId>{*dummy, c.output};

        FabricElement e;
        e.id = static_cast<std::int32_t>(d.elements.size());
        e.kind = ElementKind::Cpi;
        e.roles = functional_first ? std::vector<BindingRole>{BindingRole::Functional, BindingRole::Dummy}
                                   : std::vector<BindingRole>{BindingRole::Dummy, BindingRole::Functional};
        e.select = functional_first ? 0 : 1;
        e.rt1_width = 2;
        // A CPI in front of a same-named PO takes over the net name; the element output moves aside.
        std::string cpi_name = g.vertex(c.output).name;
        if (takes_po_name)
            g.rename(c.output, g.unique_name(cpi_name + ".o"));
        else
            cpi_name = g.unique_name(cpi_name + ".cpi");
        e.vertex = g.add_vertex(VertexKind::Cpi, std::move(cpi_name), std::move(fanins));
        g.set_element(e.vertex, e.id);
        grow_positions(d, at);
        for (VertexId l : loads) {
            const auto fi = g.vertex(l).fanins;
            for (std::size_t s = 0; s < fi.size(); ++s)
                if (fi[s] == c.output) g.replace_fanin(l, s, e.vertex);
        }
        d.elements.push_back(std::move(e));
        ++d.cpi_placed;
    }
}

void finalize(RedactedDesign& d) {
    std::vector<VertexId> map;
    Hypergraph canon = d.graph.canonical(&map);
    std::vector<double> pos(canon.size(), 0.0);
    for (std::size_t i = 0; i < map.size(); ++i)
        if (map[i] != kNoVertex) pos[map[i]] = d.position[i];
    for (FabricElement& e : d.elements) {
        e.vertex = map[e.vertex];
        if (e.reg != kNoVertex) e.reg = map[e.reg];
    }
    for (VertexId& f : d.original_ffs) f = map[f];
    d.graph = std::move(canon);
    d.position = std::move(pos);
    d.graph.validate();
}

RedactedDesign redact_critical_logic(const Hypergraph& original, const CriticalSet& critical, std::uint32_t seed,
                                     const RedactionParams& p) {
    p.validate();
    RedactedDesign d = begin_redaction(original);
    map_critical_logic(d, original, critical.order, seed, p);
    place_dummy_csbs(d, seed, p);
    randomize_elements(d, seed, p);
    place_cpis(d, seed, p);
    finalize(d);
    return d;
}

RedactedDesign redact_design(const Hypergraph& original, std::uint32_t seed, const RedactionParams& p) {
    p.validate();
    original.validate();
    const CriticalSet cs = identify_critical_nodes(original, seed, p);
    return redact_critical_logic(original, cs, seed, p);
}

} // namespace redax
