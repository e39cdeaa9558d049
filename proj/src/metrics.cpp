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

#include "redax/metrics.hpp"

#include "redax/errors.hpp"
#include "redax/redact.hpp"
#include "redax/rng.hpp"
#include "redax/sim.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_set>

namespace redax {

BigInt count_all_input_functions(int n) {
    if (n < 0 || n > 16) throw DomainError("F_n is defined here for 0 <= n <= 16");
    if (n == 0) return 0;
    BigInt f = 2;
    for (int k = 2; k <= n; ++k) {
        BigInt all = BigInt(1) << (std::size_t{1} << k);
        f = all - (f + 2);
    }
    return f;
}

BigInt count_functions_depending_on_all(int n) {
    if (n < 0 || n > 16) throw DomainError("n must lie in [0, 16]");
    BigInt total = 0;
    for (int k = 0; k <= n; ++k) {
        BigInt term = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)) *
                      (BigInt(1) << (std::size_t{1} << k));
        if ((n - k) % 2) total -= term;
        else total += term;
    }
    return total;
}

void TdiWeights::validate() const {
    if (w1 < 0 || w2 < 0 || w3 < 0 || w4 < 0) throw DomainError("TDI_S weights must be non-negative");
    if (w1 == 0 && w2 == 0 && w3 == 0 && w4 == 0) throw DomainError("TDI_S weights must not all be zero");
}

double tdi_score(const kernels::CutFeatures& f, const TdiWeights& w) {
    return w.w1 * f.fi_size() + w.w2 * f.fo_size + w.w3 * f.fi_gates + w.w4 * f.fi_drivers;
}

double tdi_s(const Hypergraph& g, const CutPoint& cp, const TdiWeights& w) {
    w.validate();
    const Vertex& v = g.vertex(cp.vertex);
    const bool ok = v.alive && (cp.kind == CutPointKind::Po ? v.kind == VertexKind::Po : is_register(v.kind));
    if (!ok) throw DomainError("'" + v.name + "' is not a cut-point of the given kind");
    return tdi_score(kernels::cut_features(g, {cp}, kernels::Exec::Serial).front(), w);
}

std::string cut_point_key(const Hypergraph& g, const CutPoint& cp) {
    return (cp.kind == CutPointKind::Po ? "PO:" : "REG:") + g.vertex(cp.vertex).name;
}

std::optional<CutPoint> find_cut_point(const Hypergraph& g, const std::string& key) {
    if (key.rfind("PO:", 0) == 0) {
        if (auto v = g.find_output(key.substr(3))) return CutPoint{*v, CutPointKind::Po};
    } else if (key.rfind("REG:", 0) == 0) {
        if (auto v = g.find_signal(key.substr(4)); v && is_register(g.vertex(*v).kind))
            return CutPoint{*v, CutPointKind::PseudoPo};
    }
    return std::nullopt;
}

std::vector<double> FunctionHistogram::cumulative() const {
    std::vector<std::size_t> f;
    for (const auto& [_, n] : frequency) f.push_back(n);
    std::sort(f.rbegin(), f.rend());
    std::vector<double> out;
    std::size_t acc = 0;
    for (std::size_t n : f) {
        acc += n;
        out.push_back(total ? static_cast<double>(acc) / static_cast<double>(total) : 0.0);
    }
    return out;
}

std::map<int, FunctionHistogram> clut_function_distribution(const std::vector<Bitstream>& designs) {
    std::map<int, FunctionHistogram> out;
    for (const Bitstream& b : designs) {
        for (const BitSegment& s : b.segments) {
            if (s.kind == ElementKind::Cpi) continue;
            const TruthTable stripped = TruthTable::from_bits(s.bits).strip_independent();
            FunctionHistogram& h = out[s.width];
            h.width = s.width;
            ++h.frequency[std::to_string(stripped.width()) + ":" + stripped.to_string()];
            ++h.total;
        }
    }
    return out;
}

FabricInventory fabric_inventory(const Hypergraph& redacted, const Bitstream* b) {
    FabricInventory inv;
    std::size_t bits = 0;
    for (const Vertex& v : redacted.vertices()) {
        if (!v.alive) continue;
        const int w = static_cast<int>(v.fanins.size());
        if (v.kind == VertexKind::Clut) {
            ++inv.clut[w];
            bits += std::size_t{1} << w;
        } else if (v.kind == VertexKind::Csb) {
            ++inv.csb[w];
            bits += std::size_t{1} << w;
        } else if (v.kind == VertexKind::Cpi) {
            ++inv.cpi[w];
            bits += static_cast<std::size_t>(select_width(v.fanins.size()));
        }
    }
    inv.bits = b ? b->total_bits() : bits;
    return inv;
}

double gate_overhead(const Hypergraph& original, const Hypergraph& expanded) {
    auto cells = [](const Hypergraph& g) {
        std::size_t n = 0;
        for (const Vertex& v : g.vertices())
            if (v.alive && v.kind != VertexKind::Pi && v.kind != VertexKind::Po) ++n;
        return n;
    };
    const std::size_t base = cells(original);
    if (base == 0) throw DomainError("original design has no cells");
    return static_cast<double>(cells(expanded)) / static_cast<double>(base);
}

std::vector<CutPointScore> score_cut_points(const Hypergraph& g, const TdiWeights& w) {
    w.validate();
    const auto cps = identify_cut_points(g);
    const auto feats = kernels::cut_features(g, cps);
    std::vector<CutPointScore> out;
    for (std::size_t i = 0; i < cps.size(); ++i) out.push_back({cut_point_key(g, cps[i]), feats[i], tdi_score(feats[i], w)});
    return out;
}

namespace {

bool close_enough(double a, double b, double tol) {
    if (tol <= 0) return a == b;
    return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

} // namespace

TdiReport tdi_s_reports(const Hypergraph& original, const std::vector<Hypergraph>& variants, std::size_t n_samples,
                        const TdiWeights& w, double tolerance) {
    if (variants.size() < 2) throw DomainError("TDI_S reports compare at least two variants");
    if (n_samples == 0) throw DomainError("need at least one sample");
    const auto base = score_cut_points(original, w);
    if (base.empty()) throw DomainError("original design has no cut-points");
    n_samples = std::min(n_samples, base.size());
    double lo = base[0].score, hi = base[0].score;
    for (const auto& s : base) lo = std::min(lo, s.score), hi = std::max(hi, s.score);

    std::vector<char> used(base.size(), 0);
    TdiReport rep;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double target = n_samples == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / (n_samples - 1);
        std::size_t best = base.size();
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (used[i]) continue;
            if (best == base.size() || std::fabs(base[i].score - target) < std::fabs(base[best].score - target)) best = i;
        }
        used[best] = 1;
        rep.samples.push_back({base[best].key, base[best].score, {}});
    }
    for (const Hypergraph& v : variants) {
        for (TdiSample& s : rep.samples) {
            const auto cp = find_cut_point(v, s.cut_point);
            if (!cp) throw DomainError("variant lacks cut-point " + s.cut_point);
            s.variants.push_back(tdi_s(v, *cp, w));
        }
    }
    const std::size_t k = variants.size();
    rep.matches.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (const TdiSample& s : rep.samples)
                if (close_enough(s.variants[i], s.variants[j], tolerance)) ++rep.matches[i][j];
    return rep;
}

namespace {

struct Profile {
    std::vector<std::uint64_t> signatures; // per cut-point
    std::vector<kernels::CutFeatures> features;
};

Profile profile(const Hypergraph& g, const SimilarityOptions& opt) {
    const Simulator sim(g);
    const auto cps = identify_cut_points(g);
    Profile p;
    p.features = kernels::cut_features(g, cps);
    std::vector<std::uint64_t> seeds;
    std::vector<bool> is_cfg;
    for (VertexId v : sim.inputs()) {
        seeds.push_back(mix64(opt.seed) ^ hash_name(g.vertex(v).name));
        is_cfg.push_back(g.vertex(v).kind == VertexKind::Cfg);
    }
    std::vector<VertexId> probe;
    for (const CutPoint& cp : cps) probe.push_back(g.vertex(cp.vertex).fanins[0]);
    p.signatures.assign(cps.size(), 0x84222325cbf29ce4ull);

    const std::uint64_t words = std::max<std::uint64_t>(1, (opt.n_vectors + 63) / 64);
    std::vector<std::uint64_t> in(sim.inputs().size()), values(sim.vertex_count());
    std::vector<std::uint64_t> state(sim.registers().size());
    for (std::uint64_t w = 0; w < words; ++w) {
        std::fill(state.begin(), state.end(), 0);
        for (int c = 0; c < opt.cycles; ++c) {
            for (std::size_t i = 0; i < in.size(); ++i)
                in[i] = stimulus_word(seeds[i], w, is_cfg[i] ? 0 : static_cast<std::uint64_t>(c), 0);
            sim.step(in, state, values);
            for (std::size_t k = 0; k < probe.size(); ++k)
                p.signatures[k] = mix64(p.signatures[k] ^ values[probe[k]]);
        }
    }
    return p;
}

bool features_close(const kernels::CutFeatures& a, const kernels::CutFeatures& b, double tol) {
    return close_enough(a.fi_size(), b.fi_size(), tol) && close_enough(a.fo_size, b.fo_size, tol) &&
           close_enough(a.fi_gates, b.fi_gates, tol) && close_enough(a.fi_drivers, b.fi_drivers, tol);
}

double directed(const Profile& a, const Profile& b, double tol) {
    if (a.signatures.empty()) return 0.0;
    const std::unordered_set<std::uint64_t> sigs(b.signatures.begin(), b.signatures.end());
    std::size_t func = 0, structural = 0;
    for (std::size_t i = 0; i < a.signatures.size(); ++i) {
        if (sigs.count(a.signatures[i])) ++func;
        for (const auto& f : b.features)
            if (features_close(a.features[i], f, tol)) {
                ++structural;
                break;
            }
    }
    const double n = static_cast<double>(a.signatures.size());
    return 0.5 * (func / n) + 0.5 * (structural / n);
}

} // namespace

std::vector<std::vector<double>> similarity_matrix(const std::vector<Hypergraph>& designs, const SimilarityOptions& opt) {
    if (opt.n_vectors == 0) throw DomainError("similarity needs at least one vector");
    std::vector<Profile> prof(designs.size());
    const auto n = static_cast<std::int64_t>(designs.size());
    // Profiles are independent; each thread writes its own slot.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) prof[i] = profile(designs[i], opt);
    std::vector<std::vector<double>> m(designs.size(), std::vector<double>(designs.size(), 1.0));
    for (std::size_t i = 0; i < designs.size(); ++i)
        for (std::size_t j = i + 1; j < designs.size(); ++j) {
            const double s = 0.5 * (directed(prof[i], prof[j], opt.tolerance) + directed(prof[j], prof[i], opt.tolerance));
            m[i][j] = m[j][i] = s;
        }
    return m;
}

BigInt factorial(std::uint64_t n) {
    BigInt f = 1;
    for (std::uint64_t k = 2; k <= n; ++k) f *= k;
    return f;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c *= (n - k + i);
        c /= i;
    }
    return c;
}

double log2_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw DomainError("log2 C(n, k) needs k <= n");
    return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

ComplexityReport complexity_estimates(const RedactedDesign& d) {
    ComplexityReport r;
    for (const FabricElement& e : d.elements) {
        if (e.kind == ElementKind::Cpi) continue;
        ElementComplexity c;
        c.id = e.id;
        c.width = e.width();
        c.dummies = e.dummies_added;
        c.growth = BigInt(1) << static_cast<std::size_t>(e.dummies_added);
        c.variations = 2 * factorial(static_cast<std::uint64_t>(e.width()));
        r.elements.push_back(std::move(c));
    }
    r.n_o = d.n_o;
    r.n_r = d.cut_points();
    r.log2_cut_point_choices = log2_binomial(static_cast<std::uint64_t>(r.n_r), static_cast<std::uint64_t>(r.n_o));
    r.p = d.cpi_candidates;
    r.r = d.cpi_placed;
    r.cpi_configurations = binomial(r.p, r.r);
    return r;
}

ComplexityReport complexity_from_netlists(const Hypergraph& original, const Hypergraph& redacted, const Bitstream& b) {
    ComplexityReport r;
    for (const BitSegment& s : b.segments) {
        if (s.kind == ElementKind::Cpi) {
            ++r.r;
            continue;
        }
        ElementComplexity c;
        c.id = s.element_id;
        c.width = s.width;
        c.dummies = s.width - TruthTable::from_bits(s.bits).strip_independent().width();
        c.growth = BigInt(1) << static_cast<std::size_t>(c.dummies);
        c.variations = 2 * factorial(static_cast<std::uint64_t>(s.width));
        r.elements.push_back(std::move(c));
        ++r.p;
    }
    r.n_o = static_cast<int>(identify_cut_points(original).size());
    r.n_r = static_cast<int>(identify_cut_points(redacted).size());
    if (r.n_r < r.n_o) throw DomainError("redacted design has fewer cut-points than the original");
    r.log2_cut_point_choices = log2_binomial(static_cast<std::uint64_t>(r.n_r), static_cast<std::uint64_t>(r.n_o));
    r.p = std::max(r.p, r.r);
    r.cpi_configurations = binomial(r.p, r.r);
    return r;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson features_json(const CutPointScore& s) {
    return ojson{{"cut_point", s.key},           {"fi_size", s.features.fi_size()}, {"fo_size", s.features.fo_size},
                 {"fi_gates", s.features.fi_gates}, {"fi_drivers", s.features.fi_drivers}, {"tdi_s", s.score}};
}

ojson width_map(const std::map<int, std::size_t>& m) {
    ojson j = ojson::object();
    for (const auto& [w, n] : m) j[std::to_string(w)] = n;
    return j;
}

} // namespace

std::string to_json(const MetricsReport& r) {
    ojson j;
    j["format"] = "redax-metrics/1";
    j["similarity_proxy"] = "0.5*signature-share + 0.5*feature-share(+-5%), symmetrized";
    j["inventory"] = {{"clut", width_map(r.inventory.clut)},
                      {"csb", width_map(r.inventory.csb)},
                      {"cpi", width_map(r.inventory.cpi)},
                      {"bits", r.inventory.bits}};
    ojson hist = ojson::object();
    for (const auto& [w, h] : r.histograms) {
        ojson freq = ojson::object();
        for (const auto& [f, n] : h.frequency) freq[f] = n;
        hist[std::to_string(w)] = {{"total", h.total}, {"unique", h.unique()}, {"cumulative", h.cumulative()}, {"functions", freq}};
    }
    j["clut_functions"] = hist;
    ojson orig = ojson::array(), red = ojson::array();
    for (const auto& s : r.original_tdi) orig.push_back(features_json(s));
    for (const auto& s : r.redacted_tdi) red.push_back(features_json(s));
    j["tdi_s_original"] = orig;
    j["tdi_s_redacted"] = red;
    if (r.complexity) {
        const ComplexityReport& c = *r.complexity;
        ojson el = ojson::array();
        for (const auto& e : c.elements)
            el.push_back({{"id", e.id}, {"width", e.width}, {"d", e.dummies}, {"growth_2^d", e.growth.str()},
                          {"variations_2s!", e.variations.str()}});
        j["complexity"] = {{"elements", el},
                           {"n_o", c.n_o},
                           {"n_r", c.n_r},
                           {"log2_C(n_r,n_o)", c.log2_cut_point_choices},
                           {"rho", "unmodeled"},
                           {"p", c.p},
                           {"r", c.r},
                           {"C(p,r)", c.cpi_configurations.str()}};
    }
    if (r.overhead) j["gate_overhead"] = *r.overhead;
    return j.dump(2) + "\n";
}

std::string tdi_csv(const MetricsReport& r) {
    std::ostringstream o;
    o.imbue(std::locale::classic());
    o << "cut_point,fi_size,fo_size,fi_gates,fi_drivers,tdi_s_redacted,tdi_s_original\n";
    std::map<std::string, double> orig;
    for (const auto& s : r.original_tdi) orig[s.key] = s.score;
    for (const auto& s : r.redacted_tdi) {
        o << s.key << ',' << s.features.fi_size() << ',' << s.features.fo_size << ',' << s.features.fi_gates << ','
          << s.features.fi_drivers << ',' << s.score << ',';
        if (auto it = orig.find(s.key); it != orig.end()) o << it->second;
        o << '\n';
    }
    return o.str();
}

std::string to_json(const TdiReport& r) {
    ojson j;
    ojson samples = ojson::array();
    for (const auto& s : r.samples) samples.push_back({{"cut_point", s.cut_point}, {"original", s.original}, {"variants", s.variants}});
    j["samples"] = samples;
    j["matches"] = r.matches;
    return j.dump(2) + "\n";
}

std::string matrix_csv(const std::vector<std::string>& names, const std::vector<std::vector<double>>& m) {
    std::ostringstream o;
    o.imbue(std::locale::classic());
    o << std::fixed << std::setprecision(6) << "design";
    for (const auto& n : names) o << ',' << n;
    o << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        o << names.at(i);
        for (double v : m[i]) o << ',' << v;
        o << '\n';
    }
    return o.str();
}

} // namespace redax
