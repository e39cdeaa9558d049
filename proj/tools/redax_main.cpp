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

// redax command-line driver.
//
// Exit codes: 0 ok, 1 usage or bad input, 2 verification mismatch, 3 internal error.
// Every failure prints one line `error: <stage>: <message>` on stderr.

#include "redax/bitstream.hpp"
#include "redax/errors.hpp"
#include "redax/fabric.hpp"
#include "redax/graph_algo.hpp"
#include "redax/metrics.hpp"
#include "redax/netlist.hpp"
#include "redax/netlist_io.hpp"
#include "redax/redact.hpp"
#include "redax/sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace redax;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitInternal = 3;

/// Name of the stage currently running, for the error line.
std::string g_stage = "cli";

Hypergraph load_netlist(const std::string& path) {
    g_stage = "read";
    const std::string text = read_text_file(path);
    g_stage = "parse";
    return parse_netlist(text, format_for_path(path));
}

Bitstream load_bitstream(const std::string& path) {
    g_stage = "read";
    const std::string text = read_text_file(path);
    g_stage = "bitstream";
    return parse_bitstream(text);
}

void save_netlist(const std::string& path, const Hypergraph& g) {
    g_stage = "write";
    write_text_file(path, serialize_netlist(g, format_for_path(path)));
}

void save_bitstream(const std::string& path, const Bitstream& b) {
    g_stage = "write";
    write_text_file(path, serialize_bitstream(b, bitstream_format_for_path(path)));
}

void save_or_print(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        g_stage = "write";
        write_text_file(path, text);
    }
}

struct ParamOptions {
    std::string file;
    std::vector<std::string> sets;
    bool baseline = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--params", file, "parameter file (key = value lines)");
        cmd->add_option("--set", sets, "override one parameter, key=value (repeatable; wins over --params)");
        cmd->add_flag("--baseline", baseline, "disable every randomizing transformation (randomize = false)");
    }

    RedactionParams resolve() const {
        g_stage = "params";
        RedactionParams p;
        if (!file.empty()) p = RedactionParams::parse(read_text_file(file));
        for (const std::string& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ParseError("--set expects key=value, got '" + kv + "'");
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            p.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
        }
        if (baseline) p.randomize = false;
        p.validate();
        return p;
    }
};

std::string redaction_report(const RedactedDesign& d, const Bitstream& b, std::uint32_t seed, const RedactionParams& p) {
    using ojson = nlohmann::ordered_json;
    ojson j;
    j["seed"] = seed;
    j["params"] = p.to_text();
    j["elements"] = {{"clut", d.count(ElementKind::Clut)}, {"csb", d.count(ElementKind::Csb)}, {"cpi", d.count(ElementKind::Cpi)}};
    j["bitstream_bits"] = b.total_bits();
    j["cut_points"] = {{"n_o", d.n_o}, {"n_a", d.n_a}, {"n_b", d.n_b}, {"n_r", d.cut_points()}};
    std::size_t violations = 0;
    for (const auto& r : d.eq2) violations += r.holds() ? 0 : 1;
    j["width_audit"] = {{"cones", d.eq2.size()}, {"violations", violations}};
    const ComplexityReport c = complexity_estimates(d);
    j["log2_C(n_r,n_o)"] = c.log2_cut_point_choices;
    j["cpi"] = {{"p", c.p}, {"r", c.r}, {"C(p,r)", c.cpi_configurations.str()}};
    return j.dump(2) + "\n";
}

int cmd_redact(const std::string& in, const std::string& out, const std::string& bits_path, std::uint32_t seed,
               const ParamOptions& po, const std::string& report) {
    const RedactionParams p = po.resolve();
    const Hypergraph g = load_netlist(in);
    g_stage = "redact";
    const RedactedDesign d = redact_design(g, seed, p);
    g_stage = "bitstream";
    const Bitstream b = generate_bitstream(d);
    save_netlist(out, d.graph);
    save_bitstream(bits_path, b);
    if (!report.empty()) save_or_print(report, redaction_report(d, b, seed, p));
    std::cerr << "redacted " << in << ": " << d.count(ElementKind::Clut) << " CLUT, " << d.count(ElementKind::Csb)
              << " CSB, " << d.count(ElementKind::Cpi) << " CPI, " << b.total_bits() << " bits\n";
    return kExitOk;
}

int cmd_program(const std::string& in, const std::string& bits_path, const std::string& out) {
    const Hypergraph g = load_netlist(in);
    const Bitstream b = load_bitstream(bits_path);
    g_stage = "program";
    save_netlist(out, program(g, b));
    return kExitOk;
}

void print_counterexample(const Counterexample& cx) {
    std::cout << "counterexample: output " << cx.output << " expected " << cx.expected << " got " << cx.actual
              << " at cycle " << cx.cycle << "\n";
    for (std::size_t c = 0; c < cx.trace.size(); ++c) {
        std::cout << "  cycle " << c << ":";
        for (std::size_t i = 0; i < cx.input_names.size(); ++i) std::cout << ' ' << cx.input_names[i] << '=' << cx.trace[c][i];
        std::cout << "\n";
    }
}

int cmd_verify(const std::string& a_path, const std::string& r_path, const std::string& bits_path, bool exhaustive,
               std::uint64_t vectors, std::uint64_t cycles, std::uint32_t seed) {
    const Hypergraph a = load_netlist(a_path);
    Hypergraph r = load_netlist(r_path);
    if (!bits_path.empty()) {
        const Bitstream b = load_bitstream(bits_path);
        g_stage = "program";
        r = program(r, b);
    }
    g_stage = "verify";
    // Dummy registers of a redacted combinational design are covered by the exhaustive
    // check, which enumerates their states.
    const bool sequential = !a.registers().empty();
    EquivResult res;
    std::string mode;
    if (exhaustive) {
        res = exhaustive_equiv(a, r);
        mode = "exhaustive";
    } else if (vectors > 0) {
        res = random_miter_equiv(a, r, vectors, seed);
        mode = "random";
    } else if (cycles > 0 || sequential) {
        res = seq_cosim_equiv(a, r, cycles > 0 ? cycles : 10000, seed);
        mode = "co-simulation";
    } else if (a.pis().size() + r.registers().size() <= 20) {
        res = exhaustive_equiv(a, r);
        mode = "exhaustive";
    } else {
        res = random_miter_equiv(a, r, 1u << 16, seed);
        mode = "random";
    }
    if (res.equivalent) {
        std::cout << "equivalent (" << mode << ", " << res.vectors << " vectors)\n";
        return kExitOk;
    }
    std::cout << "MISMATCH (" << mode << ")\n";
    print_counterexample(*res.counterexample);
    return kExitMismatch;
}

TdiWeights parse_weights(const std::string& text) {
    g_stage = "params";
    TdiWeights w;
    if (text.empty()) return w;
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("bad weight '" + tok + "'");
        }
    }
    if (v.size() != 4) throw ParseError("--weights expects four comma-separated values");
    w = {v[0], v[1], v[2], v[3]};
    w.validate();
    return w;
}

int cmd_metrics(const std::string& orig_path, const std::string& red_path, const std::string& bits_path,
                const std::string& json_out, const std::string& csv_out, const std::string& weights) {
    const TdiWeights w = parse_weights(weights);
    const Hypergraph original = load_netlist(orig_path);
    const Hypergraph redacted = load_netlist(red_path);
    const Bitstream b = load_bitstream(bits_path);
    g_stage = "metrics";
    const Hypergraph expanded = expand_design(redacted);
    MetricsReport rep;
    rep.inventory = fabric_inventory(redacted, &b);
    rep.histograms = clut_function_distribution({b});
    rep.original_tdi = score_cut_points(expand_design(original), w);
    rep.redacted_tdi = score_cut_points(expanded, w);
    rep.complexity = complexity_from_netlists(original, redacted, b);
    rep.overhead = gate_overhead(original, expanded);
    save_or_print(json_out.empty() ? "-" : json_out, to_json(rep));
    if (!csv_out.empty()) save_or_print(csv_out, tdi_csv(rep));
    return kExitOk;
}

int cmd_compare(const std::string& orig_path, const std::vector<std::string>& variant_paths,
                const std::vector<std::string>& bits_paths, std::size_t samples, double tolerance,
                std::uint64_t vectors, std::uint32_t seed, const std::string& weights, const std::string& tdi_out,
                const std::string& matrix_out, const std::string& hist_out) {
    const TdiWeights w = parse_weights(weights);
    const Hypergraph original = load_netlist(orig_path);
    std::vector<Hypergraph> variants;
    std::vector<std::string> names;
    for (const auto& p : variant_paths) {
        const Hypergraph v = load_netlist(p);
        g_stage = "expand";
        variants.push_back(expand_design(v));
        names.push_back(fs::path(p).stem().string());
    }
    g_stage = "compare";
    const TdiReport tdi = tdi_s_reports(expand_design(original), variants, samples, w, tolerance);
    SimilarityOptions opt;
    opt.n_vectors = vectors;
    opt.seed = seed;
    const auto m = similarity_matrix(variants, opt);
    save_or_print(tdi_out.empty() ? "-" : tdi_out, to_json(tdi));
    save_or_print(matrix_out.empty() ? "-" : matrix_out, matrix_csv(names, m));
    if (!bits_paths.empty()) {
        std::vector<Bitstream> bs;
        for (const auto& p : bits_paths) bs.push_back(load_bitstream(p));
        g_stage = "compare";
        MetricsReport rep;
        rep.histograms = clut_function_distribution(bs);
        std::ostringstream o;
        o << "width,function,frequency\n";
        for (const auto& [width, h] : rep.histograms)
            for (const auto& [f, n] : h.frequency) o << width << ',' << f << ',' << n << '\n';
        save_or_print(hist_out.empty() ? "-" : hist_out, o.str());
    }
    return kExitOk;
}

std::vector<std::uint32_t> parse_seeds(const std::string& text) {
    g_stage = "params";
    std::vector<std::uint32_t> out;
    auto num = [&](const std::string& s) -> std::uint32_t {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(s, &used);
            if (used != s.size() || v > 0xFFFFFFFFull) throw std::out_of_range(s);
            return static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
            throw ParseError("bad seed '" + s + "'");
        }
    };
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (const auto dots = tok.find(".."); dots != std::string::npos) {
            const std::uint32_t lo = num(tok.substr(0, dots)), hi = num(tok.substr(dots + 2));
            if (hi < lo || hi - lo > 100000) throw ParseError("bad seed range '" + tok + "'");
            for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(static_cast<std::uint32_t>(s));
        } else {
            out.push_back(num(tok));
        }
    }
    if (out.empty()) throw ParseError("no seeds given");
    return out;
}

int cmd_gen_variants(const std::string& in, const std::string& seeds_text, const std::string& out_dir,
                     const ParamOptions& po, const std::string& ext) {
    const RedactionParams p = po.resolve();
    const auto seeds = parse_seeds(seeds_text);
    const Hypergraph g = load_netlist(in);
    g_stage = "write";
    fs::create_directories(out_dir);
    const std::string stem = fs::path(in).stem().string();
    const std::string net_ext = ext.empty() ? fs::path(in).extension().string() : "." + ext;
    // Variants are independent; each writes its own files.
    std::vector<std::string> lines(seeds.size());
    std::vector<std::string> errors(seeds.size());
    const auto n = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            const RedactedDesign d = redact_design(g, seeds[i], p);
            const Bitstream b = generate_bitstream(d);
            const fs::path base = fs::path(out_dir) / (stem + "-s" + std::to_string(seeds[i]));
            const std::string net = base.string() + net_ext, bits = base.string() + ".bits";
            write_text_file(net, serialize_netlist(d.graph, format_for_path(net)));
            write_text_file(bits, serialize_bitstream(b, BitstreamFormat::Text));
            std::ostringstream o;
            o << net << ' ' << bits << ' ' << b.total_bits() << '\n';
            lines[i] = o.str();
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (!errors[i].empty()) {
            g_stage = "redact";
            throw Error("seed " + std::to_string(seeds[i]) + ": " + errors[i]);
        }
        std::cout << lines[i];
    }
    return kExitOk;
}

int cmd_info(const std::string& in, const std::string& bits_path) {
    const Hypergraph g = load_netlist(in);
    Bitstream b;
    if (!bits_path.empty()) b = load_bitstream(bits_path);
    g_stage = "info";
    const FabricInventory inv = fabric_inventory(g, bits_path.empty() ? nullptr : &b);
    // CLUT columns count every configurable table, including the one inside each CSB.
    std::map<int, std::size_t> tables = inv.clut;
    for (const auto& [w, n] : inv.csb) tables[w] += n;
    std::cout << "design " << g.model() << ": " << g.pis().size() << " PI, " << g.pos().size() << " PO, "
              << g.registers().size() << " registers\n";
    std::cout << "width";
    for (int w = 1; w <= kMaxTableWidth; ++w) std::cout << std::setw(7) << ("CL" + std::to_string(w));
    std::cout << std::setw(7) << "CSB" << std::setw(7) << "CPI" << std::setw(10) << "bits" << "\n";
    std::cout << "count";
    for (int w = 1; w <= kMaxTableWidth; ++w) std::cout << std::setw(7) << (tables.count(w) ? tables.at(w) : 0);
    std::size_t csb = 0, cpi = 0;
    for (const auto& [_, n] : inv.csb) csb += n;
    for (const auto& [_, n] : inv.cpi) cpi += n;
    std::cout << std::setw(7) << csb << std::setw(7) << cpi << std::setw(10) << inv.bits << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"redax: fine-grain hardware redaction with randomized configurable fabric"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "redax 1.0.0");

    std::string in, out, bits, report, a_path, r_path, json_out, csv_out, weights, out_dir, seeds, ext;
    std::string tdi_out, matrix_out, hist_out;
    std::uint32_t seed = 1;
    ParamOptions po;

    auto* redact = app.add_subcommand("redact", "redact a netlist and emit the redacted netlist and its bitstream");
    redact->add_option("-i,--input", in, "input netlist (.blif or .json)")->required()->check(CLI::ExistingFile);
    redact->add_option("-o,--output", out, "redacted netlist")->required();
    redact->add_option("-b,--bits", bits, "bitstream (.bits text, .bitsbin packed)")->required();
    redact->add_option("--seed", seed, "32-bit redaction seed");
    redact->add_option("--report", report, "JSON summary of counters and audits ('-' for stdout)");
    po.attach(redact);

    auto* prog = app.add_subcommand("program", "load a bitstream into a redacted netlist");
    prog->add_option("-i,--input", in, "redacted netlist")->required()->check(CLI::ExistingFile);
    prog->add_option("-b,--bits", bits, "bitstream")->required()->check(CLI::ExistingFile);
    prog->add_option("-o,--output", out, "resolved netlist")->required();

    bool exhaustive = false;
    std::uint64_t vectors = 0, cycles = 0;
    auto* verify = app.add_subcommand("verify", "check a redacted design against the original");
    verify->add_option("-a,--original", a_path, "original netlist")->required()->check(CLI::ExistingFile);
    verify->add_option("-r,--redacted", r_path, "redacted netlist")->required()->check(CLI::ExistingFile);
    verify->add_option("-b,--bits", bits, "bitstream (omit when the design has no fabric)")->check(CLI::ExistingFile);
    auto* ex = verify->add_flag("--exhaustive", exhaustive, "all input vectors (combinational only)");
    auto* vec = verify->add_option("--vectors", vectors, "random combinational vectors");
    auto* cyc = verify->add_option("--cycles", cycles, "random co-simulation cycles");
    ex->excludes(vec)->excludes(cyc);
    vec->excludes(cyc);
    verify->add_option("--seed", seed, "stimulus seed");

    auto* metrics = app.add_subcommand("metrics", "structural and functional report of one redacted design");
    metrics->add_option("-i,--original", a_path, "original netlist")->required()->check(CLI::ExistingFile);
    metrics->add_option("-r,--redacted", r_path, "redacted netlist")->required()->check(CLI::ExistingFile);
    metrics->add_option("-b,--bits", bits, "bitstream")->required()->check(CLI::ExistingFile);
    metrics->add_option("--json", json_out, "JSON report (default stdout)");
    metrics->add_option("--csv", csv_out, "per-cut-point TDI_S table");
    metrics->add_option("--weights", weights, "w1,w2,w3,w4 (default 1,1,1,1)");

    std::vector<std::string> variant_paths, bits_paths;
    std::size_t samples = 10;
    double tolerance = 0.0;
    std::uint64_t sim_vectors = 256;
    auto* compare = app.add_subcommand("compare", "TDI_S sample report and similarity matrix over variants");
    compare->add_option("-o,--original", a_path, "original netlist")->required()->check(CLI::ExistingFile);
    compare->add_option("variants", variant_paths, "redacted variant netlists")->required()->expected(2, -1)->check(CLI::ExistingFile);
    compare->add_option("--bits", bits_paths, "bitstreams for the programmed-function histogram")->check(CLI::ExistingFile);
    compare->add_option("--samples", samples, "sampled cut-points");
    compare->add_option("--tolerance", tolerance, "relative TDI_S match tolerance (0 = exact)");
    compare->add_option("--vectors", sim_vectors, "simulation vectors for the similarity signatures");
    compare->add_option("--seed", seed, "stimulus seed");
    compare->add_option("--weights", weights, "w1,w2,w3,w4");
    compare->add_option("--tdi-json", tdi_out, "TDI_S report (default stdout)");
    compare->add_option("--matrix", matrix_out, "similarity CSV (default stdout)");
    compare->add_option("--histogram", hist_out, "function histogram CSV (default stdout)");

    auto* gen = app.add_subcommand("gen-variants", "one redacted variant per seed");
    gen->add_option("-i,--input", in, "input netlist")->required()->check(CLI::ExistingFile);
    gen->add_option("--seeds", seeds, "comma-separated seeds or ranges, e.g. 1..5,9")->required();
    gen->add_option("--out-dir", out_dir, "output directory")->required();
    gen->add_option("--format", ext, "netlist format of the variants (blif or json; default: input's)")
        ->check(CLI::IsMember({"blif", "json"}));
    po.attach(gen);

    auto* info = app.add_subcommand("info", "fabric inventory of a redacted netlist");
    info->add_option("-i,--input", in, "redacted netlist")->required()->check(CLI::ExistingFile);
    info->add_option("-b,--bits", bits, "bitstream (for the exact bit count)")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*redact) return cmd_redact(in, out, bits, seed, po, report);
        if (*prog) return cmd_program(in, bits, out);
        if (*verify) return cmd_verify(a_path, r_path, bits, exhaustive, vectors, cycles, seed);
        if (*metrics) return cmd_metrics(a_path, r_path, bits, json_out, csv_out, weights);
        if (*compare)
            return cmd_compare(a_path, variant_paths, bits_paths, samples, tolerance, sim_vectors, seed, weights,
                               tdi_out, matrix_out, hist_out);
        if (*gen) return cmd_gen_variants(in, seeds, out_dir, po, ext);
        if (*info) return cmd_info(in, bits);
    } catch (const redax::Error& e) {
        std::cerr << "error: " << g_stage << ": " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << g_stage << ": internal: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
