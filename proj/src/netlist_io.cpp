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

#include "redax/netlist_io.hpp"

#include "redax/errors.hpp"
#include "redax/graph_algo.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace redax {

namespace {

// ---------------------------------------------------------------------------------------------
// BLIF reader

struct Token {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

using Line = std::vector<Token>;

/// Splits into logical lines (comments stripped, '\' continuations joined).
std::vector<Line> tokenize_blif(std::string_view text) {
    std::vector<Line> lines;
    Line current;
    std::size_t line_no = 1;
    std::size_t pos = 0;
    bool continued = false;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, end - pos);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        bool cont = false;
        {
            auto last = raw.find_last_not_of(" \t");
            if (last != std::string_view::npos && raw[last] == '\\') {
                cont = true;
                raw = raw.substr(0, last);
            }
        }
        if (!continued && !current.empty()) {
            lines.push_back(std::move(current));
            current.clear();
        }
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
            if (i >= raw.size()) break;
            const std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
            current.push_back({std::string(raw.substr(start, i - start)), line_no, start + 1});
        }
        continued = cont;
        ++line_no;
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (!current.empty()) lines.push_back(std::move(current));
    return lines;
}

[[noreturn]] void syntax(const Token& t, const std::string& what) { throw ParseError(what, t.line, t.column); }

struct Definition {
    VertexKind kind = VertexKind::Table;
    std::vector<Token> inputs;
    Token output;
    Token second_output; // CSB registered output
    std::optional<TruthTable> function;
    std::int32_t element = -1;
    std::int32_t cfg_bit = -1;
};

TruthTable cover_to_table(int width, const std::vector<std::pair<Token, Token>>& rows, const Token& where) {
    if (rows.empty()) return TruthTable::constant(width, false);
    const char polarity = rows.front().second.text[0];
    std::uint64_t on = 0;
    for (const auto& [pattern, out] : rows) {
        if (out.text.size() != 1 || (out.text[0] != '0' && out.text[0] != '1'))
            syntax(out, "output literal must be 0 or 1");
        if (out.text[0] != polarity) syntax(out, "mixed on-set/off-set rows in one .names table");
        if (static_cast<int>(pattern.text.size()) != width)
            syntax(pattern, "row pattern has " + std::to_string(pattern.text.size()) + " literals, expected " +
                                std::to_string(width));
        for (std::size_t k = 0; k < (std::size_t{1} << width); ++k) {
            bool match = true;
            for (int j = 0; j < width && match; ++j) {
                const char c = pattern.text[j];
                const bool bit = (k >> j) & 1u;
                if (c == '-') continue;
                if (c != '0' && c != '1') syntax(pattern, std::string("bad literal '") + c + "' in row pattern");
                match = (c == '1') == bit;
            }
            if (match) on |= std::uint64_t{1} << k;
        }
    }
    (void)where;
    TruthTable t(width, on);
    return polarity == '1' ? t : t.inverted();
}

std::int32_t parse_int(const Token& t, std::string_view text) {
    std::int32_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || v < 0) syntax(t, "expected a non-negative integer");
    return v;
}

Definition parse_subckt(const Line& line) {
    if (line.size() < 2) syntax(line[0], ".subckt needs a cell name");
    const Token& cell = line[1];
    Definition d;
    std::string base = cell.text;
    int width = -1;
    if (base != "CFG") {
        auto digits = base.find_first_of("0123456789");
        if (digits == std::string::npos) syntax(cell, "unknown cell '" + base + "'");
        width = parse_int(cell, std::string_view(base).substr(digits));
        base = base.substr(0, digits);
    }
    if (base == "CLUT")
        d.kind = VertexKind::Clut;
    else if (base == "CSB")
        d.kind = VertexKind::Csb;
    else if (base == "CPI")
        d.kind = VertexKind::Cpi;
    else if (base == "CFG")
        d.kind = VertexKind::Cfg;
    else
        syntax(cell, "unknown cell '" + cell.text + "'");

    std::map<int, Token> inputs;
    bool have_out = false, have_q = false;
    for (std::size_t i = 2; i < line.size(); ++i) {
        const Token& t = line[i];
        const auto eq = t.text.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == t.text.size()) syntax(t, "expected PIN=net");
        const std::string pin = t.text.substr(0, eq);
        Token net{t.text.substr(eq + 1), t.line, t.column + eq + 1};
        if (pin == "ID") {
            d.element = parse_int(t, net.text);
        } else if (pin == "B") {
            d.cfg_bit = parse_int(t, net.text);
        } else if (pin == "V") {
            if (net.text != "0" && net.text != "1") syntax(t, "config value must be 0 or 1");
            d.function = TruthTable(0, net.text == "1" ? 1 : 0);
        } else if (pin == "O") {
            d.output = net;
            have_out = true;
        } else if (pin == "Q") {
            d.second_output = net;
            have_q = true;
        } else if (pin.size() > 1 && pin[0] == 'I') {
            const int k = parse_int(t, std::string_view(pin).substr(1));
            if (!inputs.emplace(k, net).second) syntax(t, "duplicate pin " + pin);
        } else {
            syntax(t, "unknown pin '" + pin + "'");
        }
    }
    if (!have_out) syntax(cell, "cell has no O= pin");
    if (d.element < 0) syntax(cell, "cell has no ID= pin");
    if (d.kind == VertexKind::Csb && !have_q) syntax(cell, "CSB cell has no Q= pin");
    if (d.kind != VertexKind::Csb && have_q) syntax(cell, "only CSB cells have a Q= pin");
    if (d.kind == VertexKind::Cfg) {
        if (!inputs.empty()) syntax(cell, "CFG cells take no inputs");
        if (d.cfg_bit < 0) syntax(cell, "CFG cell has no B= pin");
        return d;
    }
    if (static_cast<int>(inputs.size()) != width) syntax(cell, "cell width does not match its input pins");
    int expect = 0;
    for (auto& [k, net] : inputs) {
        if (k != expect++) syntax(net, "input pins must be I0..I" + std::to_string(width - 1));
        d.inputs.push_back(net);
    }
    if ((d.kind == VertexKind::Clut || d.kind == VertexKind::Csb) && width > kMaxTableWidth)
        syntax(cell, "unsupported arity " + std::to_string(width) + " (> 6)");
    return d;
}

Hypergraph parse_blif(std::string_view text) {
    const auto lines = tokenize_blif(text);
    std::string model = "top";
    std::vector<Token> inputs, outputs;
    std::vector<Definition> defs;
    bool ended = false;

    for (std::size_t li = 0; li < lines.size() && !ended; ++li) {
        const Line& line = lines[li];
        const Token& cmd = line[0];
        if (cmd.text == ".model") {
            if (line.size() >= 2) model = line[1].text;
        } else if (cmd.text == ".inputs") {
            inputs.insert(inputs.end(), line.begin() + 1, line.end());
        } else if (cmd.text == ".outputs") {
            outputs.insert(outputs.end(), line.begin() + 1, line.end());
        } else if (cmd.text == ".names") {
            if (line.size() < 2) syntax(cmd, ".names needs an output net");
            Definition d;
            d.inputs.assign(line.begin() + 1, line.end() - 1);
            d.output = line.back();
            const int width = static_cast<int>(d.inputs.size());
            if (width > kMaxTableWidth)
                syntax(cmd, "unsupported arity " + std::to_string(width) + " (> 6) in .names table");
            std::vector<std::pair<Token, Token>> rows;
            while (li + 1 < lines.size() && lines[li + 1][0].text[0] != '.') {
                const Line& row = lines[++li];
                if (width == 0) {
                    if (row.size() != 1) syntax(row[0], "constant table rows hold a single literal");
                    rows.emplace_back(Token{"", row[0].line, row[0].column}, row[0]);
                } else {
                    if (row.size() != 2) syntax(row[0], "table rows are '<pattern> <output>'");
                    rows.emplace_back(row[0], row[1]);
                }
            }
            TruthTable t = cover_to_table(width, rows, cmd);
            if (width == 0)
                d.kind = t.row(0) ? VertexKind::Const1 : VertexKind::Const0;
            else
                d.function = t;
            defs.push_back(std::move(d));
        } else if (cmd.text == ".latch") {
            if (line.size() != 3 && line.size() != 4 && line.size() != 5 && line.size() != 6)
                syntax(cmd, ".latch expects: input output [type control] [init]");
            Definition d;
            d.kind = VertexKind::Dff;
            d.inputs = {line[1]};
            d.output = line[2];
            if (line.size() == 4 || line.size() == 6) {
                const Token& init = line.back();
                if (init.text == "1") syntax(init, "latch initial value 1 is unsupported (registers reset to 0)");
                if (init.text != "0" && init.text != "2" && init.text != "3") syntax(init, "bad latch initial value");
            }
            defs.push_back(std::move(d));
        } else if (cmd.text == ".subckt") {
            defs.push_back(parse_subckt(line));
        } else if (cmd.text == ".end") {
            ended = true;
        } else if (cmd.text[0] == '.') {
            syntax(cmd, "unsupported command '" + cmd.text + "'");
        } else {
            syntax(cmd, "table row outside a .names block");
        }
    }

    Hypergraph g(model);
    std::map<std::string, std::size_t> def_line;
    auto declare = [&](const Token& t, VertexKind kind) -> VertexId {
        if (g.find_signal(t.text))
            throw GraphError("net '" + t.text + "' is multiply driven (line " + std::to_string(t.line) + ")");
        return g.add_vertex(kind, t.text);
    };
    for (const Token& t : inputs) declare(t, VertexKind::Pi);
    std::vector<VertexId> po_ids;
    for (const Token& t : outputs) {
        if (g.find_output(t.text)) syntax(t, "output '" + t.text + "' listed twice");
        po_ids.push_back(g.add_vertex(VertexKind::Po, t.text));
    }
    std::vector<VertexId> def_ids;
    for (const Definition& d : defs) {
        const VertexId v = declare(d.output, d.kind);
        def_ids.push_back(v);
        g.set_function(v, d.function);
        g.set_element(v, d.element);
        g.set_cfg_bit(v, d.cfg_bit);
        if (d.kind == VertexKind::Csb) {
            const VertexId q = declare(d.second_output, VertexKind::CsbReg);
            g.set_element(q, d.element);
        }
    }
    auto resolve = [&](const Token& t) -> VertexId {
        auto v = g.find_signal(t.text);
        if (!v) throw GraphError("net '" + t.text + "' is undriven (line " + std::to_string(t.line) + ")");
        return *v;
    };
    for (std::size_t i = 0; i < outputs.size(); ++i) g.set_fanins(po_ids[i], {resolve(outputs[i])});
    for (std::size_t i = 0; i < defs.size(); ++i) {
        std::vector<VertexId> fanins;
        for (const Token& t : defs[i].inputs) fanins.push_back(resolve(t));
        g.set_fanins(def_ids[i], std::move(fanins));
        if (defs[i].kind == VertexKind::Csb) g.set_fanins(*g.find_signal(defs[i].second_output.text), {def_ids[i]});
    }
    g.validate();
    return g;
}

// ---------------------------------------------------------------------------------------------
// JSON reader

Hypergraph parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("JSON syntax error", line, col);
    }
    try {
        if (!doc.is_object() || !doc.contains("vertices")) throw ParseError("JSON netlist needs a \"vertices\" array");
        const auto& verts = doc.at("vertices");
        std::vector<const nlohmann::json*> by_id(verts.size(), nullptr);
        for (const auto& jv : verts) {
            const auto id = jv.at("id").get<long long>();
            if (id < 0 || static_cast<std::size_t>(id) >= verts.size() || by_id[id])
                throw ParseError("vertex ids must be unique and dense from 0");
            by_id[id] = &jv;
        }
        Hypergraph g(doc.value("model", std::string("top")));
        for (const auto* jv : by_id) {
            const auto kind_text = jv->at("kind").get<std::string>();
            const auto kind = kind_from_name(kind_text);
            if (!kind) throw ParseError("unknown vertex kind '" + kind_text + "'");
            const auto name = jv->at("name").get<std::string>();
            bool dup = *kind == VertexKind::Po ? g.find_output(name).has_value() : g.find_signal(name).has_value();
            if (dup) throw GraphError("net '" + name + "' is multiply driven");
            const VertexId v = g.add_vertex(*kind, name);
            if (jv->contains("bits")) {
                const auto bits = jv->at("bits").get<std::string>();
                if (bits.size() > (std::size_t{1} << kMaxTableWidth))
                    throw ParseError("unsupported arity: table '" + name + "' wider than 6 inputs");
                g.set_function(v, TruthTable::from_string(bits));
            }
            if (*kind == VertexKind::Table && !jv->contains("bits")) throw ParseError("TABLE '" + name + "' has no bits");
            if (jv->contains("element")) g.set_element(v, jv->at("element").get<std::int32_t>());
            if (jv->contains("bit")) g.set_cfg_bit(v, jv->at("bit").get<std::int32_t>());
            if (jv->contains("value")) g.set_function(v, TruthTable(0, jv->at("value").get<int>() ? 1 : 0));
            if (is_fabric(*kind) && *kind != VertexKind::Cfg && g.vertex(v).element < 0)
                throw ParseError("fabric cell '" + name + "' has no element id");
        }
        for (const auto* jv : by_id) {
            const auto id = jv->at("id").get<VertexId>();
            std::vector<VertexId> fanins;
            for (const auto& f : jv->at("fanins")) {
                const auto fid = f.get<long long>();
                if (fid < 0 || static_cast<std::size_t>(fid) >= by_id.size())
                    throw GraphError("'" + g.vertex(id).name + "' has an undriven fanin " + std::to_string(fid));
                fanins.push_back(static_cast<VertexId>(fid));
            }
            if (g.vertex(id).kind == VertexKind::Table && g.vertex(id).function &&
                g.vertex(id).function->width() != static_cast<int>(fanins.size()))
                throw ParseError("TABLE '" + g.vertex(id).name + "' bits do not match its fanin count");
            g.set_fanins(id, std::move(fanins));
        }
        auto check_list = [&](const char* key, VertexKind kind) {
            if (!doc.contains(key)) return;
            std::vector<VertexId> listed;
            for (const auto& x : doc.at(key)) listed.push_back(x.get<VertexId>());
            std::sort(listed.begin(), listed.end());
            if (listed != g.ids_of(kind)) throw ParseError(std::string("\"") + key + "\" does not match the port vertices");
        };
        check_list("inputs", VertexKind::Pi);
        check_list("outputs", VertexKind::Po);
        g.validate();
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON netlist: ") + e.what());
    }
}

// ---------------------------------------------------------------------------------------------
// Writers

void write_cover(std::ostringstream& out, const Hypergraph& g, const Vertex& v) {
    out << ".names";
    for (VertexId f : v.fanins) out << ' ' << g.vertex(f).name;
    out << ' ' << v.name << '\n';
    if (v.kind == VertexKind::Const1) {
        out << "1\n";
        return;
    }
    if (v.kind == VertexKind::Const0) return;
    const TruthTable t = builtin_function(v);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (!t.row(k)) continue;
        for (int j = 0; j < t.width(); ++j) out << (((k >> j) & 1u) ? '1' : '0');
        out << " 1\n";
    }
}

void write_cell(std::ostringstream& out, const Hypergraph& g, const Vertex& v) {
    const std::size_t width = v.fanins.size();
    out << ".subckt ";
    if (v.kind == VertexKind::Cfg) {
        out << "CFG ID=" << v.element << " B=" << v.cfg_bit;
        if (v.function) out << " V=" << (v.function->row(0) ? 1 : 0);
        out << " O=" << v.name << '\n';
        return;
    }
    out << kind_name(v.kind) << width << " ID=" << v.element;
    for (std::size_t k = 0; k < width; ++k) out << " I" << k << '=' << g.vertex(v.fanins[k]).name;
    out << " O=" << v.name;
    if (v.kind == VertexKind::Csb) {
        for (VertexId c : g.fanouts(v.id))
            if (g.vertex(c).kind == VertexKind::CsbReg) out << " Q=" << g.vertex(c).name;
    }
    out << '\n';
}

std::string write_blif(const Hypergraph& g) {
    std::ostringstream out;
    out << ".model " << g.model() << '\n';
    out << ".inputs";
    for (VertexId v : g.pis()) out << ' ' << g.vertex(v).name;
    out << "\n.outputs";
    for (VertexId v : g.pos()) out << ' ' << g.vertex(v).name;
    out << '\n';
    for (const Vertex& v : g.vertices()) {
        if (!v.alive) continue;
        switch (v.kind) {
        case VertexKind::Pi:
        case VertexKind::Po:
        case VertexKind::CsbReg: break;
        case VertexKind::Dff: out << ".latch " << g.vertex(v.fanins[0]).name << ' ' << v.name << " 0\n"; break;
        case VertexKind::Clut:
        case VertexKind::Csb:
        case VertexKind::Cpi:
        case VertexKind::Cfg: write_cell(out, g, v); break;
        default: write_cover(out, g, v); break;
        }
    }
    for (VertexId po : g.pos()) {
        const Vertex& p = g.vertex(po);
        const Vertex& d = g.vertex(p.fanins[0]);
        if (d.name != p.name) out << ".names " << d.name << ' ' << p.name << "\n1 1\n";
    }
    out << ".end\n";
    return out.str();
}

std::string write_json(const Hypergraph& g) {
    using ojson = nlohmann::ordered_json;
    std::ostringstream out;
    out << "{\n\"vertices\": [\n";
    bool first = true;
    for (const Vertex& v : g.vertices()) {
        ojson j;
        j["id"] = v.id;
        j["kind"] = std::string(kind_name(v.kind));
        j["fanins"] = v.fanins;
        j["name"] = v.name;
        if (v.kind == VertexKind::Table) j["bits"] = v.function->to_string();
        if (is_fabric(v.kind)) j["element"] = v.element;
        if (v.kind == VertexKind::Cfg) {
            j["bit"] = v.cfg_bit;
            if (v.function) j["value"] = v.function->row(0) ? 1 : 0;
        }
        out << (first ? "  " : ",\n  ") << j.dump();
        first = false;
    }
    out << "\n],\n\"inputs\": " << ojson(g.pis()).dump() << ",\n\"outputs\": " << ojson(g.pos()).dump()
        << ",\n\"model\": " << ojson(g.model()).dump() << "\n}\n";
    return out.str();
}

} // namespace

NetlistFormat format_for_path(std::string_view path) {
    return path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? NetlistFormat::Json : NetlistFormat::Blif;
}

Hypergraph parse_netlist(std::string_view text, NetlistFormat format) {
    return format == NetlistFormat::Json ? parse_json(text) : parse_blif(text);
}

std::string serialize_netlist(const Hypergraph& g, NetlistFormat format) {
    const bool compact = g.alive_count() == g.size();
    const Hypergraph canon = compact ? Hypergraph{} : g.canonical();
    const Hypergraph& h = compact ? g : canon;
    return format == NetlistFormat::Json ? write_json(h) : write_blif(h);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

} // namespace redax
