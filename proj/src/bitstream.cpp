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

#include "redax/bitstream.hpp"

#include "redax/errors.hpp"
#include "redax/redact.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace redax {

namespace {

constexpr char kMagic[4] = {'R', 'D', 'B', 'S'};
constexpr std::uint16_t kVersion = 1;

std::size_t expected_for(ElementKind kind, int width) {
    if (kind == ElementKind::Cpi) return static_cast<std::size_t>(select_width(static_cast<std::size_t>(width)));
    return std::size_t{1} << width;
}

void check_width(ElementKind kind, long width, const std::string& where) {
    if (kind == ElementKind::Cpi ? (width < 2 || width > 0xFFFF) : (width < 0 || width > kMaxTableWidth))
        throw ParseError(where + ": width " + std::to_string(width) + " is invalid for " +
                         std::string(element_kind_name(kind)));
}

template <class T>
void put_le(std::string& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class Reader {
public:
    explicit Reader(std::string_view s) : s_(s) {}
    template <class T>
    T get(const char* what) {
        if (pos_ + sizeof(T) > s_.size()) throw ParseError(std::string("bitstream truncated while reading ") + what);
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            v |= static_cast<T>(static_cast<T>(static_cast<unsigned char>(s_[pos_ + i])) << (8 * i));
        pos_ += sizeof(T);
        return v;
    }
    std::string_view take(std::size_t n, const char* what) {
        if (pos_ + n > s_.size()) throw ParseError(std::string("bitstream truncated while reading ") + what);
        auto r = s_.substr(pos_, n);
        pos_ += n;
        return r;
    }
    bool done() const { return pos_ == s_.size(); }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

Bitstream parse_packed(std::string_view bytes) {
    Reader r(bytes);
    r.take(4, "magic");
    const auto version = r.get<std::uint16_t>("version");
    if (version != kVersion) throw ParseError("unsupported bitstream version " + std::to_string(version));
    const auto count = r.get<std::uint32_t>("segment count");
    Bitstream b;
    for (std::uint32_t s = 0; s < count; ++s) {
        const std::string where = "segment " + std::to_string(s);
        BitSegment seg;
        seg.element_id = static_cast<std::int32_t>(r.get<std::uint32_t>("element id"));
        const auto kind = r.get<std::uint8_t>("kind");
        if (kind > 2) throw ParseError(where + ": unknown element kind " + std::to_string(kind));
        seg.kind = static_cast<ElementKind>(kind);
        const auto width = r.get<std::uint16_t>("width");
        check_width(seg.kind, width, where);
        seg.width = width;
        const std::size_t n = seg.expected_length();
        const auto data = r.take((n + 7) / 8, "segment bits");
        seg.bits.resize(n);
        for (std::size_t i = 0; i < n; ++i) seg.bits[i] = (static_cast<unsigned char>(data[i / 8]) >> (i % 8)) & 1u;
        for (std::size_t i = n; i < data.size() * 8; ++i)
            if ((static_cast<unsigned char>(data[i / 8]) >> (i % 8)) & 1u)
                throw ParseError(where + ": nonzero padding bits (length field does not match the data)");
        b.segments.push_back(std::move(seg));
    }
    if (!r.done()) throw ParseError("trailing bytes after the last bitstream segment");
    return b;
}

Bitstream parse_text(std::string_view text) {
    Bitstream b;
    std::size_t line_no = 0, pos = 0;
    while (pos < text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream in(line);
        std::string id_s, kind_s, width_s, bits_s, extra;
        if (!(in >> id_s)) continue;
        if (!(in >> kind_s >> width_s >> bits_s) || (in >> extra))
            throw ParseError("bitstream line must read 'id KIND width bits'", line_no, 1);
        BitSegment seg;
        long id = 0, width = 0;
        auto num = [&](const std::string& s, long& v) {
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size() || v < 0)
                throw ParseError("expected a non-negative integer, got '" + s + "'", line_no, 1);
        };
        num(id_s, id);
        num(width_s, width);
        if (kind_s == "CLUT") seg.kind = ElementKind::Clut;
        else if (kind_s == "CSB") seg.kind = ElementKind::Csb;
        else if (kind_s == "CPI") seg.kind = ElementKind::Cpi;
        else throw ParseError("unknown element kind '" + kind_s + "'", line_no, 1);
        check_width(seg.kind, width, "line " + std::to_string(line_no));
        seg.element_id = static_cast<std::int32_t>(id);
        seg.width = static_cast<int>(width);
        if (bits_s.size() != seg.expected_length())
            throw ParseError("segment holds " + std::to_string(bits_s.size()) + " bits, expected " +
                                 std::to_string(seg.expected_length()),
                             line_no, 1);
        for (char c : bits_s) {
            if (c != '0' && c != '1') throw ParseError("bits must be 0/1", line_no, 1);
            seg.bits.push_back(c == '1');
        }
        b.segments.push_back(std::move(seg));
    }
    return b;
}

} // namespace

std::size_t BitSegment::expected_length() const { return expected_for(kind, width); }

std::size_t Bitstream::total_bits() const {
    std::size_t n = 0;
    for (const auto& s : segments) n += s.bits.size();
    return n;
}

Bitstream generate_bitstream(const RedactedDesign& d) {
    Bitstream b;
    for (const FabricElement& e : d.elements) {
        BitSegment s;
        s.element_id = e.id;
        s.kind = e.kind;
        s.width = e.width();
        s.bits = e.segment_bits();
        if (s.bits.size() != s.expected_length())
            throw BitstreamError("element " + std::to_string(e.id) + " is not programmed");
        b.segments.push_back(std::move(s));
    }
    return b;
}

BitstreamFormat bitstream_format_for_path(std::string_view path) {
    const std::string_view ext = ".bitsbin";
    return path.size() >= ext.size() && path.substr(path.size() - ext.size()) == ext ? BitstreamFormat::Packed
                                                                                     : BitstreamFormat::Text;
}

std::string serialize_bitstream(const Bitstream& b, BitstreamFormat format) {
    std::string out;
    if (format == BitstreamFormat::Text) {
        for (const BitSegment& s : b.segments) {
            out += std::to_string(s.element_id) + ' ' + std::string(element_kind_name(s.kind)) + ' ' +
                   std::to_string(s.width) + ' ';
            for (bool bit : s.bits) out.push_back(bit ? '1' : '0');
            out.push_back('\n');
        }
        return out;
    }
    out.append(kMagic, 4);
    put_le<std::uint16_t>(out, kVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(b.segments.size()));
    for (const BitSegment& s : b.segments) {
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.element_id));
        put_le<std::uint8_t>(out, static_cast<std::uint8_t>(s.kind));
        put_le<std::uint16_t>(out, static_cast<std::uint16_t>(s.width));
        std::string bytes((s.bits.size() + 7) / 8, '\0');
        for (std::size_t i = 0; i < s.bits.size(); ++i)
            if (s.bits[i]) bytes[i / 8] = static_cast<char>(bytes[i / 8] | (1 << (i % 8)));
        out += bytes;
    }
    return out;
}

Bitstream parse_bitstream(std::string_view bytes) {
    if (bytes.size() >= 4 && bytes.substr(0, 4) == std::string_view(kMagic, 4)) return parse_packed(bytes);
    for (unsigned char c : bytes)
        if (c != '\n' && c != '\r' && c != '\t' && (c < 0x20 || c > 0x7E))
            throw ParseError("bad bitstream magic");
    return parse_text(bytes);
}

Hypergraph program(const Hypergraph& redacted, const Bitstream& b) {
    std::map<std::int32_t, const BitSegment*> by_id;
    for (const BitSegment& s : b.segments)
        if (!by_id.emplace(s.element_id, &s).second)
            throw BitstreamError("duplicate segment for element " + std::to_string(s.element_id));
    auto segment = [&](const Vertex& v, ElementKind kind) -> const BitSegment& {
        auto it = by_id.find(v.element);
        if (it == by_id.end())
            throw BitstreamError("no segment for element " + std::to_string(v.element) + " ('" + v.name + "')");
        if (it->second->kind != kind)
            throw BitstreamError("segment " + std::to_string(v.element) + " is a " +
                                 std::string(element_kind_name(it->second->kind)) + ", cell '" + v.name + "' needs a " +
                                 std::string(element_kind_name(kind)));
        return *it->second;
    };

    Hypergraph g = redacted;
    std::set<std::int32_t> used;
    for (const Vertex& v : redacted.vertices()) {
        if (!v.alive) continue;
        switch (v.kind) {
        case VertexKind::Clut:
        case VertexKind::Csb: {
            const BitSegment& s = segment(v, v.kind == VertexKind::Clut ? ElementKind::Clut : ElementKind::Csb);
            if (s.width != static_cast<int>(v.fanins.size()))
                throw BitstreamError("segment " + std::to_string(s.element_id) + " has width " +
                                     std::to_string(s.width) + ", cell '" + v.name + "' has " +
                                     std::to_string(v.fanins.size()) + " inputs");
            g.set_kind(v.id, VertexKind::Table);
            g.set_function(v.id, TruthTable::from_bits(s.bits));
            used.insert(s.element_id);
            break;
        }
        case VertexKind::CsbReg: g.set_kind(v.id, VertexKind::Dff); break;
        case VertexKind::Cpi: {
            const BitSegment& s = segment(v, ElementKind::Cpi);
            if (s.width != static_cast<int>(v.fanins.size()))
                throw BitstreamError("segment " + std::to_string(s.element_id) + " width does not match CPI '" +
                                     v.name + "'");
            std::uint32_t sel = 0;
            for (std::size_t i = 0; i < s.bits.size(); ++i)
                if (s.bits[i]) sel |= 1u << i;
            if (sel >= v.fanins.size())
                throw BitstreamError("CPI '" + v.name + "' select " + std::to_string(sel) + " out of range");
            g.set_kind(v.id, VertexKind::Buf);
            g.set_fanins(v.id, {v.fanins[sel]});
            used.insert(s.element_id);
            break;
        }
        case VertexKind::Cfg: {
            auto it = by_id.find(v.element);
            if (it == by_id.end() || v.cfg_bit < 0 || static_cast<std::size_t>(v.cfg_bit) >= it->second->bits.size())
                throw BitstreamError("no bit for config register '" + v.name + "'");
            g.set_kind(v.id, it->second->bits[v.cfg_bit] ? VertexKind::Const1 : VertexKind::Const0);
            g.set_function(v.id, std::nullopt);
            used.insert(v.element);
            break;
        }
        default: break;
        }
    }
    for (const auto& [id, _] : by_id)
        if (!used.count(id)) throw BitstreamError("segment " + std::to_string(id) + " matches no fabric cell");
    g.validate();
    return g;
}

} // namespace redax
