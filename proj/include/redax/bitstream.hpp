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

#include "redax/fabric.hpp"
#include "redax/netlist.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace redax {

struct RedactedDesign;

struct BitSegment {
    std::int32_t element_id = -1;
    ElementKind kind = ElementKind::Clut;
    int width = 0; // CLUT/CSB inputs, or CPI inputs
    std::vector<bool> bits;

    /// 2^width for CLUT/CSB, ceil(log2 width) for CPI.
    std::size_t expected_length() const;
    friend bool operator==(const BitSegment&, const BitSegment&) = default;
};

/// Configuration chain: segments in ascending element id.
struct Bitstream {
    std::vector<BitSegment> segments;

    std::size_t total_bits() const;
    friend bool operator==(const Bitstream&, const Bitstream&) = default;
};

/// Collects every element's segment in chain order.
Bitstream generate_bitstream(const RedactedDesign& d);

enum class BitstreamFormat { Text, Packed };

/// Format by extension: ".bitsbin" -> Packed, anything else -> Text.
BitstreamFormat bitstream_format_for_path(std::string_view path);

/// Text: one `id KIND width bits` line per segment. Packed: "RDBS", u16 version, u32 count,
/// then per segment u32 id, u8 kind, u16 width and the bits LSB-first padded to a byte.
/// All integers little-endian.
std::string serialize_bitstream(const Bitstream& b, BitstreamFormat format);
/// Accepts either format (packed is recognized by its magic). Throws ParseError.
Bitstream parse_bitstream(std::string_view bytes);

/// Resolves every fabric cell of a redacted netlist (or of its gate-level expansion) with
/// its segment: CLUT/CSB cells become TABLE vertices, CSB registers DFFs, CPIs buffers of
/// the selected input, and config bits constants. Throws BitstreamError when a cell has no
/// matching segment or a segment matches no cell.
Hypergraph program(const Hypergraph& redacted, const Bitstream& b);

} // namespace redax
