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

#include <string>
#include <string_view>

namespace redax {

enum class NetlistFormat { Blif, Json };

/// Picks the format from a file extension (".json" -> Json, anything else -> Blif).
NetlistFormat format_for_path(std::string_view path);

/// Parses a netlist and validates it (arity, single drivers, combinational acyclicity).
///
/// BLIF subset: .model .inputs .outputs .names .latch .end, plus `.subckt` lines for
/// fabric cells (CLUT<n>, CSB<n>, CPI<n>, CFG). `.names` tables become TABLE vertices
/// (0-input tables become constants). Ids are assigned [inputs][outputs][definitions in
/// file order].
Hypergraph parse_netlist(std::string_view text, NetlistFormat format);

/// Byte-deterministic serialization of the live part of `g`.
///
/// Truth tables of TABLE vertices are written; programmed fabric contents are not (they
/// belong in the bitstream). BLIF writes built-in gates as `.names` covers, so they read
/// back as TABLE vertices with the same function.
std::string serialize_netlist(const Hypergraph& g, NetlistFormat format);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

} // namespace redax
