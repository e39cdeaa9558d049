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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redax {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed netlist/bitstream/parameter text. Carries a 1-based position when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                     : what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Structural violation: cycles, arity, undriven or multiply-driven nets.
class GraphError : public Error {
public:
    using Error::Error;
};

/// Query on a vertex of the wrong kind, out-of-range widths and similar misuse.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Bitstream does not fit the netlist it is applied to.
class BitstreamError : public Error {
public:
    using Error::Error;
};

/// Two designs compared for equivalence expose different ports.
class InterfaceError : public Error {
public:
    using Error::Error;
};

} // namespace redax
