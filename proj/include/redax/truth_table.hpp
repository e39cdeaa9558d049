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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace redax {

/// Widest table the IR stores. 2^6 = 64 rows fit one machine word.
inline constexpr int kMaxTableWidth = 6;

/// Complete truth table of a single-output function of up to six inputs.
///
/// Row k holds the output when input j carries bit j of k (LSB = input 0).
/// Rows beyond 2^width are always zero.
class TruthTable {
public:
    TruthTable() = default;
    TruthTable(int width, std::uint64_t bits);

    static TruthTable constant(int width, bool value);
    /// f(x) = x_j over `width` inputs.
    static TruthTable projection(int width, int j);
    /// Parses an LSB-first '0'/'1' string of length 2^w.
    static TruthTable from_string(std::string_view rows);
    static TruthTable from_bits(std::span<const bool> rows);
    static TruthTable from_bits(const std::vector<bool>& rows);

    int width() const noexcept { return width_; }
    std::size_t size() const noexcept { return std::size_t{1} << width_; }
    std::uint64_t bits() const noexcept { return bits_; }
    std::uint64_t mask() const noexcept { return row_mask(width_); }

    bool row(std::size_t k) const { return (bits_ >> k) & 1u; }
    bool eval(std::span<const bool> inputs) const;

    bool depends_on(int j) const;
    /// Cofactor with input j fixed; width drops by one.
    TruthTable restrict(int j, bool value) const;
    /// Function with a new input at `position` that it ignores (both cofactors equal).
    TruthTable extend_with_dummy(int position) const;
    /// Input i moves to slot new_position[i].
    TruthTable permute(std::span<const int> new_position) const;
    TruthTable inverted() const { return TruthTable(width_, ~bits_ & mask()); }
    /// f(..., !x_j, ...): swaps the two cofactors of input j.
    TruthTable flip_input(int j) const;
    /// Removes every input the function ignores; `kept` receives the surviving input indices.
    TruthTable strip_independent(std::vector<int>* kept = nullptr) const;

    std::string to_string() const;
    std::vector<bool> to_bits() const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;
    friend auto operator<=>(const TruthTable&, const TruthTable&) = default;

    static std::uint64_t row_mask(int width) {
        return width >= kMaxTableWidth ? ~std::uint64_t{0} : ((std::uint64_t{1} << (std::uint64_t{1} << width)) - 1);
    }

private:
    int width_ = 0;
    std::uint64_t bits_ = 0;
};

/// Standard variable masks: bit k of kVarMask[j] is bit j of k.
inline constexpr std::uint64_t kVarMask[kMaxTableWidth] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

/// Evaluates a table on 64 lanes at once; inputs[j] holds input j for every lane.
std::uint64_t eval_table_word(const TruthTable& table, std::span<const std::uint64_t> inputs);

} // namespace redax
