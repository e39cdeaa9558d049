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

#include "redax/truth_table.hpp"

#include "redax/errors.hpp"

#include <array>

namespace redax {

namespace {

void check_width(int width) {
    if (width < 0 || width > kMaxTableWidth)
        throw DomainError("truth table width " + std::to_string(width) + " outside [0, " +
                          std::to_string(kMaxTableWidth) + "]");
}

} // namespace

TruthTable::TruthTable(int width, std::uint64_t bits) : width_(width) {
    check_width(width);
    bits_ = bits & row_mask(width);
}

TruthTable TruthTable::constant(int width, bool value) {
    return TruthTable(width, value ? ~std::uint64_t{0} : 0);
}

TruthTable TruthTable::projection(int width, int j) {
    check_width(width);
    if (j < 0 || j >= width) throw DomainError("projection index out of range");
    return TruthTable(width, kVarMask[j]);
}

TruthTable TruthTable::from_string(std::string_view rows) {
    int width = 0;
    while (width <= kMaxTableWidth && (std::size_t{1} << width) < rows.size()) ++width;
    if (width > kMaxTableWidth || (std::size_t{1} << width) != rows.size())
        throw DomainError("truth table string length " + std::to_string(rows.size()) + " is not 2^w, w <= 6");
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k] == '1')
            bits |= std::uint64_t{1} << k;
        else if (rows[k] != '0')
            throw DomainError("truth table string holds a character other than 0/1");
    }
    return TruthTable(width, bits);
}

TruthTable TruthTable::from_bits(std::span<const bool> rows) {
    std::string s;
    for (bool b : rows) s.push_back(b ? '1' : '0');
    return from_string(s);
}

TruthTable TruthTable::from_bits(const std::vector<bool>& rows) {
    std::string s;
    for (bool b : rows) s.push_back(b ? '1' : '0');
    return from_string(s);
}

bool TruthTable::eval(std::span<const bool> inputs) const {
    if (static_cast<int>(inputs.size()) != width_)
        throw DomainError("table of width " + std::to_string(width_) + " evaluated on " +
                          std::to_string(inputs.size()) + " inputs");
    std::size_t k = 0;
    for (std::size_t j = 0; j < inputs.size(); ++j)
        if (inputs[j]) k |= std::size_t{1} << j;
    return row(k);
}

bool TruthTable::depends_on(int j) const {
    return restrict(j, false) != restrict(j, true);
}

TruthTable TruthTable::restrict(int j, bool value) const {
    if (j < 0 || j >= width_) throw DomainError("restrict index out of range");
    std::uint64_t out = 0;
    const std::size_t rows = std::size_t{1} << (width_ - 1);
    for (std::size_t k = 0; k < rows; ++k) {
        const std::size_t low = k & ((std::size_t{1} << j) - 1);
        const std::size_t high = (k >> j) << (j + 1);
        const std::size_t src = high | low | (value ? std::size_t{1} << j : 0);
        if (row(src)) out |= std::uint64_t{1} << k;
    }
    return TruthTable(width_ - 1, out);
}

TruthTable TruthTable::extend_with_dummy(int position) const {
    if (position < 0 || position > width_) throw DomainError("dummy insert position out of range");
    if (width_ + 1 > kMaxTableWidth)
        throw DomainError("adding a dummy input would exceed the width cap of " + std::to_string(kMaxTableWidth));
    std::uint64_t out = 0;
    const std::size_t rows = std::size_t{1} << (width_ + 1);
    for (std::size_t k = 0; k < rows; ++k) {
        const std::size_t low = k & ((std::size_t{1} << position) - 1);
        const std::size_t high = (k >> (position + 1)) << position;
        if (row(high | low)) out |= std::uint64_t{1} << k;
    }
    return TruthTable(width_ + 1, out);
}

TruthTable TruthTable::permute(std::span<const int> new_position) const {
    if (static_cast<int>(new_position.size()) != width_) throw DomainError("permutation length mismatch");
    std::array<bool, kMaxTableWidth> seen{};
    for (int p : new_position) {
        if (p < 0 || p >= width_ || seen[p]) throw DomainError("not a permutation");
        seen[p] = true;
    }
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < size(); ++k) {
        std::size_t src = 0;
        for (int i = 0; i < width_; ++i)
            if ((k >> new_position[i]) & 1u) src |= std::size_t{1} << i;
        if (row(src)) out |= std::uint64_t{1} << k;
    }
    return TruthTable(width_, out);
}

TruthTable TruthTable::flip_input(int j) const {
    if (j < 0 || j >= width_) throw DomainError("flip index out of range");
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < size(); ++k)
        if (row(k ^ (std::size_t{1} << j))) out |= std::uint64_t{1} << k;
    return TruthTable(width_, out);
}

TruthTable TruthTable::strip_independent(std::vector<int>* kept) const {
    TruthTable t = *this;
    std::vector<int> index;
    for (int j = 0; j < width_; ++j) index.push_back(j);
    for (int j = t.width() - 1; j >= 0; --j) {
        if (!t.depends_on(j)) {
            t = t.restrict(j, false);
            index.erase(index.begin() + j);
        }
    }
    if (kept) *kept = std::move(index);
    return t;
}

std::string TruthTable::to_string() const {
    std::string s(size(), '0');
    for (std::size_t k = 0; k < size(); ++k)
        if (row(k)) s[k] = '1';
    return s;
}

std::vector<bool> TruthTable::to_bits() const {
    std::vector<bool> v(size());
    for (std::size_t k = 0; k < size(); ++k) v[k] = row(k);
    return v;
}

std::uint64_t eval_table_word(const TruthTable& table, std::span<const std::uint64_t> inputs) {
    // Mux-tree reduction: level j selects between row pairs with input j.
    std::array<std::uint64_t, 64> level{};
    const std::size_t rows = table.size();
    for (std::size_t k = 0; k < rows; ++k) level[k] = table.row(k) ? ~std::uint64_t{0} : 0;
    std::size_t n = rows;
    for (int j = 0; j < table.width(); ++j) {
        const std::uint64_t sel = inputs[j];
        for (std::size_t k = 0; k < n / 2; ++k)
            level[k] = (sel & level[2 * k + 1]) | (~sel & level[2 * k]);
        n /= 2;
    }
    return level[0];
}

} // namespace redax
