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

#include "support.hpp"

#include "redax/bitstream.hpp"
#include "redax/errors.hpp"

#include <doctest.h>

using namespace redax;

namespace {

FabricElement element(std::int32_t id, ElementKind kind, const std::string& bits, std::uint32_t select = 0) {
    FabricElement e;
    e.id = id;
    e.kind = kind;
    if (kind == ElementKind::Cpi) {
        e.roles.assign(2, BindingRole::Functional);
        e.select = select;
    } else {
        e.bits = TruthTable::from_string(bits);
        e.roles.assign(static_cast<std::size_t>(e.bits.width()), BindingRole::Functional);
    }
    return e;
}

/// AND2 over two PIs, fully redacted by the baseline: every CLUT row is reachable.
struct SingleLut {
    Hypergraph g;
    RedactedDesign d;
    SingleLut() {
        const VertexId a = g.add_pi("a"), b = g.add_pi("b");
        g.add_po("y", g.add_vertex(VertexKind::And, "x", {a, b}));
        RedactionParams p;
        p.randomize = false;
        p.cpi_fraction = 0;
        d = redact_design(g, 1, p);
    }
};

} // namespace

TEST_CASE("segment lengths") {
    RedactedDesign d;
    d.elements = {element(0, ElementKind::Clut, "0001"), element(1, ElementKind::Clut, "01100101"),
                  element(2, ElementKind::Cpi, "", 1)};
    const Bitstream b = generate_bitstream(d);
    REQUIRE(b.segments.size() == 3);
    CHECK(b.total_bits() == 13);
    CHECK(b.segments[2].bits == std::vector<bool>{true});
    BitSegment cpi5{3, ElementKind::Cpi, 5, {}};
    CHECK(cpi5.expected_length() == 3);
}

TEST_CASE("text and packed serialization") {
    RedactedDesign d;
    d.elements = {element(0, ElementKind::Clut, "0001"), element(1, ElementKind::Csb, "01100101"),
                  element(2, ElementKind::Cpi, "", 0)};
    const Bitstream b = generate_bitstream(d);
    const std::string text = serialize_bitstream(b, BitstreamFormat::Text);
    CHECK(text.rfind("0 CLUT 2 0001\n", 0) == 0);
    CHECK(text.find("1 CSB 3 01100101\n") != std::string::npos);
    CHECK(text.find("2 CPI 2 0\n") != std::string::npos);
    CHECK(parse_bitstream(text) == b);

    const std::string packed = serialize_bitstream(b, BitstreamFormat::Packed);
    CHECK(packed.substr(0, 4) == "RDBS");
    CHECK(parse_bitstream(packed) == b);
    CHECK(bitstream_format_for_path("x.bitsbin") == BitstreamFormat::Packed);
    CHECK(bitstream_format_for_path("x.bits") == BitstreamFormat::Text);

    SUBCASE("tampering is rejected") {
        CHECK_THROWS_AS(parse_bitstream("0 CLUT 2 001\n"), ParseError);
        CHECK_THROWS_AS(parse_bitstream("0 CLUT 2 00012\n"), ParseError);
        CHECK_THROWS_AS(parse_bitstream("0 LUT 2 0001\n"), ParseError);
        CHECK_THROWS_AS(parse_bitstream(packed.substr(0, packed.size() - 1)), ParseError);
        CHECK_THROWS_AS(parse_bitstream(packed + "x"), ParseError);
    }
}

TEST_CASE("fixture bitstreams round-trip") {
    for (const auto& name : test::all_fixtures()) {
        CAPTURE(name);
        const RedactedDesign d = redact_design(test::load_fixture(name), 3, RedactionParams{});
        const Bitstream b = generate_bitstream(d);
        std::size_t sum = 0;
        for (const FabricElement& e : d.elements) sum += e.segment_length();
        CHECK(b.total_bits() == sum);
        for (auto fmt : {BitstreamFormat::Text, BitstreamFormat::Packed})
            CHECK(parse_bitstream(serialize_bitstream(b, fmt)) == b);
    }
}

TEST_CASE("programming") {
    SUBCASE("the correct bitstream restores the function") {
        SingleLut s;
        REQUIRE(s.d.elements.size() == 1);
        CHECK(exhaustive_equiv(s.g, program(s.d.graph, generate_bitstream(s.d))).equivalent);
    }
    SUBCASE("any single flipped bit of a fully observable CLUT is caught") {
        SingleLut s;
        const Bitstream good = generate_bitstream(s.d);
        for (std::size_t k = 0; k < good.segments[0].bits.size(); ++k) {
            Bitstream bad = good;
            bad.segments[0].bits[k] = !bad.segments[0].bits[k];
            CHECK_FALSE(exhaustive_equiv(s.g, program(s.d.graph, bad)).equivalent);
        }
    }
    SUBCASE("flips in a fixture are caught on functional rows") {
        const Hypergraph g = test::load_fixture("adder4.blif");
        RedactionParams p;
        p.cpi_fraction = 0;
        const RedactedDesign d = redact_design(g, 5, p);
        const Bitstream good = generate_bitstream(d);
        std::size_t caught = 0;
        for (std::size_t s = 0; s < good.segments.size(); ++s) {
            Bitstream bad = good;
            bad.segments[s].bits[0] = !bad.segments[s].bits[0];
            if (!exhaustive_equiv(g, program(d.graph, bad)).equivalent) ++caught;
        }
        CHECK(caught > good.segments.size() / 2);
    }
    SUBCASE("a corrupted CSB is caught with its cycle index") {
        const Hypergraph g = test::load_fixture("s27.blif");
        const RedactedDesign d = redact_design(g, 3, RedactionParams{});
        Bitstream bad = generate_bitstream(d);
        bool corrupted = false;
        for (BitSegment& s : bad.segments) {
            const FabricElement& e = d.elements[static_cast<std::size_t>(s.element_id)];
            if (e.kind != ElementKind::Csb || !e.reg_functional) continue;
            for (std::size_t k = 0; k < s.bits.size(); ++k) s.bits[k] = !s.bits[k];
            corrupted = true;
            break;
        }
        REQUIRE(corrupted);
        const EquivResult r = seq_cosim_equiv(g, program(d.graph, bad), 10000, 1);
        REQUIRE_FALSE(r.equivalent);
        REQUIRE(r.counterexample);
        CHECK(r.counterexample->trace.size() == r.counterexample->cycle + 1);
    }
    SUBCASE("an empty fabric programs to the identity") {
        const Hypergraph g = test::load_fixture("s27.blif");
        RedactionParams p;
        p.coverage = 0;
        const RedactedDesign d = redact_design(g, 1, p);
        const Bitstream b = generate_bitstream(d);
        CHECK(b.segments.empty());
        CHECK(serialize_netlist(program(d.graph, b).canonical(), NetlistFormat::Blif) ==
              serialize_netlist(g.canonical(), NetlistFormat::Blif));
    }
    SUBCASE("mismatched bitstreams are rejected") {
        const RedactedDesign d = redact_design(test::load_fixture("c17.blif"), 2, RedactionParams{});
        Bitstream missing = generate_bitstream(d);
        missing.segments.pop_back();
        CHECK_THROWS_AS(program(d.graph, missing), BitstreamError);
        Bitstream extra = generate_bitstream(d);
        extra.segments.push_back({999, ElementKind::Clut, 2, {false, false, false, true}});
        CHECK_THROWS_AS(program(d.graph, extra), BitstreamError);
        Bitstream wrong = generate_bitstream(d);
        wrong.segments[0].width += 1;
        wrong.segments[0].bits.resize(wrong.segments[0].expected_length());
        CHECK_THROWS_AS(program(d.graph, wrong), BitstreamError);
    }
}
