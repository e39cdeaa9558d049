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

#include "redax/errors.hpp"
#include "redax/fabric.hpp"
#include "redax/graph_algo.hpp"
#include "redax/kernels.hpp"
#include "redax/metrics.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>

using namespace redax;

namespace {

/// Brute force: functions over n inputs that depend on every input.
std::uint64_t brute_force_all_input(int n) {
    std::uint64_t count = 0;
    const std::uint64_t rows = std::uint64_t{1} << n;
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << rows); ++f) {
        std::string s;
        for (std::uint64_t k = 0; k < rows; ++k) s.push_back((f >> k) & 1u ? '1' : '0');
        const TruthTable t = TruthTable::from_string(s);
        bool all = true;
        for (int j = 0; j < n; ++j) all = all && t.depends_on(j);
        if (all) ++count;
    }
    return count;
}

Hypergraph and2() {
    Hypergraph g;
    const VertexId a = g.add_pi("pi0"), b = g.add_pi("pi1");
    g.add_po("y", g.add_vertex(VertexKind::And, "x", {a, b}));
    return g;
}

} // namespace

TEST_CASE("function-count recurrence") {
    CHECK(count_all_input_functions(0) == 0);
    CHECK(count_all_input_functions(1) == 2);
    CHECK(count_all_input_functions(2) == 12);
    CHECK(count_all_input_functions(3) == 242);
    CHECK(count_all_input_functions(4) == 65292);
    CHECK_THROWS_AS(count_all_input_functions(17), DomainError);
}

TEST_CASE("functions depending on every input match brute force") {
    CHECK(brute_force_all_input(2) == 10);
    CHECK(brute_force_all_input(3) == 218);
    for (int n = 1; n <= 4; ++n) {
        CAPTURE(n);
        CHECK(count_functions_depending_on_all(n) == brute_force_all_input(n));
    }
}

TEST_CASE("TDI_S score") {
    const Hypergraph g = and2();
    const CutPoint cp{g.pos()[0], CutPointKind::Po};
    CHECK(tdi_s(g, cp, TdiWeights{}) == 6.0);
    CHECK(tdi_s(g, cp, TdiWeights{2, 0, 0, 0}) == 6.0);
    CHECK(tdi_s(g, cp, TdiWeights{0, 0, 0, 1}) == 2.0);
    CHECK_THROWS_AS(TdiWeights({-1, 1, 1, 1}).validate(), DomainError);

    // Linear in the weights on every cut-point of a fixture.
    const Hypergraph f = test::load_fixture("s27.blif");
    const TdiWeights u{1, 2, 3, 4}, v{0.5, 0, 1, 2}, uv{1.5, 2, 4, 6};
    for (const CutPoint& c : identify_cut_points(f))
        CHECK(tdi_s(f, c, uv) == doctest::Approx(tdi_s(f, c, u) + tdi_s(f, c, v)));

    SUBCASE("redaction raises the score of every cut-point") {
        const Hypergraph orig = expand_design(f);
        const Hypergraph red = expand_design(redact_design(f, 1, RedactionParams{}).graph);
        for (const CutPoint& c : identify_cut_points(orig)) {
            const std::string key = cut_point_key(orig, c);
            CAPTURE(key);
            const auto rc = find_cut_point(red, key);
            REQUIRE(rc);
            CHECK(tdi_s(red, *rc, TdiWeights{}) > tdi_s(orig, c, TdiWeights{}));
        }
    }
    SUBCASE("cut-point keys") {
        for (const CutPoint& c : identify_cut_points(f)) {
            const auto back = find_cut_point(f, cut_point_key(f, c));
            REQUIRE(back);
            CHECK(back->vertex == c.vertex);
        }
        CHECK_FALSE(find_cut_point(f, "PO:nowhere"));
    }
}

TEST_CASE("function histograms") {
    SUBCASE("ten identical AND2 designs") {
        const Hypergraph g = and2();
        RedactionParams p;
        p.randomize = false;
        p.cpi_fraction = 0;
        std::vector<Bitstream> bs(10, generate_bitstream(redact_design(g, 1, p)));
        const auto h = clut_function_distribution(bs);
        REQUIRE(h.size() == 1);
        const FunctionHistogram& h2 = h.at(2);
        CHECK(h2.unique() == 1);
        CHECK(h2.total == 10);
        CHECK(h2.frequency.begin()->second == 10);
        CHECK(h2.cumulative() == std::vector<double>{1.0});
    }
    SUBCASE("gamma_min = 4 leaves no CL2 or CL3") {
        RedactionParams p;
        p.gamma_min = 4;
        std::vector<Bitstream> bs;
        for (std::uint32_t s = 1; s <= 3; ++s) {
            const RedactedDesign d = redact_design(test::load_fixture("alu4.blif"), s, p);
            bs.push_back(generate_bitstream(d));
            const FabricInventory inv = fabric_inventory(d.graph, &bs.back());
            CHECK_FALSE(inv.clut.count(2));
            CHECK_FALSE(inv.clut.count(3));
            CHECK(inv.bits == bs.back().total_bits());
        }
        const auto h = clut_function_distribution(bs);
        CHECK_FALSE(h.count(2));
        CHECK_FALSE(h.count(3));
        for (const auto& [w, hist] : h) {
            const auto c = hist.cumulative();
            CHECK(std::is_sorted(c.begin(), c.end()));
            CHECK(c.back() == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("randomized variants carry at least as many unique functions per width") {
    RedactionParams base;
    base.randomize = false;
    for (const auto& name : test::all_fixtures()) {
        CAPTURE(name);
        const Hypergraph g = test::load_fixture(name);
        std::vector<Bitstream> rnd, bas;
        for (std::uint32_t s = 1; s <= 5; ++s) {
            rnd.push_back(generate_bitstream(redact_design(g, s, RedactionParams{})));
            bas.push_back(generate_bitstream(redact_design(g, s, base)));
        }
        const auto hr = clut_function_distribution(rnd);
        for (const auto& [w, hb] : clut_function_distribution(bas)) {
            CAPTURE(w);
            REQUIRE(hr.count(w));
            CHECK(hr.at(w).unique() >= hb.unique());
        }
    }
}

TEST_CASE("TDI_S reports") {
    const Hypergraph g = test::load_fixture("s27.blif");
    const Hypergraph orig = expand_design(g);
    const RedactionParams p;
    const Hypergraph v1 = expand_design(redact_design(g, 4, p).graph);
    const Hypergraph v2 = expand_design(redact_design(g, 5, p).graph);

    SUBCASE("identical variants match on every sample") {
        const TdiReport r = tdi_s_reports(orig, {v1, v1}, 4, TdiWeights{});
        REQUIRE(r.samples.size() == 4);
        CHECK(r.matches[0][1] == r.samples.size());
        CHECK(r.matches[1][0] == r.samples.size());
    }
    SUBCASE("samples cover the same cut-points in every variant") {
        const TdiReport r = tdi_s_reports(orig, {v1, v2}, 10, TdiWeights{});
        CHECK(r.samples.size() <= 10);
        std::set<std::string> keys;
        for (const TdiSample& s : r.samples) {
            keys.insert(s.cut_point);
            CHECK(s.variants.size() == 2);
            CHECK(s.original == tdi_s(orig, *find_cut_point(orig, s.cut_point), TdiWeights{}));
        }
        CHECK(keys.size() == r.samples.size());
        const auto j = nlohmann::json::parse(to_json(r));
        CHECK(j["samples"].size() == r.samples.size());
    }
}

TEST_CASE("similarity matrix") {
    const Hypergraph g = test::load_fixture("c17.blif");
    std::vector<Hypergraph> designs;
    for (std::uint32_t s = 1; s <= 3; ++s) designs.push_back(expand_design(redact_design(g, s, RedactionParams{}).graph));
    designs.push_back(expand_design(test::load_fixture("lfsr_acc.blif")));
    const auto m = similarity_matrix(designs);
    REQUIRE(m.size() == 4);
    for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(m[i][i] == doctest::Approx(1.0));
        for (std::size_t j = 0; j < m.size(); ++j) {
            CHECK(m[i][j] == doctest::Approx(m[j][i]));
            CHECK(m[i][j] >= 0.0);
            CHECK(m[i][j] <= 1.0);
        }
    }
    // An unrelated design shares neither names nor cut-point shapes.
    for (std::size_t i = 0; i < 3; ++i) CHECK(m[i][3] < 0.05);
    const std::string csv = matrix_csv({"a", "b", "c", "d"}, m);
    CHECK(csv.rfind("design,a,b,c,d\na,1.000000,", 0) == 0);
}

TEST_CASE("complexity arithmetic") {
    CHECK(factorial(3) == 6);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, 5) == 0);
    CHECK(log2_binomial(12, 10) == doctest::Approx(std::log2(66.0)));
    CHECK(log2_binomial(12, 10) == doctest::Approx(6.044).epsilon(0.001));
    CHECK(log2_binomial(3, 3) == doctest::Approx(0.0));
}

TEST_CASE("complexity estimates of a redacted design") {
    const Hypergraph g = test::load_fixture("lfsr_acc.blif");
    const RedactedDesign d = redact_design(g, 6, RedactionParams{});
    const ComplexityReport c = complexity_estimates(d);
    CHECK(c.n_o == d.n_o);
    CHECK(c.n_r == d.cut_points());
    CHECK(c.p == d.cpi_candidates);
    CHECK(c.r == d.cpi_placed);
    CHECK(c.cpi_configurations == binomial(c.p, c.r));
    CHECK(c.log2_cut_point_choices == doctest::Approx(log2_binomial(static_cast<std::uint64_t>(c.n_r),
                                                                    static_cast<std::uint64_t>(c.n_o))));
    for (const ElementComplexity& e : c.elements) {
        CHECK(e.growth == BigInt(1) << e.dummies);
        CHECK(e.variations == 2 * factorial(static_cast<std::uint64_t>(e.width)));
    }
    const ComplexityReport f = complexity_from_netlists(g, d.graph, generate_bitstream(d));
    CHECK(f.n_o == c.n_o);
    CHECK(f.n_r == c.n_r);
    CHECK(f.r == c.r);
    CHECK(f.p >= f.r);
}

TEST_CASE("overhead and report output") {
    const Hypergraph g = test::load_fixture("adder4.blif");
    const RedactedDesign d = redact_design(g, 2, RedactionParams{});
    const Bitstream b = generate_bitstream(d);
    CHECK(gate_overhead(g, expand_design(d.graph)) > 1.0);
    CHECK(gate_overhead(g, g) == doctest::Approx(1.0));

    MetricsReport r;
    r.inventory = fabric_inventory(d.graph, &b);
    r.histograms = clut_function_distribution({b});
    r.original_tdi = score_cut_points(expand_design(g), TdiWeights{});
    r.redacted_tdi = score_cut_points(expand_design(d.graph), TdiWeights{});
    r.complexity = complexity_estimates(d);
    r.overhead = gate_overhead(g, expand_design(d.graph));
    const auto j = nlohmann::json::parse(to_json(r));
    CHECK(j["format"] == "redax-metrics/1");
    CHECK(j["inventory"]["bits"] == b.total_bits());
    const std::string csv = tdi_csv(r);
    CHECK(csv.rfind("cut_point,fi_size,fo_size,fi_gates,fi_drivers,tdi_s_redacted,tdi_s_original\n", 0) == 0);
}
