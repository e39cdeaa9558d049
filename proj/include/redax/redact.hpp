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
#include "redax/rng.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace redax {

/// Redaction knobs (γ). Field names double as parameter-file keys.
struct RedactionParams {
    int gamma_min = 2;
    int gamma_max = 4;
    double gamma_a_max = 0.10;
    double gamma_b_max = 0.10;
    double cpi_fraction = 1.0;
    double coverage = 1.0;
    int d_max = 2;
    double w_fi = 1.0 / 3.0;
    double w_fo = 1.0 / 3.0;
    double w_H = 1.0 / 3.0;
    int entropy_samples = 1024;
    /// false: baseline mapping with no randomizing transformation (no shuffle, r_size =
    /// gamma_min, no dummy-input/reorder/inversion pass, no dummy CSBs, nearest-earlier
    /// dummy sources).
    bool randomize = true;
    /// Whether CLUTs converted into dummy-register CSBs stay eligible for randomization.
    bool converted_csb_eligible = true;

    /// Throws DomainError when a value is out of range.
    void validate() const;
    /// Applies one `key = value` assignment. Throws ParseError for unknown keys or values.
    void set(std::string_view key, std::string_view value);
    /// `key = value` lines; '#' starts a comment.
    static RedactionParams parse(std::string_view text);
    std::string to_text() const;

    /// Widest element the randomization may produce: min(6, gamma_max + d_max).
    int width_cap() const;
};

/// Shannon entropy of a probability, with H(0) = H(1) = 0.
double binary_entropy(double p);

/// Empirical output entropy of every vertex: `samples` lanes of random PI stimulus,
/// simulated sequentially from the all-zero state (64 lanes per cycle).
std::vector<double> signal_entropies(const Hypergraph& g, int samples, Rng& rng);
double signal_entropy(const Hypergraph& g, VertexId v, int samples, Rng& rng);

struct CriticalSet {
    std::vector<VertexId> order; // iteration order of the mapping loop
    std::vector<double> rcf;     // per vertex id (0 for non-candidates)
};

/// rcf = w_fi |FI|/max|FI| + w_fo |FO|/max|FO| + w_H H over gates and flip-flops; keeps the
/// top ceil(coverage * count) by descending rcf (ties: ascending id) and shuffles them
/// unless the baseline is requested. Throws DomainError on an empty graph.
CriticalSet identify_critical_nodes(const Hypergraph& g, std::uint32_t seed, const RedactionParams& p);

/// Width-split audit record: the MFFC of a mapped root has `n` leaves and was
/// covered by pieces of the listed widths.
struct Eq2Record {
    VertexId root = kNoVertex;
    int n = 0;
    std::vector<int> widths;
    bool holds() const;
};

/// Redacted design: residual graph with fabric cells plus the element table.
///
/// While the passes run, `graph` may hold tombstones and `position` a topological rank
/// per vertex (+inf for vertices only registers read). finalize() compacts both.
struct RedactedDesign {
    Hypergraph graph;
    std::vector<FabricElement> elements; // index = element id = creation order
    std::vector<std::int32_t> absorbed;  // original vertex id -> element id, -1 when kept
    std::vector<VertexId> critical;
    std::vector<Eq2Record> eq2;
    std::vector<VertexId> original_ffs; // ids in `graph`
    std::vector<double> position;
    int n_o = 0;
    int n_a = 0;
    int n_b = 0;
    std::size_t cpi_candidates = 0; // p
    std::size_t cpi_placed = 0;     // r

    std::size_t count(ElementKind k) const;
    /// |POs| + |registers| of the current graph.
    int cut_points() const;
};

/// Starts a design from a gate-level netlist (no fabric cells allowed).
RedactedDesign begin_redaction(const Hypergraph& original);
/// RT1: maps every critical vertex's cone into a CLUT (gates) or CSB (flip-flops).
void map_critical_logic(RedactedDesign& d, const Hypergraph& original, const std::vector<VertexId>& critical,
                        std::uint32_t seed, const RedactionParams& p);
/// RT4: type-a (CLUT -> CSB with a dummy register) and type-b (new dummy CSB) placement.
void place_dummy_csbs(RedactedDesign& d, std::uint32_t seed, const RedactionParams& p);
/// RT2 + RT3: dummy inputs, input reordering and absorbable output inversion.
void randomize_elements(RedactedDesign& d, std::uint32_t seed, const RedactionParams& p);
/// RT5: CPIs on the outputs of randomly chosen elements.
void place_cpis(RedactedDesign& d, std::uint32_t seed, const RedactionParams& p);
/// Compacts the graph to canonical ids and validates it.
void finalize(RedactedDesign& d);

/// Mapping loop plus RT1..RT5 in pipeline order, then finalize().
RedactedDesign redact_critical_logic(const Hypergraph& original, const CriticalSet& critical, std::uint32_t seed,
                                     const RedactionParams& p);
/// Whole pipeline on a parsed netlist: sort, critical nodes, redaction.
RedactedDesign redact_design(const Hypergraph& original, std::uint32_t seed, const RedactionParams& p);

} // namespace redax
