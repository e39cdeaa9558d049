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

#include "redax/bitstream.hpp"
#include "redax/graph_algo.hpp"
#include "redax/kernels.hpp"
#include "redax/netlist.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace redax {

struct RedactedDesign;

using BigInt = boost::multiprecision::cpp_int;

/// Recurrence F_0 = 0, F_1 = 2, F_n = 2^(2^n) - (F_{n-1} + 2). Valid for 0 <= n <= 16.
BigInt count_all_input_functions(int n);
/// Number of n-input functions that depend on every input (inclusion-exclusion). Differs
/// from the recurrence for n >= 2 (10 vs 12 at n = 2).
BigInt count_functions_depending_on_all(int n);

struct TdiWeights {
    double w1 = 1.0, w2 = 1.0, w3 = 1.0, w4 = 1.0;
    void validate() const;
};

/// w1 FI_size + w2 FO_size + w3 FI_gates + w4 FI_drivers.
double tdi_score(const kernels::CutFeatures& f, const TdiWeights& w);
double tdi_s(const Hypergraph& g, const CutPoint& cp, const TdiWeights& w);

/// Stable cut-point key: "PO:<name>" or "REG:<name>".
std::string cut_point_key(const Hypergraph& g, const CutPoint& cp);
std::optional<CutPoint> find_cut_point(const Hypergraph& g, const std::string& key);

// --- functional distribution --------------------------------------------------------------

/// Functions of one physical CLUT width, keyed by the function with dummy inputs stripped
/// ("<support>:<bits>").
struct FunctionHistogram {
    int width = 0;
    std::map<std::string, std::size_t> frequency;
    std::size_t total = 0;
    std::size_t unique() const { return frequency.size(); }
    /// Cumulative fraction of elements covered by the k most frequent functions.
    std::vector<double> cumulative() const;
};

/// Histograms over the CLUT and CSB segments of the given bitstreams, one per width.
std::map<int, FunctionHistogram> clut_function_distribution(const std::vector<Bitstream>& designs);

// --- fabric inventory ----------------------------------------------------------------------

struct FabricInventory {
    std::map<int, std::size_t> clut; // width -> count
    std::map<int, std::size_t> csb;
    std::map<int, std::size_t> cpi;
    std::size_t bits = 0;
};

/// Counts fabric cells of a redacted netlist; `bits` from the bitstream if given, else
/// from cell widths.
FabricInventory fabric_inventory(const Hypergraph& redacted, const Bitstream* b = nullptr);

/// Cells (every live vertex except ports) of `expanded` over those of `original`.
double gate_overhead(const Hypergraph& original, const Hypergraph& expanded);

// --- structural reports ---------------------------------------------------------------------

struct TdiSample {
    std::string cut_point;
    double original = 0;
    std::vector<double> variants;
};

struct TdiReport {
    std::vector<TdiSample> samples;
    /// matches[i][j]: samples on which variants i and j score equal (within tolerance).
    std::vector<std::vector<std::size_t>> matches;
};

/// Samples `n_samples` original cut-points nearest to equidistant scores between the
/// minimum and maximum original TDI_S, and scores the same cut-points in every variant.
/// All designs are gate-level expansions. `tolerance` is relative to the larger score.
TdiReport tdi_s_reports(const Hypergraph& original, const std::vector<Hypergraph>& variants, std::size_t n_samples,
                        const TdiWeights& w, double tolerance = 0.0);

struct SimilarityOptions {
    std::uint64_t n_vectors = 256;
    std::uint32_t seed = 1;
    int cycles = 4;          // clock cycles per vector batch
    double tolerance = 0.05; // structural feature match, relative
};

/// Pairwise similarity proxy over unprogrammed gate-level expansions. Config bits and PIs
/// are stimulated from hashes of (seed, name), so equal names see equal values.
/// score(A,B) = mean over both directions of 1/2 * (share of A's cut-point signatures found
/// in B) + 1/2 * (share of A's cut-point feature tuples matched in B within tolerance).
std::vector<std::vector<double>> similarity_matrix(const std::vector<Hypergraph>& designs,
                                                   const SimilarityOptions& opt = {});

// --- complexity -----------------------------------------------------------------------------

struct ElementComplexity {
    std::int32_t id = -1;
    int width = 0;
    int dummies = 0;     // d
    BigInt growth;       // 2^d
    BigInt variations;   // 2 * s!
};

struct ComplexityReport {
    std::vector<ElementComplexity> elements;
    int n_o = 0;
    int n_r = 0;
    double log2_cut_point_choices = 0; // log2 C(n_r, n_o); rho(n_r) is not modeled
    std::size_t p = 0;
    std::size_t r = 0;
    BigInt cpi_configurations; // C(p, r)
};

BigInt binomial(std::uint64_t n, std::uint64_t k);
double log2_binomial(std::uint64_t n, std::uint64_t k);
BigInt factorial(std::uint64_t n);

ComplexityReport complexity_estimates(const RedactedDesign& d);
/// Same report rebuilt from files alone. d is the element width minus the support of its
/// programmed function, and p counts every CLUT/CSB output (an upper bound on the CPI
/// candidates the redaction saw).
ComplexityReport complexity_from_netlists(const Hypergraph& original, const Hypergraph& redacted, const Bitstream& b);

// --- report -----------------------------------------------------------------------------------

struct CutPointScore {
    std::string key;
    kernels::CutFeatures features;
    double score = 0;
};

std::vector<CutPointScore> score_cut_points(const Hypergraph& g, const TdiWeights& w);

struct MetricsReport {
    FabricInventory inventory;
    std::map<int, FunctionHistogram> histograms;
    std::vector<CutPointScore> original_tdi;
    std::vector<CutPointScore> redacted_tdi;
    std::optional<ComplexityReport> complexity;
    std::optional<double> overhead;
};

std::string to_json(const MetricsReport& r);
/// One row per cut-point: key, features and scores of the original and redacted design.
std::string tdi_csv(const MetricsReport& r);
std::string to_json(const TdiReport& r);
std::string matrix_csv(const std::vector<std::string>& names, const std::vector<std::vector<double>>& m);

} // namespace redax
