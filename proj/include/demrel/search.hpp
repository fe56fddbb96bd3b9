/*
 * Copyright 2026 The demrel Authors
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
 */


#ifndef DEMREL_SEARCH_HPP
#define DEMREL_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "demrel/repmap.hpp"
#include "demrel/structure.hpp"

namespace demrel {

struct SearchConfig {
    int min_base = 1;
    int max_base = 3;
    std::optional<Signature> signature; // defaults to the structure's
    Semantics semantics = Semantics::Demonic;
    bool require_injective = true;
    std::uint64_t node_budget = 10'000'000; // decisions per base size
    double time_budget = 0;                 // seconds, 0 for none
    bool symmetry_breaking = true;
    unsigned jobs = 1; // base sizes explored in parallel when > 1
};

enum class SearchStatus { Sat, Unsat, Budget };
std::string to_string(SearchStatus s);

struct SearchResult {
    SearchStatus status = SearchStatus::Unsat;
    std::optional<RepMap> rep;     // verified, when Sat
    int base_size = 0;             // Sat: size found; Unsat: largest size exhausted
    std::vector<int> unsat_sizes;  // every size proved empty, ascending
    std::uint64_t nodes = 0;       // decisions
    std::uint64_t conflicts = 0;
    double seconds = 0;

    // {"result": ..., "base_size": ..., "nodes": ..., "seconds": ...}
    std::string to_json() const;
};

/**
 * Bounded representation search. Each base size k becomes a propositional
 * problem over "pair (x,y) is in the image of a" with the operation tables
 * as constraints (meet signatures carry the common-refinement condition on
 * every pair), solved by a native CDCL procedure. Base points are ordered
 * by their per-point signature to cut permutations. A representation over
 * k points extends to k+1 points by an isolated point, so sizes are tried
 * in increasing order and the first hit is minimal.
 */
SearchResult search(const Algebra& s, const SearchConfig& cfg = {});

// Deduction chain for {z,e,g} under (⊓,;): distinct points x₀, y₀..y_k.
struct ChainStep {
    std::string fact;                    // e.g. "(y1,y0) ∈ g"
    std::string rule;                    // name of the deduction
    std::vector<std::string> identities; // table identities used, "g∘g = g"
    std::vector<std::size_t> from;       // earlier steps
};

struct ChainCertificate {
    int k = 0;
    int lower_bound = 0; // k + 2 distinct points
    std::vector<std::string> points;
    std::vector<ChainStep> steps;
};

ChainCertificate point_algebra_chain_lowerbound(int k);

// Checks every rule the certificate cites holds in the structure's tables
// and every step refers only to earlier steps.
bool check_chain_certificate(const ChainCertificate& c, const FiniteStructure& s, std::string* why = nullptr);

// Finds concrete points realising the chain in r: (x₀,y₀) ∈ g∖z, and each
// y_{n+1} with (x₀,y_{n+1}), (y_{n+1},y_n) ∈ g, all points distinct, no
// g-loops. Returns point names x₀, y₀, …, y_k, or nullopt.
std::optional<std::vector<std::string>> replay_chain(const ChainCertificate& c, const FiniteStructure& s,
                                                     const RepMap& r);

} // namespace demrel

#endif
