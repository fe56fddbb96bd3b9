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

#ifndef DEMREL_REPMAP_HPP
#define DEMREL_REPMAP_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "demrel/relation.hpp"
#include "demrel/structure.hpp"

namespace demrel {

/**
 * Candidate representation: one relation per element, all over one base.
 * images[a] is the image of element a.
 */
struct RepMap {
    BasePtr base;
    std::vector<Relation> images;

    const Relation& operator[](Elem a) const { return images.at(a); }
};

enum class Semantics {
    Demonic, // + ↦ ⊔, · ↦ ⊓ (domains of R∩S required to match), ∘ ↦ ;
    Angelic, // + ↦ ∪, · ↦ ∩, ∘ ↦ ;
};

struct CheckOptions {
    Semantics semantics = Semantics::Demonic;
    // Operations to check; defaults to the structure's signature.
    std::optional<Signature> signature;
    bool require_injective = true;
    std::size_t max_violations = 20;
};

struct CheckReport {
    bool pass = true;
    std::vector<std::string> violations;
    std::size_t violation_count = 0;

    void add(std::string msg, std::size_t cap);
};

CheckReport check_representation(const Algebra& s, const RepMap& r, const CheckOptions& opt = {});

std::string to_text(const Algebra& s, const RepMap& r);
RepMap parse_repmap(const Algebra& s, std::string_view text);

// Least element 𝟎 in the ·-order with a∘𝟎 = 𝟎 for all a, if any.
std::optional<Elem> lattice_zero(const Algebra& s);

// Adds a fresh bottom point ⊥ and the pairs (x,⊥) for every point x
// (⊥ included). Throws std::invalid_argument if there is no zero or the
// input is not a valid angelic representation.
RepMap angelic_to_demonic(const Algebra& s, const RepMap& r);

// Checks domain constancy and then re-checks the assignment as an angelic
// representation.
CheckReport demonic_to_angelic(const Algebra& s, const RepMap& r);

} // namespace demrel

#endif
