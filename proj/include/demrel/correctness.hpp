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


#ifndef DEMREL_CORRECTNESS_HPP
#define DEMREL_CORRECTNESS_HPP

#include <optional>
#include <string>
#include <string_view>

#include "demrel/relation.hpp"

namespace demrel {

/*
 * Hoare triples over a configuration space C. Programs are relations over
 * C, conditions are subidentities. The primed space C′ = C∪{⊥} adds a
 * magic configuration ⊥ that every program may reach from its domain.
 */

// C′: the points of c followed by a fresh bottom point. Throws
// std::invalid_argument if c already has a bottom point.
BasePtr primed_base(const BasePtr& c);

// The same pairs over C′.
Relation lift(const Relation& r);

// 𝟘 = {(c,⊥) : c ∈ C} over C′.
Relation magic(const BasePtr& c);

// A′ = A ∪ {(c,⊥) : c ∈ d(A)}; equals lift(A) ⊔ 𝟘.
Relation prime_program(const Relation& a);

// P′ = P ∪ {(⊥,⊥)}. Throws if P is not a subidentity.
Relation prime_condition(const Relation& p);

// Complement of q within the diagonal of q's own base.
Relation negate_condition(const Relation& q);

enum class PartialForm {
    Direct,  // P;A;Q = P;A
    Negated, // P;A;(¬Q) = P;0
};

bool partial_correct(const Relation& p, const Relation& a, const Relation& q, PartialForm form = PartialForm::Direct);

// How ¬ is read in the primed total-correctness equation
// P′;A′;(¬Q′) = P′;𝟘.
enum class PrimedNegation {
    // (¬Q)′: complement within C, then primed, so (⊥,⊥) is kept.
    PrimeOfComplement,
    // ¬(Q′): complement within C′, so (⊥,⊥) is dropped.
    ComplementOfPrime,
};

bool total_correct(const Relation& p, const Relation& a, const Relation& q,
                   PrimedNegation neg = PrimedNegation::PrimeOfComplement);

// Primed partial correctness P′;A′;Q′ = P′;A′.
bool primed_partial_correct(const Relation& p, const Relation& a, const Relation& q);

struct Triple {
    BasePtr base;
    Relation pre, prog, post;
};

// Text format: a "base:" header, then "pre:", "prog:" and "post:" blocks
// of "x -> y" lines. Conditions must be subidentities.
Triple parse_triple(std::string_view text);
std::string to_text(const Triple& t);

struct HoareReport {
    bool partial = false;
    bool total = false;
    // A precondition state with a run ending outside Q, and that end.
    std::optional<Pair> bad_run;
    // A precondition state with no run at all.
    std::optional<std::size_t> no_run;

    std::string to_text(const Base& b) const;
};

HoareReport check_triple(const Triple& t, PrimedNegation neg = PrimedNegation::PrimeOfComplement);

} // namespace demrel

#endif
