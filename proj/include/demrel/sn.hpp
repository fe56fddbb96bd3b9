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

#ifndef DEMREL_SN_HPP
#define DEMREL_SN_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "demrel/bits.hpp"
#include "demrel/structure.hpp"

namespace demrel {

// A set of generators, bit g set iff generator g is a member.
using GenSet = std::uint64_t;

/**
 * Generators of the 𝒮ₙ family. N = 2ⁿ+1 and X = L ∪ R ∪ P ∪ D with
 * L = {al, bl0.., cl0..}, R = {ar, br0.., cr0..}, P = {p, pp}, D = {d1, d2, d3}.
 * Bit layout: al, bl_i, cl_i, ar, br_i, cr_i, p, pp, d1, d2, d3.
 */
class SnUniverse {
public:
    explicit SnUniverse(int n);

    int n() const { return n_; }
    int N() const { return N_; }
    int generator_count() const { return 4 * N_ + 7; }

    int al() const { return 0; }
    int bl(int i) const { return 1 + mod(i); }
    int cl(int i) const { return 1 + N_ + mod(i); }
    int ar() const { return 2 * N_ + 1; }
    int br(int i) const { return 2 * N_ + 2 + mod(i); }
    int cr(int i) const { return 3 * N_ + 2 + mod(i); }
    int p() const { return 4 * N_ + 2; }
    int pp() const { return 4 * N_ + 3; }
    int d(int k) const { return 4 * N_ + 3 + k; } // k in 1..3

    GenSet L() const { return L_; }
    GenSet R() const { return R_; }
    GenSet P() const { return bit(p()) | bit(pp()); }
    GenSet D() const { return bit(d(1)) | bit(d(2)) | bit(d(3)); }

    static GenSet bit(int g) { return GenSet{1} << g; }

    const std::string& gen_name(int g) const { return names_.at(g); }
    std::optional<int> gen_index(const std::string& name) const;

    // s•t, or -1 when undefined
    int bullet(int s, int t) const { return bullet_[s * generator_count() + t]; }

    GenSet closure(GenSet a) const;
    bool is_closed(GenSet a) const { return closure(a) == a; }
    GenSet sum(GenSet s, GenSet t) const;
    GenSet dot(GenSet s, GenSet t) const; // S•T, not closed
    GenSet circ(GenSet s, GenSet t) const { return closure(dot(s, t)); }
    // 1, 2 or 3; throws std::domain_error on ∅
    int delta(GenSet e) const;

    // Sorted brace list in generator order, e.g. "{bl0,d1}"; "{}" for ∅.
    std::string format(GenSet e) const;
    std::optional<GenSet> parse(const std::string& s) const;

    // All closed sets, ascending by bit pattern (so ∅ first).
    std::vector<GenSet> enumerate() const;
    // 2 + 5(4^N + 3^N)
    std::uint64_t element_count() const;

private:
    int mod(int i) const { return ((i % N_) + N_) % N_; }

    int n_;
    int N_;
    GenSet L_ = 0, R_ = 0;
    std::vector<std::string> names_;
    std::vector<int> bullet_;
};

/**
 * Lazily evaluated 𝒮ₙ with signature {+, ∘}. Tables are memoized per pair
 * behind a mutex so parallel readers are safe.
 */
class SnAlgebra : public Algebra {
public:
    explicit SnAlgebra(int n);

    std::size_t size() const override { return elems_.size(); }
    Signature signature() const override { return Signature::join_comp(); }
    std::string name(Elem a) const override { return u_.format(elems_.at(a)); }
    Elem join(Elem a, Elem b) const override;
    Elem comp(Elem a, Elem b) const override;
    std::optional<Elem> find(std::string_view name) const override;

    const SnUniverse& universe() const { return u_; }
    GenSet set_of(Elem a) const { return elems_.at(a); }
    Elem elem_of(GenSet s) const;
    std::optional<Elem> try_elem_of(GenSet s) const;
    Elem empty() const { return 0; }
    // Element for a set of named generators, closed first.
    Elem make(std::initializer_list<int> gens) const;

    // {S ∈ 𝒮ₙ : s ∈ S}
    Bits up(int g) const;
    // {S : A ⊆ S}, A itself need not be closed
    Bits up_set(GenSet a) const;
    // d₂⇑ = {{d₂} ∪ R₀ : ∅ ≠ R₀ ⊆ R}
    Bits d2_double_up() const;
    Bits B_left(std::uint32_t rho) const;
    Bits B_right(std::uint32_t rho) const;
    // {S : δ(S) = d_k}
    Bits compartment(int k) const;
    // Elements with a given δ, and ∅.
    Bits bot_label(int k) const;

    bool is_upward_closed(const Bits& s) const;
    bool is_prime(const Bits& s) const;

private:
    SnUniverse u_;
    std::vector<GenSet> elems_;
    std::unordered_map<GenSet, Elem> index_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, Elem> join_memo_, comp_memo_;
    mutable std::vector<Elem> join_tab_, comp_tab_; // dense when small
};

struct PrimeSet {
    std::string label; // e.g. "bl0↑", "d2⇑", "Bl(ρ=101)"
    Bits members;
};

// Default cap on materialized table entries (|𝒮ₙ|² per table).
constexpr std::uint64_t kSnTableBudget = 1'000'000;

// Materialized 𝒮ₙ; throws std::length_error above the budget.
FiniteStructure build_sn(int n, std::uint64_t table_budget = kSnTableBudget);

// s↑ for s ∉ {al, ar}, d₂⇑, and B^l(ρ), B^r(ρ) for every ρ; each is
// checked prime and upward closed (std::logic_error otherwise).
std::vector<PrimeSet> sn_primes(const SnAlgebra& s);

// Elements π whose upward closure π↑ is prime (the prime join irreducibles).
std::vector<Elem> sn_prime_elements(const SnAlgebra& s);

} // namespace demrel

#endif
