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


#ifndef DEMREL_SN_STRATEGIES_HPP
#define DEMREL_SN_STRATEGIES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "demrel/game.hpp"
#include "demrel/network.hpp"
#include "demrel/sn.hpp"

namespace demrel {

// Every S ∈ ⊤(x,y) has δ(S) = d_ι(x); unindexed nodes must have no out-edges.
bool is_indexed(const Network& net, const SnAlgebra& s);

struct Figure5 {
    Network net;
    Node x = 0, y = 0, z = 0, u = 0, cross = 0;
    std::vector<Node> w; // w_{l,r} for l•r = p′, in generator order
    std::vector<Node> v; // v_{ρ,ρ′} at 2^N·ρ + ρ′
};

// The saturated network with nodes {x,y,z,u,×} ∪ {w_{l,r}} ∪ {v_{ρ,ρ′}};
// throws std::length_error when 5 + 6N + 4^N exceeds max_nodes.
Figure5 build_figure5_network(const SnAlgebra& s, std::size_t max_nodes = 5000);

// Pairs (a < b) that no edge of net discriminates.
std::vector<std::pair<Elem, Elem>> undiscriminated_pairs(const Network& net);

/**
 * The ∀ strategy against 𝒮ₙ: open with {p′,d₁} ≠ {p,p′,d₁}; punish any
 * ∅ ≠ S ⊆ T with S ∈ ⊤(x,y), T ∈ ⊥(x) in two moves; otherwise split
 * {p,p′,d₁}, ask for the aˡ∘aʳ witness z and force a b/c commitment on
 * (x₀,z) and (z,y₀) index by index until a composition lands on s_⊥.
 * The move is computed on the canonical relabelling of the state, so it is
 * a function of the state's canonical key.
 */
class ForallScript {
public:
    explicit ForallScript(const SnAlgebra& s);

    Move opening() const;
    // nullopt when the state is already lost for ∃ or the script has no move.
    std::optional<Move> next(const GameState& st) const;

private:
    std::optional<Move> next_raw(const GameState& st) const;

    const SnAlgebra& s_;
    Game game_;
};

// Two-move punishment: the Choice S = S + {d_i} or, once {d_i} leaves x,
// the Witness {d_i} = T ∘ {d_j}. nullopt when no ∅ ≠ S ⊊ T applies.
std::optional<Move> lemma3_move(const SnAlgebra& s, const GameState& st);

struct ScriptReport {
    bool complete = false;           // exploration finished within budget
    bool wins_within = false;        // every ∃ branch lost within the round limit
    int worst_moves = -1;            // longest forced game, when complete and won
    std::size_t states = 0;
    std::vector<GameState> starts;   // after each Init reply
    std::vector<Ply> worst_line;     // longest-resisting ∃ line
    int worst_start = 0;
};

// Plays the script against every conservative ∃ reply. limit caps the
// number of moves explored; worst_moves is the exact maximum when ≤ limit.
ScriptReport verify_forall_script(const SnAlgebra& s, int limit, std::size_t max_states = 1'000'000);

/**
 * Contiguous cyclic index set Δ ⊆ {0..N-1} with an alternating split into
 * successor-free Δ_b and Δ_c.
 */
class DeltaState {
public:
    explicit DeltaState(int N) : N_(N) {}

    // Adds i, filling the shorter gap from Δ; returns 'b' or 'c' for i.
    char add(int i);
    bool contains(int i) const { return letter_.count(i) > 0; }
    char letter(int i) const { return letter_.at(i); }
    int size() const { return static_cast<int>(letter_.size()); }
    int complement_size() const { return N_ - size(); }
    // Contiguity, partition and successor-freeness.
    bool well_formed() const;

private:
    int N_;
    int start_ = 0; // first index of the interval when nonempty
    std::map<int, char> letter_;
};

enum class ExistsMode { Prime, Figure5 };

/**
 * The ∃ strategy against 𝒮ₙ. Prime mode opens with the π↑ network for a
 * prime π separating the pair, indexes nodes, sets ⊥(q) to the labels of
 * other compartments, and answers witnesses with irreducible factors,
 * B^l/B^r labels, or Δ bookkeeping. Figure5 mode opens on the saturated
 * network when it discriminates the pair and answers by reusing it.
 */
class ExistsScript {
public:
    // Throws std::domain_error when rounds exceeds the guarantee (rounds ≤ n).
    ExistsScript(const SnAlgebra& s, int rounds, ExistsMode mode = ExistsMode::Prime);

    GameState open(Elem a, Elem b);
    GameState respond(const GameState& st, const Move& m);

    const Game& game() const { return game_; }
    std::size_t delta_count() const { return deltas_.size(); }
    const DeltaState* delta_for(Node x, Node z) const;

    // Prime join irreducible π with π ⊆ a, π ⊄ b; nullopt if none.
    std::optional<Elem> separating_prime(Elem a, Elem b) const;

private:
    GameState open_prime(Elem a, Elem b) const;
    void close_compositions(GameState& st) const;
    Node fresh_prime_edge(GameState& st, Node x, Elem e) const;

    const SnAlgebra& s_;
    int rounds_;
    ExistsMode mode_;
    Game game_;
    std::vector<Elem> primes_;       // prime join irreducibles
    std::vector<Elem> irreducibles_; // all join irreducibles
    std::optional<Figure5> fig_;
    // Δ-state per witness triple (x, z, y) opened on aˡ∘aʳ
    struct DeltaEdge {
        Node x, z, y;
        DeltaState delta;
    };
    std::vector<DeltaEdge> deltas_;
};

struct ExistsReport {
    std::size_t openings = 0;  // ordered ∀ opening pairs checked
    std::size_t figure5 = 0;   // openings answered on the saturated network
    std::size_t networks = 0;  // distinct prime opening networks
    std::size_t moves = 0;     // first ∀ moves answered
    std::size_t failures = 0;
    std::vector<std::string> examples; // first few failures, human-readable

    bool pass() const { return failures == 0; }
};

// Plays the script for one round against every opening pair and every legal
// first ∀ move, checking each answer is a valid extension and keeps the state
// consistent. In Figure5 mode an opening placed on the saturated network is
// checked once for saturation (every move then has a no-op answer) and
// prime openings are enumerated move by move.
ExistsReport verify_exists_script(const SnAlgebra& s, ExistsMode mode = ExistsMode::Figure5,
                                  std::size_t max_examples = 10);

} // namespace demrel

#endif
