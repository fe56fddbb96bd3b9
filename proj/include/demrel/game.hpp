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


#ifndef DEMREL_GAME_HPP
#define DEMREL_GAME_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "demrel/network.hpp"
#include "demrel/structure.hpp"

namespace demrel {

enum class MoveKind { Init, Choice, Join, Witness, Composition };

/**
 * A ∀ move. Payload use by kind:
 *   Init(a,b)              a ≠ b
 *   Choice(x,y,a,b)        a+b ∈ ⊤(x,y)
 *   Join(x,y,a,b)          a ∈ ⊤(x,y), b any element
 *   Witness(x,y,a,b)       a∘b ∈ ⊤(x,y)
 *   Composition(x,y,z,a,b) a ∈ ⊤(x,y), b ∈ ⊤(y,z)
 */
struct Move {
    MoveKind kind = MoveKind::Init;
    Node x = 0, y = 0, z = 0;
    Elem a = 0, b = 0;

    static Move init(Elem a, Elem b) { return {MoveKind::Init, 0, 0, 0, a, b}; }
    static Move choice(Node x, Node y, Elem a, Elem b) { return {MoveKind::Choice, x, y, 0, a, b}; }
    static Move join(Node x, Node y, Elem a, Elem b) { return {MoveKind::Join, x, y, 0, a, b}; }
    static Move witness(Node x, Node y, Elem a, Elem b) { return {MoveKind::Witness, x, y, 0, a, b}; }
    static Move composition(Node x, Node y, Node z, Elem a, Elem b) { return {MoveKind::Composition, x, y, z, a, b}; }

    friend bool operator==(const Move&, const Move&) = default;
    friend auto operator<=>(const Move&, const Move&) = default;
};

/**
 * A conservative ∃ reply.
 *   alt: Init puts b on ⊤(x0,y0) and forbids a; Choice puts b on (x,y) and a
 *        on (x,z); Join adds b to ⊥(x) instead of a+b to ⊤(x,y).
 *   z:   Choice and Witness only; an existing node, or nullopt for a fresh one.
 */
struct Response {
    bool alt = false;
    std::optional<Node> z;

    friend bool operator==(const Response&, const Response&) = default;
};

struct GameState {
    Network net;
    Node x0 = 0, y0 = 1;
    Elem s_bot = 0;
    int rounds_left = 0;
};

// Network consistent and s_bot ∉ ⊤(x0,y0).
bool is_consistent(const GameState& st);

// Node order putting x0, y0 first and the rest sorted by a label signature
// (ties keep the original order). Deterministic in the state.
std::vector<Node> canonical_order(const GameState& st);
// State with node order[i] renamed to position i (names are kept).
GameState relabel(const GameState& st, const std::vector<Node>& order);

struct Ply {
    Move move;
    Response reply;
};

/**
 * Move generation and application for one structure. Sum and composition
 * decompositions are tabulated once, so reuse a Game across calls.
 */
class Game {
public:
    explicit Game(const Algebra& s);

    const Algebra& structure() const { return s_; }

    // N[a,b] (or N[b,a] when alt) with nodes x0, y0 and empty ⊥ labels.
    GameState initial(Elem a, Elem b, bool alt, int rounds) const;

    bool is_legal(const GameState& st, const Move& m) const;
    // All applicable non-Init moves, deduplicated, in a fixed order.
    std::vector<Move> legal_moves(const GameState& st) const;
    // Conservative replies in a fixed order; throws std::invalid_argument if m is illegal.
    std::vector<Response> replies(const GameState& st, const Move& m) const;
    // Applies the reply and, for non-Init moves, spends one round.
    GameState apply(const GameState& st, const Move& m, const Response& r) const;
    std::vector<GameState> exists_responses(const GameState& st, const Move& m) const;
    // after extends before and contains one of the networks the move demands.
    bool is_valid_reply(const GameState& before, const Move& m, const GameState& after) const;

    // {(a,b) : a ≤ b, a+b = c} and {(a,b) : a∘b = c}
    const std::vector<std::pair<Elem, Elem>>& sum_decompositions(Elem c) const { return sums_.at(c); }
    const std::vector<std::pair<Elem, Elem>>& comp_decompositions(Elem c) const { return comps_.at(c); }

    std::string format(const Move& m, const Network& net) const;
    std::string format(const Ply& p, const Network& before) const;

private:
    const Algebra& s_;
    std::vector<std::vector<std::pair<Elem, Elem>>> sums_, comps_;
};

std::vector<Move> legal_moves(const GameState& st, const Algebra& s);
std::vector<GameState> exists_responses(const GameState& st, const Algebra& s, const Move& m);

enum class Winner { Exists, Forall, BudgetExceeded };
std::string to_string(Winner w);

struct SolveOptions {
    std::size_t max_states = 1'000'000;
    unsigned jobs = 1; // parallel openings when > 1
    double time_budget = 0; // seconds per solver, 0 = none
};

struct SolveResult {
    Winner winner = Winner::Exists;
    std::optional<std::pair<Elem, Elem>> opening; // deciding opening, if any
    GameState start;                              // state after the deciding opening
    bool swapped = false;                         // Init reply that produced start
    std::vector<Ply> line;                        // principal line from the opening
    std::size_t states = 0;
    std::string note;
};

/**
 * Exact minimax over conservative replies with a memo keyed on a canonical
 * relabelling of the network. Values are monotone in the number of rounds,
 * so the memo keeps, per state, the largest round count known won by ∃ and
 * the smallest known won by ∀.
 */
class GameSolver {
public:
    GameSolver(const Game& g, SolveOptions opt = {});

    // Winner from st with st.rounds_left rounds to go; BudgetExceeded when
    // the state cap is hit.
    Winner value(const GameState& st);
    std::optional<Move> winning_forall_move(const GameState& st);
    std::optional<Response> winning_reply(const GameState& st, const Move& m);
    std::vector<Ply> principal_line(const GameState& st);
    std::size_t states() const { return visited_; }

    // Serialized state after canonical_order; equal keys mean isomorphic states.
    static std::string canonical_key(const GameState& st);

private:
    struct Budget {};
    struct Entry {
        int exists_upto = -1;
        int forall_from = 1 << 30;
    };
    bool exists_wins(const GameState& st);
    std::vector<Move> useful_moves(const GameState& st) const;

    const Game& g_;
    SolveOptions opt_;
    std::size_t visited_ = 0;
    std::chrono::steady_clock::time_point start_;
    std::unordered_map<std::string, Entry> memo_;
};

// Solves Γₙ(S); with no opening ∀ may pick any pair a ≠ b.
SolveResult solve_game(const Algebra& s, int rounds, std::optional<std::pair<Elem, Elem>> opening = std::nullopt,
                       const SolveOptions& opt = {});

// Plain-text move log, one ply per line, replayable.
std::string trace_to_text(const Game& g, int rounds, const Move& init, const Response& init_reply,
                          const std::vector<Ply>& plies);

struct ReplayResult {
    GameState final;
    std::size_t plies = 0;
    std::optional<std::size_t> lost_at; // ply index (0 = init) where ∃ lost
    bool started = false;               // false for a trace with no init line
};

// Re-applies a trace; throws ParseError on malformed text and
// std::invalid_argument on an illegal move. A trace without moves
// replays to the empty initial state with no winner.
ReplayResult replay_trace(const Game& g, std::string_view text);

} // namespace demrel

#endif
