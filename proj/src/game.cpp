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


#include "demrel/game.hpp"

#include <algorithm>
#include <cstring>
#include <future>
#include <sstream>
#include <tuple>

#include "demrel/relation.hpp"
#include "text.hpp"

namespace demrel {

bool is_consistent(const GameState& st)
{
    return !st.net.top(st.x0, st.y0).test(st.s_bot) && is_consistent(st.net);
}

Game::Game(const Algebra& s) : s_(s), sums_(s.size()), comps_(s.size())
{
    const Elem m = static_cast<Elem>(s.size());
    const bool join = s.signature().has_join;
    for (Elem a = 0; a < m; ++a)
        for (Elem b = 0; b < m; ++b) {
            if (join && a <= b) sums_[s.join(a, b)].emplace_back(a, b);
            comps_[s.comp(a, b)].emplace_back(a, b);
        }
}

GameState Game::initial(Elem a, Elem b, bool alt, int rounds) const
{
    if (a == b || a >= s_.size() || b >= s_.size()) throw std::invalid_argument("Init needs two distinct elements");
    GameState st;
    st.net = Network(s_.size());
    st.x0 = st.net.add_node("x0");
    st.y0 = st.net.add_node("y0");
    st.net.add_top(st.x0, st.y0, alt ? b : a);
    st.s_bot = alt ? a : b;
    st.rounds_left = rounds;
    return st;
}

bool Game::is_legal(const GameState& st, const Move& m) const
{
    const std::size_t n = st.net.size();
    const std::size_t e = s_.size();
    if (m.a >= e || m.b >= e) return false;
    switch (m.kind) {
    case MoveKind::Init:
        return m.a != m.b;
    case MoveKind::Choice:
        return s_.signature().has_join && m.x < n && m.y < n && st.net.has_top(m.x, m.y, s_.join(m.a, m.b));
    case MoveKind::Join:
        return s_.signature().has_join && m.x < n && m.y < n && st.net.has_top(m.x, m.y, m.a);
    case MoveKind::Witness:
        return m.x < n && m.y < n && st.net.has_top(m.x, m.y, s_.comp(m.a, m.b));
    case MoveKind::Composition:
        return m.x < n && m.y < n && m.z < n && st.net.has_top(m.x, m.y, m.a) && st.net.has_top(m.y, m.z, m.b);
    }
    return false;
}

std::vector<Move> Game::legal_moves(const GameState& st) const
{
    std::vector<Move> out;
    const std::size_t n = st.net.size();
    const Elem m = static_cast<Elem>(s_.size());
    for (Node x = 0; x < n; ++x)
        for (Node y = 0; y < n; ++y)
            st.net.top(x, y).for_each([&](std::size_t c) {
                for (auto [a, b] : sums_[c]) out.push_back(Move::choice(x, y, a, b));
            });
    if (s_.signature().has_join)
        for (Node x = 0; x < n; ++x)
            for (Node y = 0; y < n; ++y)
                st.net.top(x, y).for_each([&](std::size_t a) {
                    for (Elem b = 0; b < m; ++b) out.push_back(Move::join(x, y, static_cast<Elem>(a), b));
                });
    for (Node x = 0; x < n; ++x)
        for (Node y = 0; y < n; ++y)
            st.net.top(x, y).for_each([&](std::size_t c) {
                for (auto [a, b] : comps_[c]) out.push_back(Move::witness(x, y, a, b));
            });
    for (Node x = 0; x < n; ++x)
        for (Node y = 0; y < n; ++y)
            for (Node z = 0; z < n; ++z)
                st.net.top(x, y).for_each([&](std::size_t a) {
                    st.net.top(y, z).for_each([&](std::size_t b) {
                        out.push_back(Move::composition(x, y, z, static_cast<Elem>(a), static_cast<Elem>(b)));
                    });
                });
    return out;
}

std::vector<Response> Game::replies(const GameState& st, const Move& m) const
{
    if (!is_legal(st, m)) throw std::invalid_argument("illegal move");
    std::vector<Response> out;
    auto with_nodes = [&](bool alt) {
        for (Node z = 0; z < st.net.size(); ++z) out.push_back({alt, z});
        out.push_back({alt, std::nullopt});
    };
    switch (m.kind) {
    case MoveKind::Init:
        out = {{false, {}}, {true, {}}};
        break;
    case MoveKind::Choice:
        with_nodes(false);
        if (m.a != m.b) with_nodes(true);
        break;
    case MoveKind::Join:
        out = {{false, {}}, {true, {}}};
        break;
    case MoveKind::Witness:
        with_nodes(false);
        break;
    case MoveKind::Composition:
        out = {{false, {}}};
        break;
    }
    return out;
}

GameState Game::apply(const GameState& st, const Move& m, const Response& r) const
{
    if (m.kind == MoveKind::Init) return initial(m.a, m.b, r.alt, st.rounds_left);
    if (!is_legal(st, m)) throw std::invalid_argument("illegal move");
    GameState out = st;
    auto node = [&]() -> Node {
        if (!r.z) return out.net.add_node();
        if (*r.z >= out.net.size()) throw std::invalid_argument("reply names an unknown node");
        return *r.z;
    };
    switch (m.kind) {
    case MoveKind::Choice: {
        Node z = node();
        out.net.add_top(m.x, m.y, r.alt ? m.b : m.a);
        out.net.add_top(m.x, z, r.alt ? m.a : m.b);
        break;
    }
    case MoveKind::Join:
        if (r.alt)
            out.net.add_bot(m.x, m.b);
        else
            out.net.add_top(m.x, m.y, s_.join(m.a, m.b));
        break;
    case MoveKind::Witness: {
        Node z = node();
        out.net.add_top(m.x, z, m.a);
        out.net.add_top(z, m.y, m.b);
        break;
    }
    case MoveKind::Composition:
        out.net.add_top(m.x, m.z, s_.comp(m.a, m.b));
        break;
    case MoveKind::Init:
        break;
    }
    --out.rounds_left;
    return out;
}

std::vector<GameState> Game::exists_responses(const GameState& st, const Move& m) const
{
    std::vector<GameState> out;
    for (const auto& r : replies(st, m)) out.push_back(apply(st, m, r));
    return out;
}

bool Game::is_valid_reply(const GameState& before, const Move& m, const GameState& after) const
{
    const Network& n = after.net;
    if (m.kind == MoveKind::Init) {
        if (after.x0 == after.y0 || after.x0 >= n.size() || after.y0 >= n.size()) return false;
        return (n.has_top(after.x0, after.y0, m.a) && after.s_bot == m.b) ||
               (n.has_top(after.x0, after.y0, m.b) && after.s_bot == m.a);
    }
    if (!is_legal(before, m)) return false;
    if (after.x0 != before.x0 || after.y0 != before.y0 || after.s_bot != before.s_bot) return false;
    if (!before.net.extended_by(n)) return false;
    switch (m.kind) {
    case MoveKind::Choice:
        for (Node z = 0; z < n.size(); ++z)
            if ((n.has_top(m.x, m.y, m.a) && n.has_top(m.x, z, m.b)) ||
                (n.has_top(m.x, m.y, m.b) && n.has_top(m.x, z, m.a)))
                return true;
        return false;
    case MoveKind::Join:
        return n.has_top(m.x, m.y, s_.join(m.a, m.b)) || n.bot(m.x).test(m.b);
    case MoveKind::Witness:
        for (Node z = 0; z < n.size(); ++z)
            if (n.has_top(m.x, z, m.a) && n.has_top(z, m.y, m.b)) return true;
        return false;
    case MoveKind::Composition:
        return n.has_top(m.x, m.z, s_.comp(m.a, m.b));
    case MoveKind::Init:
        break;
    }
    return false;
}

std::string Game::format(const Move& m, const Network& net) const
{
    auto nd = [&](Node v) { return net.name(v); };
    auto el = [&](Elem e) { return s_.name(e); };
    switch (m.kind) {
    case MoveKind::Init:
        return "init " + el(m.a) + " " + el(m.b);
    case MoveKind::Choice:
        return "choice " + nd(m.x) + " " + nd(m.y) + " " + el(m.a) + " " + el(m.b);
    case MoveKind::Join:
        return "join " + nd(m.x) + " " + nd(m.y) + " " + el(m.a) + " " + el(m.b);
    case MoveKind::Witness:
        return "witness " + nd(m.x) + " " + nd(m.y) + " " + el(m.a) + " " + el(m.b);
    case MoveKind::Composition:
        return "compose " + nd(m.x) + " " + nd(m.y) + " " + nd(m.z) + " " + el(m.a) + " " + el(m.b);
    }
    return {};
}

std::string Game::format(const Ply& p, const Network& before) const
{
    std::string s = format(p.move, before);
    auto node = [&]() { return p.reply.z ? before.name(*p.reply.z) : std::string("new"); };
    switch (p.move.kind) {
    case MoveKind::Init:
        return s + " reply " + (p.reply.alt ? "swap" : "keep");
    case MoveKind::Choice:
        return s + " reply " + (p.reply.alt ? "swap " : "keep ") + node();
    case MoveKind::Join:
        return s + " reply " + (p.reply.alt ? "bot" : "top");
    case MoveKind::Witness:
        return s + " reply " + node();
    case MoveKind::Composition:
        return s;
    }
    return s;
}

std::vector<Move> legal_moves(const GameState& st, const Algebra& s)
{
    return Game(s).legal_moves(st);
}

std::vector<GameState> exists_responses(const GameState& st, const Algebra& s, const Move& m)
{
    return Game(s).exists_responses(st, m);
}

std::string to_string(Winner w)
{
    switch (w) {
    case Winner::Exists:
        return "EXISTS_WINS";
    case Winner::Forall:
        return "FORALL_WINS";
    case Winner::BudgetExceeded:
        return "BUDGET_EXCEEDED";
    }
    return "?";
}

std::vector<Node> canonical_order(const GameState& st)
{
    const Network& net = st.net;
    const std::size_t n = net.size();
    std::vector<std::size_t> h0(n), h1(n);
    for (Node v = 0; v < n; ++v) h0[v] = net.bot(v).hash() * 3 + (v == st.x0 ? 1 : v == st.y0 ? 2 : 0);
    for (Node v = 0; v < n; ++v) {
        std::vector<std::size_t> out, in;
        for (Node w = 0; w < n; ++w) {
            if (w == v) continue;
            out.push_back(net.top(v, w).hash() * 31 + h0[w]);
            in.push_back(net.top(w, v).hash() * 31 + h0[w]);
        }
        std::sort(out.begin(), out.end());
        std::sort(in.begin(), in.end());
        std::size_t h = h0[v] * 1000003 + net.top(v, v).hash();
        for (auto x : out) h = h * 1099511628211ull ^ x;
        h ^= 0x9e3779b97f4a7c15ull;
        for (auto x : in) h = h * 1099511628211ull ^ x;
        h1[v] = h;
    }
    std::vector<Node> order{st.x0, st.y0};
    std::vector<Node> rest;
    for (Node v = 0; v < n; ++v)
        if (v != st.x0 && v != st.y0) rest.push_back(v);
    std::stable_sort(rest.begin(), rest.end(), [&](Node a, Node b) { return h1[a] < h1[b]; });
    order.insert(order.end(), rest.begin(), rest.end());
    return order;
}

GameState relabel(const GameState& st, const std::vector<Node>& order)
{
    GameState out;
    out.net = Network(st.net.elems());
    for (Node v : order) out.net.add_node(st.net.name(v), st.net.index(v));
    for (Node i = 0; i < order.size(); ++i) {
        out.net.bot(i) = st.net.bot(order[i]);
        for (Node j = 0; j < order.size(); ++j) out.net.top(i, j) = st.net.top(order[i], order[j]);
        if (order[i] == st.x0) out.x0 = i;
        if (order[i] == st.y0) out.y0 = i;
    }
    out.s_bot = st.s_bot;
    out.rounds_left = st.rounds_left;
    return out;
}

GameSolver::GameSolver(const Game& g, SolveOptions opt) : g_(g), opt_(opt), start_(std::chrono::steady_clock::now()) {}

std::string GameSolver::canonical_key(const GameState& st)
{
    const Network& net = st.net;
    auto order = canonical_order(st);
    std::string key;
    auto put = [&](std::uint64_t w) { key.append(reinterpret_cast<const char*>(&w), sizeof w); };
    put(net.size());
    put(st.s_bot);
    for (Node a : order) {
        for (auto w : net.bot(a).words()) put(w);
        for (Node b : order)
            for (auto w : net.top(a, b).words()) put(w);
    }
    return key;
}

std::vector<Move> GameSolver::useful_moves(const GameState& st) const
{
    const Algebra& s = g_.structure();
    const Network& net = st.net;
    auto has_edge_from = [&](Node x, Elem e) {
        for (Node z = 0; z < net.size(); ++z)
            if (net.has_top(x, z, e)) return true;
        return false;
    };
    std::vector<Move> comp, rest;
    std::vector<std::tuple<Node, Node, Elem>> comp_seen;
    for (const Move& m : g_.legal_moves(st)) {
        switch (m.kind) {
        case MoveKind::Choice:
            if ((net.has_top(m.x, m.y, m.a) && has_edge_from(m.x, m.b)) ||
                (net.has_top(m.x, m.y, m.b) && has_edge_from(m.x, m.a)))
                continue;
            rest.push_back(m);
            break;
        case MoveKind::Join:
            if (net.has_top(m.x, m.y, s.join(m.a, m.b)) || net.bot(m.x).test(m.b)) continue;
            rest.push_back(m);
            break;
        case MoveKind::Witness: {
            bool have = false;
            for (Node z = 0; z < net.size() && !have; ++z) have = net.has_top(m.x, z, m.a) && net.has_top(z, m.y, m.b);
            if (!have) rest.push_back(m);
            break;
        }
        case MoveKind::Composition: {
            Elem c = s.comp(m.a, m.b);
            if (net.has_top(m.x, m.z, c)) continue;
            auto key = std::make_tuple(m.x, m.z, c);
            if (std::find(comp_seen.begin(), comp_seen.end(), key) != comp_seen.end()) continue;
            comp_seen.push_back(key);
            comp.push_back(m);
            break;
        }
        case MoveKind::Init:
            break;
        }
    }
    comp.insert(comp.end(), rest.begin(), rest.end());
    return comp;
}

bool GameSolver::exists_wins(const GameState& st)
{
    const int k = st.rounds_left;
    if (k <= 0) return true;
    std::string key = canonical_key(st);
    if (auto it = memo_.find(key); it != memo_.end()) {
        if (k <= it->second.exists_upto) return true;
        if (k >= it->second.forall_from) return false;
    }
    if (++visited_ > opt_.max_states) throw Budget{};
    if (opt_.time_budget > 0 && visited_ % 256 == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > opt_.time_budget)
        throw Budget{};
    for (const Move& m : useful_moves(st)) {
        bool refuted = false;
        for (const Response& r : g_.replies(st, m)) {
            GameState nst = g_.apply(st, m, r);
            if (is_consistent(nst) && exists_wins(nst)) {
                refuted = true;
                break;
            }
        }
        if (!refuted) {
            auto& e = memo_[key];
            e.forall_from = std::min(e.forall_from, k);
            return false;
        }
    }
    auto& e = memo_[key];
    e.exists_upto = std::max(e.exists_upto, k);
    return true;
}

Winner GameSolver::value(const GameState& st)
{
    if (!is_consistent(st)) return Winner::Forall;
    try {
        return exists_wins(st) ? Winner::Exists : Winner::Forall;
    } catch (const Budget&) {
        return Winner::BudgetExceeded;
    }
}

std::optional<Move> GameSolver::winning_forall_move(const GameState& st)
{
    if (!is_consistent(st) || st.rounds_left <= 0) return std::nullopt;
    try {
        for (const Move& m : useful_moves(st)) {
            bool refuted = false;
            for (const Response& r : g_.replies(st, m)) {
                GameState nst = g_.apply(st, m, r);
                if (is_consistent(nst) && exists_wins(nst)) {
                    refuted = true;
                    break;
                }
            }
            if (!refuted) return m;
        }
    } catch (const Budget&) {
    }
    return std::nullopt;
}

std::optional<Response> GameSolver::winning_reply(const GameState& st, const Move& m)
{
    try {
        for (const Response& r : g_.replies(st, m)) {
            GameState nst = g_.apply(st, m, r);
            if (is_consistent(nst) && exists_wins(nst)) return r;
        }
    } catch (const Budget&) {
    }
    return std::nullopt;
}

std::vector<Ply> GameSolver::principal_line(const GameState& start)
{
    std::vector<Ply> line;
    GameState st = start;
    while (st.rounds_left > 0 && is_consistent(st)) {
        Winner w = value(st);
        if (w == Winner::BudgetExceeded) break;
        Ply p;
        if (w == Winner::Forall) {
            auto m = winning_forall_move(st);
            if (!m) break;
            p.move = *m;
            auto rs = g_.replies(st, *m);
            p.reply = rs.front();
            for (const auto& r : rs)
                if (is_consistent(g_.apply(st, *m, r))) {
                    p.reply = r;
                    break;
                }
        } else {
            auto ms = useful_moves(st);
            if (ms.empty()) break;
            p.move = ms.front();
            auto r = winning_reply(st, p.move);
            if (!r) break;
            p.reply = *r;
        }
        st = g_.apply(st, p.move, p.reply);
        line.push_back(p);
    }
    return line;
}

namespace {

struct OpeningResult {
    Winner winner = Winner::Exists;
    GameState start;
    bool swapped = false;
    std::vector<Ply> line;
    std::size_t states = 0;
};

OpeningResult solve_opening(const Game& g, GameSolver& solver, Elem a, Elem b, int rounds)
{
    OpeningResult res;
    bool budget = false;
    for (bool alt : {false, true}) {
        GameState st = g.initial(a, b, alt, rounds);
        Winner w = solver.value(st);
        if (w == Winner::Exists) {
            res.winner = Winner::Exists;
            res.start = st;
            res.swapped = alt;
            res.line = solver.principal_line(st);
            return res;
        }
        if (w == Winner::BudgetExceeded) budget = true;
        if (!alt) res.start = st;
    }
    res.winner = budget ? Winner::BudgetExceeded : Winner::Forall;
    if (!budget) res.line = solver.principal_line(res.start);
    return res;
}

} // namespace

SolveResult solve_game(const Algebra& s, int rounds, std::optional<std::pair<Elem, Elem>> opening,
                       const SolveOptions& opt)
{
    Game g(s);
    std::vector<std::pair<Elem, Elem>> openings;
    if (opening) {
        if (opening->first == opening->second) throw std::invalid_argument("opening needs two distinct elements");
        openings.push_back(*opening);
    } else {
        for (Elem a = 0; a < s.size(); ++a)
            for (Elem b = a + 1; b < s.size(); ++b) openings.emplace_back(a, b);
    }
    SolveResult out;
    if (openings.empty()) {
        out.winner = Winner::Exists;
        out.note = "no opening pair exists; ∀ cannot start";
        return out;
    }

    const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(openings.size())));
    std::vector<OpeningResult> results(openings.size());
    std::vector<std::size_t> states(jobs, 0);
    auto work = [&](unsigned t) {
        GameSolver solver(g, opt);
        for (std::size_t i = t; i < openings.size(); i += jobs)
            results[i] = solve_opening(g, solver, openings[i].first, openings[i].second, rounds);
        states[t] = solver.states();
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::future<void>> fs;
        for (unsigned t = 0; t < jobs; ++t) fs.push_back(std::async(std::launch::async, work, t));
        for (auto& f : fs) f.get();
    }
    for (auto n : states) out.states += n;

    std::optional<std::size_t> budget;
    for (std::size_t i = 0; i < openings.size(); ++i) {
        if (results[i].winner == Winner::Forall) {
            out.winner = Winner::Forall;
            out.opening = openings[i];
            out.start = results[i].start;
            out.swapped = results[i].swapped;
            out.line = results[i].line;
            return out;
        }
        if (results[i].winner == Winner::BudgetExceeded && !budget) budget = i;
    }
    if (budget) {
        out.winner = Winner::BudgetExceeded;
        out.opening = openings[*budget];
        out.note = "state or time budget exceeded";
        return out;
    }
    out.winner = Winner::Exists;
    out.opening = openings.front();
    out.start = results.front().start;
    out.swapped = results.front().swapped;
    out.line = results.front().line;
    return out;
}

std::string trace_to_text(const Game& g, int rounds, const Move& init, const Response& init_reply,
                          const std::vector<Ply>& plies)
{
    std::ostringstream o;
    o << "# demrel game trace\n";
    o << "rounds " << rounds << "\n";
    GameState st = g.apply(GameState{Network(g.structure().size()), 0, 1, 0, rounds}, init, init_reply);
    o << g.format(Ply{init, init_reply}, st.net) << "\n";
    for (const auto& p : plies) {
        o << g.format(p, st.net) << "\n";
        st = g.apply(st, p.move, p.reply);
    }
    return o.str();
}

namespace {

Elem elem_arg(const Algebra& s, const std::string& w, int no)
{
    auto e = s.find(w);
    if (!e) throw ParseError("line " + std::to_string(no) + ": unknown element '" + w + "'");
    return *e;
}

Node node_arg(const Network& n, const std::string& w, int no)
{
    auto v = n.find(w);
    if (!v) throw ParseError("line " + std::to_string(no) + ": unknown node '" + w + "'");
    return *v;
}

} // namespace

ReplayResult replay_trace(const Game& g, std::string_view txt)
{
    const Algebra& s = g.structure();
    ReplayResult res;
    std::optional<int> rounds;
    bool started = false;
    GameState st;
    for (auto& [no, line] : text::logical_lines(txt)) {
        auto w = text::words(line);
        auto need = [&](std::size_t k) {
            if (w.size() != k) throw ParseError("line " + std::to_string(no) + ": expected " + std::to_string(k) + " fields");
        };
        if (w[0] == "rounds") {
            need(2);
            try {
                rounds = std::stoi(w[1]);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(no) + ": bad round count");
            }
            continue;
        }
        Move m;
        Response r;
        auto reply_at = [&](std::size_t i) {
            if (w[i] != "reply") throw ParseError("line " + std::to_string(no) + ": expected 'reply'");
        };
        auto node_or_new = [&](const std::string& t) -> std::optional<Node> {
            if (t == "new") return std::nullopt;
            return node_arg(st.net, t, no);
        };
        auto keep_swap = [&](const std::string& t) {
            if (t != "keep" && t != "swap") throw ParseError("line " + std::to_string(no) + ": expected keep or swap");
            return t == "swap";
        };
        if (w[0] == "init") {
            need(5);
            if (started) throw ParseError("line " + std::to_string(no) + ": second init");
            reply_at(3);
            m = Move::init(elem_arg(s, w[1], no), elem_arg(s, w[2], no));
            r.alt = keep_swap(w[4]);
            st = g.initial(m.a, m.b, r.alt, rounds.value_or(0));
            started = true;
            if (!is_consistent(st) && !res.lost_at) res.lost_at = 0;
            continue;
        }
        if (!started) throw ParseError("line " + std::to_string(no) + ": move before init");
        if (w[0] == "choice") {
            need(8);
            reply_at(5);
            m = Move::choice(node_arg(st.net, w[1], no), node_arg(st.net, w[2], no), elem_arg(s, w[3], no),
                             elem_arg(s, w[4], no));
            r.alt = keep_swap(w[6]);
            r.z = node_or_new(w[7]);
        } else if (w[0] == "join") {
            need(7);
            reply_at(5);
            m = Move::join(node_arg(st.net, w[1], no), node_arg(st.net, w[2], no), elem_arg(s, w[3], no),
                           elem_arg(s, w[4], no));
            if (w[6] != "top" && w[6] != "bot") throw ParseError("line " + std::to_string(no) + ": expected top or bot");
            r.alt = w[6] == "bot";
        } else if (w[0] == "witness") {
            need(7);
            reply_at(5);
            m = Move::witness(node_arg(st.net, w[1], no), node_arg(st.net, w[2], no), elem_arg(s, w[3], no),
                              elem_arg(s, w[4], no));
            r.z = node_or_new(w[6]);
        } else if (w[0] == "compose") {
            need(6);
            m = Move::composition(node_arg(st.net, w[1], no), node_arg(st.net, w[2], no), node_arg(st.net, w[3], no),
                                  elem_arg(s, w[4], no), elem_arg(s, w[5], no));
        } else {
            throw ParseError("line " + std::to_string(no) + ": unknown move '" + w[0] + "'");
        }
        if (!g.is_legal(st, m))
            throw std::invalid_argument("ply " + std::to_string(res.plies + 1) + " (line " + std::to_string(no) +
                                        "): illegal move '" + line + "'");
        st = g.apply(st, m, r);
        ++res.plies;
        if (!is_consistent(st) && !res.lost_at) res.lost_at = res.plies;
    }
    res.started = started;
    res.final = st;
    return res;
}

} // namespace demrel
