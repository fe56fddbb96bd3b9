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


#include "demrel/sn_strategies.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace demrel {

namespace {

std::string rho_name(std::uint32_t rho, int N)
{
    std::string s;
    for (int i = 0; i < N; ++i) s += (rho >> i) & 1u ? '1' : '0';
    return s;
}

} // namespace

bool is_indexed(const Network& net, const SnAlgebra& s)
{
    const auto& u = s.universe();
    for (Node x = 0; x < net.size(); ++x)
        for (Node y = 0; y < net.size(); ++y) {
            bool ok = true;
            net.top(x, y).for_each([&](std::size_t e) {
                GenSet g = s.set_of(static_cast<Elem>(e));
                if (g == 0 || net.index(x) == 0 || u.delta(g) != net.index(x)) ok = false;
            });
            if (!ok) return false;
        }
    return true;
}

Figure5 build_figure5_network(const SnAlgebra& s, std::size_t max_nodes)
{
    const auto& u = s.universe();
    const int N = u.N();
    const std::uint32_t R = 1u << N;
    const std::size_t count = 5 + 6 * static_cast<std::size_t>(N) + static_cast<std::size_t>(R) * R;
    if (count > max_nodes)
        throw std::length_error("saturated network would have " + std::to_string(count) + " nodes");

    Figure5 f;
    Network& net = f.net;
    net = Network(s.size());
    f.x = net.add_node("x", 1);
    f.y = net.add_node("y", 3);
    f.z = net.add_node("z", 3);
    f.u = net.add_node("u", 3);
    f.cross = net.add_node("×", 0);
    std::vector<std::pair<int, int>> lr;
    for (int l = 0; l < u.generator_count(); ++l)
        for (int r = 0; r < u.generator_count(); ++r)
            if ((u.L() & SnUniverse::bit(l)) && (u.R() & SnUniverse::bit(r)) && u.bullet(l, r) == u.pp()) {
                f.w.push_back(net.add_node("w[" + u.gen_name(l) + "," + u.gen_name(r) + "]", 2));
                lr.emplace_back(l, r);
            }
    for (std::uint32_t rho = 0; rho < R; ++rho)
        for (std::uint32_t rho2 = 0; rho2 < R; ++rho2)
            f.v.push_back(net.add_node("v[" + rho_name(rho, N) + "," + rho_name(rho2, N) + "]", 2));

    const Bits pp_up = s.up(u.pp());
    const Bits p_or_pp = pp_up | s.up(u.p());
    const Bits d1 = s.up(u.d(1)), d2 = s.up(u.d(2)), d3 = s.up(u.d(3));
    const Bits d2_dbl = s.d2_double_up();

    net.top(f.x, f.y) = pp_up;
    net.top(f.x, f.z) = p_or_pp;
    net.top(f.x, f.u) = p_or_pp;
    net.top(f.x, f.cross) = d1;
    for (std::size_t k = 0; k < f.w.size(); ++k) {
        Node w = f.w[k];
        net.top(f.x, w) = s.up(lr[k].first);
        net.top(w, f.y) = s.up(lr[k].second);
        net.top(w, f.cross) = d2;
        net.top(w, f.u) = d2_dbl;
    }
    for (std::uint32_t rho = 0; rho < R; ++rho)
        for (std::uint32_t rho2 = 0; rho2 < R; ++rho2) {
            Node v = f.v[rho * R + rho2];
            net.top(f.x, v) = s.B_left(rho);
            net.top(v, f.z) = s.B_right(rho2);
            net.top(v, f.cross) = d2;
            net.top(v, f.u) = d2_dbl;
        }
    for (Node q : {f.y, f.z, f.u}) net.top(q, f.cross) = d3;

    for (Node q = 0; q < net.size(); ++q) {
        if (q == f.cross) {
            net.bot(q).set_all();
        } else {
            net.bot(q) = s.bot_label(net.index(q));
        }
    }
    return f;
}

std::vector<std::pair<Elem, Elem>> undiscriminated_pairs(const Network& net)
{
    const std::size_t n = net.size();
    std::vector<Bits> sig(net.elems(), Bits(n * n));
    for (Node x = 0; x < n; ++x)
        for (Node y = 0; y < n; ++y) net.top(x, y).for_each([&](std::size_t a) { sig[a].set(x * n + y); });
    std::map<Bits, std::vector<Elem>> groups;
    for (Elem a = 0; a < net.elems(); ++a) groups[sig[a]].push_back(a);
    std::vector<std::pair<Elem, Elem>> out;
    for (auto& [k, g] : groups)
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) out.emplace_back(g[i], g[j]);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Move> lemma3_move(const SnAlgebra& s, const GameState& st)
{
    const auto& u = s.universe();
    const Network& net = st.net;
    for (Node x = 0; x < net.size(); ++x) {
        if (net.bot(x).none()) continue;
        for (Node y = 0; y < net.size(); ++y)
            for (std::size_t se = net.top(x, y).next(0); se < net.elems(); se = net.top(x, y).next(se + 1)) {
                const GenSet gs = s.set_of(static_cast<Elem>(se));
                if (gs == 0) continue;
                const Bits& bot = net.bot(x);
                for (std::size_t te = bot.next(0); te < net.elems(); te = bot.next(te + 1)) {
                    const GenSet gt = s.set_of(static_cast<Elem>(te));
                    if (te == se || (gs & ~gt) != 0) continue;
                    const int i = u.delta(gs);
                    const Elem di = s.make({u.d(i)});
                    for (Node z = 0; z < net.size(); ++z)
                        if (net.has_top(x, z, di)) {
                            for (int j = 1; j <= 3; ++j) {
                                Elem dj = s.make({u.d(j)});
                                if (s.comp(static_cast<Elem>(te), dj) == di)
                                    return Move::witness(x, z, static_cast<Elem>(te), dj);
                            }
                        }
                    return Move::choice(x, y, static_cast<Elem>(se), di);
                }
            }
    }
    return std::nullopt;
}

ForallScript::ForallScript(const SnAlgebra& s) : s_(s), game_(s) {}

Move ForallScript::opening() const
{
    const auto& u = s_.universe();
    return Move::init(s_.make({u.pp(), u.d(1)}), s_.make({u.p(), u.pp(), u.d(1)}));
}

std::optional<Move> ForallScript::next(const GameState& st) const
{
    if (!is_consistent(st)) return std::nullopt;
    auto order = canonical_order(st);
    auto m = next_raw(relabel(st, order));
    if (!m) return m;
    m->x = order[m->x];
    m->y = order[m->y];
    if (m->kind == MoveKind::Composition) m->z = order[m->z];
    return m;
}

std::optional<Move> ForallScript::next_raw(const GameState& st) const
{
    const auto& u = s_.universe();
    const Network& net = st.net;
    const std::size_t n = net.size();
    const std::size_t m = net.elems();

    // a composition that lands on s_⊥ or on a forbidden label
    for (Node x = 0; x < n; ++x)
        for (Node y = 0; y < n; ++y) {
            const Bits& t1 = net.top(x, y);
            if (t1.none()) continue;
            for (Node z = 0; z < n; ++z) {
                const Bits& t2 = net.top(y, z);
                for (std::size_t a = t1.next(0); a < m; a = t1.next(a + 1))
                    for (std::size_t b = t2.next(0); b < m; b = t2.next(b + 1)) {
                        Elem c = s_.comp(static_cast<Elem>(a), static_cast<Elem>(b));
                        if (net.has_top(x, z, c)) continue;
                        if ((x == st.x0 && z == st.y0 && c == st.s_bot) || net.bot(x).test(c))
                            return Move::composition(x, y, z, static_cast<Elem>(a), static_cast<Elem>(b));
                    }
            }
        }

    if (auto p = lemma3_move(s_, st)) return p;

    const Elem pp_d1 = s_.make({u.pp(), u.d(1)});
    const Elem p_pp_d1 = s_.make({u.p(), u.pp(), u.d(1)});
    const Elem p_d1 = s_.make({u.p(), u.d(1)});
    const Node x0 = st.x0, y0 = st.y0;

    // {p′,d₁} kept, {p,p′,d₁} forbidden: push the forbidden label into ⊥(x₀)
    if (st.s_bot == p_pp_d1 && net.has_top(x0, y0, pp_d1)) return Move::join(x0, y0, pp_d1, p_pp_d1);

    if (st.s_bot != pp_d1 || !net.has_top(x0, y0, p_pp_d1)) return std::nullopt;
    if (!net.has_top(x0, y0, p_d1)) return Move::choice(x0, y0, p_d1, pp_d1);

    const Elem al_d1 = s_.make({u.al(), u.d(1)});
    const Elem ar_d2 = s_.make({u.ar(), u.d(2)});
    std::optional<Node> z;
    for (Node c = 0; c < n && !z; ++c)
        if (net.has_top(x0, c, al_d1) && net.has_top(c, y0, ar_d2)) z = c;
    if (!z) return Move::witness(x0, y0, al_d1, ar_d2);

    for (int i = 0; i < u.N(); ++i) {
        for (bool left : {true, false}) {
            const Node from = left ? x0 : *z, to = left ? *z : y0;
            const int d = left ? u.d(1) : u.d(2);
            const Elem base = left ? al_d1 : ar_d2;
            const int a = left ? u.al() : u.ar();
            const int b = left ? u.bl(i) : u.br(i);
            const int c = left ? u.cl(i) : u.cr(i);
            const Elem eb = s_.make({b, d}), ec = s_.make({c, d});
            if (net.has_top(from, to, eb) || net.has_top(from, to, ec)) continue;
            const Elem parent = s_.make({a, b, c, d});
            if (net.has_top(from, to, parent)) return Move::choice(from, to, eb, ec);
            return Move::join(from, to, base, parent);
        }
    }
    return std::nullopt;
}

namespace {

constexpr int kInf = 1 << 20;

struct ScriptExplorer {
    const ForallScript& script;
    const Game& game;
    std::size_t max_states;
    std::size_t states = 0;
    struct Entry {
        int value;
        bool exact;
    };
    std::unordered_map<std::string, Entry> memo;
    struct Budget {};

    // min(moves the script needs against the worst reply, budget + 1)
    int depth(const GameState& st, int budget)
    {
        if (!is_consistent(st)) return 0;
        if (budget <= 0) return 1;
        std::string key = GameSolver::canonical_key(st);
        if (auto it = memo.find(key); it != memo.end()) {
            if (it->second.exact) return std::min(it->second.value, budget + 1);
            if (it->second.value > budget) return budget + 1;
        }
        if (++states > max_states) throw Budget{};
        auto m = script.next(st);
        if (!m) {
            memo[key] = {kInf, true};
            return budget + 1;
        }
        int worst = 0;
        for (const auto& r : game.replies(st, *m)) {
            worst = std::max(worst, depth(game.apply(st, *m, r), budget - 1));
            if (worst + 1 > budget) break;
        }
        int res = worst + 1;
        if (res <= budget)
            memo[key] = {res, true};
        else
            memo[key] = {budget + 1, false};
        return std::min(res, budget + 1);
    }
};

} // namespace

ScriptReport verify_forall_script(const SnAlgebra& s, int limit, std::size_t max_states)
{
    ForallScript script(s);
    Game game(s);
    ScriptExplorer ex{script, game, max_states, 0, {}};
    ScriptReport rep;
    const Move open = script.opening();
    int worst = 0;
    try {
        for (bool alt : {false, true}) {
            GameState st = game.initial(open.a, open.b, alt, kInf);
            rep.starts.push_back(st);
            int d = ex.depth(st, limit);
            if (d > worst) {
                worst = d;
                rep.worst_start = alt ? 1 : 0;
            }
        }
        rep.complete = true;
    } catch (const ScriptExplorer::Budget&) {
        rep.states = ex.states;
        return rep;
    }
    rep.states = ex.states;
    rep.wins_within = worst <= limit;
    if (!rep.wins_within) return rep;
    rep.worst_moves = worst;

    GameState st = rep.starts[rep.worst_start];
    for (int left = worst; left > 0 && is_consistent(st); --left) {
        auto m = script.next(st);
        if (!m) break;
        Response best;
        int bd = -1;
        for (const auto& r : game.replies(st, *m)) {
            int d = ex.depth(game.apply(st, *m, r), left - 1);
            if (d > bd) {
                bd = d;
                best = r;
            }
        }
        rep.worst_line.push_back({*m, best});
        st = game.apply(st, *m, best);
    }
    return rep;
}

char DeltaState::add(int i)
{
    i = ((i % N_) + N_) % N_;
    if (contains(i)) return letter(i);
    if (letter_.empty()) {
        start_ = i;
        return letter_[i] = 'b';
    }
    auto flip = [](char c) { return c == 'b' ? 'c' : 'b'; };
    const int end = (start_ + size() - 1) % N_;
    const int fwd = ((i - end) % N_ + N_) % N_;
    const int bwd = ((start_ - i) % N_ + N_) % N_;
    if (fwd <= bwd) {
        for (int t = 1; t <= fwd; ++t) {
            int k = (end + t) % N_;
            letter_[k] = flip(letter_[(k - 1 + N_) % N_]);
        }
    } else {
        for (int t = 1; t <= bwd; ++t) {
            int k = ((start_ - t) % N_ + N_) % N_;
            letter_[k] = flip(letter_[(k + 1) % N_]);
        }
        start_ = i;
    }
    return letter_[i];
}

bool DeltaState::well_formed() const
{
    const int n = size();
    for (int t = 0; t < n; ++t) {
        int k = (start_ + t) % N_;
        auto it = letter_.find(k);
        if (it == letter_.end() || (it->second != 'b' && it->second != 'c')) return false;
        if (t + 1 < n && letter(k) == letter((k + 1) % N_)) return false;
    }
    if (n == N_ && n > 0 && letter((start_ + n - 1) % N_) == letter(start_)) return false;
    return true;
}

ExistsScript::ExistsScript(const SnAlgebra& s, int rounds, ExistsMode mode)
    : s_(s), rounds_(rounds), mode_(mode), game_(s)
{
    if (rounds < 0 || rounds > s.universe().n())
        throw std::domain_error("∃ strategy is only guaranteed for at most " + std::to_string(s.universe().n()) +
                                " rounds on this structure");
    const auto& u = s.universe();
    primes_ = sn_prime_elements(s);
    for (int k = 1; k <= 3; ++k) irreducibles_.push_back(s.make({u.d(k)}));
    for (int g = 0; g < u.generator_count(); ++g) {
        GenSet b = SnUniverse::bit(g);
        if ((u.L() | u.P()) & b) irreducibles_.push_back(s.make({g, u.d(1)}));
        if (u.R() & b) irreducibles_.push_back(s.make({g, u.d(2)}));
    }
    if (mode == ExistsMode::Figure5) fig_ = build_figure5_network(s);
}

std::optional<Elem> ExistsScript::separating_prime(Elem a, Elem b) const
{
    const GenSet ga = s_.set_of(a), gb = s_.set_of(b);
    for (Elem p : primes_) {
        GenSet gp = s_.set_of(p);
        if ((gp & ~ga) == 0 && (gp & ~gb) != 0) return p;
    }
    return std::nullopt;
}

const DeltaState* ExistsScript::delta_for(Node x, Node z) const
{
    for (const auto& d : deltas_)
        if ((d.x == x && d.z == z) || (d.z == x && d.y == z)) return &d.delta;
    return nullptr;
}

GameState ExistsScript::open(Elem a, Elem b)
{
    deltas_.clear();
    if (mode_ == ExistsMode::Figure5) {
        const Network& net = fig_->net;
        for (Node x = 0; x < net.size(); ++x)
            for (Node y = 0; y < net.size(); ++y)
                if (net.has_top(x, y, a) != net.has_top(x, y, b)) {
                    GameState st;
                    st.net = net;
                    st.x0 = x;
                    st.y0 = y;
                    st.s_bot = net.has_top(x, y, a) ? b : a;
                    st.rounds_left = rounds_;
                    return st;
                }
    }
    return open_prime(a, b);
}

GameState ExistsScript::open_prime(Elem a, Elem b) const
{
    const auto& u = s_.universe();
    bool alt = false;
    auto pi = separating_prime(a, b);
    if (!pi) {
        pi = separating_prime(b, a);
        alt = true;
    }
    if (!pi) throw std::logic_error("no prime separates " + s_.name(a) + " and " + s_.name(b));
    GameState st = game_.initial(a, b, alt, rounds_);
    const GenSet g = s_.set_of(*pi);
    st.net.top(st.x0, st.y0) = s_.up_set(g);
    const int ix = u.delta(g);
    int iy = 3;
    if ((g & u.L()) || g == SnUniverse::bit(u.d(1))) iy = 2;
    st.net.set_index(st.x0, ix);
    st.net.set_index(st.y0, iy);
    st.net.bot(st.x0) = s_.bot_label(ix);
    st.net.bot(st.y0) = s_.bot_label(iy);
    return st;
}

void ExistsScript::close_compositions(GameState& st) const
{
    Network& net = st.net;
    const std::size_t n = net.size(), m = net.elems();
    bool changed = true;
    while (changed) {
        changed = false;
        for (Node x = 0; x < n; ++x)
            for (Node y = 0; y < n; ++y) {
                if (net.top(x, y).none()) continue;
                for (Node z = 0; z < n; ++z) {
                    if (net.top(y, z).none()) continue;
                    Bits add(m);
                    net.top(x, y).for_each([&](std::size_t a) {
                        net.top(y, z).for_each([&](std::size_t b) {
                            add.set(s_.comp(static_cast<Elem>(a), static_cast<Elem>(b)));
                        });
                    });
                    if (!add.subset_of(net.top(x, z))) {
                        net.top(x, z) |= add;
                        changed = true;
                    }
                }
            }
    }
}

Node ExistsScript::fresh_prime_edge(GameState& st, Node x, Elem e) const
{
    const auto& u = s_.universe();
    const GenSet ge = s_.set_of(e);
    GenSet best = SnUniverse::bit(u.d(u.delta(ge)));
    for (Elem p : primes_) {
        GenSet gp = s_.set_of(p);
        if ((gp & ~ge) == 0 && std::popcount(gp) > std::popcount(best)) best = gp;
    }
    const Node z = st.net.size() - 1; // the node the conservative reply just added
    st.net.top(x, z) |= s_.up_set(best);
    const int iz = ((best & u.L()) || best == SnUniverse::bit(u.d(1))) ? 2 : 3;
    st.net.set_index(z, iz);
    st.net.bot(z) = s_.bot_label(iz);
    return z;
}

GameState ExistsScript::respond(const GameState& st, const Move& m)
{
    const auto& u = s_.universe();
    const Network& net = st.net;
    auto reps = game_.replies(st, m);
    for (const auto& r : reps) {
        GameState nst = game_.apply(st, m, r);
        if (nst.net == net) return nst;
    }
    if (mode_ == ExistsMode::Figure5 && fig_ && net.size() == fig_->net.size())
        return game_.apply(st, m, reps.front()); // unreachable on a saturated network

    GameState out;
    switch (m.kind) {
    case MoveKind::Choice: {
        Elem keep = net.has_top(m.x, m.y, m.a) || !net.has_top(m.x, m.y, m.b) ? m.a : m.b;
        if (const DeltaState* cd = delta_for(m.x, m.y)) {
            for (int i = 0; i < u.N(); ++i) {
                for (int d : {1, 2}) {
                    Elem eb = s_.make({d == 1 ? u.bl(i) : u.br(i), u.d(d)});
                    Elem ec = s_.make({d == 1 ? u.cl(i) : u.cr(i), u.d(d)});
                    if ((m.a == eb && m.b == ec) || (m.a == ec && m.b == eb)) {
                        auto* dd = const_cast<DeltaState*>(cd);
                        keep = dd->add(i) == 'b' ? eb : ec;
                    }
                }
            }
        }
        const Elem other = keep == m.a ? m.b : m.a;
        Response r{keep != m.a, std::nullopt};
        for (Node z = 0; z < net.size() && !r.z; ++z)
            if (net.has_top(m.x, z, other)) r.z = z;
        out = game_.apply(st, m, r);
        if (!r.z) fresh_prime_edge(out, m.x, other);
        break;
    }
    case MoveKind::Join: {
        out = game_.apply(st, m, {false, {}});
        if (!is_consistent(out)) out = game_.apply(st, m, {true, {}});
        break;
    }
    case MoveKind::Witness: {
        const GenSet ga = s_.set_of(m.a), gb = s_.set_of(m.b);
        std::optional<std::pair<Elem, Elem>> best;
        int best_rank = 3;
        for (Elem a0 : irreducibles_) {
            if ((s_.set_of(a0) & ~ga) != 0) continue;
            for (Elem b0 : irreducibles_) {
                if ((s_.set_of(b0) & ~gb) != 0) continue;
                if (!net.has_top(m.x, m.y, s_.comp(a0, b0))) continue;
                bool pa = std::find(primes_.begin(), primes_.end(), a0) != primes_.end();
                bool pb = std::find(primes_.begin(), primes_.end(), b0) != primes_.end();
                int rank = !pa + !pb;
                if (rank < best_rank) {
                    best_rank = rank;
                    best = {a0, b0};
                }
            }
        }
        out = game_.apply(st, m, {false, std::nullopt});
        const Node z = out.net.size() - 1;
        if (!best) break;
        auto [a0, b0] = *best;
        const int iz = u.delta(s_.set_of(b0));
        out.net.set_index(z, iz);
        out.net.bot(z) = s_.bot_label(iz);
        const bool pa = std::find(primes_.begin(), primes_.end(), a0) != primes_.end();
        const bool pb = std::find(primes_.begin(), primes_.end(), b0) != primes_.end();
        const Bits& target = net.top(m.x, m.y);
        auto products_inside = [&](const Bits& left, const Bits& right) {
            bool ok = true;
            left.for_each([&](std::size_t a) {
                if (!ok) return;
                right.for_each([&](std::size_t b) {
                    if (!target.test(s_.comp(static_cast<Elem>(a), static_cast<Elem>(b)))) ok = false;
                });
            });
            return ok;
        };
        if (pa && pb) {
            out.net.top(m.x, z) |= s_.up_set(s_.set_of(a0));
            out.net.top(z, m.y) |= s_.up_set(s_.set_of(b0));
        } else if (pa != pb) {
            const Bits fixed = s_.up_set(s_.set_of(pa ? a0 : b0));
            // the non-prime factor is {aˡ,d₁} or {aʳ,d₂}, on either side
            const bool left_family = (s_.set_of(pa ? b0 : a0) & SnUniverse::bit(u.al())) != 0;
            std::optional<Bits> pick;
            for (std::uint32_t rho = 0; rho < (1u << u.N()) && !pick; ++rho) {
                Bits cand = left_family ? s_.B_left(rho) : s_.B_right(rho);
                if (!cand.test(pa ? m.b : m.a)) continue;
                if (pa ? products_inside(fixed, cand) : products_inside(cand, fixed)) pick = cand;
            }
            if (!pick)
                throw std::logic_error("no B-prime set keeps the witness for " + s_.name(m.a) + " ∘ " + s_.name(m.b) +
                                       " inside its label");
            out.net.top(m.x, z) |= pa ? fixed : *pick;
            out.net.top(z, m.y) |= pa ? *pick : fixed;
        } else {
            deltas_.push_back({m.x, z, m.y, DeltaState(u.N())});
        }
        break;
    }
    case MoveKind::Composition:
    case MoveKind::Init:
        out = game_.apply(st, m, reps.front());
        break;
    }
    close_compositions(out);
    return out;
}

ExistsReport verify_exists_script(const SnAlgebra& s, ExistsMode mode, std::size_t max_examples)
{
    ExistsReport rep;
    ExistsScript ex(s, 1);
    const Game& game = ex.game();
    auto fail = [&](std::string msg) {
        ++rep.failures;
        if (rep.examples.size() < max_examples) rep.examples.push_back(std::move(msg));
    };

    std::optional<Figure5> fig;
    std::vector<Bits> sig; // edges carrying each element, row-major
    GameState fst;
    if (mode == ExistsMode::Figure5) {
        fig = build_figure5_network(s);
        if (!is_saturated(fig->net, s)) fail("saturated network fails saturation");
        fst.net = fig->net;
        const std::size_t n = fig->net.size();
        sig.assign(s.size(), Bits(n * n));
        for (Node x = 0; x < n; ++x)
            for (Node y = 0; y < n; ++y) fig->net.top(x, y).for_each([&](std::size_t e) { sig[e].set(x * n + y); });
    }

    // The opening network depends only on the separating prime; group the
    // forbidden labels by it.
    std::map<Elem, std::pair<std::pair<Elem, Elem>, Bits>> groups;
    for (Elem a = 0; a < s.size(); ++a)
        for (Elem b = 0; b < s.size(); ++b) {
            if (a == b) continue;
            ++rep.openings;
            if (fig) {
                if (sig[a] != sig[b]) {
                    ++rep.figure5;
                    const std::size_t n = fst.net.size();
                    const std::size_t e = (sig[a] ^ sig[b]).next(0);
                    fst.x0 = e / n;
                    fst.y0 = e % n;
                    fst.s_bot = fst.net.has_top(fst.x0, fst.y0, a) ? b : a;
                    // the network itself was checked once above
                    if (!game.is_valid_reply(GameState{}, Move::init(a, b), fst) ||
                        fst.net.has_top(fst.x0, fst.y0, fst.s_bot))
                        fail("saturated opening for " + s.name(a) + ", " + s.name(b) + " is invalid");
                    continue;
                }
            }
            auto pi = ex.separating_prime(a, b);
            Elem forbidden = b;
            if (!pi) {
                pi = ex.separating_prime(b, a);
                forbidden = a;
            }
            if (!pi) {
                fail("no prime separates " + s.name(a) + " and " + s.name(b));
                continue;
            }
            auto [it, fresh] = groups.try_emplace(*pi, std::make_pair(a, b), Bits(s.size()));
            it->second.second.set(forbidden);
        }

    for (auto& [pi, g] : groups) {
        ++rep.networks;
        const auto [a, b] = g.first;
        const Bits& forbidden = g.second;
        GameState st = ex.open(a, b);
        if (!game.is_valid_reply(GameState{}, Move::init(a, b), st) || !is_consistent(st)) {
            fail("opening network for " + s.name(pi) + " is invalid");
            continue;
        }
        forbidden.for_each([&](std::size_t f) {
            if (st.net.has_top(st.x0, st.y0, static_cast<Elem>(f)))
                fail("opening network for " + s.name(pi) + " carries forbidden " + s.name(static_cast<Elem>(f)));
        });
        for (const Move& m : game.legal_moves(st)) {
            ++rep.moves;
            auto check = [&](const GameState& before) {
                ex.open(a, b);
                GameState after;
                try {
                    after = ex.respond(before, m);
                } catch (const std::exception& e) {
                    fail(game.format(m, before.net) + ": " + e.what());
                    return std::optional<GameState>{};
                }
                if (!game.is_valid_reply(before, m, after)) {
                    fail(game.format(m, before.net) + ": reply is not a valid extension");
                    return std::optional<GameState>{};
                }
                if (!is_consistent(after)) {
                    fail(game.format(m, before.net) + ": reply is inconsistent (s_bot " + s.name(before.s_bot) + ")");
                    return std::optional<GameState>{};
                }
                return std::optional<GameState>{after};
            };
            auto out = check(st);
            if (!out) continue;
            // Only Join answers look at s_bot; recheck the labels this answer put on (x₀,y₀).
            Bits hit = out->net.top(st.x0, st.y0) & forbidden;
            hit.for_each([&](std::size_t f) {
                if (f == st.s_bot) return;
                GameState other = st;
                other.s_bot = static_cast<Elem>(f);
                check(other);
            });
        }
    }
    return rep;
}

} // namespace demrel
