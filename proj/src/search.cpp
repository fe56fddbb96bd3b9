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


#include "demrel/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "sat.hpp"
#include "text.hpp"

namespace demrel {

std::string to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::Sat:
        return "SAT";
    case SearchStatus::Unsat:
        return "UNSAT";
    case SearchStatus::Budget:
        return "BUDGET_EXCEEDED";
    }
    return "?";
}

std::string SearchResult::to_json() const
{
    nlohmann::json j;
    j["result"] = to_string(status);
    j["base_size"] = base_size;
    j["unsat_sizes"] = unsat_sizes;
    j["nodes"] = nodes;
    j["conflicts"] = conflicts;
    j["seconds"] = seconds;
    return j.dump();
}

namespace {

using sat::Lit;

class Encoder {
public:
    Encoder(const Algebra& s, int k, const SearchConfig& cfg, const Signature& sig)
        : s_(s), k_(static_cast<std::size_t>(k)), m_(s.size())
    {
        truth_ = S.new_var();
        S.add_clause({truth_});
        pair_.resize(m_ * k_ * k_);
        for (auto& v : pair_) {
            v = S.new_var();
            S.prefer(v);
        }
        dom_.resize(m_ * k_);
        for (Elem a = 0; a < m_; ++a)
            for (std::size_t x = 0; x < k_; ++x) {
                std::vector<Lit> row;
                for (std::size_t y = 0; y < k_; ++y) row.push_back(v(a, x, y));
                dom_[a * k_ + x] = or_gate(row);
            }
        const bool demonic = cfg.semantics == Semantics::Demonic;
        for (Elem a = 0; a < m_; ++a)
            for (Elem b = 0; b < m_; ++b) {
                if (sig.has_comp) encode_comp(a, b, s.comp(a, b));
                if (sig.has_join) demonic ? encode_djoin(a, b, s.join(a, b)) : encode_ajoin(a, b, s.join(a, b));
                if (sig.has_meet) demonic ? encode_dmeet(a, b, s.meet(a, b)) : encode_ameet(a, b, s.meet(a, b));
            }
        if (cfg.require_injective)
            for (Elem a = 0; a < m_; ++a)
                for (Elem b = a + 1; b < m_; ++b) encode_distinct(a, b);
        if (cfg.symmetry_breaking) order_points();
    }

    sat::Solver S;

    RepMap decode() const
    {
        RepMap r;
        r.base = Base::numbered(k_, false);
        for (Elem a = 0; a < m_; ++a) {
            Relation rel(r.base);
            for (std::size_t x = 0; x < k_; ++x)
                for (std::size_t y = 0; y < k_; ++y)
                    if (S.model(v(a, x, y))) rel.insert(x, y);
            r.images.push_back(std::move(rel));
        }
        return r;
    }

private:
    Lit v(Elem a, std::size_t x, std::size_t y) const { return pair_[(a * k_ + x) * k_ + y]; }
    Lit dom(Elem a, std::size_t x) const { return dom_[a * k_ + x]; }

    Lit and_gate(std::vector<Lit> ls)
    {
        if (ls.empty()) return truth_;
        if (ls.size() == 1) return ls[0];
        std::sort(ls.begin(), ls.end());
        if (auto it = ands_.find(ls); it != ands_.end()) return it->second;
        const Lit g = S.new_var();
        std::vector<Lit> back{g};
        for (Lit l : ls) {
            S.add_clause({-g, l});
            back.push_back(-l);
        }
        S.add_clause(back);
        ands_.emplace(std::move(ls), g);
        return g;
    }

    Lit or_gate(std::vector<Lit> ls)
    {
        if (ls.empty()) return -truth_;
        if (ls.size() == 1) return ls[0];
        for (auto& l : ls) l = -l;
        return -and_gate(std::move(ls));
    }

    void equiv(Lit a, Lit b)
    {
        S.add_clause({-a, b});
        S.add_clause({a, -b});
    }

    void encode_comp(Elem a, Elem b, Elem c)
    {
        for (std::size_t x = 0; x < k_; ++x)
            for (std::size_t z = 0; z < k_; ++z) {
                std::vector<Lit> mids;
                for (std::size_t y = 0; y < k_; ++y) mids.push_back(and_gate({v(a, x, y), v(b, y, z)}));
                equiv(v(c, x, z), or_gate(mids));
            }
    }

    // (R∪S)↾(dR∩dS)
    void encode_djoin(Elem a, Elem b, Elem c)
    {
        for (std::size_t x = 0; x < k_; ++x)
            for (std::size_t y = 0; y < k_; ++y)
                equiv(v(c, x, y), and_gate({or_gate({v(a, x, y), v(b, x, y)}), dom(a, x), dom(b, x)}));
    }

    void encode_ajoin(Elem a, Elem b, Elem c)
    {
        for (std::size_t x = 0; x < k_; ++x)
            for (std::size_t y = 0; y < k_; ++y) equiv(v(c, x, y), or_gate({v(a, x, y), v(b, x, y)}));
    }

    // d(R)∩d(S) = d(R∩S), and (R∩S) ∪ R↾∖dS ∪ S↾∖dR
    void encode_dmeet(Elem a, Elem b, Elem c)
    {
        for (std::size_t x = 0; x < k_; ++x) {
            std::vector<Lit> common;
            for (std::size_t y = 0; y < k_; ++y) common.push_back(and_gate({v(a, x, y), v(b, x, y)}));
            common.push_back(-dom(a, x));
            common.push_back(-dom(b, x));
            S.add_clause(common);
            for (std::size_t y = 0; y < k_; ++y)
                equiv(v(c, x, y), or_gate({and_gate({v(a, x, y), v(b, x, y)}), and_gate({v(a, x, y), -dom(b, x)}),
                                           and_gate({v(b, x, y), -dom(a, x)})}));
        }
    }

    void encode_ameet(Elem a, Elem b, Elem c)
    {
        for (std::size_t x = 0; x < k_; ++x)
            for (std::size_t y = 0; y < k_; ++y) equiv(v(c, x, y), and_gate({v(a, x, y), v(b, x, y)}));
    }

    void encode_distinct(Elem a, Elem b)
    {
        std::vector<Lit> some;
        for (std::size_t x = 0; x < k_; ++x)
            for (std::size_t y = 0; y < k_; ++y) {
                const Lit d = S.new_var();
                S.add_clause({-d, v(a, x, y), v(b, x, y)});
                S.add_clause({-d, -v(a, x, y), -v(b, x, y)});
                some.push_back(d);
            }
        S.add_clause(some);
    }

    // Per-point signature (domain and loop membership for every element) is
    // non-increasing in lexicographic order; every model can be permuted into
    // this form.
    void order_points()
    {
        auto sig = [&](std::size_t x) {
            std::vector<Lit> t;
            for (Elem a = 0; a < m_; ++a) {
                t.push_back(dom(a, x));
                t.push_back(v(a, x, x));
            }
            return t;
        };
        for (std::size_t x = 0; x + 1 < k_; ++x) {
            auto p = sig(x), q = sig(x + 1);
            Lit eq = truth_;
            for (std::size_t i = 0; i < p.size(); ++i) {
                S.add_clause({-eq, p[i], -q[i]});
                const Lit same = S.new_var();
                S.add_clause({-same, -p[i], q[i]});
                S.add_clause({-same, p[i], -q[i]});
                S.add_clause({same, p[i], q[i]});
                S.add_clause({same, -p[i], -q[i]});
                eq = and_gate({eq, same});
            }
        }
    }

    const Algebra& s_;
    std::size_t k_, m_;
    Lit truth_ = 0;
    std::vector<Lit> pair_, dom_;
    std::map<std::vector<Lit>, Lit> ands_;
};

struct SizeOutcome {
    sat::Result result = sat::Result::Unsat;
    std::optional<RepMap> rep;
    std::uint64_t nodes = 0, conflicts = 0;
};

SizeOutcome solve_size(const Algebra& s, int k, const SearchConfig& cfg, const Signature& sig,
                       std::optional<std::chrono::steady_clock::time_point> deadline, const std::atomic<bool>* cancel)
{
    Encoder enc(s, k, cfg, sig);
    sat::Limits lim;
    lim.max_decisions = cfg.node_budget;
    lim.deadline = deadline;
    lim.cancel = cancel;
    SizeOutcome out;
    out.result = enc.S.solve(lim);
    out.nodes = enc.S.decisions();
    out.conflicts = enc.S.conflicts();
    if (out.result == sat::Result::Sat) {
        RepMap r = enc.decode();
        CheckOptions opt;
        opt.semantics = cfg.semantics;
        opt.signature = sig;
        opt.require_injective = cfg.require_injective;
        auto rep = check_representation(s, r, opt);
        if (!rep.pass) throw std::logic_error("search produced an invalid representation: " + rep.violations.front());
        out.rep = std::move(r);
    }
    return out;
}

} // namespace

SearchResult search(const Algebra& s, const SearchConfig& cfg)
{
    if (cfg.max_base < 1 || cfg.min_base < 1) throw std::invalid_argument("base sizes must be positive");
    const Signature sig = cfg.signature.value_or(s.signature());
    if (!sig.valid()) throw std::invalid_argument("signature needs ∘ and at least one of +, ·");
    if ((sig.has_join && !s.signature().has_join) || (sig.has_meet && !s.signature().has_meet))
        throw std::invalid_argument("structure lacks an operation of signature " + sig.str());
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (cfg.time_budget > 0)
        deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(cfg.time_budget));

    const int lo = cfg.min_base, hi = cfg.max_base;
    std::vector<SizeOutcome> outs(static_cast<std::size_t>(std::max(0, hi - lo + 1)));
    std::vector<bool> done(outs.size(), false);

    if (cfg.jobs <= 1) {
        for (int k = lo; k <= hi; ++k) {
            auto& o = outs[static_cast<std::size_t>(k - lo)];
            o = solve_size(s, k, cfg, sig, deadline, nullptr);
            done[static_cast<std::size_t>(k - lo)] = true;
            if (o.result != sat::Result::Unsat) break;
        }
    } else {
        // sizes run concurrently; a hit at size k cancels every larger size
        std::vector<std::atomic<bool>> cancel(outs.size());
        for (auto& c : cancel) c = false;
        std::atomic<int> next{lo};
        std::mutex mu;
        std::exception_ptr err;
        auto worker = [&] {
            for (int k = next++; k <= hi; k = next++) {
                const auto i = static_cast<std::size_t>(k - lo);
                if (cancel[i]) continue;
                try {
                    auto o = solve_size(s, k, cfg, sig, deadline, &cancel[i]);
                    std::lock_guard<std::mutex> g(mu);
                    if (o.result == sat::Result::Sat)
                        for (std::size_t j = i + 1; j < cancel.size(); ++j) cancel[j] = true;
                    outs[i] = std::move(o);
                    done[i] = true;
                } catch (...) {
                    std::lock_guard<std::mutex> g(mu);
                    err = std::current_exception();
                }
            }
        };
        std::vector<std::thread> ts;
        for (unsigned t = 0; t < cfg.jobs; ++t) ts.emplace_back(worker);
        for (auto& t : ts) t.join();
        if (err) std::rethrow_exception(err);
    }

    SearchResult res;
    res.status = SearchStatus::Unsat;
    for (std::size_t i = 0; i < outs.size(); ++i) {
        const auto& o = outs[i];
        res.nodes += o.nodes;
        res.conflicts += o.conflicts;
    }
    for (std::size_t i = 0; i < outs.size(); ++i) {
        const int k = lo + static_cast<int>(i);
        if (!done[i]) {
            res.status = SearchStatus::Budget;
            break;
        }
        auto& o = outs[i];
        if (o.result == sat::Result::Unsat) {
            res.unsat_sizes.push_back(k);
            res.base_size = k;
            continue;
        }
        if (o.result == sat::Result::Sat) {
            res.status = SearchStatus::Sat;
            res.rep = std::move(o.rep);
            res.base_size = k;
        } else {
            res.status = SearchStatus::Budget;
        }
        break;
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// chain certificate

ChainCertificate point_algebra_chain_lowerbound(int k)
{
    if (k < 0) throw std::invalid_argument("chain length must be nonnegative");
    ChainCertificate c;
    c.k = k;
    c.lower_bound = k + 2;
    c.points.push_back("x0");
    for (int i = 0; i <= k; ++i) c.points.push_back("y" + std::to_string(i));
    auto y = [](int i) { return "y" + std::to_string(i); };
    const std::vector<std::string> loop_ids{"e∘g = g", "e·g = z", "g∘z∘g = z"};

    c.steps.push_back({"(x0,y0) ∈ g, (x0,y0) ∉ z", "separation: a pair in z∖g would lie in g", {"g∘z = z", "z·g = z"}, {}});
    std::vector<std::size_t> loops{c.steps.size()};
    c.steps.push_back({"(y0,y0) ∉ g", "loop elimination: a g-loop at y0 puts (x0,y0) in z", loop_ids, {0}});
    std::size_t last_edge = 0; // step giving (x0,y_n) ∈ g
    std::vector<std::size_t> order;
    for (int n = 0; n < k; ++n) {
        const std::string yn = y(n), ym = y(n + 1);
        const std::size_t mid = c.steps.size();
        c.steps.push_back({"(x0," + ym + ") ∈ g, (" + ym + "," + yn + ") ∈ g", "midpoint of (x0," + yn + ")",
                           {"g∘g = g"}, {last_edge}});
        std::vector<std::size_t> from{mid};
        from.insert(from.end(), loops.begin(), loops.end());
        from.insert(from.end(), order.begin(), order.end());
        std::string others = "{y0";
        for (int i = 1; i <= n; ++i) others += "," + y(i);
        others += "}";
        c.steps.push_back({ym + " ∉ " + others, "distinctness: equality gives a g-loop", {"g∘g = g"}, from});
        const std::size_t trans = c.steps.size();
        c.steps.push_back({"(" + ym + ",y_i) ∈ g for i ≤ " + std::to_string(n), "transitivity", {"g∘g = g"},
                           order.empty() ? std::vector<std::size_t>{mid} : std::vector<std::size_t>{mid, order.back()}});
        order.push_back(trans);
        loops.push_back(c.steps.size());
        c.steps.push_back({"(" + ym + "," + ym + ") ∉ g", "loop elimination", loop_ids, {0}});
        last_edge = mid;
    }
    std::vector<std::size_t> from = loops;
    from.push_back(0);
    c.steps.push_back({"x0 ∉ {y0..y" + std::to_string(k) + "}", "distinctness: x0 = y_i gives a g-loop", {}, from});
    return c;
}

namespace {

// "a∘b∘c = d" or "a·b = c", evaluated left to right
bool identity_holds(const FiniteStructure& s, const std::string& id, std::string* why)
{
    auto eq = id.find(" = ");
    if (eq == std::string::npos) {
        if (why) *why = "malformed identity '" + id + "'";
        return false;
    }
    std::string lhs = id.substr(0, eq), rhs = id.substr(eq + 3);
    const bool meet = lhs.find("·") != std::string::npos;
    const std::string op = meet ? "·" : "∘";
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        auto nx = lhs.find(op, pos);
        parts.push_back(lhs.substr(pos, nx == std::string::npos ? std::string::npos : nx - pos));
        if (nx == std::string::npos) break;
        pos = nx + op.size();
    }
    auto r = s.find(rhs);
    std::optional<Elem> acc = s.find(parts[0]);
    for (std::size_t i = 1; i < parts.size() && acc; ++i) {
        auto e = s.find(parts[i]);
        if (!e) {
            acc.reset();
            break;
        }
        acc = meet ? s.meet(*acc, *e) : s.comp(*acc, *e);
    }
    if (!acc || !r) {
        if (why) *why = "unknown element in '" + id + "'";
        return false;
    }
    if (*acc != *r) {
        if (why) *why = "identity '" + id + "' fails in the table";
        return false;
    }
    return true;
}

} // namespace

bool check_chain_certificate(const ChainCertificate& c, const FiniteStructure& s, std::string* why)
{
    if (!s.signature().has_meet || !s.signature().has_comp) {
        if (why) *why = "structure lacks · or ∘";
        return false;
    }
    if (static_cast<int>(c.points.size()) != c.k + 2 || c.lower_bound != c.k + 2) {
        if (why) *why = "point count does not match the chain length";
        return false;
    }
    if (!s.find("z") || !s.find("g") || *s.find("z") == *s.find("g")) {
        if (why) *why = "z and g must be distinct elements";
        return false;
    }
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        for (auto f : c.steps[i].from)
            if (f >= i) {
                if (why) *why = "step " + std::to_string(i) + " cites a later step";
                return false;
            }
        for (const auto& id : c.steps[i].identities)
            if (!identity_holds(s, id, why)) return false;
    }
    return true;
}

std::optional<std::vector<std::string>> replay_chain(const ChainCertificate& c, const FiniteStructure& s,
                                                     const RepMap& r)
{
    const auto z = s.find("z"), g = s.find("g");
    if (!z || !g) return std::nullopt;
    const Relation& G = r[*g];
    const Relation& Z = r[*z];
    const std::size_t n = r.base->size();
    std::vector<std::size_t> ys;
    std::size_t x0 = 0;
    std::function<bool()> extend = [&]() -> bool {
        if (static_cast<int>(ys.size()) == c.k + 1) return true;
        for (std::size_t w = 0; w < n; ++w) {
            if (w == x0 || std::find(ys.begin(), ys.end(), w) != ys.end()) continue;
            if (!G.contains(x0, w) || G.contains(w, w)) continue;
            bool ok = true;
            for (auto yi : ys) ok &= G.contains(w, yi);
            if (!ok) continue;
            ys.push_back(w);
            if (extend()) return true;
            ys.pop_back();
        }
        return false;
    };
    for (x0 = 0; x0 < n; ++x0)
        for (std::size_t y0 = 0; y0 < n; ++y0) {
            if (y0 == x0 || !G.contains(x0, y0) || Z.contains(x0, y0) || G.contains(y0, y0)) continue;
            ys.assign(1, y0);
            if (extend()) {
                std::vector<std::string> names{r.base->name(x0)};
                for (auto y : ys) names.push_back(r.base->name(y));
                return names;
            }
        }
    return std::nullopt;
}

} // namespace demrel
