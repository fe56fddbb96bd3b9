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


// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "demrel/correctness.hpp"
#include "demrel/network.hpp"
#include "demrel/point.hpp"
#include "demrel/repmap.hpp"
#include "demrel/search.hpp"
#include "demrel/sn.hpp"
#include "demrel/sn_strategies.hpp"
#include "oracle.hpp"

using namespace demrel;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<Relation> all_relations(const BasePtr& b)
{
    std::vector<Relation> out;
    const std::uint64_t m = std::uint64_t{1} << (b->size() * b->size());
    for (std::uint64_t k = 0; k < m; ++k) out.push_back(Relation::from_mask(b, k));
    return out;
}

Outcome kernel_oracle()
{
    const int n = 3;
    auto b = Base::numbered(n);
    auto rels = all_relations(b);
    std::size_t pairs = 0, mismatches = 0, meets = 0;
    for (std::uint64_t r = 0; r < rels.size(); ++r)
        for (std::uint64_t s = 0; s < rels.size(); ++s) {
            ++pairs;
            const Relation &R = rels[r], &S = rels[s];
            bool ok = demonic_join(R, S).mask() == oracle::join(r, s, n) &&
                      compose(R, S).mask() == oracle::comp(r, s, n) &&
                      demonic_compose(R, S).mask() == oracle::demonic_comp(r, s, n) &&
                      demonic_refines(R, S) == oracle::refines(r, s, n);
            if (has_common_refinement(R, S)) {
                ++meets;
                ok = ok && demonic_meet(R, S).mask() == oracle::meet(r, s, n);
            } else {
                try {
                    demonic_meet(R, S);
                    ok = false;
                } catch (const NoCommonRefinement&) {
                }
            }
            mismatches += !ok;
        }
    return {mismatches == 0 && pairs == 262144,
            std::to_string(pairs) + " pairs, " + std::to_string(meets) + " with a meet, " +
                std::to_string(mismatches) + " mismatches"};
}

Outcome eq3_characterization()
{
    std::size_t pairs = 0, bad = 0;
    for (int n = 1; n <= 3; ++n) {
        auto b = Base::numbered(n);
        auto rels = all_relations(b);
        const std::size_t m = rels.size();
        // below[r] lists every T with T ⊑ r, found by brute force
        std::vector<std::vector<bool>> below(m, std::vector<bool>(m));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t t = 0; t < m; ++t) below[r][t] = oracle::refines(t, r, n);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < m; ++s) {
                bool exists = false;
                for (std::size_t t = 0; t < m && !exists; ++t) exists = below[r][t] && below[s][t];
                bool eq3 = (domain(rels[r]) & domain(rels[s])) == domain(intersect(rels[r], rels[s]));
                bad += exists != eq3 || has_common_refinement(rels[r], rels[s]) != eq3;
                ++pairs;
            }
    }
    return {bad == 0, std::to_string(pairs) + " pairs over bases 1..3, " + std::to_string(bad) + " disagreements"};
}

Outcome figure2()
{
    auto f = std::make_shared<const Base>(std::vector<std::string>{"c1", "c2", "c3", "c4", "c5"});
    Relation A(f, {{0, 1}, {0, 3}});
    Relation top = demonic_compose(A, Relation(f, {{1, 2}}));
    Relation bottom = demonic_compose(A, Relation(f, {{1, 2}, {3, 4}}));
    bool ok = top.empty() && bottom == Relation(f, {{0, 2}, {0, 4}});
    return {ok, "top A∗B has " + std::to_string(top.size()) + " pairs, bottom A∗B = {" +
                    [&] {
                        std::string s;
                        for (auto [x, y] : bottom.pairs())
                            s += (s.empty() ? "(" : ", (") + f->name(x) + "," + f->name(y) + ")";
                        return s;
                    }() +
                    "}"};
}

Outcome point_algebra()
{
    auto p = build_point_algebra();
    SearchConfig c;
    c.signature = Signature::meet_comp();
    c.max_base = 3;
    c.time_budget = 300;
    auto t0 = Clock::now();
    auto r3 = search(p, c);
    double s3 = since(t0);
    c.max_base = 4;
    c.min_base = 4;
    c.time_budget = 1800;
    t0 = Clock::now();
    auto r4 = search(p, c);
    double s4 = since(t0);
    bool certs = true;
    for (int k = 0; k <= 2; ++k) {
        auto cert = point_algebra_chain_lowerbound(k);
        SearchConfig ck;
        ck.signature = Signature::meet_comp();
        ck.max_base = cert.lower_bound - 1;
        auto rk = search(p, ck);
        certs = certs && check_chain_certificate(cert, p, nullptr) && rk.status == SearchStatus::Unsat &&
                rk.unsat_sizes.size() == static_cast<std::size_t>(cert.lower_bound - 1);
    }
    bool hard = r3.status == SearchStatus::Unsat && s3 <= 300;
    std::string soft = r4.status == SearchStatus::Unsat ? "UNSAT" : to_string(r4.status);
    return {hard && certs, "base ≤ 3 " + to_string(r3.status) + fmt(" in %.3f s", s3) + ", base 4 " + soft +
                               fmt(" in %.3f s (soft)", s4) + ", chain certificates k ≤ 2 " +
                               (certs ? "agree" : "disagree")};
}

Outcome forall_script(const SnAlgebra& s)
{
    auto t0 = Clock::now();
    auto r7 = verify_forall_script(s, 7);
    auto full = verify_forall_script(s, 64);
    std::string worst = full.complete ? std::to_string(full.worst_moves) : "unknown";
    return {r7.complete && r7.wins_within,
            std::string("exploration ") + (r7.complete ? "complete" : "over budget") + " (" +
                std::to_string(r7.states) + " states), ∀ wins every branch within 7 moves: " +
                (r7.wins_within ? "yes" : "no") + "; measured worst case " + worst + " moves" +
                fmt(" (%.2f s)", since(t0))};
}

Outcome figure5_network(const SnAlgebra& s)
{
    auto f = build_figure5_network(s);
    auto und = undiscriminated_pairs(f.net);
    auto crit_a = s.find("{pp,d1}"), crit_b = s.find("{p,pp,d1}");
    bool only_critical = und.size() == 1 && crit_a && crit_b &&
                         ((und[0].first == *crit_a && und[0].second == *crit_b) ||
                          (und[0].first == *crit_b && und[0].second == *crit_a));
    bool ok = f.net.size() == 87 && is_consistent(f.net) && is_closed(f.net, s) && is_saturated(f.net, s) &&
              only_critical;
    return {ok, std::to_string(f.net.size()) + " nodes, consistent " + (is_consistent(f.net) ? "yes" : "no") +
                    ", closed " + (is_closed(f.net, s) ? "yes" : "no") + ", saturated " +
                    (is_saturated(f.net, s) ? "yes" : "no") + ", undiscriminated pairs " +
                    std::to_string(und.size()) + " (expected only the critical pair)"};
}

Outcome figure5_extraction(const SnAlgebra& s)
{
    auto f = build_figure5_network(s);
    auto rep = extract_representation(f.net, s);
    CheckOptions o;
    o.signature = Signature::join_comp();
    o.require_injective = false;
    auto r = check_representation(s, rep, o);
    return {r.pass, std::to_string(s.size() * s.size()) + " pairs checked for + ↦ ⊔ and ∘ ↦ ;, " +
                        std::to_string(r.violation_count) + " violations"};
}

Outcome exists_script(const SnAlgebra& s)
{
    auto t0 = Clock::now();
    auto r = verify_exists_script(s);
    return {r.pass(), std::to_string(r.openings) + " openings, " + std::to_string(r.moves) + " first moves, " +
                          std::to_string(r.failures) + " failures" + fmt(" (%.2f s)", since(t0))};
}

Outcome zero_lattices()
{
    std::size_t structures = 0, representable = 0, disagree = 0, bad_conv = 0;
    for (int n = 1; n <= 3; ++n) {
        std::uint64_t codes = 1;
        for (int i = 0; i < n * (n - 1); ++i) codes *= n;
        for (std::uint64_t code = 0; code < codes; ++code) {
            std::vector<std::string> names;
            for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
            FiniteStructure s("chain", names, Signature::lattice());
            std::uint64_t c = code;
            for (Elem a = 0; a < static_cast<Elem>(n); ++a)
                for (Elem b = 0; b < static_cast<Elem>(n); ++b) {
                    s.set_meet(a, b, std::min(a, b));
                    s.set_join(a, b, std::max(a, b));
                    if (b == 0) {
                        s.set_comp(a, b, 0);
                    } else {
                        s.set_comp(a, b, static_cast<Elem>(c % n));
                        c /= n;
                    }
                }
            ++structures;
            SearchConfig ca;
            ca.semantics = Semantics::Angelic;
            ca.max_base = 3;
            SearchConfig cd;
            cd.max_base = 4;
            auto ra = search(s, ca), rd = search(s, cd);
            disagree += (ra.status == SearchStatus::Sat) != (rd.status == SearchStatus::Sat) ||
                        ra.status == SearchStatus::Budget || rd.status == SearchStatus::Budget;
            if (ra.rep) {
                ++representable;
                bad_conv += !check_representation(s, angelic_to_demonic(s, *ra.rep)).pass;
            }
            if (rd.rep) bad_conv += !demonic_to_angelic(s, *rd.rep).pass;
        }
    }
    return {disagree == 0 && bad_conv == 0,
            std::to_string(structures) + " lattices with zero, " + std::to_string(representable) +
                " representable, " + std::to_string(disagree) + " disagreements, " + std::to_string(bad_conv) +
                " failed conversions"};
}

Outcome correctness()
{
    std::size_t triples = 0, bad = 0;
    for (std::size_t n = 0; n <= 3; ++n) {
        auto c = Base::numbered(n);
        auto cond = [&](unsigned bits) {
            Relation r(c);
            for (std::size_t x = 0; x < n; ++x)
                if ((bits >> x) & 1u) r.insert(x, x);
            return r;
        };
        for (unsigned pb = 0; pb < (1u << n); ++pb)
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * n)); ++m)
                for (unsigned qb = 0; qb < (1u << n); ++qb) {
                    auto p = cond(pb), q = cond(qb);
                    auto a = Relation::from_mask(c, m);
                    bool pc = partial_correct(p, a, q);
                    bool ok = pc == partial_correct(p, a, q, PartialForm::Negated) &&
                              pc == primed_partial_correct(p, a, q) &&
                              total_correct(p, a, q) == (pc && domain(p).subset_of(domain(a)));
                    bad += !ok;
                    ++triples;
                }
    }
    return {bad == 0, std::to_string(triples) + " triples over |C| ≤ 3, " + std::to_string(bad) + " violations"};
}

} // namespace

int main()
{
    const SnAlgebra s1(1);
    std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"kernel matches the first-principles evaluator", kernel_oracle},
        {"common refinement exists iff d(R)∩d(S) = d(R∩S)", eq3_characterization},
        {"demonic composition examples", figure2},
        {"point algebra has no small (⊓,;)-representation", point_algebra},
        {"∀ script wins the 7-round game on S1", [&] { return forall_script(s1); }},
        {"saturated network discriminates all but the critical pair", [&] { return figure5_network(s1); }},
        {"extracted representation preserves + and ∘", [&] { return figure5_extraction(s1); }},
        {"∃ script survives the 1-round game on S1", [&] { return exists_script(s1); }},
        {"angelic and demonic representability agree on lattices with zero", zero_lattices},
        {"partial and total correctness semantics", correctness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("criterion %2zu: %s  %s: %s [%.2f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
