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


#include "demrel/correctness.hpp"

#include <sstream>

#include "text.hpp"

namespace demrel {

namespace {

void require_condition(const Relation& p, const char* what)
{
    if (!p.is_subidentity()) throw std::invalid_argument(std::string(what) + " is not a subidentity");
}

void require_unprimed(const Relation& r)
{
    if (r.base()->has_bottom()) throw std::invalid_argument("relation is already over a primed base");
}

} // namespace

BasePtr primed_base(const BasePtr& c)
{
    if (c->has_bottom()) throw std::invalid_argument("configuration space already has a bottom point");
    auto pts = c->points();
    std::string bot = "⊥";
    while (c->index(bot)) bot += "'";
    pts.push_back(bot);
    return std::make_shared<const Base>(std::move(pts), c->size());
}

Relation lift(const Relation& r)
{
    require_unprimed(r);
    return Relation(primed_base(r.base()), r.pairs());
}

Relation magic(const BasePtr& c)
{
    auto cp = primed_base(c);
    Relation m(cp);
    for (std::size_t x = 0; x < c->size(); ++x) m.insert(x, c->size());
    return m;
}

Relation prime_program(const Relation& a)
{
    Relation out = lift(a);
    const std::size_t bot = a.n();
    for (std::size_t x = 0; x < a.n(); ++x)
        if (a.row(x).any()) out.insert(x, bot);
    return out;
}

Relation prime_condition(const Relation& p)
{
    require_condition(p, "condition");
    Relation out = lift(p);
    out.insert(p.n(), p.n());
    return out;
}

Relation negate_condition(const Relation& q)
{
    require_condition(q, "condition");
    Relation out(q.base());
    for (std::size_t x = 0; x < q.n(); ++x)
        if (!q.contains(x, x)) out.insert(x, x);
    return out;
}

bool partial_correct(const Relation& p, const Relation& a, const Relation& q, PartialForm form)
{
    p.require_same_base(a);
    a.require_same_base(q);
    require_condition(p, "precondition");
    require_condition(q, "postcondition");
    Relation pa = compose(p, a);
    if (form == PartialForm::Direct) return compose(pa, q) == pa;
    return compose(pa, negate_condition(q)) == compose(p, Relation(a.base()));
}

bool primed_partial_correct(const Relation& p, const Relation& a, const Relation& q)
{
    p.require_same_base(a);
    a.require_same_base(q);
    Relation pa = compose(prime_condition(p), prime_program(a));
    return compose(pa, prime_condition(q)) == pa;
}

bool total_correct(const Relation& p, const Relation& a, const Relation& q, PrimedNegation neg)
{
    p.require_same_base(a);
    a.require_same_base(q);
    require_condition(p, "precondition");
    require_condition(q, "postcondition");
    Relation pp = prime_condition(p);
    Relation ap = prime_program(a);
    Relation nq = neg == PrimedNegation::PrimeOfComplement ? prime_condition(negate_condition(q))
                                                           : negate_condition(prime_condition(q));
    return compose(compose(pp, ap), nq) == compose(pp, magic(p.base()));
}

HoareReport check_triple(const Triple& t, PrimedNegation neg)
{
    HoareReport r;
    r.partial = partial_correct(t.pre, t.prog, t.post);
    r.total = total_correct(t.pre, t.prog, t.post, neg);
    for (std::size_t x = 0; x < t.pre.n(); ++x) {
        if (!t.pre.contains(x, x)) continue;
        if (!r.no_run && t.prog.row(x).none()) r.no_run = x;
        if (!r.bad_run)
            t.prog.row(x).for_each([&](std::size_t y) {
                if (!r.bad_run && !t.post.contains(y, y)) r.bad_run = Pair{x, y};
            });
    }
    return r;
}

std::string HoareReport::to_text(const Base& b) const
{
    std::ostringstream out;
    out << "PARTIAL: " << (partial ? "yes" : "no") << "\n";
    out << "TOTAL: " << (total ? "yes" : "no") << "\n";
    if (bad_run)
        out << "witness: run " << b.name(bad_run->first) << " -> " << b.name(bad_run->second)
            << " ends outside the postcondition\n";
    if (no_run) out << "witness: no run from " << b.name(*no_run) << "\n";
    return out.str();
}

Triple parse_triple(std::string_view txt)
{
    auto lines = text::logical_lines(txt);
    if (lines.empty()) throw ParseError("empty triple text");
    auto base = parse_base_line(lines[0].second);
    std::optional<Relation> pre, prog, post;
    std::optional<Relation>* cur = nullptr;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [no, line] = lines[i];
        auto t = std::string(text::trim(line));
        std::optional<Relation>* next = t == "pre:" ? &pre : t == "prog:" ? &prog : t == "post:" ? &post : nullptr;
        if (next) {
            if (*next) throw ParseError("line " + std::to_string(no) + ": duplicate block '" + t + "'");
            next->emplace(base);
            cur = next;
            continue;
        }
        if (!cur) throw ParseError("line " + std::to_string(no) + ": pair outside a pre/prog/post block");
        **cur = unite(**cur, parse_pairs(base, line));
    }
    if (!pre || !prog || !post) throw ParseError("triple needs pre:, prog: and post: blocks");
    if (!pre->is_subidentity()) throw ParseError("pre is not a subidentity");
    if (!post->is_subidentity()) throw ParseError("post is not a subidentity");
    return Triple{base, *pre, *prog, *post};
}

std::string to_text(const Triple& t)
{
    std::ostringstream out;
    out << base_header(*t.base) << "\n";
    auto block = [&](const char* name, const Relation& r) {
        out << name << "\n";
        for (auto [x, y] : r.pairs()) out << "  " << t.base->name(x) << " -> " << t.base->name(y) << "\n";
    };
    block("pre:", t.pre);
    block("prog:", t.prog);
    block("post:", t.post);
    return out.str();
}

} // namespace demrel
