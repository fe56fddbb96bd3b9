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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "demrel/correctness.hpp"

using namespace demrel;

namespace {

Relation cond(const BasePtr& b, unsigned bits)
{
    Relation r(b);
    for (std::size_t x = 0; x < b->size(); ++x)
        if ((bits >> x) & 1u) r.insert(x, x);
    return r;
}

// Run-based readings, straight from the informal definitions.
bool runs_partial(unsigned p, std::uint64_t a, unsigned q, std::size_t n)
{
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (((p >> x) & 1u) && ((a >> (x * n + y)) & 1u) && !((q >> y) & 1u)) return false;
    return true;
}

bool runs_total(unsigned p, std::uint64_t a, unsigned q, std::size_t n)
{
    if (!runs_partial(p, a, q, n)) return false;
    for (std::size_t x = 0; x < n; ++x)
        if (((p >> x) & 1u) && ((a >> (x * n)) & ((1u << n) - 1)) == 0) return false;
    return true;
}

} // namespace

TEST_CASE("magic and priming")
{
    auto c = Base::numbered(2);
    auto m = magic(c);
    CHECK(m.n() == 3);
    CHECK(m.pairs() == std::vector<Pair>{{0, 2}, {1, 2}});
    CHECK(m.base()->bottom() == std::size_t{2});
    CHECK(magic(Base::numbered(0)).empty());
    CHECK(domain(m).count() == 2);

    auto c3 = Base::numbered(3);
    Relation a(c3, {{0, 1}});
    auto ap = prime_program(a);
    CHECK(ap.pairs() == std::vector<Pair>{{0, 1}, {0, 3}});
    CHECK(prime_program(Relation(c3)).empty());
    CHECK_THROWS_AS(prime_program(ap), std::invalid_argument);

    CHECK(prime_condition(Relation(c)).pairs() == std::vector<Pair>{{2, 2}});
    CHECK(prime_condition(Relation::diagonal(c)) == Relation::diagonal(primed_base(c)));
    CHECK_THROWS_AS(prime_condition(Relation(c, {{0, 1}})), std::invalid_argument);
    CHECK_THROWS_AS(primed_base(primed_base(c)), std::invalid_argument);

    CHECK(negate_condition(Relation(c)) == Relation::diagonal(c));
    auto qp = prime_condition(Relation(c, {{0, 0}}));
    CHECK(negate_condition(qp).pairs() == std::vector<Pair>{{1, 1}});
    CHECK_THROWS_AS(negate_condition(a), std::invalid_argument);

    // a base that already uses the bottom's usual name
    auto odd = std::make_shared<const Base>(std::vector<std::string>{"⊥", "x"});
    CHECK(primed_base(odd)->name(2) == "⊥'");
}

TEST_CASE("priming agrees with the demonic join against magic")
{
    for (std::size_t n = 0; n <= 3; ++n) {
        auto c = Base::numbered(n);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * n)); ++m) {
            auto a = Relation::from_mask(c, m);
            auto ap = prime_program(a);
            CHECK(ap == demonic_join(lift(a), magic(c)));
            CHECK(domain(ap) == domain(lift(a)));
        }
        for (unsigned p = 0; p < (1u << n); ++p) {
            auto pc = cond(c, p);
            CHECK(negate_condition(negate_condition(pc)) == pc);
            CHECK(prime_condition(pc).contains(n, n));
        }
    }
}

TEST_CASE("desk examples")
{
    auto c = Base::numbered(2);
    Relation p(c, {{0, 0}}), a(c, {{0, 1}}), q(c, {{1, 1}});
    CHECK(partial_correct(p, a, q));
    CHECK(partial_correct(p, a, q, PartialForm::Negated));
    CHECK(total_correct(p, a, q));

    for (unsigned pb = 0; pb < 4; ++pb)
        for (unsigned qb = 0; qb < 4; ++qb) CHECK(partial_correct(cond(c, pb), Relation(c), cond(c, qb)));
    CHECK_FALSE(partial_correct(p, a, Relation(c)));

    // no run from 0: partially but not totally correct
    Relation idle(c, {{1, 1}});
    for (unsigned qb = 0; qb < 4; ++qb) {
        CHECK(partial_correct(p, idle, cond(c, qb)));
        CHECK_FALSE(total_correct(p, idle, cond(c, qb)));
    }
    for (unsigned qb = 0; qb < 4; ++qb) CHECK(total_correct(Relation(c), idle, cond(c, qb)));

    auto one = Base::numbered(1);
    CHECK(total_correct(Relation::diagonal(one), Relation::diagonal(one), Relation::diagonal(one)));

    CHECK_THROWS_AS(partial_correct(p, Relation(Base::numbered(3)), q), BaseMismatch);
    CHECK_THROWS_AS(total_correct(a, a, q), std::invalid_argument);
}

TEST_CASE("correctness semantics, exhaustive up to three configurations")
{
    std::size_t triples = 0, partial = 0, total = 0, literal = 0;
    for (std::size_t n = 0; n <= 3; ++n) {
        auto c = Base::numbered(n);
        for (unsigned pb = 0; pb < (1u << n); ++pb)
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * n)); ++m)
                for (unsigned qb = 0; qb < (1u << n); ++qb) {
                    auto p = cond(c, pb), q = cond(c, qb);
                    auto a = Relation::from_mask(c, m);
                    const bool pc = partial_correct(p, a, q);
                    const bool tc = total_correct(p, a, q);
                    // the two unprimed displays agree
                    CHECK(pc == partial_correct(p, a, q, PartialForm::Negated));
                    // priming preserves partial correctness
                    CHECK(pc == primed_partial_correct(p, a, q));
                    CHECK(pc == runs_partial(pb, m, qb, n));
                    // total = partial plus coverage of the precondition
                    CHECK(tc == (pc && domain(p).subset_of(domain(a))));
                    CHECK(tc == runs_total(pb, m, qb, n));
                    CHECK((!tc || pc));
                    // complementing after priming drops (⊥,⊥): the equation
                    // then only holds for an empty precondition
                    CHECK(total_correct(p, a, q, PrimedNegation::ComplementOfPrime) == (pb == 0));
                    ++triples;
                    partial += pc;
                    total += tc;
                    literal += total_correct(p, a, q, PrimedNegation::ComplementOfPrime);
                }
    }
    CHECK(triples == 1 + 2 * 2 * 2 + 4 * 16 * 4 + 8 * 512 * 8);
    CHECK(partial > total);
    CHECK(total > literal);
}

TEST_CASE("triple files and reports")
{
    const char* txt = "base: c1 c2 c3\n"
                      "pre:\n  c1 -> c1\n  c2 -> c2\n"
                      "prog:\n  c1 -> c3\n  c3 -> c1\n"
                      "post:\n  c3 -> c3\n";
    auto t = parse_triple(txt);
    CHECK(t.base->size() == 3);
    CHECK(to_text(parse_triple(to_text(t))) == to_text(t));
    auto r = check_triple(t);
    CHECK(r.partial);
    CHECK_FALSE(r.total);
    CHECK(r.no_run == std::size_t{1});
    CHECK_FALSE(r.bad_run);
    auto s = r.to_text(*t.base);
    CHECK(s.find("PARTIAL: yes") != std::string::npos);
    CHECK(s.find("TOTAL: no") != std::string::npos);
    CHECK(s.find("no run from c2") != std::string::npos);

    t.post = Relation(t.base);
    auto r2 = check_triple(t);
    CHECK_FALSE(r2.partial);
    CHECK(r2.bad_run == Pair{0, 2});

    CHECK_THROWS_AS(parse_triple(""), ParseError);
    CHECK_THROWS_AS(parse_triple("base: a\npre:\nprog:\n"), ParseError);
    CHECK_THROWS_AS(parse_triple("base: a b\npre:\n a -> b\nprog:\npost:\n"), ParseError);
    CHECK_THROWS_AS(parse_triple("base: a\n a -> a\npre:\nprog:\npost:\n"), ParseError);
    CHECK_THROWS_AS(parse_triple("base: a\npre:\npre:\nprog:\npost:\n"), ParseError);
}
