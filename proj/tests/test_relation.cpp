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

#include <bitset>
#include <vector>

#include "demrel/relation.hpp"
#include "oracle.hpp"

using namespace demrel;

namespace {

BasePtr fig2_base()
{
    return std::make_shared<const Base>(std::vector<std::string>{"c1", "c2", "c3", "c4", "c5"});
}

Relation rel(const BasePtr& b, std::vector<Pair> ps) { return Relation(b, ps); }

// All relations over an n-point base, indexed by mask.
std::vector<Relation> all_relations(const BasePtr& b)
{
    std::vector<Relation> out;
    const std::uint64_t n2 = b->size() * b->size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n2); ++m) out.push_back(Relation::from_mask(b, m));
    return out;
}

} // namespace

TEST_CASE("domain")
{
    auto b = Base::numbered(3);
    CHECK(domain(rel(b, {{0, 1}, {0, 2}})).members() == std::vector<std::size_t>{0});
    CHECK(domain(Relation(b)).none());
    auto f = fig2_base();
    CHECK(domain(rel(f, {{0, 1}, {0, 3}})).members() == std::vector<std::size_t>{0});
}

TEST_CASE("restrict")
{
    auto b = Base::numbered(2);
    Bits d0(2);
    d0.set(0);
    CHECK(restrict(rel(b, {{0, 1}, {1, 0}}), d0) == rel(b, {{0, 1}}));
    Bits all(2);
    all.set_all();
    auto r = rel(b, {{0, 1}, {1, 1}});
    CHECK(restrict(r, all) == r);
    CHECK(restrict(rel(b, {{0, 1}}), Bits(2)).empty());
}

TEST_CASE("compose and demonic compose on the motivating example")
{
    auto f = fig2_base();
    auto A = rel(f, {{0, 1}, {0, 3}});
    auto B = rel(f, {{1, 2}});
    CHECK(compose(A, B) == rel(f, {{0, 2}}));
    CHECK(demonic_compose(A, B).empty());
    auto B2 = rel(f, {{1, 2}, {3, 4}});
    CHECK(demonic_compose(A, B2) == rel(f, {{0, 2}, {0, 4}}));

    auto b = Base::numbered(3);
    auto r = rel(b, {{0, 1}, {1, 2}, {2, 0}, {2, 2}});
    CHECK(compose(r, Relation(b)).empty());
    CHECK(compose(Relation::diagonal(b), r) == r);
    CHECK(r.left_total());
    CHECK(demonic_compose(r, r) == compose(r, r));
}

TEST_CASE("demonic join")
{
    auto b = std::make_shared<const Base>(std::vector<std::string>{"c", "⊥"}, 1);
    auto A = rel(b, {{0, 0}});
    auto Z = rel(b, {{0, 1}});
    CHECK(demonic_join(A, Z) == rel(b, {{0, 0}, {0, 1}}));
    CHECK(demonic_join(A, Relation(b)).empty());
    CHECK(demonic_join(A, A) == A);
}

TEST_CASE("demonic refinement")
{
    auto b = Base::numbered(3);
    auto R = rel(b, {{0, 1}, {0, 2}});
    auto S = rel(b, {{0, 1}});
    CHECK(demonic_refines(R, Relation(b)));
    CHECK(demonic_refines(R, R));
    CHECK_FALSE(demonic_refines(R, S));
    CHECK(demonic_refines(S, R));
}

TEST_CASE("common refinement and demonic meet")
{
    auto b = Base::numbered(2);
    CHECK_FALSE(has_common_refinement(rel(b, {{0, 0}}), rel(b, {{0, 1}})));
    CHECK_THROWS_AS(demonic_meet(rel(b, {{0, 0}}), rel(b, {{0, 1}})), NoCommonRefinement);
    auto r = rel(b, {{0, 1}, {1, 1}});
    CHECK(has_common_refinement(r, r));
    CHECK(demonic_meet(r, r) == r);
    CHECK(demonic_meet(rel(b, {{0, 1}}), rel(b, {{1, 0}})) == rel(b, {{0, 1}, {1, 0}}));

    // e ⊓ z = z on {0,1,⊥}
    auto bb = Base::numbered(2, true);
    auto z = rel(bb, {{0, 2}, {1, 2}, {2, 2}});
    auto e = unite(rel(bb, {{0, 0}, {1, 1}}), z);
    CHECK(demonic_meet(e, z) == z);
}

TEST_CASE("left-total relations: common refinement needs pointwise overlap")
{
    // identity vs swap on two points: both left-total, R∩S = ∅
    auto b2 = Base::numbered(2);
    CHECK_FALSE(has_common_refinement(rel(b2, {{0, 0}, {1, 1}}), rel(b2, {{0, 1}, {1, 0}})));
    for (std::size_t n = 1; n <= 3; ++n) {
        auto b = Base::numbered(n);
        std::vector<Relation> lt;
        for (auto& r : all_relations(b))
            if (r.left_total()) lt.push_back(r);
        for (auto& r : lt)
            for (auto& s : lt) REQUIRE(has_common_refinement(r, s) == intersect(r, s).left_total());
    }
}

TEST_CASE("left-total relations sharing a bottom column always have a common refinement")
{
    for (std::size_t n = 1; n <= 2; ++n) {
        auto b = Base::numbered(n, true);
        const std::size_t bot = *b->bottom();
        std::vector<Relation> col;
        for (auto& r : all_relations(b)) {
            bool has_col = true;
            for (std::size_t x = 0; x <= n; ++x) has_col = has_col && r.contains(x, bot);
            if (has_col) col.push_back(r);
        }
        for (auto& r : col)
            for (auto& s : col) REQUIRE(has_common_refinement(r, s));
    }
}

TEST_CASE("totalize")
{
    auto b = Base::numbered(2, true);
    CHECK(totalize(rel(b, {{0, 1}})) == rel(b, {{0, 1}, {0, 2}}));
    CHECK(totalize(Relation(b)).empty());
    auto r = rel(b, {{0, 1}, {1, 0}});
    CHECK(totalize(totalize(r)) == totalize(r));
    CHECK_THROWS_AS(totalize(Relation(Base::numbered(2))), std::invalid_argument);
}

TEST_CASE("base mismatch is an error")
{
    auto a = Base::numbered(2);
    auto b = Base::numbered(3);
    CHECK_THROWS_AS(compose(Relation(a), Relation(b)), BaseMismatch);
    CHECK_THROWS_AS(demonic_join(Relation(a), Relation(b)), BaseMismatch);
    // structurally equal bases are accepted
    CHECK_NOTHROW(compose(Relation(Base::numbered(2)), Relation(a)));
}

TEST_CASE("text format round trip")
{
    auto r = parse_relation("base: c1 c2 bot bottom=bot\n c2 -> bot\n  c1->c2 # comment\n");
    CHECK(r.base()->has_bottom());
    CHECK(r.contains(0, 1));
    CHECK(r.contains(1, 2));
    CHECK(r.size() == 2);
    auto again = parse_relation(to_text(r));
    CHECK(again == r);
    CHECK_THROWS_AS(parse_relation("base: a b\n a -> c\n"), ParseError);
    CHECK_THROWS_AS(parse_relation("a -> b\n"), ParseError);
    CHECK_THROWS_AS(parse_relation("base: a a\n"), ParseError);
    CHECK_THROWS_AS(parse_relation("base: a b bottom=c\n"), ParseError);
}

TEST_CASE("join, meet, composition agree with the oracle on every pair over 2 points")
{
    const int n = 2;
    auto b = Base::numbered(n);
    auto rels = all_relations(b);
    for (std::uint64_t r = 0; r < rels.size(); ++r)
        for (std::uint64_t s = 0; s < rels.size(); ++s) {
            REQUIRE(demonic_join(rels[r], rels[s]).mask() == oracle::join(r, s, n));
            REQUIRE(compose(rels[r], rels[s]).mask() == oracle::comp(r, s, n));
            REQUIRE(demonic_compose(rels[r], rels[s]).mask() == oracle::demonic_comp(r, s, n));
            REQUIRE(demonic_refines(rels[r], rels[s]) == oracle::refines(r, s, n));
            if (has_common_refinement(rels[r], rels[s]))
                REQUIRE(demonic_meet(rels[r], rels[s]).mask() == oracle::meet(r, s, n));
        }
}

TEST_CASE("meet is the greatest common refinement (base ≤ 3)")
{
    for (int n = 1; n <= 3; ++n) {
        auto b = Base::numbered(n);
        auto rels = all_relations(b);
        const std::size_t m = rels.size();
        // refiners[r] = {t : t ⊑ r}
        std::vector<std::vector<bool>> refiners(m, std::vector<bool>(m));
        for (std::size_t t = 0; t < m; ++t)
            for (std::size_t r = 0; r < m; ++r) refiners[r][t] = demonic_refines(rels[t], rels[r]);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < m; ++s) {
                if (!has_common_refinement(rels[r], rels[s])) continue;
                std::size_t meet = demonic_meet(rels[r], rels[s]).mask();
                REQUIRE(refiners[r][meet]);
                REQUIRE(refiners[s][meet]);
                for (std::size_t t = 0; t < m; ++t)
                    if (refiners[r][t] && refiners[s][t]) REQUIRE(refiners[meet][t]);
            }
    }
}

TEST_CASE("left-total agreement (base ≤ 3)")
{
    for (int n = 1; n <= 3; ++n) {
        auto b = Base::numbered(n);
        std::vector<Relation> lt;
        for (auto& r : all_relations(b))
            if (r.left_total()) lt.push_back(r);
        for (auto& r : lt)
            for (auto& s : lt) {
                REQUIRE(demonic_join(r, s) == unite(r, s));
                REQUIRE(demonic_compose(r, s) == compose(r, s));
                if (!has_common_refinement(r, s)) continue;
                auto m = demonic_meet(r, s);
                REQUIRE(m.left_total());
                REQUIRE(m == intersect(r, s));
            }
    }
}

TEST_CASE("refinement is a partial order with ∅ on top (base ≤ 2)")
{
    for (int n = 1; n <= 2; ++n) {
        auto b = Base::numbered(n);
        auto rels = all_relations(b);
        for (auto& r : rels) {
            REQUIRE(demonic_refines(r, r));
            REQUIRE(demonic_refines(r, Relation(b)));
            for (auto& s : rels) {
                if (demonic_refines(r, s) && demonic_refines(s, r)) REQUIRE(r == s);
                if (!demonic_refines(r, s)) continue;
                for (auto& t : rels)
                    if (demonic_refines(s, t)) REQUIRE(demonic_refines(r, t));
            }
        }
    }
}

TEST_CASE("totalized relations satisfy the meet condition on points of X")
{
    for (int n = 1; n <= 2; ++n) {
        auto b = Base::numbered(n, true);
        auto rels = all_relations(b);
        for (auto& r : rels)
            for (auto& s : rels) {
                auto tr = totalize(r), ts = totalize(s);
                Bits lhs = domain(tr) & domain(ts);
                Bits rhs = domain(intersect(tr, ts));
                for (int x = 0; x < n; ++x) REQUIRE(lhs.test(x) == rhs.test(x));
            }
    }
}
