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

#include <random>
#include <set>
#include <string>

#include "demrel/point.hpp"
#include "demrel/repmap.hpp"
#include "demrel/sn.hpp"
#include "demrel/structure.hpp"

using namespace demrel;

namespace {

// Closure steps written directly on sets of generator names.
std::set<std::string> name_closure(std::set<std::string> a, int N)
{
    while (true) {
        int ds = a.count("d1") + a.count("d2") + a.count("d3");
        if (ds > 1) return {};
        auto b = a;
        for (auto& s : a) {
            bool left = s == "al" || s.rfind("bl", 0) == 0 || s.rfind("cl", 0) == 0 || s == "p" || s == "pp";
            bool right = s == "ar" || s.rfind("br", 0) == 0 || s.rfind("cr", 0) == 0;
            if (left) b.insert("d1");
            if (right) b.insert("d2");
        }
        for (int i = 0; i < N; ++i) {
            auto k = std::to_string(i);
            if (a.count("bl" + k) && a.count("cl" + k)) b.insert("al");
            if (a.count("br" + k) && a.count("cr" + k)) b.insert("ar");
        }
        if (b == a) return a;
        a = b;
    }
}

std::set<std::string> names_of(const SnUniverse& u, GenSet s)
{
    std::set<std::string> out;
    for (int g = 0; g < u.generator_count(); ++g)
        if (s & SnUniverse::bit(g)) out.insert(u.gen_name(g));
    return out;
}

const SnAlgebra& s1()
{
    static SnAlgebra a(1);
    return a;
}

} // namespace

TEST_CASE("validate: point algebra, singleton, injected non-associativity")
{
    auto pa = build_point_algebra();
    auto rep = validate(pa);
    CHECK(rep.ok());
    CHECK(rep.warnings.empty());

    FiniteStructure one("one", {"a"}, Signature::join_comp());
    CHECK(validate(one).ok());

    FiniteStructure bad("bad", {"a", "b"}, Signature::join_comp());
    for (Elem x = 0; x < 2; ++x)
        for (Elem y = 0; y < 2; ++y) bad.set_join(x, y, x == y ? x : 1);
    // a∘a = b, a∘b = a, b∘a = b, b∘b = b: (a∘a)∘b = b∘b = b but a∘(a∘b) = a∘a = b;
    // (a∘b)∘a = a∘a = b vs a∘(b∘a) = a∘b = a
    bad.set_comp(0, 0, 1);
    bad.set_comp(0, 1, 0);
    bad.set_comp(1, 0, 1);
    bad.set_comp(1, 1, 1);
    auto r = validate(bad);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().find("associativity of ∘") != std::string::npos);
}

TEST_CASE("structure file round trip and parse errors")
{
    auto pa = build_point_algebra();
    auto txt = to_text(pa);
    CHECK(parse_structure(txt) == pa);
    CHECK_THROWS_AS(parse_structure("structure x\nsignature join comp\nelements a\ntable comp\na: a\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("structure x\nsignature comp\nelements a\ntable comp\na: a\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("structure x\nsignature meet comp\nelements a b\ntable meet\na: a a\nb: a\n"
                                    "table comp\na: a a\nb: a a\n"),
                    ParseError);
    auto ok = parse_structure("# comment\nstructure x\nsignature join,comp\nelements a\ntable join\na: a\n"
                              "table comp\na: a  # trailing\n");
    CHECK(ok.size() == 1);
}

TEST_CASE("generators and bullet")
{
    SnUniverse u(1);
    CHECK(u.N() == 3);
    CHECK(u.generator_count() == 19);
    CHECK(std::popcount(u.L()) == 7);
    CHECK(std::popcount(u.R()) == 7);
    CHECK(u.bullet(u.bl(0), u.cr(0)) == u.pp());
    CHECK(u.bullet(u.bl(2), u.br(0)) == u.pp()); // wrap-around, indices mod N
    CHECK(u.bullet(u.al(), u.ar()) == u.p());
    CHECK(u.bullet(u.cl(0), u.d(2)) == u.d(1));
    CHECK(u.bullet(u.cr(1), u.d(3)) == u.d(2));
    CHECK(u.bullet(u.pp(), u.d(3)) == u.d(1));
    CHECK(u.bullet(u.d(1), u.d(1)) == -1);
    CHECK(u.bullet(u.ar(), u.al()) == -1);
    // defined exactly on L×R, L×{d2}, R×{d3}, P×{d3}
    int defined = 0;
    for (int s = 0; s < 19; ++s)
        for (int t = 0; t < 19; ++t) defined += u.bullet(s, t) >= 0;
    CHECK(defined == 7 * 7 + 7 + 7 + 2);
}

TEST_CASE("closure")
{
    SnUniverse u(1);
    auto B = [](int g) { return SnUniverse::bit(g); };
    CHECK(u.closure(B(u.bl(0)) | B(u.cl(0))) == (B(u.bl(0)) | B(u.cl(0)) | B(u.al()) | B(u.d(1))));
    CHECK(u.closure(B(u.d(1)) | B(u.d(2))) == 0);
    CHECK(u.closure(0) == 0);
    CHECK(u.closure(B(u.bl(0)) | B(u.br(0))) == 0); // L and R together force d1 and d2
}

TEST_CASE("closure agrees with a name-based closure on random subsets")
{
    SnUniverse u(1);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20000; ++k) {
        GenSet a = rng() & ((GenSet{1} << 19) - 1);
        a &= rng(); // sparser sets
        REQUIRE(names_of(u, u.closure(a)) == name_closure(names_of(u, a), u.N()));
    }
}

TEST_CASE("closure is monotone on closed images, idempotent and extensive unless empty")
{
    SnUniverse u(1);
    std::mt19937_64 rng(11);
    for (int k = 0; k < 20000; ++k) {
        GenSet a = rng() & rng() & ((GenSet{1} << 19) - 1);
        GenSet b = a & rng();
        GenSet ca = u.closure(a), cb = u.closure(b);
        REQUIRE(u.closure(ca) == ca);
        if (ca) REQUIRE((ca & a) == a);
        // b ⊆ a: either a collapses to ∅ or cl(b) ⊆ cl(a)
        if (ca) REQUIRE((cb & ca) == cb);
    }
}

TEST_CASE("enumeration of 𝒮₁ matches brute force over all generator subsets")
{
    SnUniverse u(1);
    std::set<GenSet> closed;
    for (GenSet a = 0; a < (GenSet{1} << 19); ++a) closed.insert(u.closure(a));
    auto en = u.enumerate();
    CHECK(closed.size() == 457);
    CHECK(std::set<GenSet>(en.begin(), en.end()) == closed);
    CHECK(u.element_count() == 457);
    CHECK(s1().size() == 457);
}

TEST_CASE("every nonempty closed set lies in exactly one compartment")
{
    const auto& u = s1().universe();
    GenSet c1 = u.L() | u.P() | SnUniverse::bit(u.d(1));
    GenSet c2 = u.R() | SnUniverse::bit(u.d(2));
    GenSet c3 = SnUniverse::bit(u.d(3));
    for (Elem a = 1; a < s1().size(); ++a) {
        GenSet m = s1().set_of(a);
        int in = ((m & ~c1) == 0) + ((m & ~c2) == 0) + ((m & ~c3) == 0);
        REQUIRE(in == 1);
        REQUIRE(std::popcount(m & u.D()) == 1);
    }
}

TEST_CASE("sum and composition examples")
{
    const auto& s = s1();
    const auto& u = s.universe();
    Elem b = s.make({u.d(1), u.bl(0)});
    Elem c = s.make({u.d(1), u.cl(0)});
    CHECK(s.name(s.join(b, c)) == "{al,bl0,cl0,d1}");
    CHECK(s.join(b, s.empty()) == s.empty());
    CHECK(s.join(s.empty(), b) == s.empty());
    Elem r = s.make({u.d(2), u.cr(0)});
    CHECK(s.name(s.comp(b, r)) == "{pp,d1}");
    CHECK(u.delta(s.set_of(s.at("{pp,d1}"))) == 1);
    CHECK(u.delta(s.set_of(s.at("{d3}"))) == 3);
    CHECK(u.delta(s.set_of(s.at("{br0,d2}"))) == 2);
    CHECK_THROWS_AS(u.delta(0), std::domain_error);
}

TEST_CASE("𝒮₁ laws: semilattice with top ∅, associative ∘")
{
    const auto& s = s1();
    const Elem n = static_cast<Elem>(s.size());
    for (Elem a = 0; a < n; ++a) {
        REQUIRE(s.join(a, a) == a);
        REQUIRE(s.join(a, s.empty()) == s.empty());
        for (Elem b = 0; b < n; ++b) REQUIRE(s.join(a, b) == s.join(b, a));
    }
    bool assoc = true, joinassoc = true;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            Elem ab = s.comp(a, b), jab = s.join(a, b);
            for (Elem c = 0; c < n; ++c) {
                assoc &= s.comp(ab, c) == s.comp(a, s.comp(b, c));
                joinassoc &= s.join(jab, c) == s.join(a, s.join(b, c));
            }
        }
    CHECK(assoc);
    CHECK(joinassoc);
}

TEST_CASE("∘ does not distribute over +")
{
    const auto& s = s1();
    // {d2} + {d3} = ∅ and ∅ absorbs, yet al•d2 = d1 and p•d3 = d1
    Elem a = s.at("{al,p,d1}");
    Elem b = s.at("{d2}");
    Elem c = s.at("{d3}");
    CHECK(s.comp(a, s.join(b, c)) == s.empty());
    CHECK(s.name(s.join(s.comp(a, b), s.comp(a, c))) == "{d1}");
}

TEST_CASE("non-distributivity witness")
{
    const auto& s = s1();
    Elem b = s.at("{bl0,d1}");
    Elem c = s.at("{cl0,d1}");
    Elem a = s.at("{al,d1}");
    REQUIRE(join_leq(s, a, s.join(b, c)));
    bool found = false;
    for (Elem b2 = 0; b2 < s.size(); ++b2) {
        if (!join_leq(s, b2, b)) continue;
        for (Elem c2 = 0; c2 < s.size(); ++c2)
            if (join_leq(s, c2, c) && s.join(b2, c2) == a) found = true;
    }
    CHECK_FALSE(found);
}

TEST_CASE("validate on 𝒮₁: laws hold, monotonicity reported as a warning")
{
    auto st = build_sn(1);
    auto rep = validate(st);
    CHECK(rep.ok());
    CHECK_FALSE(rep.warnings.empty());
    CHECK(parse_structure(to_text(st)) == st);
}

TEST_CASE("build_sn budget")
{
    CHECK_THROWS_AS(build_sn(2), std::length_error);
    SnAlgebra s2(2);
    CHECK(s2.size() == 2 + 5 * (1024 + 243));
    const auto& u = s2.universe();
    Elem x = s2.make({u.bl(4), u.d(1)});
    Elem y = s2.make({u.br(0), u.d(2)});
    CHECK(s2.name(s2.comp(x, y)) == "{pp,d1}"); // b^l_{N-1} • b^r_0 = p′
}

TEST_CASE("primes")
{
    const auto& s = s1();
    const auto& u = s.universe();
    auto ps = sn_primes(s); // throws if any listed set is not prime
    CHECK(ps.size() == (19 - 2) + 1 + 2 * 8);
    CHECK(s.is_upward_closed(s.up(u.al())));
    CHECK_FALSE(s.is_prime(s.up(u.al())));
    CHECK_FALSE(s.is_prime(s.up(u.ar())));
    CHECK(s.is_prime(s.d2_double_up()));
    Bits bl0 = s.up(u.al());
    for (int i = 0; i < u.N(); ++i) bl0 |= s.up(u.cl(i));
    CHECK(s.B_left(0) == bl0);
    CHECK(s.is_prime(s.B_left(0)));

    auto pe = sn_prime_elements(s);
    std::set<std::string> names;
    for (Elem e : pe) names.insert(s.name(e));
    CHECK(pe.size() == 3 + 6 + 2 + 6);
    CHECK(names.count("{d1}"));
    CHECK(names.count("{p,d1}"));
    CHECK(names.count("{cr2,d2}"));
    CHECK_FALSE(names.count("{al,d1}"));
    CHECK_FALSE(names.count("{ar,d2}"));
}

TEST_CASE("point algebra tables and the truncated rational representation")
{
    auto pa = build_point_algebra();
    const Elem z = 0, e = 1, g = 2;
    CHECK(pa.comp(g, g) == g);
    CHECK(pa.meet(e, g) == z);
    CHECK(pa.comp(e, e) == e);
    for (Elem a = 0; a < 3; ++a) {
        CHECK(pa.meet(z, a) == z);
        CHECK(pa.comp(z, a) == z);
        CHECK(pa.comp(a, z) == z);
    }
    auto t1 = point_algebra_theta(1);
    CHECK_FALSE(compose(t1[g], t1[g]) == t1[g]);
    CHECK(demonic_meet(t1[e], t1[g]) == t1[z]);
    for (int m = 0; m <= 4; ++m) {
        auto t = point_algebra_theta(m);
        CHECK(compose(t[e], t[e]) == t[e]);
    }
}
