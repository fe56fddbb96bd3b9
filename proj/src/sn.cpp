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

#include "demrel/sn.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace demrel {

SnUniverse::SnUniverse(int n) : n_(n)
{
    if (n < 1 || n > 3) throw std::invalid_argument("𝒮ₙ is supported for 1 ≤ n ≤ 3");
    N_ = (1 << n) + 1;
    const int G = generator_count();
    names_.resize(G);
    names_[al()] = "al";
    names_[ar()] = "ar";
    for (int i = 0; i < N_; ++i) {
        names_[bl(i)] = "bl" + std::to_string(i);
        names_[cl(i)] = "cl" + std::to_string(i);
        names_[br(i)] = "br" + std::to_string(i);
        names_[cr(i)] = "cr" + std::to_string(i);
    }
    names_[p()] = "p";
    names_[pp()] = "pp";
    for (int k = 1; k <= 3; ++k) names_[d(k)] = "d" + std::to_string(k);

    for (int g = al(); g <= cl(N_ - 1); ++g) L_ |= bit(g);
    for (int g = ar(); g <= cr(N_ - 1); ++g) R_ |= bit(g);

    bullet_.assign(G * G, -1);
    for (int l = al(); l <= cl(N_ - 1); ++l)
        for (int r = ar(); r <= cr(N_ - 1); ++r) bullet_[l * G + r] = p();
    for (int i = 0; i < N_; ++i) {
        bullet_[bl(i) * G + cr(i)] = pp();
        bullet_[bl(i) * G + br(i + 1)] = pp();
        bullet_[bl(i + 1) * G + cr(i)] = pp();
        bullet_[cl(i) * G + br(i)] = pp();
        bullet_[cl(i) * G + cr(i + 1)] = pp();
        bullet_[cl(i + 1) * G + br(i)] = pp();
    }
    for (int l = al(); l <= cl(N_ - 1); ++l) bullet_[l * G + d(2)] = d(1);
    for (int r = ar(); r <= cr(N_ - 1); ++r) bullet_[r * G + d(3)] = d(2);
    bullet_[p() * G + d(3)] = d(1);
    bullet_[pp() * G + d(3)] = d(1);
}

std::optional<int> SnUniverse::gen_index(const std::string& name) const
{
    for (int g = 0; g < generator_count(); ++g)
        if (names_[g] == name) return g;
    return std::nullopt;
}

GenSet SnUniverse::closure(GenSet a) const
{
    while (true) {
        if (std::popcount(a & D()) > 1) return 0;
        GenSet b = a;
        if (b & (L_ | P())) b |= bit(d(1));
        if (b & R_) b |= bit(d(2));
        for (int i = 0; i < N_; ++i) {
            if ((b & bit(bl(i))) && (b & bit(cl(i)))) b |= bit(al());
            if ((b & bit(br(i))) && (b & bit(cr(i)))) b |= bit(ar());
        }
        if (b == a) return a;
        a = b;
    }
}

GenSet SnUniverse::sum(GenSet s, GenSet t) const
{
    if (s == 0 || t == 0) return 0;
    return closure(s | t);
}

GenSet SnUniverse::dot(GenSet s, GenSet t) const
{
    GenSet out = 0;
    const int G = generator_count();
    for (GenSet a = s; a; a &= a - 1) {
        int x = std::countr_zero(a);
        for (GenSet b = t; b; b &= b - 1) {
            int v = bullet_[x * G + std::countr_zero(b)];
            if (v >= 0) out |= bit(v);
        }
    }
    return out;
}

int SnUniverse::delta(GenSet e) const
{
    for (int k = 1; k <= 3; ++k)
        if (e & bit(d(k))) return k;
    throw std::domain_error("δ is undefined on ∅");
}

std::string SnUniverse::format(GenSet e) const
{
    std::string s = "{";
    bool first = true;
    for (int g = 0; g < generator_count(); ++g)
        if (e & bit(g)) {
            if (!first) s += ",";
            s += names_[g];
            first = false;
        }
    return s + "}";
}

std::optional<GenSet> SnUniverse::parse(const std::string& s) const
{
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') return std::nullopt;
    GenSet out = 0;
    std::string body = s.substr(1, s.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
        auto comma = body.find(',', pos);
        auto tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto g = gen_index(tok);
        if (!g) return std::nullopt;
        out |= bit(*g);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<GenSet> SnUniverse::enumerate() const
{
    // One side of the compartment structure: choose per index none/b/c/both,
    // then the a-generator is forced by any "both" and free otherwise.
    auto side = [&](int a, auto b, auto c) {
        std::vector<GenSet> out;
        std::uint64_t combos = 1;
        for (int i = 0; i < N_; ++i) combos *= 4;
        for (std::uint64_t code = 0; code < combos; ++code) {
            GenSet m = 0;
            bool both = false;
            std::uint64_t x = code;
            for (int i = 0; i < N_; ++i, x /= 4) {
                int v = static_cast<int>(x % 4);
                if (v & 1) m |= bit(b(i));
                if (v & 2) m |= bit(c(i));
                both |= v == 3;
            }
            if (both) {
                out.push_back(m | bit(a));
            } else {
                out.push_back(m);
                out.push_back(m | bit(a));
            }
        }
        return out;
    };
    std::vector<GenSet> all{0, bit(d(3))};
    for (GenSet m : side(ar(), [&](int i) { return br(i); }, [&](int i) { return cr(i); }))
        all.push_back(m | bit(d(2)));
    for (GenSet m : side(al(), [&](int i) { return bl(i); }, [&](int i) { return cl(i); }))
        for (GenSet q : {GenSet{0}, bit(p()), bit(pp()), bit(p()) | bit(pp())}) all.push_back(m | q | bit(d(1)));
    std::sort(all.begin(), all.end());
    return all;
}

std::uint64_t SnUniverse::element_count() const
{
    std::uint64_t f = 1, t = 1;
    for (int i = 0; i < N_; ++i) {
        f *= 4;
        t *= 3;
    }
    return 2 + 5 * (f + t);
}

SnAlgebra::SnAlgebra(int n) : u_(n), elems_(u_.enumerate())
{
    for (Elem i = 0; i < elems_.size(); ++i) index_.emplace(elems_[i], i);
    const std::size_t m = elems_.size();
    if (m * m <= 4'000'000) {
        join_tab_.resize(m * m);
        comp_tab_.resize(m * m);
        for (Elem a = 0; a < m; ++a)
            for (Elem b = 0; b < m; ++b) {
                join_tab_[a * m + b] = elem_of(u_.sum(elems_[a], elems_[b]));
                comp_tab_[a * m + b] = elem_of(u_.circ(elems_[a], elems_[b]));
            }
    }
}

Elem SnAlgebra::elem_of(GenSet s) const
{
    auto it = index_.find(s);
    if (it == index_.end()) throw std::invalid_argument("not a closed set: " + u_.format(s));
    return it->second;
}

std::optional<Elem> SnAlgebra::try_elem_of(GenSet s) const
{
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Elem SnAlgebra::make(std::initializer_list<int> gens) const
{
    GenSet s = 0;
    for (int g : gens) s |= SnUniverse::bit(g);
    return elem_of(u_.closure(s));
}

Elem SnAlgebra::join(Elem a, Elem b) const
{
    const std::size_t m = elems_.size();
    if (!join_tab_.empty()) return join_tab_[a * m + b];
    std::uint64_t key = std::uint64_t{a} * m + b;
    {
        std::lock_guard lk(mu_);
        if (auto it = join_memo_.find(key); it != join_memo_.end()) return it->second;
    }
    Elem v = elem_of(u_.sum(elems_[a], elems_[b]));
    std::lock_guard lk(mu_);
    join_memo_.emplace(key, v);
    return v;
}

Elem SnAlgebra::comp(Elem a, Elem b) const
{
    const std::size_t m = elems_.size();
    if (!comp_tab_.empty()) return comp_tab_[a * m + b];
    std::uint64_t key = std::uint64_t{a} * m + b;
    {
        std::lock_guard lk(mu_);
        if (auto it = comp_memo_.find(key); it != comp_memo_.end()) return it->second;
    }
    Elem v = elem_of(u_.circ(elems_[a], elems_[b]));
    std::lock_guard lk(mu_);
    comp_memo_.emplace(key, v);
    return v;
}

std::optional<Elem> SnAlgebra::find(std::string_view name) const
{
    auto s = u_.parse(std::string(name));
    if (!s) return std::nullopt;
    return try_elem_of(*s);
}

Bits SnAlgebra::up(int g) const { return up_set(SnUniverse::bit(g)); }

Bits SnAlgebra::up_set(GenSet a) const
{
    Bits b(size());
    for (Elem i = 0; i < size(); ++i)
        if (elems_[i] && (elems_[i] & a) == a) b.set(i);
    return b;
}

Bits SnAlgebra::d2_double_up() const
{
    Bits b(size());
    for (Elem i = 0; i < size(); ++i)
        if ((elems_[i] & SnUniverse::bit(u_.d(2))) && (elems_[i] & u_.R())) b.set(i);
    return b;
}

Bits SnAlgebra::B_left(std::uint32_t rho) const
{
    Bits b = up(u_.al());
    for (int i = 0; i < u_.N(); ++i) b |= up((rho >> i) & 1u ? u_.bl(i) : u_.cl(i));
    return b;
}

Bits SnAlgebra::B_right(std::uint32_t rho) const
{
    Bits b = up(u_.ar());
    for (int i = 0; i < u_.N(); ++i) b |= up((rho >> i) & 1u ? u_.br(i) : u_.cr(i));
    return b;
}

Bits SnAlgebra::compartment(int k) const { return up(u_.d(k)); }

Bits SnAlgebra::bot_label(int k) const
{
    Bits b = compartment(k);
    b.flip(); // includes ∅ and the other compartments
    return b;
}

bool SnAlgebra::is_upward_closed(const Bits& s) const
{
    for (Elem a = 0; a < size(); ++a) {
        if (!s.test(a)) continue;
        for (Elem b = 0; b < size(); ++b)
            if (!s.test(b) && (elems_[a] & elems_[b]) == elems_[a]) return false;
    }
    return true;
}

bool SnAlgebra::is_prime(const Bits& s) const
{
    if (!is_upward_closed(s)) return false;
    for (Elem a = 0; a < size(); ++a) {
        if (s.test(a)) continue;
        for (Elem b = a; b < size(); ++b)
            if (!s.test(b) && s.test(join(a, b))) return false;
    }
    return true;
}

FiniteStructure build_sn(int n, std::uint64_t table_budget)
{
    SnUniverse u(n);
    std::uint64_t m = u.element_count();
    if (m * m > table_budget)
        throw std::length_error("𝒮" + std::to_string(n) + " has " + std::to_string(m) +
                                " elements; tables exceed the enumeration budget");
    SnAlgebra alg(n);
    return FiniteStructure::from_algebra(alg, "S" + std::to_string(n));
}

std::vector<PrimeSet> sn_primes(const SnAlgebra& s)
{
    const auto& u = s.universe();
    std::vector<PrimeSet> out;
    for (int g = 0; g < u.generator_count(); ++g) {
        if (g == u.al() || g == u.ar()) continue;
        out.push_back({u.gen_name(g) + "↑", s.up(g)});
    }
    out.push_back({"d2⇑", s.d2_double_up()});
    for (std::uint32_t rho = 0; rho < (1u << u.N()); ++rho) {
        std::string r;
        for (int i = 0; i < u.N(); ++i) r += (rho >> i) & 1u ? '1' : '0';
        out.push_back({"Bl(" + r + ")", s.B_left(rho)});
        out.push_back({"Br(" + r + ")", s.B_right(rho)});
    }
    for (const auto& p : out)
        if (!s.is_prime(p.members)) throw std::logic_error("expected prime set is not prime: " + p.label);
    return out;
}

std::vector<Elem> sn_prime_elements(const SnAlgebra& s)
{
    std::vector<Elem> out;
    for (Elem a = 1; a < s.size(); ++a) {
        GenSet m = s.set_of(a);
        if (std::popcount(m) > 2) continue; // primes are join irreducible
        if (s.is_prime(s.up_set(m))) out.push_back(a);
    }
    return out;
}

} // namespace demrel
