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


#include "demrel/network.hpp"

#include <sstream>
#include <stdexcept>

namespace demrel {

Node Network::add_node(std::string name, int index)
{
    if (name.empty()) {
        std::size_t k = names_.size();
        do {
            name = "n" + std::to_string(k++);
        } while (find(name));
    } else if (find(name)) {
        throw std::invalid_argument("duplicate node name: " + name);
    }
    const std::size_t k = names_.size();
    std::vector<Bits> grown((k + 1) * (k + 1), Bits(m_));
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) grown[x * (k + 1) + y] = std::move(top_[x * k + y]);
    top_ = std::move(grown);
    bot_.emplace_back(m_);
    names_.push_back(std::move(name));
    index_.push_back(index);
    return k;
}

std::optional<Node> Network::find(std::string_view name) const
{
    for (Node x = 0; x < names_.size(); ++x)
        if (names_[x] == name) return x;
    return std::nullopt;
}

Bits Network::out_labels(Node x) const
{
    Bits out(m_);
    for (Node z = 0; z < size(); ++z) out |= top(x, z);
    return out;
}

bool Network::extended_by(const Network& o) const
{
    if (o.m_ != m_ || o.size() < size()) return false;
    for (Node x = 0; x < size(); ++x) {
        if (!bot(x).subset_of(o.bot(x))) return false;
        for (Node y = 0; y < size(); ++y)
            if (!top(x, y).subset_of(o.top(x, y))) return false;
    }
    return true;
}

bool is_consistent(const Network& net)
{
    for (Node x = 0; x < net.size(); ++x)
        for (Node y = 0; y < net.size(); ++y)
            if (net.top(x, y).intersects(net.bot(x))) return false;
    return true;
}

namespace {

std::string edge(const Network& n, Node x, Node y)
{
    return "(" + n.name(x) + "," + n.name(y) + ")";
}

std::optional<std::string> consistency_defect(const Network& net, const Algebra& s)
{
    for (Node x = 0; x < net.size(); ++x)
        for (Node y = 0; y < net.size(); ++y) {
            Bits both = net.top(x, y) & net.bot(x);
            if (both.any())
                return "inconsistent: " + s.name(static_cast<Elem>(both.next(0))) + " ∈ ⊤" + edge(net, x, y) +
                       " ∩ ⊥(" + net.name(x) + ")";
        }
    return std::nullopt;
}

std::optional<std::string> closure_defect(const Network& net, const Algebra& s)
{
    const std::size_t n = net.size();
    const Elem m = static_cast<Elem>(net.elems());
    if (s.signature().has_join) {
        for (Node x = 0; x < n; ++x)
            for (Node y = 0; y < n; ++y) {
                const Bits& t = net.top(x, y);
                for (std::size_t a = t.next(0); a < m; a = t.next(a + 1))
                    for (Elem b = 0; b < m; ++b)
                        if (!t.test(s.join(static_cast<Elem>(a), b)) && !net.bot(x).test(b))
                            return "not closed: " + s.name(static_cast<Elem>(a)) + " ∈ ⊤" + edge(net, x, y) +
                                   " but neither its sum with " + s.name(b) + " is there nor " + s.name(b) +
                                   " ∈ ⊥(" + net.name(x) + ")";
            }
    }
    for (Node x = 0; x < n; ++x)
        for (Node y = 0; y < n; ++y) {
            const Bits& t1 = net.top(x, y);
            if (t1.none()) continue;
            for (Node z = 0; z < n; ++z) {
                const Bits& t2 = net.top(y, z);
                if (t2.none()) continue;
                const Bits& t3 = net.top(x, z);
                for (std::size_t a = t1.next(0); a < m; a = t1.next(a + 1))
                    for (std::size_t b = t2.next(0); b < m; b = t2.next(b + 1))
                        if (!t3.test(s.comp(static_cast<Elem>(a), static_cast<Elem>(b))))
                            return "not closed: " + s.name(static_cast<Elem>(a)) + " ∈ ⊤" + edge(net, x, y) + ", " +
                                   s.name(static_cast<Elem>(b)) + " ∈ ⊤" + edge(net, y, z) + " but their ∘ ∉ ⊤" +
                                   edge(net, x, z);
            }
        }
    return std::nullopt;
}

std::optional<std::string> saturation_defect(const Network& net, const Algebra& s)
{
    const std::size_t n = net.size();
    const Elem m = static_cast<Elem>(net.elems());
    std::vector<Bits> out(n);
    for (Node x = 0; x < n; ++x) out[x] = net.out_labels(x);

    if (s.signature().has_join) {
        std::vector<std::vector<std::pair<Elem, Elem>>> dec(m);
        for (Elem a = 0; a < m; ++a)
            for (Elem b = a; b < m; ++b) dec[s.join(a, b)].emplace_back(a, b);
        for (Node x = 0; x < n; ++x)
            for (Node y = 0; y < n; ++y) {
                const Bits& t = net.top(x, y);
                for (std::size_t c = t.next(0); c < m; c = t.next(c + 1))
                    for (auto [a, b] : dec[c]) {
                        if (!t.test(a) && !t.test(b))
                            return "not saturated: " + s.name(static_cast<Elem>(c)) + " ∈ ⊤" + edge(net, x, y) +
                                   " but neither summand " + s.name(a) + ", " + s.name(b) + " is";
                        for (Elem e : {a, b})
                            if (!out[x].test(e))
                                return "not saturated: summand " + s.name(e) + " of " + s.name(static_cast<Elem>(c)) +
                                       " has no edge out of " + net.name(x);
                    }
            }
    }

    std::vector<std::vector<std::pair<Elem, Elem>>> fac(m);
    for (Elem a = 0; a < m; ++a)
        for (Elem b = 0; b < m; ++b) fac[s.comp(a, b)].emplace_back(a, b);
    // left[x][a] = {z : a ∈ ⊤(x,z)}, right[y][b] = {z : b ∈ ⊤(z,y)}
    std::vector<std::vector<Bits>> left(n, std::vector<Bits>(m, Bits(n))), right(n, std::vector<Bits>(m, Bits(n)));
    for (Node x = 0; x < n; ++x)
        for (Node z = 0; z < n; ++z)
            net.top(x, z).for_each([&](std::size_t a) {
                left[x][a].set(z);
                right[z][a].set(x);
            });
    for (Node x = 0; x < n; ++x)
        for (Node y = 0; y < n; ++y) {
            const Bits& t = net.top(x, y);
            for (std::size_t c = t.next(0); c < m; c = t.next(c + 1))
                for (auto [a, b] : fac[c])
                    if (!left[x][a].intersects(right[y][b]))
                        return "not saturated: " + s.name(static_cast<Elem>(c)) + " ∈ ⊤" + edge(net, x, y) +
                               " has no witness node for " + s.name(a) + " ∘ " + s.name(b);
        }
    return std::nullopt;
}

} // namespace

std::optional<std::string> find_defect(const Network& net, const Algebra& s, bool saturation)
{
    if (net.elems() != s.size()) return "network labels range over a structure of a different size";
    if (auto d = consistency_defect(net, s)) return d;
    if (auto d = closure_defect(net, s)) return d;
    if (saturation) return saturation_defect(net, s);
    return std::nullopt;
}

bool is_closed(const Network& net, const Algebra& s)
{
    return net.elems() == s.size() && !closure_defect(net, s);
}

bool is_saturated(const Network& net, const Algebra& s)
{
    return !find_defect(net, s, true);
}

RepMap extract_unchecked(const Network& net, const Algebra& s)
{
    std::vector<std::string> pts;
    for (Node x = 0; x < net.size(); ++x) pts.push_back(net.name(x));
    RepMap r{std::make_shared<const Base>(std::move(pts)), {}};
    r.images.assign(s.size(), Relation(r.base));
    for (Node x = 0; x < net.size(); ++x)
        for (Node y = 0; y < net.size(); ++y) net.top(x, y).for_each([&](std::size_t a) { r.images[a].insert(x, y); });
    return r;
}

RepMap extract_representation(const Network& net, const Algebra& s)
{
    if (auto d = find_defect(net, s, true)) throw std::invalid_argument("network is not saturated: " + *d);
    return extract_unchecked(net, s);
}

Network disjoint_union(const Network& a, const Network& b)
{
    if (a.elems() != b.elems()) throw std::invalid_argument("networks over structures of different size");
    Network u = a;
    std::vector<Node> map;
    for (Node x = 0; x < b.size(); ++x) {
        std::string nm = b.name(x);
        while (u.find(nm)) nm += ".2";
        map.push_back(u.add_node(nm, b.index(x)));
    }
    for (Node x = 0; x < b.size(); ++x) {
        u.bot(map[x]) = b.bot(x);
        for (Node y = 0; y < b.size(); ++y) u.top(map[x], map[y]) = b.top(x, y);
    }
    return u;
}

std::optional<std::pair<Node, Node>> discriminating_edge(const Network& net, Elem a, Elem b)
{
    for (Node x = 0; x < net.size(); ++x)
        for (Node y = 0; y < net.size(); ++y)
            if (net.top(x, y).test(a) != net.top(x, y).test(b)) return std::make_pair(x, y);
    return std::nullopt;
}

namespace {

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string to_dot(const Network& net, const Algebra& s)
{
    std::ostringstream o;
    o << "digraph network {\n";
    for (Node x = 0; x < net.size(); ++x) {
        o << "  \"" << dot_escape(net.name(x)) << "\" [label=\"" << dot_escape(net.name(x)) << "\\n|⊥|="
          << net.bot(x).count();
        if (net.index(x)) o << " ι=" << net.index(x);
        o << "\"];\n";
    }
    for (Node x = 0; x < net.size(); ++x)
        for (Node y = 0; y < net.size(); ++y) {
            const Bits& t = net.top(x, y);
            if (t.none()) continue;
            std::string lab;
            std::size_t shown = 0;
            t.for_each([&](std::size_t a) {
                if (shown++ < 5) lab += (lab.empty() ? "" : " ") + s.name(static_cast<Elem>(a));
            });
            if (shown > 5) lab += " +" + std::to_string(shown - 5) + " more";
            o << "  \"" << dot_escape(net.name(x)) << "\" -> \"" << dot_escape(net.name(y)) << "\" [label=\""
              << dot_escape(lab) << "\"];\n";
        }
    o << "}\n";
    return o.str();
}

} // namespace demrel
