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


#ifndef DEMREL_NETWORK_HPP
#define DEMREL_NETWORK_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "demrel/bits.hpp"
#include "demrel/repmap.hpp"
#include "demrel/structure.hpp"

namespace demrel {

using Node = std::size_t;

/**
 * Game board over a structure of fixed size: edge labels ⊤(x,y) and node
 * labels ⊥(x), each a set of element ids. Nodes carry names and an optional
 * index ι ∈ {1,2,3} (0 when unindexed).
 */
class Network {
public:
    Network() = default;
    explicit Network(std::size_t elems) : m_(elems) {}

    std::size_t elems() const { return m_; }
    std::size_t size() const { return names_.size(); }

    // Empty name picks the next free "n<k>".
    Node add_node(std::string name = {}, int index = 0);
    const std::string& name(Node x) const { return names_.at(x); }
    std::optional<Node> find(std::string_view name) const;

    const Bits& top(Node x, Node y) const { return top_[x * size() + y]; }
    Bits& top(Node x, Node y) { return top_[x * size() + y]; }
    const Bits& bot(Node x) const { return bot_[x]; }
    Bits& bot(Node x) { return bot_[x]; }

    bool has_top(Node x, Node y, Elem a) const { return top(x, y).test(a); }
    void add_top(Node x, Node y, Elem a) { top(x, y).set(a); }
    void add_bot(Node x, Elem a) { bot_[x].set(a); }

    int index(Node x) const { return index_.at(x); }
    void set_index(Node x, int i) { index_.at(x) = i; }

    // Union of ⊤(x,z) over all z.
    Bits out_labels(Node x) const;

    // this ⊆ o: o has all nodes of this (by position) and larger labels.
    bool extended_by(const Network& o) const;

    friend bool operator==(const Network& a, const Network& b)
    {
        return a.m_ == b.m_ && a.top_ == b.top_ && a.bot_ == b.bot_;
    }

private:
    std::size_t m_ = 0;
    std::vector<std::string> names_;
    std::vector<int> index_;
    std::vector<Bits> top_; // row-major size()×size()
    std::vector<Bits> bot_;
};

bool is_consistent(const Network& net);
bool is_closed(const Network& net, const Algebra& s);
bool is_saturated(const Network& net, const Algebra& s);

// First violated condition in human-readable form, checking consistency,
// closure and (if requested) saturation in that order.
std::optional<std::string> find_defect(const Network& net, const Algebra& s, bool saturation);

// a ↦ {(x,y) : a ∈ ⊤(x,y)}; throws std::invalid_argument unless saturated.
RepMap extract_representation(const Network& net, const Algebra& s);
// Same map without the saturation check.
RepMap extract_unchecked(const Network& net, const Algebra& s);

// Nodes of b follow those of a; names get a ".2" suffix on collision.
Network disjoint_union(const Network& a, const Network& b);

// Some (x,y) whose ⊤ holds exactly one of a, b.
std::optional<std::pair<Node, Node>> discriminating_edge(const Network& net, Elem a, Elem b);

// Graphviz digraph; edge labels list at most five elements then a count.
std::string to_dot(const Network& net, const Algebra& s);

} // namespace demrel

#endif
