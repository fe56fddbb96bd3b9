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

#ifndef DEMREL_RELATION_HPP
#define DEMREL_RELATION_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "demrel/bits.hpp"

namespace demrel {

class BaseMismatch : public std::invalid_argument {
public:
    BaseMismatch() : std::invalid_argument("relations are over different bases") {}
};

class NoCommonRefinement : public std::domain_error {
public:
    NoCommonRefinement() : std::domain_error("no common refinement: d(R)∩d(S) ≠ d(R∩S)") {}
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Finite set of named points, optionally with one distinguished bottom
 * point (written ⊥ or ×).
 */
class Base {
public:
    explicit Base(std::vector<std::string> points, std::optional<std::size_t> bottom = std::nullopt);

    std::size_t size() const { return points_.size(); }
    const std::string& name(std::size_t i) const { return points_.at(i); }
    const std::vector<std::string>& points() const { return points_; }
    std::optional<std::size_t> index(std::string_view name) const;
    bool has_bottom() const { return bottom_.has_value(); }
    std::optional<std::size_t> bottom() const { return bottom_; }
    std::uint64_t fingerprint() const { return fp_; }

    friend bool operator==(const Base& a, const Base& b)
    {
        return a.fp_ == b.fp_ && a.points_ == b.points_ && a.bottom_ == b.bottom_;
    }

    // Base named "0".."n-1".
    static std::shared_ptr<const Base> numbered(std::size_t n, bool with_bottom = false);

private:
    std::vector<std::string> points_;
    std::optional<std::size_t> bottom_;
    std::uint64_t fp_ = 0;
};

using BasePtr = std::shared_ptr<const Base>;
using Pair = std::pair<std::size_t, std::size_t>;

/**
 * Binary relation over a Base, stored as a dense bit matrix.
 */
class Relation {
public:
    explicit Relation(BasePtr base);
    Relation(BasePtr base, const std::vector<Pair>& pairs);

    static Relation diagonal(BasePtr base);
    static Relation full(BasePtr base);
    // bit (x*n+y) of mask is the pair (x,y); n*n <= 64
    static Relation from_mask(BasePtr base, std::uint64_t mask);
    std::uint64_t mask() const;

    const BasePtr& base() const { return base_; }
    std::size_t n() const { return n_; }

    bool contains(std::size_t x, std::size_t y) const { return row(x).test(y); }
    void insert(std::size_t x, std::size_t y) { rows_[x].set(y); }
    void erase(std::size_t x, std::size_t y) { rows_[x].reset(y); }
    const Bits& row(std::size_t x) const { return rows_[x]; }

    bool empty() const;
    std::size_t size() const;
    std::vector<Pair> pairs() const;
    bool is_subidentity() const;
    bool left_total() const;

    friend bool operator==(const Relation& a, const Relation& b)
    {
        return a.same_base(b) && a.rows_ == b.rows_;
    }
    friend auto operator<=>(const Relation& a, const Relation& b) { return a.rows_ <=> b.rows_; }

    bool same_base(const Relation& o) const;
    void require_same_base(const Relation& o) const;

    std::size_t hash() const;

private:
    BasePtr base_;
    std::size_t n_;
    std::vector<Bits> rows_;
};

Bits domain(const Relation& r);
Relation restrict(const Relation& r, const Bits& d);
Relation intersect(const Relation& r, const Relation& s);
Relation unite(const Relation& r, const Relation& s);
bool subset(const Relation& r, const Relation& s);
Relation compose(const Relation& r, const Relation& s);
Relation demonic_compose(const Relation& r, const Relation& s);
Relation demonic_join(const Relation& r, const Relation& s);
bool demonic_refines(const Relation& r, const Relation& s);
bool has_common_refinement(const Relation& r, const Relation& s);
// throws NoCommonRefinement
Relation demonic_meet(const Relation& r, const Relation& s);
// throws std::invalid_argument when the base has no bottom point
Relation totalize(const Relation& r);

// Text format: "base: p0 p1 ... [bottom=pk]" then "x -> y" lines.
std::string to_text(const Relation& r);
Relation parse_relation(std::string_view text);
// Parses only "x -> y" lines against a known base.
Relation parse_pairs(const BasePtr& base, std::string_view text);
std::string base_header(const Base& b);
BasePtr parse_base_line(std::string_view line);

} // namespace demrel

#endif
