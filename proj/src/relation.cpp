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

#include "demrel/relation.hpp"

#include <set>
#include <sstream>
#include <unordered_set>

#include "text.hpp"

namespace demrel {

Base::Base(std::vector<std::string> points, std::optional<std::size_t> bottom)
    : points_(std::move(points)), bottom_(bottom)
{
    std::unordered_set<std::string> seen;
    for (const auto& p : points_) {
        if (p.empty()) throw std::invalid_argument("empty point name");
        if (!seen.insert(p).second) throw std::invalid_argument("duplicate point name: " + p);
    }
    if (bottom_ && *bottom_ >= points_.size()) throw std::invalid_argument("bottom point out of range");
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& p : points_) {
        for (unsigned char c : p) h = (h ^ c) * 1099511628211ull;
        h = (h ^ 0xff) * 1099511628211ull;
    }
    fp_ = h ^ (bottom_ ? *bottom_ + 1 : 0);
}

std::optional<std::size_t> Base::index(std::string_view name) const
{
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i] == name) return i;
    return std::nullopt;
}

BasePtr Base::numbered(std::size_t n, bool with_bottom)
{
    std::vector<std::string> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(std::to_string(i));
    std::optional<std::size_t> bot;
    if (with_bottom) {
        pts.push_back("⊥");
        bot = n;
    }
    return std::make_shared<const Base>(std::move(pts), bot);
}

Relation::Relation(BasePtr base) : base_(std::move(base)), n_(base_->size()), rows_(n_, Bits(n_)) {}

Relation::Relation(BasePtr base, const std::vector<Pair>& pairs) : Relation(std::move(base))
{
    for (auto [x, y] : pairs) {
        if (x >= n_ || y >= n_) throw std::out_of_range("pair index outside base");
        insert(x, y);
    }
}

Relation Relation::diagonal(BasePtr base)
{
    Relation r(std::move(base));
    for (std::size_t i = 0; i < r.n_; ++i) r.insert(i, i);
    return r;
}

Relation Relation::full(BasePtr base)
{
    Relation r(std::move(base));
    for (auto& row : r.rows_) row.set_all();
    return r;
}

Relation Relation::from_mask(BasePtr base, std::uint64_t mask)
{
    Relation r(std::move(base));
    if (r.n_ * r.n_ > 64) throw std::invalid_argument("base too large for mask encoding");
    for (std::size_t x = 0; x < r.n_; ++x)
        for (std::size_t y = 0; y < r.n_; ++y)
            if ((mask >> (x * r.n_ + y)) & 1u) r.insert(x, y);
    return r;
}

std::uint64_t Relation::mask() const
{
    if (n_ * n_ > 64) throw std::invalid_argument("base too large for mask encoding");
    std::uint64_t m = 0;
    for (std::size_t x = 0; x < n_; ++x)
        rows_[x].for_each([&](std::size_t y) { m |= std::uint64_t{1} << (x * n_ + y); });
    return m;
}

bool Relation::empty() const
{
    for (const auto& r : rows_)
        if (r.any()) return false;
    return true;
}

std::size_t Relation::size() const
{
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
}

std::vector<Pair> Relation::pairs() const
{
    std::vector<Pair> out;
    for (std::size_t x = 0; x < n_; ++x) rows_[x].for_each([&](std::size_t y) { out.emplace_back(x, y); });
    return out;
}

bool Relation::is_subidentity() const
{
    for (std::size_t x = 0; x < n_; ++x) {
        auto c = rows_[x].count();
        if (c > 1 || (c == 1 && !rows_[x].test(x))) return false;
    }
    return true;
}

bool Relation::left_total() const
{
    for (const auto& r : rows_)
        if (r.none()) return false;
    return true;
}

bool Relation::same_base(const Relation& o) const
{
    return base_ == o.base_ || *base_ == *o.base_;
}

void Relation::require_same_base(const Relation& o) const
{
    if (!same_base(o)) throw BaseMismatch();
}

std::size_t Relation::hash() const
{
    std::size_t h = base_->fingerprint();
    for (const auto& r : rows_) h = h * 31 + r.hash();
    return h;
}

Bits domain(const Relation& r)
{
    Bits d(r.n());
    for (std::size_t x = 0; x < r.n(); ++x)
        if (r.row(x).any()) d.set(x);
    return d;
}

Relation restrict(const Relation& r, const Bits& d)
{
    Relation out(r.base());
    for (std::size_t x = 0; x < r.n(); ++x)
        if (x < d.size() && d.test(x)) r.row(x).for_each([&](std::size_t y) { out.insert(x, y); });
    return out;
}

Relation intersect(const Relation& r, const Relation& s)
{
    r.require_same_base(s);
    Relation out(r.base());
    for (std::size_t x = 0; x < r.n(); ++x) (r.row(x) & s.row(x)).for_each([&](std::size_t y) { out.insert(x, y); });
    return out;
}

Relation unite(const Relation& r, const Relation& s)
{
    r.require_same_base(s);
    Relation out(r.base());
    for (std::size_t x = 0; x < r.n(); ++x) (r.row(x) | s.row(x)).for_each([&](std::size_t y) { out.insert(x, y); });
    return out;
}

bool subset(const Relation& r, const Relation& s)
{
    r.require_same_base(s);
    for (std::size_t x = 0; x < r.n(); ++x)
        if (!r.row(x).subset_of(s.row(x))) return false;
    return true;
}

Relation compose(const Relation& r, const Relation& s)
{
    r.require_same_base(s);
    Relation out(r.base());
    for (std::size_t x = 0; x < r.n(); ++x) {
        Bits acc(r.n());
        r.row(x).for_each([&](std::size_t y) { acc |= s.row(y); });
        acc.for_each([&](std::size_t z) { out.insert(x, z); });
    }
    return out;
}

Relation demonic_compose(const Relation& r, const Relation& s)
{
    r.require_same_base(s);
    Bits ds = domain(s);
    Bits ok(r.n());
    for (std::size_t x = 0; x < r.n(); ++x)
        if (r.row(x).subset_of(ds)) ok.set(x);
    return restrict(compose(r, s), ok);
}

Relation demonic_join(const Relation& r, const Relation& s)
{
    r.require_same_base(s);
    return restrict(unite(r, s), domain(r) & domain(s));
}

bool demonic_refines(const Relation& r, const Relation& s)
{
    r.require_same_base(s);
    Bits ds = domain(s);
    if (!ds.subset_of(domain(r))) return false;
    return subset(restrict(r, ds), s);
}

bool has_common_refinement(const Relation& r, const Relation& s)
{
    r.require_same_base(s);
    return (domain(r) & domain(s)) == domain(intersect(r, s));
}

Relation demonic_meet(const Relation& r, const Relation& s)
{
    if (!has_common_refinement(r, s)) throw NoCommonRefinement();
    Bits not_dr = domain(r);
    not_dr.flip();
    Bits not_ds = domain(s);
    not_ds.flip();
    return unite(unite(intersect(r, s), restrict(r, not_ds)), restrict(s, not_dr));
}

Relation totalize(const Relation& r)
{
    auto bot = r.base()->bottom();
    if (!bot) throw std::invalid_argument("totalize: base has no bottom point");
    Relation out = r;
    for (std::size_t x = 0; x < r.n(); ++x)
        if (r.row(x).any()) out.insert(x, *bot);
    return out;
}

std::string base_header(const Base& b)
{
    std::string s = "base:";
    for (const auto& p : b.points()) s += " " + p;
    if (b.bottom()) s += " bottom=" + b.name(*b.bottom());
    return s;
}

std::string to_text(const Relation& r)
{
    std::ostringstream out;
    out << base_header(*r.base()) << "\n";
    for (auto [x, y] : r.pairs()) out << r.base()->name(x) << " -> " << r.base()->name(y) << "\n";
    return out.str();
}

BasePtr parse_base_line(std::string_view line)
{
    auto t = text::trim(line);
    if (!text::starts_with(t, "base:")) throw ParseError("expected 'base:' header");
    std::vector<std::string> pts;
    std::optional<std::string> bot;
    for (auto& w : text::words(t.substr(5))) {
        if (text::starts_with(w, "bottom=")) {
            if (bot) throw ParseError("duplicate bottom= in base header");
            bot = w.substr(7);
        } else {
            pts.push_back(w);
        }
    }
    std::optional<std::size_t> bi;
    if (bot) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (pts[i] == *bot) bi = i;
        if (!bi) throw ParseError("bottom point '" + *bot + "' is not listed in base");
    }
    try {
        return std::make_shared<const Base>(std::move(pts), bi);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

static Pair parse_pair_line(const Base& b, const std::string& line, int no)
{
    auto arrow = line.find("->");
    if (arrow == std::string::npos)
        throw ParseError("line " + std::to_string(no) + ": expected 'x -> y'");
    auto lhs = std::string(text::trim(std::string_view(line).substr(0, arrow)));
    auto rhs = std::string(text::trim(std::string_view(line).substr(arrow + 2)));
    auto x = b.index(lhs), y = b.index(rhs);
    if (!x || !y) throw ParseError("line " + std::to_string(no) + ": unknown point in '" + line + "'");
    return {*x, *y};
}

Relation parse_pairs(const BasePtr& base, std::string_view txt)
{
    Relation r(base);
    for (auto& [no, line] : text::logical_lines(txt)) {
        auto [x, y] = parse_pair_line(*base, line, no);
        r.insert(x, y);
    }
    return r;
}

Relation parse_relation(std::string_view txt)
{
    auto lines = text::logical_lines(txt);
    if (lines.empty()) throw ParseError("empty relation text");
    auto base = parse_base_line(lines[0].second);
    Relation r(base);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [x, y] = parse_pair_line(*base, lines[i].second, lines[i].first);
        r.insert(x, y);
    }
    return r;
}

} // namespace demrel
