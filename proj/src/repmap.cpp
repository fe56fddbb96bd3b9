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

#include "demrel/repmap.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace demrel {

void CheckReport::add(std::string msg, std::size_t cap)
{
    pass = false;
    ++violation_count;
    if (violations.size() < cap) violations.push_back(std::move(msg));
}

CheckReport check_representation(const Algebra& s, const RepMap& r, const CheckOptions& opt)
{
    CheckReport rep;
    const Elem n = static_cast<Elem>(s.size());
    if (r.images.size() != n) {
        rep.add("image count " + std::to_string(r.images.size()) + " differs from structure size " + std::to_string(n),
                opt.max_violations);
        return rep;
    }
    for (const auto& img : r.images) {
        if (!(img.base() == r.base || *img.base() == *r.base)) {
            rep.add("images are not over a common base", opt.max_violations);
            return rep;
        }
    }
    Signature sig = opt.signature.value_or(s.signature());
    const bool demonic = opt.semantics == Semantics::Demonic;

    if (opt.require_injective) {
        std::map<std::vector<Pair>, Elem> seen;
        for (Elem a = 0; a < n; ++a) {
            auto [it, fresh] = seen.emplace(r.images[a].pairs(), a);
            if (!fresh) rep.add("not injective: " + s.name(it->second) + " and " + s.name(a) + " share an image",
                                opt.max_violations);
        }
    }

    for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
            const Relation& ra = r.images[a];
            const Relation& rb = r.images[b];
            auto pair = "(" + s.name(a) + ", " + s.name(b) + ")";
            if (sig.has_join) {
                Relation got = demonic ? demonic_join(ra, rb) : unite(ra, rb);
                if (!(got == r.images[s.join(a, b)]))
                    rep.add(std::string(demonic ? "⊔" : "∪") + " mismatch at " + pair + ": expected image of " +
                                s.name(s.join(a, b)),
                            opt.max_violations);
            }
            if (sig.has_meet) {
                if (demonic && !has_common_refinement(ra, rb)) {
                    rep.add("no common refinement at " + pair + ": d(R)∩d(S) ≠ d(R∩S)", opt.max_violations);
                } else {
                    Relation got = demonic ? demonic_meet(ra, rb) : intersect(ra, rb);
                    if (!(got == r.images[s.meet(a, b)]))
                        rep.add(std::string(demonic ? "⊓" : "∩") + " mismatch at " + pair + ": expected image of " +
                                    s.name(s.meet(a, b)),
                                opt.max_violations);
                }
            }
            if (sig.has_comp) {
                if (!(compose(ra, rb) == r.images[s.comp(a, b)]))
                    rep.add("; mismatch at " + pair + ": expected image of " + s.name(s.comp(a, b)),
                            opt.max_violations);
            }
        }
    }
    return rep;
}

std::string to_text(const Algebra& s, const RepMap& r)
{
    std::ostringstream out;
    out << base_header(*r.base) << "\n";
    for (Elem a = 0; a < r.images.size(); ++a) {
        out << "elem " << s.name(a) << ":\n";
        for (auto [x, y] : r.images[a].pairs()) out << "  " << r.base->name(x) << " -> " << r.base->name(y) << "\n";
    }
    return out.str();
}

RepMap parse_repmap(const Algebra& s, std::string_view txt)
{
    auto lines = text::logical_lines(txt);
    if (lines.empty()) throw ParseError("empty representation text");
    RepMap r;
    r.base = parse_base_line(lines[0].second);
    std::vector<std::optional<Relation>> imgs(s.size());
    std::optional<Elem> cur;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [no, line] = lines[i];
        if (text::starts_with(line, "elem ")) {
            auto colon = line.rfind(':');
            if (colon == std::string::npos || colon < 5)
                throw ParseError("line " + std::to_string(no) + ": expected 'elem <name>:'");
            auto nm = std::string(text::trim(std::string_view(line).substr(5, colon - 5)));
            cur = s.find(nm);
            if (!cur) throw ParseError("line " + std::to_string(no) + ": unknown element '" + nm + "'");
            if (imgs[*cur]) throw ParseError("line " + std::to_string(no) + ": duplicate element '" + nm + "'");
            imgs[*cur].emplace(r.base);
            continue;
        }
        if (!cur) throw ParseError("line " + std::to_string(no) + ": pair outside an elem block");
        imgs[*cur] = unite(*imgs[*cur], parse_pairs(r.base, line));
    }
    for (Elem a = 0; a < s.size(); ++a) {
        if (!imgs[a]) throw ParseError("no image given for element '" + s.name(a) + "'");
        r.images.push_back(*imgs[a]);
    }
    return r;
}

std::optional<Elem> lattice_zero(const Algebra& s)
{
    if (!s.signature().has_meet) return std::nullopt;
    for (Elem z = 0; z < s.size(); ++z) {
        bool ok = true;
        for (Elem a = 0; a < s.size() && ok; ++a) ok = s.meet(z, a) == z && s.comp(a, z) == z;
        if (ok) return z;
    }
    return std::nullopt;
}

RepMap angelic_to_demonic(const Algebra& s, const RepMap& r)
{
    if (!lattice_zero(s)) throw std::invalid_argument("structure has no zero absorbing under ∘");
    CheckOptions opt;
    opt.semantics = Semantics::Angelic;
    auto rep = check_representation(s, r, opt);
    if (!rep.pass) throw std::invalid_argument("input is not an angelic representation: " + rep.violations.front());

    auto pts = r.base->points();
    std::string bot = "⊥";
    while (r.base->index(bot)) bot += "'";
    pts.push_back(bot);
    auto base = std::make_shared<const Base>(std::move(pts), r.base->size());
    const std::size_t b = r.base->size();
    RepMap out{base, {}};
    for (const auto& img : r.images) {
        Relation x(base, img.pairs());
        for (std::size_t p = 0; p <= b; ++p) x.insert(p, b);
        out.images.push_back(std::move(x));
    }
    return out;
}

CheckReport demonic_to_angelic(const Algebra& s, const RepMap& r)
{
    if (!lattice_zero(s)) throw std::invalid_argument("structure has no zero absorbing under ∘");
    CheckReport rep;
    if (r.images.empty()) return rep;
    Bits d0 = domain(r.images.front());
    for (Elem a = 1; a < r.images.size(); ++a)
        if (!(domain(r.images[a]) == d0))
            rep.add("domain of the image of " + s.name(a) + " differs from the image of " + s.name(0), 20);
    if (!rep.pass) return rep;
    CheckOptions opt;
    opt.semantics = Semantics::Angelic;
    return check_representation(s, r, opt);
}

} // namespace demrel
