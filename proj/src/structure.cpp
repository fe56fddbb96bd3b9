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

#include "demrel/structure.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "demrel/relation.hpp"
#include "text.hpp"

namespace demrel {

Signature Signature::parse(std::string_view words)
{
    std::string s(words);
    for (auto& c : s)
        if (c == ',') c = ' ';
    Signature sig{false, false, false};
    for (auto& w : text::words(s)) {
        if (w == "join") sig.has_join = true;
        else if (w == "meet") sig.has_meet = true;
        else if (w == "comp") sig.has_comp = true;
        else throw ParseError("unknown signature word '" + w + "'");
    }
    if (!sig.valid()) throw ParseError("signature needs comp and at least one of join/meet");
    return sig;
}

std::string Signature::str() const
{
    std::string s;
    if (has_join) s += "join ";
    if (has_meet) s += "meet ";
    if (has_comp) s += "comp";
    return s;
}

Elem Algebra::join(Elem, Elem) const { throw std::logic_error("structure has no join"); }
Elem Algebra::meet(Elem, Elem) const { throw std::logic_error("structure has no meet"); }

std::optional<Elem> Algebra::find(std::string_view nm) const
{
    for (Elem a = 0; a < size(); ++a)
        if (name(a) == nm) return a;
    return std::nullopt;
}

Elem Algebra::at(std::string_view nm) const
{
    auto e = find(nm);
    if (!e) throw std::out_of_range("unknown element '" + std::string(nm) + "'");
    return *e;
}

FiniteStructure::FiniteStructure(std::string title, std::vector<std::string> elements, Signature sig)
    : title_(std::move(title)), elements_(std::move(elements)), sig_(sig)
{
    if (!sig_.valid()) throw std::invalid_argument("invalid signature");
    for (Elem i = 0; i < elements_.size(); ++i) {
        if (!index_.emplace(elements_[i], i).second)
            throw std::invalid_argument("duplicate element name '" + elements_[i] + "'");
    }
    std::size_t n2 = elements_.size() * elements_.size();
    if (sig_.has_join) join_.assign(n2, 0);
    if (sig_.has_meet) meet_.assign(n2, 0);
    comp_.assign(n2, 0);
}

Elem FiniteStructure::join(Elem a, Elem b) const
{
    if (!sig_.has_join) return Algebra::join(a, b);
    return join_[a * size() + b];
}

Elem FiniteStructure::meet(Elem a, Elem b) const
{
    if (!sig_.has_meet) return Algebra::meet(a, b);
    return meet_[a * size() + b];
}

Elem FiniteStructure::comp(Elem a, Elem b) const { return comp_[a * size() + b]; }

std::optional<Elem> FiniteStructure::find(std::string_view nm) const
{
    auto it = index_.find(std::string(nm));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

FiniteStructure FiniteStructure::from_algebra(const Algebra& alg, std::string title)
{
    std::vector<std::string> names;
    for (Elem a = 0; a < alg.size(); ++a) names.push_back(alg.name(a));
    FiniteStructure s(std::move(title), std::move(names), alg.signature());
    for (Elem a = 0; a < alg.size(); ++a)
        for (Elem b = 0; b < alg.size(); ++b) {
            if (s.sig_.has_join) s.set_join(a, b, alg.join(a, b));
            if (s.sig_.has_meet) s.set_meet(a, b, alg.meet(a, b));
            s.set_comp(a, b, alg.comp(a, b));
        }
    return s;
}

bool join_leq(const Algebra& s, Elem a, Elem b) { return s.join(a, b) == b; }
bool meet_leq(const Algebra& s, Elem a, Elem b) { return s.meet(a, b) == a; }

namespace {

using BinOp = Elem (Algebra::*)(Elem, Elem) const;

void check_semilattice(const Algebra& s, BinOp op, const char* sym, ValidationReport& rep)
{
    const Elem n = static_cast<Elem>(s.size());
    auto f = [&](Elem a, Elem b) { return (s.*op)(a, b); };
    for (Elem a = 0; a < n; ++a) {
        if (f(a, a) != a) {
            rep.violations.push_back("idempotence of " + std::string(sym) + " fails at " + s.name(a));
            return;
        }
        for (Elem b = 0; b < n; ++b) {
            if (f(a, b) != f(b, a)) {
                rep.violations.push_back("commutativity of " + std::string(sym) + " fails at (" + s.name(a) + ", " +
                                         s.name(b) + ")");
                return;
            }
        }
    }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c)
                if (f(f(a, b), c) != f(a, f(b, c))) {
                    rep.violations.push_back("associativity of " + std::string(sym) + " fails at (" + s.name(a) + ", " +
                                             s.name(b) + ", " + s.name(c) + ")");
                    return;
                }
}

void check_monotone(const Algebra& s, BinOp op, bool meet_order, const char* sym, ValidationReport& rep)
{
    const Elem n = static_cast<Elem>(s.size());
    auto leq = [&](Elem a, Elem b) { return meet_order ? meet_leq(s, a, b) : join_leq(s, a, b); };
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            if (a == b || !leq(a, b)) continue;
            (void)op;
            for (Elem c = 0; c < n; ++c) {
                bool right = leq(s.comp(a, c), s.comp(b, c));
                bool left = leq(s.comp(c, a), s.comp(c, b));
                if (!right || !left) {
                    rep.warnings.push_back("∘ is not monotone with respect to " + std::string(sym) + ": " + s.name(a) +
                                           " ≤ " + s.name(b) + " but not " +
                                           (right ? s.name(c) + "∘" + s.name(a) + " ≤ " + s.name(c) + "∘" + s.name(b)
                                                  : s.name(a) + "∘" + s.name(c) + " ≤ " + s.name(b) + "∘" + s.name(c)));
                    return;
                }
            }
        }
}

} // namespace

ValidationReport validate(const Algebra& s)
{
    ValidationReport rep;
    Signature sig = s.signature();
    if (!sig.valid()) {
        rep.violations.push_back("signature must contain ∘ and one of +, ·");
        return rep;
    }
    const Elem n = static_cast<Elem>(s.size());
    if (n == 0) {
        rep.violations.push_back("structure has no elements");
        return rep;
    }
    if (sig.has_join) check_semilattice(s, &Algebra::join, "+", rep);
    if (sig.has_meet) check_semilattice(s, &Algebra::meet, "·", rep);
    if (sig.has_join && sig.has_meet) {
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                if (s.join(a, s.meet(a, b)) != a || s.meet(a, s.join(a, b)) != a) {
                    rep.violations.push_back("absorption fails at (" + s.name(a) + ", " + s.name(b) + ")");
                    a = n - 1;
                    break;
                }
    }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c)
                if (s.comp(s.comp(a, b), c) != s.comp(a, s.comp(b, c))) {
                    rep.violations.push_back("associativity of ∘ fails at (" + s.name(a) + ", " + s.name(b) + ", " +
                                             s.name(c) + ")");
                    a = b = c = n;
                }
    // Monotonicity is only meaningful once the order is a semilattice order.
    if (rep.ok()) {
        if (sig.has_join) check_monotone(s, &Algebra::join, false, "the +-order", rep);
        if (sig.has_meet) check_monotone(s, &Algebra::meet, true, "the ·-order", rep);
    }
    return rep;
}

std::string to_text(const FiniteStructure& s)
{
    std::ostringstream out;
    out << "structure " << (s.title().empty() ? "unnamed" : s.title()) << "\n";
    out << "signature " << s.signature().str() << "\n";
    out << "elements";
    for (const auto& e : s.elements()) out << " " << e;
    out << "\n";
    auto table = [&](const char* nm, auto op) {
        out << "table " << nm << "\n";
        for (Elem a = 0; a < s.size(); ++a) {
            out << s.name(a) << ":";
            for (Elem b = 0; b < s.size(); ++b) out << " " << s.name(op(a, b));
            out << "\n";
        }
    };
    if (s.signature().has_join) table("join", [&](Elem a, Elem b) { return s.join(a, b); });
    if (s.signature().has_meet) table("meet", [&](Elem a, Elem b) { return s.meet(a, b); });
    table("comp", [&](Elem a, Elem b) { return s.comp(a, b); });
    return out.str();
}

FiniteStructure parse_structure(std::string_view txt)
{
    auto lines = text::logical_lines(txt);
    std::string title;
    std::optional<Signature> sig;
    std::optional<std::vector<std::string>> elems;
    std::size_t i = 0;
    auto fail = [&](int no, const std::string& msg) { throw ParseError("line " + std::to_string(no) + ": " + msg); };
    for (; i < lines.size(); ++i) {
        auto& [no, line] = lines[i];
        auto w = text::words(line);
        if (w[0] == "structure") {
            if (w.size() != 2) fail(no, "expected 'structure <name>'");
            title = w[1];
        } else if (w[0] == "signature") {
            std::string rest;
            for (std::size_t k = 1; k < w.size(); ++k) rest += w[k] + " ";
            sig = Signature::parse(rest);
        } else if (w[0] == "elements") {
            elems.emplace(w.begin() + 1, w.end());
            if (elems->empty()) fail(no, "empty element list");
        } else if (w[0] == "table") {
            break;
        } else {
            fail(no, "unexpected '" + w[0] + "'");
        }
    }
    if (!sig) throw ParseError("missing 'signature' line");
    if (!elems) throw ParseError("missing 'elements' line");
    FiniteStructure s = [&] {
        try {
            return FiniteStructure(title, *elems, *sig);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }();
    const std::size_t n = elems->size();
    bool seen_join = false, seen_meet = false, seen_comp = false;
    while (i < lines.size()) {
        auto& [no, line] = lines[i];
        auto w = text::words(line);
        if (w[0] != "table" || w.size() != 2) fail(no, "expected 'table join|meet|comp'");
        const std::string which = w[1];
        bool* seen = which == "join" ? &seen_join : which == "meet" ? &seen_meet : which == "comp" ? &seen_comp : nullptr;
        if (!seen) fail(no, "unknown table '" + which + "'");
        if (*seen) fail(no, "duplicate table '" + which + "'");
        if ((which == "join" && !sig->has_join) || (which == "meet" && !sig->has_meet))
            fail(no, "table '" + which + "' not in signature");
        *seen = true;
        ++i;
        std::vector<bool> row_seen(n, false);
        for (std::size_t r = 0; r < n; ++r, ++i) {
            if (i >= lines.size()) throw ParseError("table '" + which + "' is missing rows");
            auto& [rno, rline] = lines[i];
            auto colon = rline.find(':');
            if (colon == std::string::npos) fail(rno, "expected '<elem>: v1 v2 ...'");
            auto head = std::string(text::trim(std::string_view(rline).substr(0, colon)));
            auto a = s.find(head);
            if (!a) fail(rno, "unknown element '" + head + "'");
            if (row_seen[*a]) fail(rno, "duplicate row '" + head + "'");
            row_seen[*a] = true;
            auto vals = text::words(std::string_view(rline).substr(colon + 1));
            if (vals.size() != n) fail(rno, "row has " + std::to_string(vals.size()) + " entries, expected " + std::to_string(n));
            for (Elem b = 0; b < n; ++b) {
                auto c = s.find(vals[b]);
                if (!c) fail(rno, "unknown element '" + vals[b] + "'");
                if (which == "join") s.set_join(*a, b, *c);
                else if (which == "meet") s.set_meet(*a, b, *c);
                else s.set_comp(*a, b, *c);
            }
        }
    }
    if (sig->has_join && !seen_join) throw ParseError("missing table join");
    if (sig->has_meet && !seen_meet) throw ParseError("missing table meet");
    if (!seen_comp) throw ParseError("missing table comp");
    return s;
}

FiniteStructure load_structure(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_structure(ss.str());
}

void save_structure(const FiniteStructure& s, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << to_text(s);
}

} // namespace demrel
