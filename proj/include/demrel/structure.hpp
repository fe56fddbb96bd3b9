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

#ifndef DEMREL_STRUCTURE_HPP
#define DEMREL_STRUCTURE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace demrel {

using Elem = std::uint32_t;

struct Signature {
    bool has_join = false;
    bool has_meet = false;
    bool has_comp = true;

    bool valid() const { return has_comp && (has_join || has_meet); }
    friend bool operator==(const Signature&, const Signature&) = default;

    static Signature join_comp() { return {true, false, true}; }
    static Signature meet_comp() { return {false, true, true}; }
    static Signature lattice() { return {true, true, true}; }
    // "join,comp" / "meet comp" / ...
    static Signature parse(std::string_view words);
    std::string str() const;
};

/**
 * Operation interface shared by table-backed structures and the lazily
 * evaluated 𝒮ₙ family. Missing operations throw std::logic_error.
 */
class Algebra {
public:
    virtual ~Algebra() = default;

    virtual std::size_t size() const = 0;
    virtual Signature signature() const = 0;
    virtual std::string name(Elem a) const = 0;
    virtual Elem join(Elem a, Elem b) const;
    virtual Elem meet(Elem a, Elem b) const;
    virtual Elem comp(Elem a, Elem b) const = 0;

    virtual std::optional<Elem> find(std::string_view name) const;
    Elem at(std::string_view name) const;
};

class FiniteStructure : public Algebra {
public:
    FiniteStructure() = default;
    FiniteStructure(std::string title, std::vector<std::string> elements, Signature sig);

    std::size_t size() const override { return elements_.size(); }
    Signature signature() const override { return sig_; }
    std::string name(Elem a) const override { return elements_.at(a); }
    Elem join(Elem a, Elem b) const override;
    Elem meet(Elem a, Elem b) const override;
    Elem comp(Elem a, Elem b) const override;
    std::optional<Elem> find(std::string_view name) const override;

    const std::string& title() const { return title_; }
    const std::vector<std::string>& elements() const { return elements_; }

    void set_join(Elem a, Elem b, Elem c) { join_[a * size() + b] = c; }
    void set_meet(Elem a, Elem b, Elem c) { meet_[a * size() + b] = c; }
    void set_comp(Elem a, Elem b, Elem c) { comp_[a * size() + b] = c; }

    // Materialize every table of the given algebra.
    static FiniteStructure from_algebra(const Algebra& alg, std::string title);

    friend bool operator==(const FiniteStructure& a, const FiniteStructure& b)
    {
        return a.title_ == b.title_ && a.elements_ == b.elements_ && a.sig_ == b.sig_ && a.join_ == b.join_ &&
               a.meet_ == b.meet_ && a.comp_ == b.comp_;
    }

private:
    std::string title_;
    std::vector<std::string> elements_;
    std::unordered_map<std::string, Elem> index_;
    Signature sig_;
    std::vector<Elem> join_, meet_, comp_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    // Properties that representable structures need not have (for example
    // monotonicity of ∘ with respect to the demonic order) are reported here.
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Algebra& s);

// Structure file format, see README.
std::string to_text(const FiniteStructure& s);
FiniteStructure parse_structure(std::string_view text);
FiniteStructure load_structure(const std::string& path);
void save_structure(const FiniteStructure& s, const std::string& path);

// Order induced by a semilattice operation: a ≤ b iff a·b = a, or a+b = b.
bool join_leq(const Algebra& s, Elem a, Elem b);
bool meet_leq(const Algebra& s, Elem a, Elem b);

} // namespace demrel

#endif
