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

#ifndef DEMREL_BITS_HPP
#define DEMREL_BITS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace demrel {

/**
 * Fixed-width dynamic bitset. Used for point sets, relation rows and
 * element sets (network labels).
 */
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    void set_all()
    {
        for (auto& w : w_) w = ~std::uint64_t{0};
        trim();
    }
    void clear()
    {
        for (auto& w : w_) w = 0;
    }

    bool any() const
    {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    Bits& operator|=(const Bits& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bits& operator&=(const Bits& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits& operator^=(const Bits& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    // this \ o
    Bits& subtract(const Bits& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    Bits& flip()
    {
        for (auto& w : w_) w = ~w;
        trim();
        return *this;
    }

    bool intersects(const Bits& o) const
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    bool subset_of(const Bits& o) const
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
    friend bool operator==(const Bits& a, const Bits& b) = default;
    friend auto operator<=>(const Bits& a, const Bits& b)
    {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.w_ <=> b.w_;
    }

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                int b = std::countr_zero(w);
                f(i * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    // first set bit at or after i, or size() if none
    std::size_t next(std::size_t i) const
    {
        if (i >= n_) return n_;
        std::size_t wi = i >> 6;
        std::uint64_t w = w_[wi] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) return wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi >= w_.size()) return n_;
            w = w_[wi];
        }
    }

    std::vector<std::size_t> members() const
    {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

    std::size_t hash() const
    {
        std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
        for (auto w : w_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
        return h;
    }

private:
    void trim()
    {
        if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace demrel

template <>
struct std::hash<demrel::Bits> {
    std::size_t operator()(const demrel::Bits& b) const { return b.hash(); }
};

#endif
