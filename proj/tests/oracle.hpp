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

// Independent first-principles evaluators used as test oracles. Relations
// over an n-point base are bit masks with bit x*n+y for the pair (x,y).
#ifndef DEMREL_TESTS_ORACLE_HPP
#define DEMREL_TESTS_ORACLE_HPP

#include <cstdint>

namespace oracle {

using Mask = std::uint64_t;

inline bool has(Mask m, int n, int x, int y) { return (m >> (x * n + y)) & 1u; }
inline Mask pair_bit(int n, int x, int y) { return Mask{1} << (x * n + y); }

inline bool in_dom(Mask m, int n, int x)
{
    for (int y = 0; y < n; ++y)
        if (has(m, n, x, y)) return true;
    return false;
}

inline Mask join(Mask r, Mask s, int n)
{
    Mask out = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if ((has(r, n, x, y) || has(s, n, x, y)) && in_dom(r, n, x) && in_dom(s, n, x)) out |= pair_bit(n, x, y);
    return out;
}

inline bool refines(Mask r, Mask s, int n)
{
    for (int x = 0; x < n; ++x) {
        if (!in_dom(s, n, x)) continue;
        if (!in_dom(r, n, x)) return false;
        for (int y = 0; y < n; ++y)
            if (has(r, n, x, y) && !has(s, n, x, y)) return false;
    }
    return true;
}

inline Mask meet(Mask r, Mask s, int n)
{
    Mask out = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            bool in = (has(r, n, x, y) && has(s, n, x, y)) || (has(r, n, x, y) && !in_dom(s, n, x)) ||
                      (has(s, n, x, y) && !in_dom(r, n, x));
            if (in) out |= pair_bit(n, x, y);
        }
    return out;
}

inline Mask comp(Mask r, Mask s, int n)
{
    Mask out = 0;
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z)
            for (int y = 0; y < n; ++y)
                if (has(r, n, x, y) && has(s, n, y, z)) out |= pair_bit(n, x, z);
    return out;
}

inline Mask demonic_comp(Mask r, Mask s, int n)
{
    Mask out = 0;
    for (int x = 0; x < n; ++x) {
        bool all_in = true;
        for (int y = 0; y < n; ++y)
            if (has(r, n, x, y) && !in_dom(s, n, y)) all_in = false;
        if (!all_in) continue;
        for (int z = 0; z < n; ++z)
            for (int y = 0; y < n; ++y)
                if (has(r, n, x, y) && has(s, n, y, z)) out |= pair_bit(n, x, z);
    }
    return out;
}

// ∃T. T ⊑ R ∧ T ⊑ S by enumeration of every T
inline bool common_refinement_exists(Mask r, Mask s, int n)
{
    const Mask all = Mask{1} << (n * n);
    for (Mask t = 0; t < all; ++t)
        if (refines(t, r, n) && refines(t, s, n)) return true;
    return false;
}

} // namespace oracle

#endif
