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

#include "demrel/point.hpp"

#include <stdexcept>

namespace demrel {

FiniteStructure build_point_algebra()
{
    FiniteStructure s("point", {"z", "e", "g"}, Signature::meet_comp());
    const Elem z = 0, e = 1, g = 2;
    for (Elem a = 0; a < 3; ++a)
        for (Elem b = 0; b < 3; ++b) {
            s.set_meet(a, b, a == b ? a : z);
            s.set_comp(a, b, (a == z || b == z) ? z : (a == e && b == e) ? e : g);
        }
    (void)e;
    (void)g;
    return s;
}

RepMap point_algebra_theta(int m)
{
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    std::vector<std::string> pts;
    for (int i = 0; i <= m; ++i) pts.push_back("q" + std::to_string(i));
    pts.push_back("⊥");
    const std::size_t bot = static_cast<std::size_t>(m) + 1;
    auto base = std::make_shared<const Base>(pts, bot);
    Relation z(base), e(base), g(base);
    for (std::size_t q = 0; q <= bot; ++q) z.insert(q, bot);
    e = z;
    g = z;
    for (std::size_t i = 0; i < bot; ++i) {
        e.insert(i, i);
        for (std::size_t j = i + 1; j < bot; ++j) g.insert(i, j);
    }
    return RepMap{base, {z, e, g}};
}

} // namespace demrel
