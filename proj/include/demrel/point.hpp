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

#ifndef DEMREL_POINT_HPP
#define DEMREL_POINT_HPP

#include "demrel/repmap.hpp"
#include "demrel/structure.hpp"

namespace demrel {

// {z, e, g} with · and ∘; element ids z=0, e=1, g=2.
FiniteStructure build_point_algebra();

/**
 * Truncation of the rational-order representation to points q0..qm plus ⊥:
 * z ↦ {(q,⊥)} ∪ {(⊥,⊥)}, e ↦ diagonal ∪ z, g ↦ {(qi,qj) : i<j} ∪ z.
 * Not a representation for finite m (g;g ≠ g).
 */
RepMap point_algebra_theta(int m);

} // namespace demrel

#endif
