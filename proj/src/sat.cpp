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


#include "sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace demrel::sat {

int Solver::new_var()
{
    value_.push_back(0);
    level_.push_back(0);
    reason_.push_back(-1);
    activity_.push_back(0);
    phase_.push_back(0);
    preferred_.push_back(0);
    seen_.push_back(0);
    watches_.resize(2 * value_.size() + 2);
    return vars();
}

void Solver::prefer(int v) { preferred_.at(v) = 1; }

void Solver::add_clause(std::vector<Lit> c)
{
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (c[i] == -c[j]) return; // tautology
    if (c.empty()) {
        empty_clause_ = true;
        return;
    }
    if (c.size() == 1) {
        pending_units_.push_back(c[0]);
        return;
    }
    add_internal(std::move(c), false);
}

int Solver::add_internal(std::vector<Lit> c, bool)
{
    const int ci = static_cast<int>(clauses_.size());
    watches_[idx(-c[0])].push_back(ci);
    watches_[idx(-c[1])].push_back(ci);
    clauses_.push_back(std::move(c));
    return ci;
}

void Solver::assign(Lit l, int reason)
{
    const auto v = static_cast<std::size_t>(std::abs(l));
    value_[v] = l > 0 ? 1 : -1;
    level_[v] = level();
    reason_[v] = reason;
    phase_[v] = l > 0;
    trail_.push_back(l);
}

int Solver::propagate()
{
    while (qhead_ < trail_.size()) {
        const Lit p = trail_[qhead_++]; // p became true, so ¬p is false
        auto& ws = watches_[idx(p)];
        std::size_t i = 0, j = 0;
        while (i < ws.size()) {
            const int ci = ws[i++];
            auto& c = clauses_[ci];
            if (c[0] == -p) std::swap(c[0], c[1]);
            // c[1] == -p is false
            if (val(c[0]) == 1) {
                ws[j++] = ci;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < c.size(); ++k)
                if (val(c[k]) != -1) {
                    std::swap(c[1], c[k]);
                    watches_[idx(-c[1])].push_back(ci);
                    moved = true;
                    break;
                }
            if (moved) continue;
            ws[j++] = ci;
            if (val(c[0]) == -1) {
                while (i < ws.size()) ws[j++] = ws[i++];
                ws.resize(j);
                return ci;
            }
            assign(c[0], ci);
        }
        ws.resize(j);
    }
    return -1;
}

void Solver::bump(int v)
{
    activity_[v] += inc_;
    if (activity_[v] > 1e100) {
        for (auto& a : activity_) a *= 1e-100;
        inc_ *= 1e-100;
    }
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& back_level)
{
    learnt.assign(1, 0);
    int counter = 0;
    Lit p = 0;
    std::size_t index = trail_.size();
    std::vector<int> touched;
    do {
        const auto& c = clauses_[confl];
        for (Lit q : c) {
            if (q == p) continue;
            const int v = std::abs(q);
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            touched.push_back(v);
            bump(v);
            if (level_[v] == level())
                ++counter;
            else
                learnt.push_back(q);
        }
        while (!seen_[std::abs(trail_[--index])]) {
        }
        p = trail_[index];
        confl = reason_[std::abs(p)];
        seen_[std::abs(p)] = 0;
        --counter;
    } while (counter > 0);
    learnt[0] = -p;
    for (int v : touched) seen_[v] = 0;
    back_level = 0;
    std::size_t max_i = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
        const int lv = level_[std::abs(learnt[i])];
        if (lv > back_level) {
            back_level = lv;
            max_i = i;
        }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
    inc_ *= 1.05;
}

void Solver::backtrack(int lvl)
{
    if (level() <= lvl) return;
    const std::size_t stop = static_cast<std::size_t>(trail_lim_[lvl]);
    for (std::size_t i = trail_.size(); i-- > stop;) {
        const int v = std::abs(trail_[i]);
        value_[v] = 0;
        reason_[v] = -1;
    }
    trail_.resize(stop);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
}

int Solver::pick()
{
    int best = 0;
    bool best_pref = false;
    double best_act = -1;
    for (int v = 1; v <= vars(); ++v) {
        if (value_[v] != 0) continue;
        const bool pf = preferred_[v];
        if ((pf && !best_pref) || (pf == best_pref && activity_[v] > best_act)) {
            best = v;
            best_pref = pf;
            best_act = activity_[v];
        }
    }
    return best;
}

Result Solver::solve(const Limits& lim)
{
    if (empty_clause_) return Result::Unsat;
    for (Lit u : pending_units_) {
        if (val(u) == -1) return Result::Unsat;
        if (val(u) == 0) assign(u, -1);
    }
    pending_units_.clear();
    std::uint64_t restart_at = 100;
    std::uint64_t since_restart = 0;
    std::vector<Lit> learnt;
    while (true) {
        const int confl = propagate();
        if (confl >= 0) {
            ++conflicts_;
            ++since_restart;
            if (level() == 0) return Result::Unsat;
            int back = 0;
            analyze(confl, learnt, back);
            backtrack(back);
            if (learnt.size() == 1) {
                assign(learnt[0], -1);
            } else {
                const int ci = add_internal(learnt, true);
                assign(learnt[0], ci);
            }
            continue;
        }
        if (since_restart >= restart_at) {
            since_restart = 0;
            restart_at = restart_at * 3 / 2;
            backtrack(0);
            continue;
        }
        if ((decisions_ & 255) == 0) {
            if (lim.deadline && std::chrono::steady_clock::now() > *lim.deadline) return Result::Budget;
            if (lim.cancel && lim.cancel->load(std::memory_order_relaxed)) return Result::Budget;
        }
        const int v = pick();
        if (v == 0) {
            model_.assign(value_.size(), false);
            for (std::size_t i = 1; i < value_.size(); ++i) model_[i] = value_[i] == 1;
            return Result::Sat;
        }
        if (lim.max_decisions && decisions_ >= lim.max_decisions) return Result::Budget;
        ++decisions_;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        assign(phase_[v] ? v : -v, -1);
    }
}

} // namespace demrel::sat
