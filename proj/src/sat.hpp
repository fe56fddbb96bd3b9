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


#ifndef DEMREL_SAT_HPP
#define DEMREL_SAT_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace demrel::sat {

// Literal: +v or -v for variable v ≥ 1.
using Lit = int;

enum class Result { Sat, Unsat, Budget };

struct Limits {
    std::uint64_t max_decisions = 0; // 0: unlimited
    std::optional<std::chrono::steady_clock::time_point> deadline;
    const std::atomic<bool>* cancel = nullptr;
};

/**
 * Small CDCL solver: two watched literals, first-UIP learning, activity
 * ordering with phase saving, geometric restarts. Meant for the few
 * thousand variables a bounded representation query produces.
 */
class Solver {
public:
    int new_var();
    int vars() const { return static_cast<int>(value_.size()) - 1; }
    void add_clause(std::vector<Lit> c);

    // Preferred decision variables are branched on first.
    void prefer(int v);

    Result solve(const Limits& lim = {});
    bool model(int v) const { return model_.at(v); }

    std::uint64_t decisions() const { return decisions_; }
    std::uint64_t conflicts() const { return conflicts_; }

private:
    static std::size_t idx(Lit l) { return l > 0 ? 2 * static_cast<std::size_t>(l) : 2 * static_cast<std::size_t>(-l) + 1; }
    int val(Lit l) const
    {
        int v = value_[static_cast<std::size_t>(l > 0 ? l : -l)];
        return l > 0 ? v : -v;
    }
    void assign(Lit l, int reason);
    int propagate(); // conflicting clause index or -1
    void analyze(int confl, std::vector<Lit>& learnt, int& back_level);
    void backtrack(int level);
    int pick();
    void bump(int v);
    int level() const { return static_cast<int>(trail_lim_.size()); }
    int add_internal(std::vector<Lit> c, bool learnt);

    std::vector<std::vector<Lit>> clauses_;
    std::vector<std::vector<int>> watches_; // by idx(lit): clauses watching ¬lit becoming false
    std::vector<int> value_{0};             // 1 true, -1 false, 0 unassigned
    std::vector<int> level_{0}, reason_{-1};
    std::vector<double> activity_{0};
    std::vector<char> phase_{0}, preferred_{0}, seen_{0};
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    double inc_ = 1.0;
    bool empty_clause_ = false;
    std::vector<Lit> pending_units_;
    std::vector<bool> model_;
    std::uint64_t decisions_ = 0, conflicts_ = 0;
};

} // namespace demrel::sat

#endif
