#pragma once

// Test-only reference implementations. These compute expected behaviour
// straight from the definitions and never call the library's evaluation or
// feedback code paths.

#include "tsetlin/automaton.hpp"
#include "tsetlin/random.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

/// Conjunction of x_k for k in `include` and NOT x_k for k in `negated`, with a
/// leading constant 1. An empty conjunction is 1 when learning and 0 when
/// classifying.
inline int clause_output(const std::set<int> &include, const std::set<int> &negated,
                         const std::vector<std::uint8_t> &x, bool learning) {
    if (include.empty() && negated.empty())
        return learning ? 1 : 0;
    int out = 1;
    for (int k : include)
        out = out && (x[static_cast<std::size_t>(k)] == 1);
    for (int k : negated)
        out = out && (x[static_cast<std::size_t>(k)] == 0);
    return out;
}

/// All 2^n bit vectors of length n.
inline std::vector<std::vector<std::uint8_t>> all_inputs(int n) {
    std::vector<std::vector<std::uint8_t>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            x[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((mask >> k) & 1);
        out.push_back(x);
    }
    return out;
}

/// Single automaton in a stationary environment: the chosen action is
/// rewarded with probability reward_include / reward_exclude, penalized
/// otherwise. Returns the action held after `steps` interactions.
inline tsetlin::Action bernoulli_environment(int states_per_action, int steps, double reward_include,
                                             double reward_exclude, std::uint64_t seed) {
    tsetlin::TsetlinAutomaton ta(states_per_action);
    tsetlin::Rng rng(seed);
    for (int i = 0; i < steps; ++i) {
        const double p = ta.action() == tsetlin::Action::Include ? reward_include : reward_exclude;
        if (rng.uniform() < p)
            ta.reward();
        else
            ta.penalize();
    }
    return ta.action();
}

/// One cell of the Type I / Type II feedback table.
struct FeedbackCell {
    bool type_i;
    int clause_output;
    int literal_value;
    bool include;
    double reward;  ///< probability, as a function of s below
    double penalty;
};

/// Every reachable cell of the feedback table for precision s.
inline std::vector<FeedbackCell> feedback_table(double s) {
    const double hi = (s - 1.0) / s;
    const double lo = 1.0 / s;
    return {
        // Type I
        {true, 1, 1, true, hi, 0.0},
        {true, 1, 1, false, 0.0, hi},
        {true, 1, 0, false, lo, 0.0},
        {true, 0, 1, true, 0.0, lo},
        {true, 0, 1, false, lo, 0.0},
        {true, 0, 0, true, 0.0, lo},
        {true, 0, 0, false, lo, 0.0},
        // Type II
        {false, 1, 1, true, 0.0, 0.0},
        {false, 1, 1, false, 0.0, 0.0},
        {false, 1, 0, false, 0.0, 1.0},
        {false, 0, 1, true, 0.0, 0.0},
        {false, 0, 1, false, 0.0, 0.0},
        {false, 0, 0, true, 0.0, 0.0},
        {false, 0, 0, false, 0.0, 0.0},
    };
}

} // namespace oracle
