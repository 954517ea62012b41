#pragma once

#include "tsetlin/automaton.hpp"
#include "tsetlin/bits.hpp"

#include <Eigen/Core>

#include <vector>

namespace tsetlin {

/// Clause evaluation mode. An empty clause (no included literal) outputs 1
/// while learning and 0 while classifying, so untrained clauses never vote.
enum class EvalMode { Learn, Classify };

inline constexpr int kEmptyClauseLearnOutput = 1;
inline constexpr int kEmptyClauseClassifyOutput = 0;

/// Literal slots interleave the inputs: slot 2k is x_k, slot 2k+1 is NOT x_k.
inline int literal_value(BitView x, int literal) {
    const int bit = x[static_cast<std::size_t>(literal / 2)];
    return (literal % 2 == 0) ? bit : 1 - bit;
}

constexpr int literal_for(int input, bool negated) { return 2 * input + (negated ? 1 : 0); }

/// Polarity of the clause at zero-based position `index` within its bank.
/// Counting from one, odd clauses are positive.
constexpr int polarity_for_index(int index) { return index % 2 == 0 ? +1 : -1; }

/// A team of 2n Tsetlin automata deciding literal inclusion, plus a vote sign.
class Clause {
public:
    Clause(int inputs, int polarity, int states_per_action, int initial_state = 0);

    int inputs() const { return static_cast<int>(states_.size() / 2); }
    int literals() const { return static_cast<int>(states_.size()); }
    int polarity() const { return polarity_; }
    int states_per_action() const { return states_per_action_; }

    int state(int literal) const { return states_[literal]; }
    void set_state(int literal, int state);
    const Eigen::VectorXi &states() const { return states_; }

    Action action(int literal) const { return action_of(states_[literal], states_per_action_); }
    bool includes(int literal) const { return states_[literal] > states_per_action_; }

    void reward(int literal) { states_[literal] = rewarded(states_[literal], states_per_action_); }
    void penalize(int literal) { states_[literal] = penalized(states_[literal], states_per_action_); }

    /// Inputs k whose positive literal x_k is included.
    std::vector<int> include_set() const;
    /// Inputs k whose negated literal NOT x_k is included.
    std::vector<int> negated_include_set() const;
    bool empty() const;

    int evaluate(BitView x, EvalMode mode) const;

private:
    Eigen::VectorXi states_;
    int polarity_;
    int states_per_action_;
};

} // namespace tsetlin
