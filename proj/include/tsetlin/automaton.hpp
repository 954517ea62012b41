#pragma once

#include <cstdint>

namespace tsetlin {

enum class Action : std::uint8_t { Exclude, Include };

/// Action selected by a state on the 1..2N walk: 1..N exclude, N+1..2N include.
constexpr Action action_of(int state, int states_per_action) {
    return state <= states_per_action ? Action::Exclude : Action::Include;
}

/// One step deeper into the current action's half, saturating at 1 and 2N.
constexpr int rewarded(int state, int states_per_action) {
    if (state <= states_per_action)
        return state > 1 ? state - 1 : 1;
    return state < 2 * states_per_action ? state + 1 : 2 * states_per_action;
}

/// One step toward the centre; crossing N <-> N+1 flips the action.
constexpr int penalized(int state, int states_per_action) {
    return state <= states_per_action ? state + 1 : state - 1;
}

/// Two-action Tsetlin automaton with 2N states.
class TsetlinAutomaton {
public:
    /// Starts in state N, the shallowest exclude state, unless told otherwise.
    explicit TsetlinAutomaton(int states_per_action, int initial_state = 0);

    int state() const { return state_; }
    int states_per_action() const { return states_per_action_; }
    Action action() const { return action_of(state_, states_per_action_); }

    void reward() { state_ = rewarded(state_, states_per_action_); }
    void penalize() { state_ = penalized(state_, states_per_action_); }

private:
    int state_;
    int states_per_action_;
};

} // namespace tsetlin
