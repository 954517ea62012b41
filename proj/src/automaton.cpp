#include "tsetlin/automaton.hpp"

#include "tsetlin/errors.hpp"

#include <fmt/format.h>

namespace tsetlin {

TsetlinAutomaton::TsetlinAutomaton(int states_per_action, int initial_state)
    : state_(initial_state == 0 ? states_per_action : initial_state),
      states_per_action_(states_per_action) {
    if (states_per_action < 1)
        throw ConfigError(fmt::format("states per action must be >= 1, got {}", states_per_action));
    if (state_ < 1 || state_ > 2 * states_per_action)
        throw ConfigError(fmt::format("initial state {} outside [1, {}]", state_, 2 * states_per_action));
}

} // namespace tsetlin
