#include "tsetlin/clause.hpp"

#include "tsetlin/errors.hpp"

#include <fmt/format.h>

namespace tsetlin {

Clause::Clause(int inputs, int polarity, int states_per_action, int initial_state)
    : polarity_(polarity), states_per_action_(states_per_action) {
    if (inputs < 1)
        throw ConfigError(fmt::format("clause needs at least one input, got {}", inputs));
    if (polarity != 1 && polarity != -1)
        throw ConfigError(fmt::format("clause polarity must be +1 or -1, got {}", polarity));
    const TsetlinAutomaton prototype(states_per_action, initial_state);
    states_ = Eigen::VectorXi::Constant(2 * inputs, prototype.state());
}

void Clause::set_state(int literal, int state) {
    if (state < 1 || state > 2 * states_per_action_)
        throw DataError(fmt::format("automaton state {} outside [1, {}]", state, 2 * states_per_action_));
    states_[literal] = state;
}

std::vector<int> Clause::include_set() const {
    std::vector<int> out;
    for (int k = 0; k < inputs(); ++k)
        if (includes(literal_for(k, false)))
            out.push_back(k);
    return out;
}

std::vector<int> Clause::negated_include_set() const {
    std::vector<int> out;
    for (int k = 0; k < inputs(); ++k)
        if (includes(literal_for(k, true)))
            out.push_back(k);
    return out;
}

bool Clause::empty() const { return (states_.array() <= states_per_action_).all(); }

int Clause::evaluate(BitView x, EvalMode mode) const {
    if (static_cast<int>(x.size()) != inputs())
        throw DataError(fmt::format("input has {} bits, clause expects {}", x.size(), inputs()));
    bool any_included = false;
    const int n = literals();
    for (int l = 0; l < n; ++l) {
        if (states_[l] <= states_per_action_)
            continue;
        any_included = true;
        if (literal_value(x, l) == 0)
            return 0;
    }
    if (!any_included)
        return mode == EvalMode::Learn ? kEmptyClauseLearnOutput : kEmptyClauseClassifyOutput;
    return 1;
}

} // namespace tsetlin
