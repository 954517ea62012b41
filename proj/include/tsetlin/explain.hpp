#pragma once

#include "tsetlin/binarizer.hpp"
#include "tsetlin/clause.hpp"
#include "tsetlin/model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tsetlin {

/// Constraint a clause places on one raw feature.
///
/// Continuous features collapse to `lower < v <= upper` (either bound may be
/// absent). Categorical features collapse to `v = equals` or a set of
/// excluded categories.
struct FeatureCondition {
    int feature = 0;
    std::string name;
    FeatureKind kind = FeatureKind::Continuous;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<double> equals;
    std::vector<double> excluded;
    bool satisfiable = true;

    bool holds(double value) const;
    std::string text() const;
};

struct Rule {
    int polarity = 1;
    bool empty = false;
    std::vector<FeatureCondition> conditions;

    bool satisfiable() const;
    /// Truth value on a raw row, matching Clause::evaluate on its encoding.
    bool holds(std::span<const double> row, EvalMode mode = EvalMode::Classify) const;
    std::string text() const;
};

inline constexpr const char *kEmptyRuleText = "always-true (learning) / always-false (classification)";
inline constexpr const char *kUnsatisfiableText = "UNSATISFIABLE";

Rule clause_to_rule(const Clause &clause, const RowEncoder &encoder);

struct ExplainedClause {
    int cls = 0;
    int index = 0;
    Rule rule;
};

/// Every clause of the model, bank by bank.
std::vector<ExplainedClause> explain(const Model &model, bool skip_empty = false);

void write_rules_text(std::ostream &out, const std::vector<ExplainedClause> &rules);
void write_rules_json(std::ostream &out, const std::vector<ExplainedClause> &rules);

} // namespace tsetlin
