#include "tsetlin/explain.hpp"

#include "tsetlin/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <ostream>

namespace tsetlin {

bool FeatureCondition::holds(double value) const {
    if (!satisfiable)
        return false;
    if (kind == FeatureKind::Continuous)
        return (!lower || value > *lower) && (!upper || value <= *upper);
    if (equals)
        return value == *equals;
    return std::find(excluded.begin(), excluded.end(), value) == excluded.end();
}

std::string FeatureCondition::text() const {
    if (!satisfiable)
        return fmt::format("no admissible {}", name);
    if (kind == FeatureKind::Continuous) {
        if (lower && upper)
            return fmt::format("{} < {} ≤ {}", *lower, name, *upper);
        if (upper)
            return fmt::format("{} ≤ {}", name, *upper);
        return fmt::format("{} > {}", name, *lower);
    }
    if (equals)
        return fmt::format("{} = {}", name, *equals);
    std::string out;
    for (std::size_t i = 0; i < excluded.size(); ++i)
        out += fmt::format("{}{} ≠ {}", i ? " ∧ " : "", name, excluded[i]);
    return out;
}

bool Rule::satisfiable() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const FeatureCondition &c) { return c.satisfiable; });
}

bool Rule::holds(std::span<const double> row, EvalMode mode) const {
    if (empty)
        return mode == EvalMode::Learn ? kEmptyClauseLearnOutput == 1 : kEmptyClauseClassifyOutput == 1;
    for (const auto &c : conditions)
        if (!c.holds(row[static_cast<std::size_t>(c.feature)]))
            return false;
    return true;
}

std::string Rule::text() const {
    if (empty)
        return kEmptyRuleText;
    std::string body;
    for (std::size_t i = 0; i < conditions.size(); ++i)
        body += (i ? " ∧ " : "") + conditions[i].text();
    return satisfiable() ? body : fmt::format("{}: {}", kUnsatisfiableText, body);
}

Rule clause_to_rule(const Clause &clause, const RowEncoder &encoder) {
    if (clause.inputs() != encoder.width())
        throw DataError(fmt::format("clause has {} inputs but encoder width is {}", clause.inputs(),
                                    encoder.width()));
    Rule rule;
    rule.polarity = clause.polarity();
    rule.empty = clause.empty();
    if (rule.empty)
        return rule;

    const auto &blocks = encoder.blocks();
    for (std::size_t f = 0; f < blocks.size(); ++f) {
        const FeatureBlock &b = blocks[f];
        FeatureCondition cond;
        cond.feature = static_cast<int>(f);
        cond.name = b.name;
        cond.kind = b.kind;
        bool constrained = false;
        std::vector<double> required;
        for (int w = 0; w < b.width(); ++w) {
            const int bit = b.offset + w;
            const double v = b.values[static_cast<std::size_t>(w)];
            const bool positive = clause.includes(literal_for(bit, false));
            const bool negated = clause.includes(literal_for(bit, true));
            if (!positive && !negated)
                continue;
            constrained = true;
            if (b.kind == FeatureKind::Continuous) {
                // bit w means "value <= v"
                if (positive)
                    cond.upper = cond.upper ? std::min(*cond.upper, v) : v;
                if (negated)
                    cond.lower = cond.lower ? std::max(*cond.lower, v) : v;
            } else {
                if (positive)
                    required.push_back(v);
                if (negated)
                    cond.excluded.push_back(v);
            }
        }
        if (!constrained)
            continue;
        if (b.kind == FeatureKind::Continuous) {
            if (cond.lower && cond.upper && *cond.lower >= *cond.upper)
                cond.satisfiable = false;
        } else {
            if (required.size() > 1) {
                cond.satisfiable = false;
            } else if (required.size() == 1) {
                const double c = required.front();
                if (std::find(cond.excluded.begin(), cond.excluded.end(), c) != cond.excluded.end())
                    cond.satisfiable = false;
                cond.equals = c;
                if (cond.satisfiable)
                    cond.excluded.clear(); // "= c" already implies every "!= d"
            } else if (cond.excluded.size() == b.values.size()) {
                cond.satisfiable = false;
            }
        }
        rule.conditions.push_back(std::move(cond));
    }
    return rule;
}

std::vector<ExplainedClause> explain(const Model &model, bool skip_empty) {
    std::vector<ExplainedClause> out;
    const int banks = model.machine.classes() == 1 ? 1 : model.machine.classes();
    for (int b = 0; b < banks; ++b) {
        const auto clauses = model.machine.bank(b);
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            Rule rule = clause_to_rule(clauses[i], model.encoder);
            if (skip_empty && rule.empty)
                continue;
            out.push_back({b, static_cast<int>(i), std::move(rule)});
        }
    }
    return out;
}

void write_rules_text(std::ostream &out, const std::vector<ExplainedClause> &rules) {
    for (const auto &r : rules)
        out << fmt::format("class {} clause {} ({}): {}\n", r.cls, r.index, r.rule.polarity > 0 ? '+' : '-',
                           r.rule.text());
}

void write_rules_json(std::ostream &out, const std::vector<ExplainedClause> &rules) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto &r : rules) {
        nlohmann::ordered_json item;
        item["class"] = r.cls;
        item["clause"] = r.index;
        item["polarity"] = r.rule.polarity;
        item["empty"] = r.rule.empty;
        item["satisfiable"] = r.rule.satisfiable();
        item["text"] = r.rule.text();
        auto conds = nlohmann::ordered_json::array();
        for (const auto &c : r.rule.conditions) {
            nlohmann::ordered_json j;
            j["feature"] = c.name;
            j["kind"] = c.kind == FeatureKind::Continuous ? "continuous" : "categorical";
            j["satisfiable"] = c.satisfiable;
            if (c.lower)
                j["greater_than"] = *c.lower;
            if (c.upper)
                j["at_most"] = *c.upper;
            if (c.equals)
                j["equals"] = *c.equals;
            if (!c.excluded.empty())
                j["not_equal"] = c.excluded;
            conds.push_back(std::move(j));
        }
        item["conditions"] = std::move(conds);
        doc.push_back(std::move(item));
    }
    out << doc.dump(2) << '\n';
}

} // namespace tsetlin
