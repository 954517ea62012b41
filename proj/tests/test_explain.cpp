#include "doctest.h"

#include "tsetlin/errors.hpp"
#include "tsetlin/explain.hpp"

#include <json.hpp>

#include <sstream>

using namespace tsetlin;

namespace {

void set_include(Clause &c, int literal) { c.set_state(literal, c.states_per_action() + 1); }

const RowEncoder &table2_encoder() {
    static const RowEncoder enc({{"f", FeatureKind::Continuous, {3.834, 5.779, 10.008}, 0}});
    return enc;
}

const RowEncoder &table3_encoder() {
    static const RowEncoder enc({{"x1", FeatureKind::Categorical, {0, 1, 2, 3, 4}, 0},
                                 {"x2", FeatureKind::Categorical, {0, 1, 2, 3, 4, 5}, 0}});
    return enc;
}

} // namespace

TEST_CASE("threshold literals collapse to an interval") {
    Clause c(3, +1, 100);
    set_include(c, literal_for(1, false)); // f <= 5.779
    set_include(c, literal_for(0, true));  // f > 3.834
    const Rule r = clause_to_rule(c, table2_encoder());
    CHECK(r.text() == "3.834 < f ≤ 5.779");
    CHECK(r.holds(std::vector<double>{4.0}));
    CHECK_FALSE(r.holds(std::vector<double>{3.834}));
    CHECK(r.holds(std::vector<double>{5.779}));

    Clause upper(3, +1, 100);
    set_include(upper, literal_for(2, false));
    set_include(upper, literal_for(1, false));
    CHECK(clause_to_rule(upper, table2_encoder()).text() == "f ≤ 5.779");
    Clause lower(3, +1, 100);
    set_include(lower, literal_for(1, true));
    CHECK(clause_to_rule(lower, table2_encoder()).text() == "f > 5.779");
}

TEST_CASE("one-hot literals render as equalities") {
    Clause c(11, +1, 100);
    set_include(c, literal_for(3, false));
    CHECK(clause_to_rule(c, table3_encoder()).text() == "x1 = 3");
    set_include(c, literal_for(5, true)); // x2 != 0
    CHECK(clause_to_rule(c, table3_encoder()).text() == "x1 = 3 ∧ x2 ≠ 0");
}

TEST_CASE("empty and contradictory clauses") {
    Clause empty(3, +1, 100);
    const Rule e = clause_to_rule(empty, table2_encoder());
    CHECK(e.text() == kEmptyRuleText);
    CHECK(e.holds(std::vector<double>{1.0}, EvalMode::Learn));
    CHECK_FALSE(e.holds(std::vector<double>{1.0}, EvalMode::Classify));

    Clause contradiction(3, +1, 100);
    set_include(contradiction, literal_for(0, false)); // f <= 3.834
    set_include(contradiction, literal_for(1, true));  // f > 5.779
    const Rule r = clause_to_rule(contradiction, table2_encoder());
    CHECK_FALSE(r.satisfiable());
    CHECK(r.text().rfind(kUnsatisfiableText, 0) == 0);

    Clause two_values(11, +1, 100);
    set_include(two_values, literal_for(1, false));
    set_include(two_values, literal_for(2, false));
    CHECK_FALSE(clause_to_rule(two_values, table3_encoder()).satisfiable());

    CHECK_THROWS_AS(clause_to_rule(Clause(4, +1, 100), table2_encoder()), DataError);
}

TEST_CASE("rendered rules agree with clause evaluation") {
    Rng rng(101);
    const RowEncoder enc({{"a", FeatureKind::Continuous, {-2.5, 0.0, 1.25, 4.0, 9.5}, 0},
                          {"b", FeatureKind::Categorical, {1, 2, 3}, 0},
                          {"c", FeatureKind::Continuous, {10.0, 20.0}, 0}});
    for (int trial = 0; trial < 300; ++trial) {
        Clause c(enc.width(), +1, 10);
        for (int l = 0; l < c.literals(); ++l)
            c.set_state(l, rng.bernoulli(0.15) ? 11 : 10);
        const Rule rule = clause_to_rule(c, enc);
        for (int probe = 0; probe < 1000; ++probe) {
            const std::vector<double> row = {std::round((rng.uniform() * 16.0 - 4.0) * 4.0) / 4.0,
                                             static_cast<double>(1 + rng.below(3)),
                                             std::round(rng.uniform() * 30.0)};
            const BitVector x = encode_row(row, enc);
            for (auto mode : {EvalMode::Learn, EvalMode::Classify})
                REQUIRE(rule.holds(row, mode) == (c.evaluate(x, mode) == 1));
        }
    }
}

TEST_CASE("rule dumps") {
    MachineConfig cfg;
    Model model{table3_encoder(), TsetlinMachine(11, cfg)};
    set_include(model.machine.clause(1, 0), literal_for(4, false));
    set_include(model.machine.clause(1, 0), literal_for(10, false));
    const auto rules = explain(model);
    CHECK(rules.size() == 4);
    CHECK(explain(model, true).size() == 1);

    std::ostringstream text;
    write_rules_text(text, explain(model, true));
    CHECK(text.str() == "class 1 clause 0 (+): x1 = 4 ∧ x2 = 5\n");

    std::ostringstream js;
    write_rules_json(js, rules);
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc.size() == 4);
    CHECK(doc[2]["conditions"][0]["equals"] == 4.0);
    CHECK(doc[0]["empty"] == true);
}
