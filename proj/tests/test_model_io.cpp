#include "doctest.h"

#include "tsetlin/errors.hpp"
#include "tsetlin/model.hpp"

#include <sstream>

using namespace tsetlin;

namespace {

std::string dump(const Model &m) {
    std::ostringstream out;
    save_model(out, m);
    return out.str();
}

Model parse(const std::string &s) {
    std::istringstream in(s);
    return load_model(in);
}

} // namespace

TEST_CASE("model documents round-trip exactly") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const RowEncoder enc({{"x1", FeatureKind::Categorical, {0, 1, 2}, 0},
                              {"rate[t-1]", FeatureKind::Continuous, {0.1, 1.0 / 3.0, 2.718281828459045, 1e300}, 0}});
        MachineConfig cfg;
        cfg.classes = 1 + static_cast<int>(rng.below(3));
        cfg.clauses_per_class = 2 * (1 + static_cast<int>(rng.below(3)));
        cfg.states_per_action = 1 + static_cast<int>(rng.below(200));
        cfg.threshold = 1 + static_cast<int>(rng.below(20));
        cfg.precision = 1.0 + rng.uniform() * 10.0;
        cfg.seed = rng.next();
        cfg.feedback_all_negatives = rng.bernoulli(0.5);
        Model m{enc, TsetlinMachine(enc.width(), cfg)};
        const int banks = cfg.classes == 1 ? 1 : cfg.classes;
        for (int b = 0; b < banks; ++b)
            for (auto &c : m.machine.bank(b))
                for (int l = 0; l < c.literals(); ++l)
                    c.set_state(l, 1 + static_cast<int>(rng.below(2 * static_cast<std::uint64_t>(cfg.states_per_action))));

        const std::string text = dump(m);
        const Model back = parse(text);
        REQUIRE(dump(back) == text);
        REQUIRE(back.machine.config().precision == cfg.precision);
        REQUIRE(back.encoder.blocks()[1].values == enc.blocks()[1].values);
        const std::vector<double> row = {1, 0.5};
        REQUIRE(back.predict(row) == m.predict(row));
    }
}

TEST_CASE("trained model survives a round trip") {
    Rng rng(3);
    const auto data = generate_artificial(rng, 400, 1.0 / 9.0);
    TrainingSetup setup;
    setup.epochs = 30;
    const auto outcome = train_model(data, setup);
    const Model back = parse(dump(outcome.model));
    CHECK(back.predict(data.values) == outcome.model.predict(data.values));
}

TEST_CASE("malformed model documents are rejected") {
    MachineConfig cfg;
    const RowEncoder enc({{"f", FeatureKind::Continuous, {1.0, 2.0}, 0}});
    const std::string good = dump(Model{enc, TsetlinMachine(2, cfg)});

    CHECK_THROWS_AS(parse(""), DataError);
    CHECK_THROWS_AS(parse("not-a-model 1\n"), DataError);

    std::string truncated = good.substr(0, good.find("bank 1"));
    CHECK_THROWS_AS(parse(truncated), DataError);

    std::string bad_state = good;
    bad_state.replace(bad_state.find("clause + 100"), 12, "clause + 999");
    CHECK_THROWS_WITH_AS(parse(bad_state), doctest::Contains("outside [1, 200]"), DataError);

    std::string bad_polarity = good;
    bad_polarity.replace(bad_polarity.find("clause +"), 8, "clause -");
    CHECK_THROWS_AS(parse(bad_polarity), DataError);

    std::string odd = good;
    odd.replace(odd.find("clauses 2"), 9, "clauses 3");
    CHECK_THROWS_AS(parse(odd), DataError);

    const RowEncoder spaced({{"bad name", FeatureKind::Continuous, {1.0}, 0}});
    CHECK_THROWS_AS(dump(Model{spaced, TsetlinMachine(1, cfg)}), DataError);
}
