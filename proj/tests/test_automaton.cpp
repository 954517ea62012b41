#include "doctest.h"
#include "oracles.hpp"

#include "tsetlin/automaton.hpp"
#include "tsetlin/errors.hpp"
#include "tsetlin/random.hpp"

using namespace tsetlin;

TEST_CASE("action follows the state halves") {
    CHECK(action_of(1, 100) == Action::Exclude);
    CHECK(action_of(100, 100) == Action::Exclude);
    CHECK(action_of(101, 100) == Action::Include);
    CHECK(action_of(200, 100) == Action::Include);
}

TEST_CASE("reward moves deeper and saturates") {
    CHECK(rewarded(50, 100) == 49);
    CHECK(rewarded(1, 100) == 1);
    CHECK(rewarded(150, 100) == 151);
    CHECK(rewarded(200, 100) == 200);
}

TEST_CASE("penalty moves toward the centre and crosses over") {
    CHECK(penalized(100, 100) == 101);
    CHECK(action_of(penalized(100, 100), 100) == Action::Include);
    CHECK(penalized(101, 100) == 100);
    CHECK(action_of(penalized(101, 100), 100) == Action::Exclude);
    CHECK(penalized(37, 100) == 38);
}

TEST_CASE("automaton starts at the shallowest exclude state") {
    TsetlinAutomaton ta(100);
    CHECK(ta.state() == 100);
    CHECK(ta.action() == Action::Exclude);
    ta.penalize();
    CHECK(ta.action() == Action::Include);

    CHECK(TsetlinAutomaton(100, 7).state() == 7);
    CHECK_THROWS_AS(TsetlinAutomaton(0), ConfigError);
    CHECK_THROWS_AS(TsetlinAutomaton(10, 21), ConfigError);
}

TEST_CASE("random reward/penalty walks stay in bounds and flip only at the centre") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(20));
        TsetlinAutomaton ta(n, 1 + static_cast<int>(rng.below(2 * static_cast<std::uint64_t>(n))));
        for (int step = 0; step < 500; ++step) {
            const int before = ta.state();
            const Action a = ta.action();
            const bool reward = rng.bernoulli(0.5);
            if (reward)
                ta.reward();
            else
                ta.penalize();
            REQUIRE(ta.state() >= 1);
            REQUIRE(ta.state() <= 2 * n);
            if (ta.action() != a) {
                REQUIRE_FALSE(reward);
                REQUIRE(((before == n && ta.state() == n + 1) || (before == n + 1 && ta.state() == n)));
            }
        }
    }
}

TEST_CASE("automaton settles on the more rewarded action") {
    int include_wins = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        include_wins += oracle::bernoulli_environment(100, 10000, 0.9, 0.1, seed) == Action::Include;
    CHECK(include_wins >= 19);

    int exclude_wins = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        exclude_wins += oracle::bernoulli_environment(100, 10000, 0.1, 0.9, seed) == Action::Exclude;
    CHECK(exclude_wins >= 19);
}

TEST_CASE("rng helpers are deterministic and in range") {
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a.next() == b.next());
    Rng r(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(r.below(7) < 7);
    }
    CHECK(Rng(3).split(0).next() != Rng(3).split(1).next());
}
