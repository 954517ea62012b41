#include "doctest.h"
#include "cli_helpers.hpp"

#include <json.hpp>

#include <cstdlib>

using testing::run_cli;
using testing::slurp;

TEST_CASE("synth is deterministic and validates its kind") {
    testing::ScratchDir dir("synth");
    const auto a = dir.file("a.csv"), b = dir.file("b.csv");
    REQUIRE(run_cli({"synth", "--kind", "artificial", "--n", "1000", "--seed", "7", "--out", a}).code == 0);
    REQUIRE(run_cli({"synth", "--kind", "artificial", "--n", "1000", "--seed", "7", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).size() > 1000);

    const auto s = dir.file("s.csv"), n = dir.file("n.csv");
    REQUIRE(run_cli({"synth", "--kind", "planted-outbreak", "--seed", "3", "--out", s, "--neighbors-out", n}).code == 0);
    CHECK(slurp(s).rfind("region,year,month,rate\n", 0) == 0);
    CHECK(slurp(n) == "I,II;III\nII,I;III\nIII,I;II\n");

    CHECK(run_cli({"synth", "--kind", "nonsense"}).code == tsetlin::cli::kUsageError);
}

TEST_CASE("train validates hyperparameters") {
    testing::ScratchDir dir("train-args");
    const auto data = dir.file("d.csv");
    REQUIRE(run_cli({"synth", "--kind", "artificial", "--n", "100", "--out", data}).code == 0);
    const auto model = dir.file("m.txt");

    auto r = run_cli({"train", "--data", data, "--clauses", "3", "--model", model});
    CHECK(r.code == tsetlin::cli::kConfigError);
    CHECK(r.err.find("clause count must be even and ≥ 2") != std::string::npos);
    CHECK(run_cli({"train", "--data", data, "--threshold", "0", "--model", model}).code == tsetlin::cli::kConfigError);
    CHECK(run_cli({"train", "--data", data, "--s", "1", "--model", model}).code == tsetlin::cli::kConfigError);
    CHECK(run_cli({"train", "--data", data, "--states", "0", "--model", model}).code == tsetlin::cli::kConfigError);
    CHECK(run_cli({"train", "--data", data}).code == tsetlin::cli::kUsageError);
    CHECK(run_cli({"train", "--data", dir.file("missing.csv"), "--model", model}).code == tsetlin::cli::kDataError);
    CHECK(run_cli({}).code == tsetlin::cli::kUsageError);
}

TEST_CASE("train, trace, eval and explain on the artificial task") {
    testing::ScratchDir dir("train");
    const auto train = dir.file("train.csv"), test = dir.file("test.csv");
    REQUIRE(run_cli({"synth", "--kind", "artificial", "--n", "600", "--seed", "1", "--positive-fraction", "0.111111",
                     "--out", train}).code == 0);
    REQUIRE(run_cli({"synth", "--kind", "artificial", "--n", "200", "--seed", "2", "--positive-fraction", "0.111111",
                     "--out", test}).code == 0);
    const auto model = dir.file("m.txt"), trace = dir.file("trace.csv");
    const auto r = run_cli({"train", "--data", train, "--clauses", "4", "--states", "100", "--threshold", "1", "--s",
                            "8", "--epochs", "5", "--seed", "3", "--model", model, "--trace", trace});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("11 input bits") != std::string::npos);
    // header + 5 epochs x 2 classes x 2 clauses x 22 automata
    const auto trace_text = slurp(trace);
    CHECK(std::count(trace_text.begin(), trace_text.end(), '\n') == 1 + 5 * 2 * 2 * 22);

    const auto e = run_cli({"eval", "--model", model, "--data", test});
    CHECK(e.code == 0);
    CHECK(e.out.rfind("precision=", 0) == 0);

    const auto x = run_cli({"explain", "--model", model});
    CHECK(x.code == 0);
    CHECK(std::count(x.out.begin(), x.out.end(), '\n') <= 4);
    const auto js = run_cli({"explain", "--model", model, "--format", "structured"});
    CHECK(nlohmann::json::parse(js.out).size() == 4);

    CHECK(run_cli({"explain"}).code == tsetlin::cli::kUsageError);
    CHECK(run_cli({"explain", "--model", dir.file("nope.txt")}).code == tsetlin::cli::kDataError);
}

TEST_CASE("eval modes") {
    testing::ScratchDir dir("eval");
    const auto data = dir.file("d.csv");
    REQUIRE(run_cli({"synth", "--kind", "artificial", "--n", "90", "--out", data}).code == 0);
    const auto r = run_cli({"eval", "--data", data, "--folds", "3", "--epochs", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("metric,mean,ci95\n", 0) == 0);
    const auto js = run_cli({"eval", "--data", data, "--folds", "3", "--epochs", "3", "--format", "json"});
    CHECK(nlohmann::json::parse(js.out)["folds"] == 3);

    CHECK(run_cli({"eval", "--data", data, "--folds", "1"}).code == tsetlin::cli::kConfigError);
    CHECK(run_cli({"eval", "--data", data}).code == tsetlin::cli::kUsageError);

    const auto s = dir.file("s.csv"), n = dir.file("n.csv");
    REQUIRE(run_cli({"synth", "--kind", "planted-outbreak", "--seed", "5", "--out", s, "--neighbors-out", n}).code == 0);
    const auto h = run_cli({"eval", "--series", s, "--target", "I", "--neighbors", n, "--clauses", "20",
                            "--threshold", "15", "--epochs", "10"});
    CHECK(h.code == 0);
    CHECK(h.out.rfind("holdout 2015: precision=", 0) == 0);
    CHECK(run_cli({"eval", "--series", s, "--target", "IV", "--neighbors", n}).code == tsetlin::cli::kDataError);
    CHECK(run_cli({"eval", "--series", s, "--neighbors", n}).code == tsetlin::cli::kUsageError);
}

TEST_CASE("default seed comes from the environment") {
    testing::ScratchDir dir("env");
    const auto a = dir.file("a.csv"), b = dir.file("b.csv"), c = dir.file("c.csv");
    ::setenv(tsetlin::cli::kSeedEnv, "1234", 1);
    REQUIRE(run_cli({"synth", "--kind", "artificial", "--n", "50", "--out", a}).code == 0);
    ::unsetenv(tsetlin::cli::kSeedEnv);
    REQUIRE(run_cli({"synth", "--kind", "artificial", "--n", "50", "--seed", "1234", "--out", b}).code == 0);
    REQUIRE(run_cli({"synth", "--kind", "artificial", "--n", "50", "--out", c}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));

    ::setenv(tsetlin::cli::kSeedEnv, "banana", 1);
    CHECK(run_cli({"synth", "--kind", "artificial"}).code == tsetlin::cli::kConfigError);
    ::unsetenv(tsetlin::cli::kSeedEnv);
}
