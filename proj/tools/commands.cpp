#include "commands.hpp"

#include "tsetlin/data.hpp"
#include "tsetlin/errors.hpp"
#include "tsetlin/eval.hpp"
#include "tsetlin/explain.hpp"
#include "tsetlin/model.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace tsetlin::cli {

namespace {

struct InputOptions {
    std::string data;
    std::string series;
    std::string target;
    std::string neighbors;
    std::optional<int> holdout_year;
};

struct HyperOptions {
    int clauses = 4;
    int states = 100;
    int threshold = 1;
    double precision = 8.0;
    int epochs = 100;
    std::uint64_t seed = 1;
    int max_thresholds = 0;
    int init_state = 0;
    std::string negatives = "single";
    int threads = 1;
};

std::uint64_t default_seed() {
    if (const char *env = std::getenv(kSeedEnv)) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw ConfigError(fmt::format("{}='{}' is not an unsigned integer", kSeedEnv, env));
        }
    }
    return 1;
}

void add_input_options(CLI::App *cmd, InputOptions &in) {
    cmd->add_option("--data", in.data, "Feature dataset CSV");
    cmd->add_option("--series", in.series, "Monthly series CSV (region,year,month,rate)");
    cmd->add_option("--target", in.target, "Target region when building lag features");
    cmd->add_option("--neighbors", in.neighbors,
                    "Neighbour config (target,src;src;...); defaults to the bundled regional table");
    cmd->add_option("--holdout-year", in.holdout_year,
                    "Months of this year are held out; earlier months train");
}

void add_hyper_options(CLI::App *cmd, HyperOptions &h) {
    cmd->add_option("--clauses", h.clauses, "Total clause count, split evenly over the classes");
    cmd->add_option("--states", h.states, "States per automaton action (N)");
    cmd->add_option("--threshold", h.threshold, "Vote threshold T");
    cmd->add_option("--s", h.precision, "Precision s");
    cmd->add_option("--epochs", h.epochs, "Training epochs");
    cmd->add_option("--seed", h.seed, fmt::format("Random seed (default from {} or 1)", kSeedEnv));
    cmd->add_option("--max-thresholds", h.max_thresholds, "Cap on thresholds per continuous feature (0 = none)");
    cmd->add_option("--init-state", h.init_state, "Initial automaton state (0 = N)");
    cmd->add_option("--negatives", h.negatives, "Non-target banks trained per sample")
        ->check(CLI::IsMember({"single", "all"}));
    cmd->add_option("--threads", h.threads, "Clause-parallel training threads");
}

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError(fmt::format("cannot open '{}'", path));
    return in;
}

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError(fmt::format("cannot write '{}'", path));
    return out;
}

/// The dataset named by the input flags; series input yields lag features.
LabeledDataset load_input(const InputOptions &in) {
    if (!in.data.empty() && !in.series.empty())
        throw CLI::ValidationError("--data and --series are mutually exclusive");
    if (!in.data.empty()) {
        auto file = open_in(in.data);
        return load_dataset(file);
    }
    if (in.series.empty())
        throw CLI::RequiredError("--data or --series");
    if (in.target.empty())
        throw CLI::RequiredError("--target");
    auto file = open_in(in.series);
    const SeriesTable table = load_series(file);
    NeighborConfig config = default_neighbor_config();
    if (!in.neighbors.empty()) {
        auto nf = open_in(in.neighbors);
        config = load_neighbor_config(nf);
    }
    return build_lag_features(table, in.target, config);
}

int last_year(const LabeledDataset &data) {
    if (data.periods.empty())
        throw DataError("dataset has no year/month columns");
    return std::max_element(data.periods.begin(), data.periods.end())->year;
}

TrainingSetup make_setup(const HyperOptions &h, int classes) {
    if (h.clauses < 2 || h.clauses % 2 != 0)
        throw ConfigError("clause count must be even and ≥ 2");
    if (h.clauses % (2 * classes) != 0)
        throw ConfigError(fmt::format("clause count {} must be a multiple of 2 x {} classes", h.clauses, classes));
    TrainingSetup setup;
    setup.machine.classes = classes;
    setup.machine.clauses_per_class = h.clauses / classes;
    setup.machine.states_per_action = h.states;
    setup.machine.threshold = h.threshold;
    setup.machine.precision = h.precision;
    setup.machine.seed = h.seed;
    setup.machine.initial_state = h.init_state;
    setup.machine.feedback_all_negatives = h.negatives == "all";
    setup.epochs = h.epochs;
    setup.max_thresholds = h.max_thresholds;
    setup.threads = h.threads;
    validate(setup.machine);
    if (setup.epochs < 1)
        throw ConfigError(fmt::format("epochs must be >= 1, got {}", setup.epochs));
    if (setup.max_thresholds < 0)
        throw ConfigError("threshold cap must be >= 0");
    return setup;
}

void write_trace(std::ostream &out, const FitResult &fit) {
    out << "epoch,class,clause,literal,state\n";
    for (const auto &snap : fit.trace)
        for (std::size_t b = 0; b < snap.banks.size(); ++b) {
            const auto &m = snap.banks[b];
            for (Eigen::Index c = 0; c < m.rows(); ++c)
                for (Eigen::Index l = 0; l < m.cols(); ++l)
                    out << snap.epoch << ',' << b << ',' << c << ',' << l << ',' << m(c, l) << '\n';
        }
}

struct Train {
    InputOptions input;
    HyperOptions hyper;
    std::string model;
    std::string trace;
};

int cmd_train(const Train &t, std::ostream &out) {
    LabeledDataset data = load_input(t.input);
    if (t.input.holdout_year)
        data = split_by_year(data, *t.input.holdout_year).first;
    const TrainingSetup setup = make_setup(t.hyper, data.classes);
    const auto outcome = train_model(data, setup, !t.trace.empty());
    {
        auto file = open_out(t.model);
        save_model(file, outcome.model);
    }
    if (!t.trace.empty()) {
        auto file = open_out(t.trace);
        write_trace(file, outcome.fit);
    }
    const auto predicted = outcome.model.predict(data.values);
    const auto train_metrics = metrics(confusion(data.labels, predicted));
    out << fmt::format("trained {} samples, {} input bits, {} classes x {} clauses; training ", data.size(),
                       outcome.model.encoder.width(), setup.machine.classes, setup.machine.clauses_per_class);
    write_metrics_line(out, train_metrics);
    return kSuccess;
}

struct Eval {
    InputOptions input;
    HyperOptions hyper;
    std::string model;
    std::optional<int> folds;
    int repeats = 1;
    int workers = 1;
    std::string format = "table";
    std::string out;
};

int cmd_eval(const Eval &e, std::ostream &console) {
    std::ofstream file;
    if (!e.out.empty())
        file = open_out(e.out);
    std::ostream &out = e.out.empty() ? console : file;

    if (e.folds && *e.folds < 2)
        throw ConfigError(fmt::format("fold count must be >= 2, got {}", *e.folds));
    LabeledDataset data = load_input(e.input);

    if (!e.model.empty()) {
        if (e.folds)
            throw CLI::ValidationError("--model evaluates a fixed split; drop --folds");
        auto mf = open_in(e.model);
        const Model model = load_model(mf);
        if (e.input.holdout_year)
            data = split_by_year(data, *e.input.holdout_year).second;
        write_metrics_line(out, evaluate(model, data).metrics);
        return kSuccess;
    }

    LabeledDataset cv_data = data;
    if (!data.periods.empty() && !e.input.series.empty()) {
        const int year = e.input.holdout_year.value_or(last_year(data));
        auto [train, test] = split_by_year(data, year);
        const TrainingSetup setup = make_setup(e.hyper, train.classes);
        console << fmt::format("holdout {}: ", year);
        write_metrics_line(console, holdout(train, test, setup).metrics);
        cv_data = std::move(train);
    } else if (!e.folds) {
        throw CLI::RequiredError("--model or --folds");
    }
    if (e.folds) {
        const TrainingSetup setup = make_setup(e.hyper, cv_data.classes);
        const EvalReport report =
            cross_validate(cv_data, setup, *e.folds, e.repeats, e.hyper.seed, e.workers);
        if (e.format == "json")
            write_report_json(out, report);
        else
            write_report_table(out, report);
    }
    return kSuccess;
}

struct Explain {
    std::string model;
    std::string format = "text";
    bool skip_empty = false;
};

int cmd_explain(const Explain &x, std::ostream &out) {
    auto file = open_in(x.model);
    const Model model = load_model(file);
    const auto rules = explain(model, x.skip_empty);
    if (x.format == "structured")
        write_rules_json(out, rules);
    else
        write_rules_text(out, rules);
    return kSuccess;
}

struct Synth {
    std::string kind;
    int count = 1000;
    std::uint64_t seed = 1;
    std::optional<double> positive_fraction;
    int months = 96;
    std::string out;
    std::string neighbors_out;
};

int cmd_synth(const Synth &s, std::ostream &console) {
    Rng rng(s.seed);
    std::ofstream file;
    if (!s.out.empty())
        file = open_out(s.out);
    std::ostream &out = s.out.empty() ? console : file;
    if (s.kind == "artificial") {
        write_dataset(out, generate_artificial(rng, s.count, s.positive_fraction));
    } else {
        PlantedOutbreakOptions options;
        options.months = s.months;
        write_series(out, generate_planted_outbreak(rng, options));
        if (!s.neighbors_out.empty()) {
            auto nf = open_out(s.neighbors_out);
            write_neighbor_config(nf, planted_outbreak_config());
        }
    }
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Tsetlin Machine toolkit with threshold encoding for continuous inputs"};
    app.require_subcommand(1);

    Train train;
    Eval eval;
    Explain explain_opts;
    Synth synth;
    try {
        const std::uint64_t seed = default_seed();
        train.hyper.seed = seed;
        eval.hyper.seed = seed;
        synth.seed = seed;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    auto *train_cmd = app.add_subcommand("train", "Train a model and write the model document");
    add_input_options(train_cmd, train.input);
    add_hyper_options(train_cmd, train.hyper);
    train_cmd->add_option("--model", train.model, "Output model path")->required();
    train_cmd->add_option("--trace", train.trace, "Per-epoch automaton state table (CSV)");

    auto *eval_cmd = app.add_subcommand("eval", "Evaluate a model, a year holdout, or k-fold cross-validation");
    add_input_options(eval_cmd, eval.input);
    add_hyper_options(eval_cmd, eval.hyper);
    eval_cmd->add_option("--model", eval.model, "Trained model to score on the dataset");
    eval_cmd->add_option("--folds", eval.folds, "Cross-validation folds");
    eval_cmd->add_option("--repeats", eval.repeats, "Cross-validation repeats");
    eval_cmd->add_option("--workers", eval.workers, "Folds evaluated in parallel");
    eval_cmd->add_option("--format", eval.format, "Report format")->check(CLI::IsMember({"table", "json"}));
    eval_cmd->add_option("--out", eval.out, "Write the report here instead of stdout");

    auto *explain_cmd = app.add_subcommand("explain", "Print the clauses of a model as rules");
    explain_cmd->add_option("--model", explain_opts.model, "Model path")->required();
    explain_cmd->add_option("--format", explain_opts.format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}));
    explain_cmd->add_flag("--skip-empty", explain_opts.skip_empty, "Omit clauses with no included literal");

    auto *synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth_cmd->add_option("--kind", synth.kind, "artificial | planted-outbreak")
        ->required()
        ->check(CLI::IsMember({"artificial", "planted-outbreak"}));
    synth_cmd->add_option("--n", synth.count, "Sample count (artificial)");
    synth_cmd->add_option("--seed", synth.seed, "Random seed");
    synth_cmd->add_option("--positive-fraction", synth.positive_fraction, "Class-1 share (artificial)");
    synth_cmd->add_option("--months", synth.months, "Series length (planted-outbreak)");
    synth_cmd->add_option("--out", synth.out, "Output path (default stdout)");
    synth_cmd->add_option("--neighbors-out", synth.neighbors_out, "Neighbour config output (planted-outbreak)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (train_cmd->parsed())
            return cmd_train(train, out);
        if (eval_cmd->parsed())
            return cmd_eval(eval, out);
        if (explain_cmd->parsed())
            return cmd_explain(explain_opts, out);
        return cmd_synth(synth, out);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DataError &e) {
        err << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
}

} // namespace tsetlin::cli
