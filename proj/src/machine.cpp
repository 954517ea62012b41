#include "tsetlin/machine.hpp"

#include "tsetlin/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <thread>

namespace tsetlin {

void validate(const MachineConfig &config) {
    if (config.classes < 1)
        throw ConfigError(fmt::format("class count must be >= 1, got {}", config.classes));
    if (config.clauses_per_class < 2 || config.clauses_per_class % 2 != 0)
        throw ConfigError(fmt::format("clause count must be even and >= 2, got {}",
                                      config.clauses_per_class));
    if (config.states_per_action < 1)
        throw ConfigError(fmt::format("states per action must be >= 1, got {}",
                                      config.states_per_action));
    if (config.threshold < 1)
        throw ConfigError(fmt::format("threshold must be >= 1, got {}", config.threshold));
    if (!(config.precision > 1.0))
        throw ConfigError(fmt::format("precision s must be > 1, got {}", config.precision));
    if (config.initial_state < 0 || config.initial_state > 2 * config.states_per_action)
        throw ConfigError(fmt::format("initial state {} outside [1, {}]", config.initial_state,
                                      2 * config.states_per_action));
}

int clamp_sum(int sum, int threshold) { return std::max(-threshold, std::min(threshold, sum)); }

double type_i_activation_prob(int sum, int threshold) {
    return static_cast<double>(threshold - clamp_sum(sum, threshold)) / (2.0 * threshold);
}

double type_ii_activation_prob(int sum, int threshold) {
    return static_cast<double>(threshold + clamp_sum(sum, threshold)) / (2.0 * threshold);
}

void type_i_feedback(Clause &clause, BitView x, int clause_output, double precision, Rng &rng) {
    const double low = 1.0 / precision;
    const double high = (precision - 1.0) / precision;
    const int n = clause.literals();
    for (int l = 0; l < n; ++l) {
        const double u = rng.uniform();
        const bool include = clause.includes(l);
        if (clause_output == 1) {
            if (literal_value(x, l) == 1) {
                if (u < high) {
                    if (include)
                        clause.reward(l);
                    else
                        clause.penalize(l);
                }
            } else if (!include && u < low) {
                clause.reward(l);
            }
        } else if (u < low) {
            if (include)
                clause.penalize(l);
            else
                clause.reward(l);
        }
    }
}

void type_i_feedback(Clause &clause, BitView x, double precision, Rng &rng) {
    type_i_feedback(clause, x, clause.evaluate(x, EvalMode::Learn), precision, rng);
}

void type_ii_feedback(Clause &clause, BitView x, int clause_output) {
    if (clause_output != 1)
        return;
    const int n = clause.literals();
    for (int l = 0; l < n; ++l)
        if (literal_value(x, l) == 0 && !clause.includes(l))
            clause.penalize(l);
}

void type_ii_feedback(Clause &clause, BitView x) {
    type_ii_feedback(clause, x, clause.evaluate(x, EvalMode::Learn));
}

int vote_sum(std::span<const Clause> bank, BitView x, EvalMode mode) {
    int sum = 0;
    for (const Clause &c : bank)
        sum += c.polarity() * c.evaluate(x, mode);
    return sum;
}

namespace {

// Positive clauses on a target sample and negative clauses on a non-target
// sample are pushed to fire (Type I); the other two combinations are pushed
// to stay silent (Type II).
bool wants_type_i(int polarity, bool target) { return (polarity > 0) == target; }

void feedback_one(Clause &clause, BitView x, bool target, int sum, int threshold, double precision,
                  Rng &rng) {
    if (wants_type_i(clause.polarity(), target)) {
        if (rng.bernoulli(type_i_activation_prob(sum, threshold)))
            type_i_feedback(clause, x, precision, rng);
    } else if (rng.bernoulli(type_ii_activation_prob(sum, threshold))) {
        type_ii_feedback(clause, x);
    }
}

} // namespace

void train_bank(std::span<Clause> bank, BitView x, bool target, int threshold, double precision,
                Rng &rng) {
    const int sum = clamp_sum(vote_sum(bank, x, EvalMode::Learn), threshold);
    for (Clause &c : bank)
        feedback_one(c, x, target, sum, threshold, precision, rng);
}

void train_bank_parallel(std::span<Clause> bank, BitView x, bool target, int threshold,
                         double precision, std::span<Rng> clause_rngs, int threads) {
    const int sum = clamp_sum(vote_sum(bank, x, EvalMode::Learn), threshold);
    const std::size_t count = bank.size();
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(threads), 1, count);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            feedback_one(bank[i], x, target, sum, threshold, precision, clause_rngs[i]);
    };
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        if (begin < count)
            pool.emplace_back(run, begin, std::min(count, begin + chunk));
    }
    run(0, std::min(count, chunk));
}

TsetlinMachine::TsetlinMachine(int inputs, const MachineConfig &config)
    : inputs_(inputs), config_(config) {
    validate(config_);
    if (inputs < 1)
        throw ConfigError(fmt::format("machine needs at least one input bit, got {}", inputs));
    const int banks = bank_count();
    clauses_.reserve(static_cast<std::size_t>(banks * config_.clauses_per_class));
    for (int b = 0; b < banks; ++b)
        for (int i = 0; i < config_.clauses_per_class; ++i)
            clauses_.emplace_back(inputs, polarity_for_index(i), config_.states_per_action,
                                  config_.initial_state);
}

std::span<const Clause> TsetlinMachine::bank(int cls) const {
    const auto m = static_cast<std::size_t>(config_.clauses_per_class);
    return std::span<const Clause>(clauses_).subspan(static_cast<std::size_t>(cls) * m, m);
}

std::span<Clause> TsetlinMachine::bank(int cls) {
    const auto m = static_cast<std::size_t>(config_.clauses_per_class);
    return std::span<Clause>(clauses_).subspan(static_cast<std::size_t>(cls) * m, m);
}

int TsetlinMachine::vote_sum(int cls, BitView x, EvalMode mode) const {
    return tsetlin::vote_sum(bank(cls), x, mode);
}

Eigen::VectorXi TsetlinMachine::class_sums(BitView x) const {
    Eigen::VectorXi sums(bank_count());
    for (int b = 0; b < bank_count(); ++b)
        sums[b] = vote_sum(b, x, EvalMode::Classify);
    return sums;
}

int TsetlinMachine::predict(BitView x) const {
    const Eigen::VectorXi sums = class_sums(x);
    if (config_.classes == 1)
        return sums[0] > 0 ? 1 : 0;
    Eigen::Index best = 0;
    sums.maxCoeff(&best); // first maximum wins ties
    return static_cast<int>(best);
}

std::vector<int> TsetlinMachine::predict(const BitMatrix &x) const {
    std::vector<int> out(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index r = 0; r < x.rows(); ++r)
        out[static_cast<std::size_t>(r)] = predict(row_bits(x, r));
    return out;
}

void TsetlinMachine::train_sample(BitView x, int label, Rng &rng, int threads) {
    if (static_cast<int>(x.size()) != inputs_)
        throw DataError(fmt::format("input has {} bits, machine expects {}", x.size(), inputs_));
    const int label_limit = config_.classes == 1 ? 2 : config_.classes;
    if (label < 0 || label >= label_limit)
        throw DataError(fmt::format("label {} out of range [0, {})", label, label_limit));

    const bool parallel = threads > 1;
    if (parallel && clause_rngs_.empty()) {
        clause_rngs_.reserve(clauses_.size());
        for (std::size_t i = 0; i < clauses_.size(); ++i)
            clause_rngs_.push_back(Rng(config_.seed).split(i));
    }
    auto update = [&](int b, bool target) {
        if (parallel) {
            const auto m = static_cast<std::size_t>(config_.clauses_per_class);
            auto rngs = std::span<Rng>(clause_rngs_).subspan(static_cast<std::size_t>(b) * m, m);
            train_bank_parallel(bank(b), x, target, config_.threshold, config_.precision, rngs,
                                threads);
        } else {
            train_bank(bank(b), x, target, config_.threshold, config_.precision, rng);
        }
    };

    if (config_.classes == 1) {
        update(0, label == 1);
        return;
    }
    update(label, true);
    if (config_.feedback_all_negatives) {
        for (int b = 0; b < config_.classes; ++b)
            if (b != label)
                update(b, false);
        return;
    }
    auto other = static_cast<int>(rng.below(static_cast<std::uint64_t>(config_.classes - 1)));
    if (other >= label)
        ++other;
    update(other, false);
}

EpochSnapshot snapshot(const TsetlinMachine &machine, int epoch) {
    EpochSnapshot snap;
    snap.epoch = epoch;
    const int banks = machine.classes() == 1 ? 1 : machine.classes();
    for (int b = 0; b < banks; ++b) {
        const auto clauses = machine.bank(b);
        Eigen::MatrixXi states(static_cast<Eigen::Index>(clauses.size()), 2 * machine.inputs());
        for (std::size_t i = 0; i < clauses.size(); ++i)
            states.row(static_cast<Eigen::Index>(i)) = clauses[i].states().transpose();
        snap.banks.push_back(std::move(states));
    }
    return snap;
}

FitResult fit(TsetlinMachine &machine, const BitMatrix &x, std::span<const int> labels,
              const FitOptions &options, Rng &rng) {
    if (options.epochs < 1)
        throw ConfigError(fmt::format("epochs must be >= 1, got {}", options.epochs));
    if (x.rows() == 0)
        throw DataError("cannot fit on an empty dataset");
    if (static_cast<std::size_t>(x.rows()) != labels.size())
        throw DataError(fmt::format("{} samples but {} labels", x.rows(), labels.size()));

    FitResult result;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(x.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    for (int epoch = 1; epoch <= options.epochs; ++epoch) {
        rng.shuffle(std::span<Eigen::Index>(order));
        for (const Eigen::Index r : order)
            machine.train_sample(row_bits(x, r), labels[static_cast<std::size_t>(r)], rng,
                                 options.threads);
        if (options.trace)
            result.trace.push_back(snapshot(machine, epoch));
    }
    return result;
}

} // namespace tsetlin
