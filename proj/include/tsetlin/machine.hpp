#pragma once

#include "tsetlin/bits.hpp"
#include "tsetlin/clause.hpp"
#include "tsetlin/random.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace tsetlin {

struct MachineConfig {
    int classes = 2;            ///< q; 1 means a single bank whose label is the binary target
    int clauses_per_class = 2;  ///< m, even and >= 2
    int states_per_action = 100;///< N
    int threshold = 1;          ///< T
    double precision = 8.0;     ///< s
    std::uint64_t seed = 1;
    int initial_state = 0;      ///< 0 selects state N
    bool feedback_all_negatives = false; ///< train every non-target bank, not one random bank
};

/// Throws ConfigError naming the first out-of-range field.
void validate(const MachineConfig &config);

int clamp_sum(int sum, int threshold);

/// Probability that a clause is selected for Type I feedback: (T - clamp(sum)) / 2T.
double type_i_activation_prob(int sum, int threshold);

/// Probability that a clause is selected for Type II feedback: (T + clamp(sum)) / 2T.
double type_ii_activation_prob(int sum, int threshold);

/// Type I feedback for every automaton of `clause`, given its Learn-mode output
/// on `x`. One uniform draw per automaton decides reward, inaction or penalty.
void type_i_feedback(Clause &clause, BitView x, int clause_output, double precision, Rng &rng);
void type_i_feedback(Clause &clause, BitView x, double precision, Rng &rng);

/// Type II feedback: if the clause outputs 1, every excluded literal that is 0
/// on `x` is penalized toward inclusion. Deterministic.
void type_ii_feedback(Clause &clause, BitView x, int clause_output);
void type_ii_feedback(Clause &clause, BitView x);

int vote_sum(std::span<const Clause> bank, BitView x, EvalMode mode);

/// Feedback for one bank and one sample. The vote sum is taken once, before
/// any clause changes.
///
/// With target == true, positive clauses get Type I and negative clauses get
/// Type II; with target == false the roles swap. Each clause is gated by the
/// activation probability of the feedback type it would receive.
void train_bank(std::span<Clause> bank, BitView x, bool target, int threshold, double precision,
                Rng &rng);

/// Same contract with one generator per clause, updating clauses on `threads`
/// workers after the shared snapshot sum is taken.
void train_bank_parallel(std::span<Clause> bank, BitView x, bool target, int threshold,
                         double precision, std::span<Rng> clause_rngs, int threads);

class TsetlinMachine {
public:
    TsetlinMachine(int inputs, const MachineConfig &config);

    int inputs() const { return inputs_; }
    int classes() const { return config_.classes; }
    int clauses_per_class() const { return config_.clauses_per_class; }
    const MachineConfig &config() const { return config_; }

    std::span<const Clause> bank(int cls) const;
    std::span<Clause> bank(int cls);
    Clause &clause(int cls, int index) { return bank(cls)[static_cast<std::size_t>(index)]; }
    const Clause &clause(int cls, int index) const { return bank(cls)[static_cast<std::size_t>(index)]; }

    int vote_sum(int cls, BitView x, EvalMode mode = EvalMode::Classify) const;
    Eigen::VectorXi class_sums(BitView x) const;

    /// Argmax of the Classify-mode vote sums, ties to the lowest class index.
    /// A single-bank machine predicts 1 iff its vote sum is positive.
    int predict(BitView x) const;
    std::vector<int> predict(const BitMatrix &x) const;

    /// One training step. `threads` > 1 switches to per-clause generators.
    void train_sample(BitView x, int label, Rng &rng, int threads = 1);

private:
    int bank_count() const { return config_.classes == 1 ? 1 : config_.classes; }

    int inputs_;
    MachineConfig config_;
    std::vector<Clause> clauses_;
    std::vector<Rng> clause_rngs_;
};

/// Automaton states of every clause after one epoch: one (clauses x 2n) matrix per bank.
struct EpochSnapshot {
    int epoch = 0;
    std::vector<Eigen::MatrixXi> banks;
};

struct FitOptions {
    int epochs = 1;
    bool trace = false;
    int threads = 1;
};

struct FitResult {
    std::vector<EpochSnapshot> trace;
};

/// Trains for `options.epochs`, reshuffling sample order each epoch with `rng`.
FitResult fit(TsetlinMachine &machine, const BitMatrix &x, std::span<const int> labels,
              const FitOptions &options, Rng &rng);

EpochSnapshot snapshot(const TsetlinMachine &machine, int epoch);

} // namespace tsetlin
