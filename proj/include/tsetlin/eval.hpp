#pragma once

#include "tsetlin/data.hpp"
#include "tsetlin/model.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>

namespace tsetlin {

/// Confusion counts for the positive ("outbreak") class.
struct ConfusionCounts {
    long tp = 0;
    long fp = 0;
    long tn = 0;
    long fn = 0;

    long total() const { return tp + fp + tn + fn; }
};

ConfusionCounts confusion(std::span<const int> truth, std::span<const int> predicted,
                          int positive_class = 1);

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;

    Eigen::Vector4d as_vector() const { return {precision, recall, f1, accuracy}; }
};

inline constexpr std::array<std::string_view, 4> kMetricNames = {"precision", "recall", "f1",
                                                                 "accuracy"};

/// Standard ratios; a 0/0 ratio is 0. Throws DataError on all-zero counts.
Metrics metrics(const ConfusionCounts &counts);

struct MetricSummary {
    double mean = 0.0;
    double half_width = 0.0; ///< 95% normal-approximation interval
};

struct EvalReport {
    int folds = 0;
    int repeats = 1;
    Eigen::MatrixXd per_fold; ///< (folds * repeats) x 4, columns in kMetricNames order

    MetricSummary summary(int metric) const;
};

/// Mean and 1.96 * sd / sqrt(count) per column; sd is the sample deviation.
EvalReport summarize(const Eigen::MatrixXd &per_fold, int folds, int repeats);

/// Seeded partition of [0, n) into k folds whose sizes differ by at most one.
std::vector<std::vector<int>> assign_folds(int n, int k, Rng &rng);

/// Per-fold machine seed, a pure function of (master seed, repeat, fold).
std::uint64_t fold_seed(std::uint64_t master, int repeat, int fold);

struct HoldoutResult {
    ConfusionCounts counts;
    Metrics metrics;
};

HoldoutResult evaluate(const Model &model, const LabeledDataset &test, int positive_class = 1);

/// Trains on `train` and scores on `test`.
HoldoutResult holdout(const LabeledDataset &train, const LabeledDataset &test,
                      const TrainingSetup &setup, int positive_class = 1);

/// k-fold cross-validation repeated `repeats` times. A fresh encoder and
/// machine are fitted per fold; folds run on `workers` threads and the
/// report does not depend on the worker count.
EvalReport cross_validate(const LabeledDataset &data, const TrainingSetup &setup, int folds,
                          int repeats, std::uint64_t seed, int workers = 1, int positive_class = 1);

/// `metric,mean,ci95` rows.
void write_report_table(std::ostream &out, const EvalReport &report);
void write_report_json(std::ostream &out, const EvalReport &report);
void write_metrics_line(std::ostream &out, const Metrics &m);

} // namespace tsetlin
