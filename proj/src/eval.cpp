#include "tsetlin/eval.hpp"

#include "tsetlin/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

namespace tsetlin {

ConfusionCounts confusion(std::span<const int> truth, std::span<const int> predicted, int positive_class) {
    if (truth.size() != predicted.size())
        throw DataError(fmt::format("{} labels but {} predictions", truth.size(), predicted.size()));
    ConfusionCounts c;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool actual = truth[i] == positive_class;
        const bool guess = predicted[i] == positive_class;
        if (actual && guess)
            ++c.tp;
        else if (!actual && guess)
            ++c.fp;
        else if (actual)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

} // namespace

Metrics metrics(const ConfusionCounts &counts) {
    if (counts.tp < 0 || counts.fp < 0 || counts.tn < 0 || counts.fn < 0)
        throw DataError("confusion counts must be non-negative");
    if (counts.total() == 0)
        throw DataError("cannot compute metrics from zero samples");
    Metrics m;
    m.precision = ratio(counts.tp, counts.tp + counts.fp);
    m.recall = ratio(counts.tp, counts.tp + counts.fn);
    m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
    m.accuracy = ratio(counts.tp + counts.tn, counts.total());
    return m;
}

MetricSummary EvalReport::summary(int metric) const {
    const auto col = per_fold.col(metric);
    const auto n = static_cast<double>(col.size());
    MetricSummary s;
    s.mean = col.mean();
    if (col.size() > 1) {
        const double var = (col.array() - s.mean).square().sum() / (n - 1.0);
        s.half_width = 1.96 * std::sqrt(var) / std::sqrt(n);
    }
    return s;
}

EvalReport summarize(const Eigen::MatrixXd &per_fold, int folds, int repeats) {
    if (per_fold.cols() != 4)
        throw DataError("per-fold matrix must have 4 metric columns");
    return EvalReport{folds, repeats, per_fold};
}

std::vector<std::vector<int>> assign_folds(int n, int k, Rng &rng) {
    if (k < 2)
        throw ConfigError(fmt::format("fold count must be >= 2, got {}", k));
    if (k > n)
        throw ConfigError(fmt::format("fold count {} exceeds dataset size {}", k, n));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span(order));
    std::vector<std::vector<int>> folds(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i)
        folds[static_cast<std::size_t>(i % k)].push_back(order[static_cast<std::size_t>(i)]);
    for (auto &f : folds)
        std::sort(f.begin(), f.end());
    return folds;
}

std::uint64_t fold_seed(std::uint64_t master, int repeat, int fold) {
    return splitmix64(splitmix64(master) ^ (static_cast<std::uint64_t>(repeat) << 32 |
                                            static_cast<std::uint32_t>(fold)));
}

HoldoutResult evaluate(const Model &model, const LabeledDataset &test, int positive_class) {
    test.validate();
    const auto predicted = model.predict(test.values);
    HoldoutResult r;
    r.counts = confusion(test.labels, predicted, positive_class);
    r.metrics = metrics(r.counts);
    return r;
}

HoldoutResult holdout(const LabeledDataset &train, const LabeledDataset &test, const TrainingSetup &setup,
                      int positive_class) {
    const auto outcome = train_model(train, setup);
    return evaluate(outcome.model, test, positive_class);
}

EvalReport cross_validate(const LabeledDataset &data, const TrainingSetup &setup, int folds, int repeats,
                          std::uint64_t seed, int workers, int positive_class) {
    data.validate();
    if (repeats < 1)
        throw ConfigError(fmt::format("repeat count must be >= 1, got {}", repeats));
    validate(setup.machine);

    struct Job {
        int repeat;
        int fold;
        std::vector<int> train;
        std::vector<int> test;
    };
    std::vector<Job> jobs;
    Rng rng(seed);
    for (int r = 0; r < repeats; ++r) {
        const auto partition = assign_folds(data.size(), folds, rng);
        for (int f = 0; f < folds; ++f) {
            Job job{r, f, {}, partition[static_cast<std::size_t>(f)]};
            for (int g = 0; g < folds; ++g)
                if (g != f)
                    job.train.insert(job.train.end(), partition[static_cast<std::size_t>(g)].begin(),
                                     partition[static_cast<std::size_t>(g)].end());
            std::sort(job.train.begin(), job.train.end());
            jobs.push_back(std::move(job));
        }
    }

    Eigen::MatrixXd per_fold(static_cast<Eigen::Index>(jobs.size()), 4);
    auto run_job = [&](std::size_t j) {
        const Job &job = jobs[j];
        TrainingSetup fold_setup = setup;
        fold_setup.machine.seed = fold_seed(seed, job.repeat, job.fold);
        const auto result = holdout(data.subset(job.train), data.subset(job.test), fold_setup, positive_class);
        per_fold.row(static_cast<Eigen::Index>(j)) = result.metrics.as_vector().transpose();
    };

    if (workers <= 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j)
            run_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t j = next++; j < jobs.size(); j = next++) {
                        try {
                            run_job(j);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure)
                                failure = std::current_exception();
                        }
                    }
                });
        }
        if (failure)
            std::rethrow_exception(failure);
    }
    return summarize(per_fold, folds, repeats);
}

void write_report_table(std::ostream &out, const EvalReport &report) {
    out << "metric,mean,ci95\n";
    for (int m = 0; m < 4; ++m) {
        const auto s = report.summary(m);
        out << fmt::format("{},{:.4f},{:.4f}\n", kMetricNames[static_cast<std::size_t>(m)], s.mean, s.half_width);
    }
}

void write_report_json(std::ostream &out, const EvalReport &report) {
    nlohmann::ordered_json doc;
    doc["folds"] = report.folds;
    doc["repeats"] = report.repeats;
    for (int m = 0; m < 4; ++m) {
        const auto s = report.summary(m);
        const std::string name(kMetricNames[static_cast<std::size_t>(m)]);
        doc["metrics"][name] = {{"mean", s.mean}, {"ci95", s.half_width}};
        std::vector<double> values(static_cast<std::size_t>(report.per_fold.rows()));
        for (Eigen::Index r = 0; r < report.per_fold.rows(); ++r)
            values[static_cast<std::size_t>(r)] = report.per_fold(r, m);
        doc["per_fold"][name] = values;
    }
    out << doc.dump(2) << '\n';
}

void write_metrics_line(std::ostream &out, const Metrics &m) {
    out << fmt::format("precision={:.4f} recall={:.4f} f1={:.4f} accuracy={:.4f}\n", m.precision, m.recall,
                       m.f1, m.accuracy);
}

} // namespace tsetlin
