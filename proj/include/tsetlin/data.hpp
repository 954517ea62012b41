#pragma once

#include "tsetlin/binarizer.hpp"
#include "tsetlin/random.hpp"

#include <Eigen/Core>

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tsetlin {

struct Period {
    int year = 0;
    int month = 1; ///< 1..12

    /// Months since year 0, so consecutive months differ by one.
    int index() const { return year * 12 + (month - 1); }
    static Period from_index(int index) { return {index / 12, index % 12 + 1}; }
    Period shifted(int months) const { return from_index(index() + months); }

    auto operator<=>(const Period &) const = default;
};

/// Real-valued feature rows with class labels.
struct LabeledDataset {
    std::vector<FeatureSpec> features;
    Eigen::MatrixXd values; ///< samples x features
    std::vector<int> labels;
    int classes = 2;
    std::vector<Period> periods; ///< empty, or one per row

    int size() const { return static_cast<int>(labels.size()); }
    int arity() const { return static_cast<int>(features.size()); }
    std::vector<std::string> feature_names() const;

    LabeledDataset subset(std::span<const int> rows) const;
    /// Throws DataError if shapes or labels are inconsistent.
    void validate() const;
};

/// Dataset CSV: header `name[:cat[=c1|c2|...]],...,label`, optionally led by
/// `year,month` period columns.
LabeledDataset load_dataset(std::istream &in);
void write_dataset(std::ostream &out, const LabeledDataset &data);

/// Two categorical inputs x1 in [0, 4] and x2 in [0, 5]; class 1 iff x1 + x2 == 9.
int artificial_label(int x1, int x2);

/// Samples (x1, x2) uniformly when `positive_fraction` is unset. Otherwise
/// round(count * positive_fraction) samples are (4, 5) and the rest are drawn
/// uniformly from the 29 negative cells, in shuffled order.
LabeledDataset generate_artificial(Rng &rng, int count,
                                   std::optional<double> positive_fraction = std::nullopt);

inline constexpr double kOutbreakRate = 20.0; ///< cases per 100,000 per month

/// 1 iff the monthly incidence rate exceeds 20 per 100,000.
int label_outbreak(double incidence);

inline constexpr const char *kTotalRegion = "Total";

/// Monthly incidence rate per 100,000 for a set of regions.
class SeriesTable {
public:
    void add(const std::string &region, Period period, double rate);

    bool contains(const std::string &region) const { return data_.count(region) != 0; }
    bool has(const std::string &region, Period period) const;
    /// Throws DataError naming the missing (region, month) cell.
    double rate(const std::string &region, Period period) const;

    /// "Total" series: the supplied Total region when present, otherwise the
    /// unweighted sum of every region's rate for that month.
    double total(Period period) const;
    bool has_total_region() const { return contains(kTotalRegion); }

    const std::vector<std::string> &regions() const { return order_; }
    std::pair<Period, Period> span(const std::string &region) const;
    std::size_t size() const { return rows_; }

private:
    std::map<std::string, std::map<int, double>> data_;
    std::vector<std::string> order_;
    std::size_t rows_ = 0;
};

/// Series CSV with header `region,year,month,rate`.
SeriesTable load_series(std::istream &in);
void write_series(std::ostream &out, const SeriesTable &table);

/// Target region -> ordered source regions (which may include "Total").
struct NeighborConfig {
    std::vector<std::pair<std::string, std::vector<std::string>>> entries;

    const std::vector<std::string> &sources(const std::string &target) const;
    void validate(const SeriesTable &table) const;
};

/// Lines of `target,source1;source2;...`; '#' starts a comment.
NeighborConfig load_neighbor_config(std::istream &in);
void write_neighbor_config(std::ostream &out, const NeighborConfig &config);

/// Neighbour selection for the seventeen Philippine regions used in the
/// dengue study. The second "XII" target row of the published table is read as VII.
NeighborConfig default_neighbor_config();

/// One row per month t with 12 months of history:
/// [target(t-1), target(t-12), source(t-1) ...], label outbreak(target, t).
LabeledDataset build_lag_features(const SeriesTable &table, const std::string &target,
                                  const NeighborConfig &config);

struct PlantedOutbreakOptions {
    int months = 96;
    int start_year = 2008;
    double cutoff = kOutbreakRate;
};

/// Three regions: "I" (target), "II" (driver) and "III" (noise). I breaks out
/// in month t exactly when II's rate in month t-1 exceeds the cutoff.
SeriesTable generate_planted_outbreak(Rng &rng, const PlantedOutbreakOptions &options = {});
NeighborConfig planted_outbreak_config();

/// Rows with period.year < year, and rows with period.year == year.
std::pair<LabeledDataset, LabeledDataset> split_by_year(const LabeledDataset &data, int year);

} // namespace tsetlin
