#pragma once

#include "tsetlin/bits.hpp"

#include <Eigen/Core>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsetlin {

enum class FeatureKind { Continuous, Categorical };

/// Declared column of a raw dataset. Categorical features may fix their
/// vocabulary up front; otherwise it is taken from the fitting data.
struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::Continuous;
    std::vector<double> categories;
};

/// Sorted unique values of `column`, each one a "value <= v" threshold.
/// `max_thresholds` > 0 keeps that many evenly spaced quantiles instead.
std::vector<double> fit_thresholds(std::span<const double> column, std::string_view feature = {},
                                   int max_thresholds = 0);

/// Thermometer code: bit w is 1 iff value <= thresholds[w].
void encode_continuous(double value, std::span<const double> thresholds, std::span<std::uint8_t> out);
BitVector encode_continuous(double value, std::span<const double> thresholds);

/// One-hot code over an ordered vocabulary; throws DataError for unseen values.
void encode_categorical(double value, std::span<const double> categories, std::span<std::uint8_t> out,
                        std::string_view feature = {});
BitVector encode_categorical(double value, std::span<const double> categories,
                             std::string_view feature = {});

struct ThresholdEncoder {
    std::vector<std::vector<double>> per_feature_thresholds;
    std::vector<std::string> feature_names;

    /// Fits every column of `columns` (samples x features).
    static ThresholdEncoder fit(const Eigen::MatrixXd &columns, std::vector<std::string> names,
                                int max_thresholds = 0);
    int width() const;
};

struct OneHotEncoder {
    std::vector<std::vector<double>> per_feature_categories;
    std::vector<std::string> feature_names;

    static OneHotEncoder fit(const Eigen::MatrixXd &columns, std::vector<std::string> names);
    int width() const;
};

/// One encoded feature: its thresholds (continuous) or vocabulary (categorical),
/// occupying bits [offset, offset + values.size()) of the encoded row.
struct FeatureBlock {
    std::string name;
    FeatureKind kind = FeatureKind::Continuous;
    std::vector<double> values;
    int offset = 0;

    int width() const { return static_cast<int>(values.size()); }
};

/// Mixed continuous/categorical encoder producing X = [x_1 ... x_n].
/// Immutable once built.
class RowEncoder {
public:
    RowEncoder() = default;
    explicit RowEncoder(std::vector<FeatureBlock> blocks);

    static RowEncoder fit(const Eigen::MatrixXd &rows, std::span<const FeatureSpec> specs,
                          int max_thresholds = 0);

    int arity() const { return static_cast<int>(blocks_.size()); }
    int width() const { return width_; }
    const std::vector<FeatureBlock> &blocks() const { return blocks_; }

    /// Block owning encoded bit `bit`.
    const FeatureBlock &block_of_bit(int bit) const;

    BitMatrix encode(const Eigen::MatrixXd &rows) const;

    ThresholdEncoder threshold_encoder() const;
    OneHotEncoder one_hot_encoder() const;

private:
    std::vector<FeatureBlock> blocks_;
    int width_ = 0;
};

/// Concatenated per-feature encodings in declared order.
BitVector encode_row(std::span<const double> row, const RowEncoder &encoder);
void encode_row(std::span<const double> row, const RowEncoder &encoder, std::span<std::uint8_t> out);

} // namespace tsetlin
