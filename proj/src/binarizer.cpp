#include "tsetlin/binarizer.hpp"

#include "tsetlin/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace tsetlin {

namespace {

std::vector<double> sorted_unique(std::span<const double> column) {
    std::vector<double> values(column.begin(), column.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

std::vector<double> column_of(const Eigen::MatrixXd &m, Eigen::Index c) {
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        out[static_cast<std::size_t>(r)] = m(r, c);
    return out;
}

} // namespace

std::vector<double> fit_thresholds(std::span<const double> column, std::string_view feature,
                                   int max_thresholds) {
    if (column.empty())
        throw DataError(feature.empty() ? std::string("empty feature column")
                                        : fmt::format("empty feature column '{}'", feature));
    for (const double v : column)
        if (std::isnan(v))
            throw DataError(fmt::format("missing value in feature column '{}'", feature));
    std::vector<double> values = sorted_unique(column);
    const auto u = values.size();
    if (max_thresholds > 0 && u > static_cast<std::size_t>(max_thresholds)) {
        const auto k = static_cast<std::size_t>(max_thresholds);
        std::vector<double> kept;
        kept.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t idx =
                k == 1 ? u - 1
                       : static_cast<std::size_t>(std::llround(static_cast<double>(i) *
                                                                static_cast<double>(u - 1) /
                                                                static_cast<double>(k - 1)));
            if (kept.empty() || kept.back() != values[idx])
                kept.push_back(values[idx]);
        }
        values = std::move(kept);
    }
    return values;
}

void encode_continuous(double value, std::span<const double> thresholds, std::span<std::uint8_t> out) {
    for (std::size_t w = 0; w < thresholds.size(); ++w)
        out[w] = value <= thresholds[w] ? 1 : 0;
}

BitVector encode_continuous(double value, std::span<const double> thresholds) {
    BitVector bits(thresholds.size());
    encode_continuous(value, thresholds, bits);
    return bits;
}

void encode_categorical(double value, std::span<const double> categories, std::span<std::uint8_t> out,
                        std::string_view feature) {
    const auto it = std::find(categories.begin(), categories.end(), value);
    if (it == categories.end())
        throw DataError(fmt::format("unseen category {} for feature '{}'", value, feature));
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(categories.size()), 0);
    out[static_cast<std::size_t>(it - categories.begin())] = 1;
}

BitVector encode_categorical(double value, std::span<const double> categories,
                             std::string_view feature) {
    BitVector bits(categories.size());
    encode_categorical(value, categories, bits, feature);
    return bits;
}

ThresholdEncoder ThresholdEncoder::fit(const Eigen::MatrixXd &columns, std::vector<std::string> names,
                                       int max_thresholds) {
    if (static_cast<Eigen::Index>(names.size()) != columns.cols())
        throw DataError(fmt::format("{} feature names for {} columns", names.size(), columns.cols()));
    ThresholdEncoder enc;
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        const auto col = column_of(columns, c);
        enc.per_feature_thresholds.push_back(
            fit_thresholds(col, names[static_cast<std::size_t>(c)], max_thresholds));
    }
    enc.feature_names = std::move(names);
    return enc;
}

int ThresholdEncoder::width() const {
    int w = 0;
    for (const auto &t : per_feature_thresholds)
        w += static_cast<int>(t.size());
    return w;
}

OneHotEncoder OneHotEncoder::fit(const Eigen::MatrixXd &columns, std::vector<std::string> names) {
    if (static_cast<Eigen::Index>(names.size()) != columns.cols())
        throw DataError(fmt::format("{} feature names for {} columns", names.size(), columns.cols()));
    OneHotEncoder enc;
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        if (columns.rows() == 0)
            throw DataError(fmt::format("empty feature column '{}'", names[static_cast<std::size_t>(c)]));
        enc.per_feature_categories.push_back(sorted_unique(column_of(columns, c)));
    }
    enc.feature_names = std::move(names);
    return enc;
}

int OneHotEncoder::width() const {
    int w = 0;
    for (const auto &c : per_feature_categories)
        w += static_cast<int>(c.size());
    return w;
}

RowEncoder::RowEncoder(std::vector<FeatureBlock> blocks) : blocks_(std::move(blocks)) {
    for (auto &b : blocks_) {
        if (b.values.empty())
            throw DataError(fmt::format("feature '{}' has no thresholds or categories", b.name));
        if (b.kind == FeatureKind::Continuous &&
            !std::is_sorted(b.values.begin(), b.values.end(), std::less_equal<>()))
            throw DataError(fmt::format("thresholds of feature '{}' are not strictly ascending", b.name));
        b.offset = width_;
        width_ += b.width();
    }
}

RowEncoder RowEncoder::fit(const Eigen::MatrixXd &rows, std::span<const FeatureSpec> specs,
                           int max_thresholds) {
    if (static_cast<Eigen::Index>(specs.size()) != rows.cols())
        throw DataError(fmt::format("{} feature specs for {} columns", specs.size(), rows.cols()));
    std::vector<FeatureBlock> blocks;
    for (std::size_t c = 0; c < specs.size(); ++c) {
        const FeatureSpec &spec = specs[c];
        const auto col = column_of(rows, static_cast<Eigen::Index>(c));
        FeatureBlock block{spec.name, spec.kind, {}, 0};
        if (spec.kind == FeatureKind::Continuous) {
            block.values = fit_thresholds(col, spec.name, max_thresholds);
        } else if (!spec.categories.empty()) {
            block.values = spec.categories;
        } else {
            if (col.empty())
                throw DataError(fmt::format("empty feature column '{}'", spec.name));
            block.values = sorted_unique(col);
        }
        blocks.push_back(std::move(block));
    }
    return RowEncoder(std::move(blocks));
}

const FeatureBlock &RowEncoder::block_of_bit(int bit) const {
    for (const auto &b : blocks_)
        if (bit >= b.offset && bit < b.offset + b.width())
            return b;
    throw DataError(fmt::format("bit {} outside encoder width {}", bit, width_));
}

BitMatrix RowEncoder::encode(const Eigen::MatrixXd &rows) const {
    if (rows.cols() != arity())
        throw DataError(fmt::format("rows have {} features, encoder expects {}", rows.cols(), arity()));
    BitMatrix out(rows.rows(), width_);
    std::vector<double> row(static_cast<std::size_t>(rows.cols()));
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        for (Eigen::Index c = 0; c < rows.cols(); ++c)
            row[static_cast<std::size_t>(c)] = rows(r, c);
        encode_row(row, *this, std::span<std::uint8_t>(out.row(r).data(), static_cast<std::size_t>(width_)));
    }
    return out;
}

ThresholdEncoder RowEncoder::threshold_encoder() const {
    ThresholdEncoder enc;
    for (const auto &b : blocks_)
        if (b.kind == FeatureKind::Continuous) {
            enc.per_feature_thresholds.push_back(b.values);
            enc.feature_names.push_back(b.name);
        }
    return enc;
}

OneHotEncoder RowEncoder::one_hot_encoder() const {
    OneHotEncoder enc;
    for (const auto &b : blocks_)
        if (b.kind == FeatureKind::Categorical) {
            enc.per_feature_categories.push_back(b.values);
            enc.feature_names.push_back(b.name);
        }
    return enc;
}

void encode_row(std::span<const double> row, const RowEncoder &encoder, std::span<std::uint8_t> out) {
    if (static_cast<int>(row.size()) != encoder.arity())
        throw DataError(fmt::format("row has {} features, encoder expects {}", row.size(), encoder.arity()));
    if (static_cast<int>(out.size()) < encoder.width())
        throw DataError("output buffer narrower than encoder width");
    for (std::size_t f = 0; f < row.size(); ++f) {
        const FeatureBlock &b = encoder.blocks()[f];
        auto dest = out.subspan(static_cast<std::size_t>(b.offset), b.values.size());
        if (b.kind == FeatureKind::Continuous)
            encode_continuous(row[f], b.values, dest);
        else
            encode_categorical(row[f], b.values, dest, b.name);
    }
}

BitVector encode_row(std::span<const double> row, const RowEncoder &encoder) {
    BitVector bits(static_cast<std::size_t>(encoder.width()));
    encode_row(row, encoder, bits);
    return bits;
}

} // namespace tsetlin
