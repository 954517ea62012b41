#include "tsetlin/data.hpp"

#include "tsetlin/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace tsetlin {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_double(const std::string &s) {
    double v = 0.0;
    const char *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        return std::nullopt;
    return v;
}

std::optional<int> parse_int(const std::string &s) {
    int v = 0;
    const char *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        return std::nullopt;
    return v;
}

// Next non-blank line; returns false at end of stream.
bool next_line(std::istream &in, std::string &line, int &line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty())
            return true;
    }
    return false;
}

std::string format_categories(const std::vector<double> &cats) {
    std::string out;
    for (std::size_t i = 0; i < cats.size(); ++i)
        out += fmt::format("{}{}", i ? "|" : "", cats[i]);
    return out;
}

} // namespace

std::vector<std::string> LabeledDataset::feature_names() const {
    std::vector<std::string> names;
    for (const auto &f : features)
        names.push_back(f.name);
    return names;
}

LabeledDataset LabeledDataset::subset(std::span<const int> rows) const {
    LabeledDataset out;
    out.features = features;
    out.classes = classes;
    out.values.resize(static_cast<Eigen::Index>(rows.size()), values.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.values.row(static_cast<Eigen::Index>(i)) = values.row(rows[i]);
        out.labels.push_back(labels[static_cast<std::size_t>(rows[i])]);
        if (!periods.empty())
            out.periods.push_back(periods[static_cast<std::size_t>(rows[i])]);
    }
    return out;
}

void LabeledDataset::validate() const {
    if (values.cols() != arity())
        throw DataError(fmt::format("dataset has {} columns but {} features", values.cols(), arity()));
    if (values.rows() != size())
        throw DataError(fmt::format("dataset has {} rows but {} labels", values.rows(), size()));
    if (!periods.empty() && static_cast<int>(periods.size()) != size())
        throw DataError("period column length does not match row count");
    const int limit = classes == 1 ? 2 : classes;
    for (const int y : labels)
        if (y < 0 || y >= limit)
            throw DataError(fmt::format("label {} outside [0, {})", y, limit));
}

LabeledDataset load_dataset(std::istream &in) {
    std::string line;
    int line_no = 0;
    if (!next_line(in, line, line_no))
        throw DataError("dataset is empty");
    auto header = split(line, ',');
    if (header.size() < 2 || header.back() != "label")
        throw DataError("dataset header must end with a 'label' column");

    LabeledDataset data;
    std::size_t first_feature = 0;
    if (header.size() >= 4 && header[0] == "year" && header[1] == "month")
        first_feature = 2;
    for (std::size_t c = first_feature; c + 1 < header.size(); ++c) {
        FeatureSpec spec;
        const auto colon = header[c].find(':');
        spec.name = header[c].substr(0, colon);
        if (spec.name.empty())
            throw DataError(fmt::format("line {}: empty feature name in column {}", line_no, c + 1));
        if (colon != std::string::npos) {
            const std::string kind = header[c].substr(colon + 1);
            if (kind.rfind("cat", 0) != 0)
                throw DataError(fmt::format("line {}: unknown feature kind '{}'", line_no, kind));
            spec.kind = FeatureKind::Categorical;
            if (kind.size() > 3) {
                if (kind[3] != '=')
                    throw DataError(fmt::format("line {}: malformed category list '{}'", line_no, kind));
                for (const auto &tok : split(std::string_view(kind).substr(4), '|')) {
                    const auto v = parse_double(tok);
                    if (!v)
                        throw DataError(fmt::format("line {}: bad category '{}'", line_no, tok));
                    spec.categories.push_back(*v);
                }
            }
        }
        data.features.push_back(std::move(spec));
    }
    if (data.features.empty())
        throw DataError("dataset declares no features");

    std::vector<std::vector<double>> rows;
    while (next_line(in, line, line_no)) {
        const auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw DataError(fmt::format("line {}: expected {} fields, found {}", line_no, header.size(),
                                        cells.size()));
        if (first_feature == 2) {
            const auto year = parse_int(cells[0]);
            const auto month = parse_int(cells[1]);
            if (!year || !month || *month < 1 || *month > 12)
                throw DataError(fmt::format("line {}: bad year/month", line_no));
            data.periods.push_back({*year, *month});
        }
        std::vector<double> row;
        for (std::size_t c = first_feature; c + 1 < cells.size(); ++c) {
            const auto v = parse_double(cells[c]);
            if (!v || std::isnan(*v))
                throw DataError(fmt::format("line {}: non-numeric value '{}' in column '{}'", line_no,
                                            cells[c], header[c]));
            row.push_back(*v);
        }
        const auto label = parse_int(cells.back());
        if (!label || *label < 0)
            throw DataError(fmt::format("line {}: bad label '{}'", line_no, cells.back()));
        data.labels.push_back(*label);
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw DataError("dataset has no rows");
    data.values.resize(static_cast<Eigen::Index>(rows.size()), data.arity());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            data.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    data.classes = std::max(2, *std::max_element(data.labels.begin(), data.labels.end()) + 1);
    return data;
}

void write_dataset(std::ostream &out, const LabeledDataset &data) {
    const bool with_periods = !data.periods.empty();
    if (with_periods)
        out << "year,month,";
    for (const auto &f : data.features) {
        out << f.name;
        if (f.kind == FeatureKind::Categorical) {
            out << ":cat";
            if (!f.categories.empty())
                out << '=' << format_categories(f.categories);
        }
        out << ',';
    }
    out << "label\n";
    for (int r = 0; r < data.size(); ++r) {
        if (with_periods)
            out << data.periods[static_cast<std::size_t>(r)].year << ','
                << data.periods[static_cast<std::size_t>(r)].month << ',';
        for (int c = 0; c < data.arity(); ++c)
            out << fmt::format("{},", data.values(r, c));
        out << data.labels[static_cast<std::size_t>(r)] << '\n';
    }
}

int artificial_label(int x1, int x2) { return x1 + x2 == 9 ? 1 : 0; }

LabeledDataset generate_artificial(Rng &rng, int count, std::optional<double> positive_fraction) {
    if (count < 1)
        throw ConfigError(fmt::format("sample count must be >= 1, got {}", count));
    if (positive_fraction && (*positive_fraction < 0.0 || *positive_fraction > 1.0))
        throw ConfigError(fmt::format("positive fraction {} outside [0, 1]", *positive_fraction));

    LabeledDataset data;
    data.features = {{"x1", FeatureKind::Categorical, {0, 1, 2, 3, 4}},
                     {"x2", FeatureKind::Categorical, {0, 1, 2, 3, 4, 5}}};
    data.classes = 2;
    data.values.resize(count, 2);

    std::vector<std::pair<int, int>> cells;
    if (!positive_fraction) {
        for (int i = 0; i < count; ++i)
            cells.emplace_back(static_cast<int>(rng.below(5)), static_cast<int>(rng.below(6)));
    } else {
        const auto positives = static_cast<int>(std::lround(count * *positive_fraction));
        std::vector<std::pair<int, int>> negatives;
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; b <= 5; ++b)
                if (!artificial_label(a, b))
                    negatives.emplace_back(a, b);
        for (int i = 0; i < count; ++i)
            cells.push_back(i < positives ? std::pair{4, 5}
                                          : negatives[static_cast<std::size_t>(rng.below(negatives.size()))]);
        rng.shuffle(std::span(cells));
    }
    for (int i = 0; i < count; ++i) {
        const auto [a, b] = cells[static_cast<std::size_t>(i)];
        data.values(i, 0) = a;
        data.values(i, 1) = b;
        data.labels.push_back(artificial_label(a, b));
    }
    return data;
}

int label_outbreak(double incidence) {
    if (incidence < 0.0 || std::isnan(incidence))
        throw DataError(fmt::format("incidence rate must be >= 0, got {}", incidence));
    return incidence > kOutbreakRate ? 1 : 0;
}

void SeriesTable::add(const std::string &region, Period period, double rate) {
    if (region.empty())
        throw DataError("empty region name");
    if (period.month < 1 || period.month > 12)
        throw DataError(fmt::format("month {} outside 1..12", period.month));
    if (!(rate >= 0.0))
        throw DataError(fmt::format("rate for ({}, {}-{:02}) must be >= 0, got {}", region,
                                    period.year, period.month, rate));
    auto [it, fresh] = data_.try_emplace(region);
    if (fresh)
        order_.push_back(region);
    if (!it->second.emplace(period.index(), rate).second)
        throw DataError(fmt::format("duplicate entry ({}, {}, {})", region, period.year, period.month));
    ++rows_;
}

bool SeriesTable::has(const std::string &region, Period period) const {
    const auto it = data_.find(region);
    return it != data_.end() && it->second.count(period.index()) != 0;
}

double SeriesTable::rate(const std::string &region, Period period) const {
    if (region == kTotalRegion && !has_total_region())
        return total(period);
    const auto it = data_.find(region);
    if (it == data_.end())
        throw DataError(fmt::format("unknown region '{}'", region));
    const auto cell = it->second.find(period.index());
    if (cell == it->second.end())
        throw DataError(fmt::format("missing value for region {} at {}-{:02}", region, period.year,
                                    period.month));
    return cell->second;
}

double SeriesTable::total(Period period) const {
    if (has_total_region())
        return rate(kTotalRegion, period);
    double sum = 0.0;
    for (const auto &region : order_)
        sum += rate(region, period);
    return sum;
}

std::pair<Period, Period> SeriesTable::span(const std::string &region) const {
    const auto it = data_.find(region);
    if (it == data_.end() || it->second.empty())
        throw DataError(fmt::format("unknown region '{}'", region));
    return {Period::from_index(it->second.begin()->first), Period::from_index(it->second.rbegin()->first)};
}

SeriesTable load_series(std::istream &in) {
    std::string line;
    int line_no = 0;
    if (!next_line(in, line, line_no))
        throw DataError("series file is empty");
    const auto header = split(line, ',');
    const std::vector<std::string> expected = {"region", "year", "month", "rate"};
    for (const auto &col : expected)
        if (std::find(header.begin(), header.end(), col) == header.end())
            throw DataError(fmt::format("series header is missing column '{}'", col));
    auto col_of = [&](const std::string &name) {
        return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    };
    const auto c_region = col_of("region"), c_year = col_of("year"), c_month = col_of("month"),
               c_rate = col_of("rate");

    SeriesTable table;
    while (next_line(in, line, line_no)) {
        const auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw DataError(fmt::format("line {}: expected {} fields, found {}", line_no, header.size(),
                                        cells.size()));
        const auto year = parse_int(cells[c_year]);
        const auto month = parse_int(cells[c_month]);
        if (!year || !month)
            throw DataError(fmt::format("line {}: bad year/month '{}/{}'", line_no, cells[c_year],
                                        cells[c_month]));
        const auto rate = parse_double(cells[c_rate]);
        if (!rate || std::isnan(*rate))
            throw DataError(fmt::format("line {}: non-numeric rate '{}'", line_no, cells[c_rate]));
        try {
            table.add(cells[c_region], {*year, *month}, *rate);
        } catch (const DataError &e) {
            throw DataError(fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    return table;
}

void write_series(std::ostream &out, const SeriesTable &table) {
    out << "region,year,month,rate\n";
    for (const auto &region : table.regions()) {
        const auto [first, last] = table.span(region);
        for (int i = first.index(); i <= last.index(); ++i) {
            const Period p = Period::from_index(i);
            if (table.has(region, p))
                out << fmt::format("{},{},{},{}\n", region, p.year, p.month, table.rate(region, p));
        }
    }
}

const std::vector<std::string> &NeighborConfig::sources(const std::string &target) const {
    for (const auto &[t, s] : entries)
        if (t == target)
            return s;
    throw DataError(fmt::format("no neighbour configuration for target '{}'", target));
}

void NeighborConfig::validate(const SeriesTable &table) const {
    for (const auto &[target, sources] : entries) {
        if (!table.contains(target))
            continue; // targets absent from this table are never built
        for (const auto &s : sources)
            if (s != kTotalRegion && !table.contains(s))
                throw DataError(fmt::format("neighbour '{}' of target '{}' is not in the series", s, target));
    }
}

NeighborConfig load_neighbor_config(std::istream &in) {
    NeighborConfig config;
    std::string line;
    int line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty())
            continue;
        const auto cells = split(body, ',');
        if (cells.size() != 2 || cells[0].empty())
            throw DataError(fmt::format("line {}: expected 'target,source1;source2;...'", line_no));
        if (!seen.insert(cells[0]).second)
            throw DataError(fmt::format("line {}: duplicate target '{}'", line_no, cells[0]));
        std::vector<std::string> sources;
        for (auto &s : split(cells[1], ';'))
            if (!s.empty())
                sources.push_back(std::move(s));
        config.entries.emplace_back(cells[0], std::move(sources));
    }
    return config;
}

void write_neighbor_config(std::ostream &out, const NeighborConfig &config) {
    for (const auto &[target, sources] : config.entries) {
        out << target << ',';
        for (std::size_t i = 0; i < sources.size(); ++i)
            out << (i ? ";" : "") << sources[i];
        out << '\n';
    }
}

NeighborConfig default_neighbor_config() {
    static constexpr const char *kTable = R"(# target,sources (previous-month rates)
I,II;III;IVA;XIV;Total
II,I;III;IVA;XIV;Total
III,I;II;IVA;XVI
IVA,III;IVB;V;XVI;Total
IVB,II;IVA;VI;Total
V,IVA;VI;Total
VI,IVB;V;VII;XII;Total
# listed as a second "XII" in the published table
VII,IVA;V;VI;XII;Total
VIII,V;VI
IX,X;XI;XII
X,IX;XI;XII;XIV;XV
XI,IX;X;XII;XV
XII,IX;X;XI;XV;Total
XIII,IX;X;XII;XV;Total
XIV,I;II;III;IVA;IVB;Total
XV,IX;X;XI;XII
XVI,I;III;IVA;V
)";
    std::istringstream in(kTable);
    return load_neighbor_config(in);
}

LabeledDataset build_lag_features(const SeriesTable &table, const std::string &target,
                                  const NeighborConfig &config) {
    const auto &sources = config.sources(target);
    for (const auto &s : sources)
        if (s != kTotalRegion && !table.contains(s))
            throw DataError(fmt::format("neighbour '{}' of target '{}' is not in the series", s, target));
    const auto [first, last] = table.span(target);
    const int span = last.index() - first.index() + 1;
    if (span < 13)
        throw DataError(fmt::format("target '{}' spans {} months; at least 13 are needed", target, span));

    LabeledDataset data;
    data.classes = 2;
    data.features.push_back({target + "[t-1]", FeatureKind::Continuous, {}});
    data.features.push_back({target + "[t-12]", FeatureKind::Continuous, {}});
    for (const auto &s : sources)
        data.features.push_back({s + "[t-1]", FeatureKind::Continuous, {}});

    const int rows = span - 12;
    data.values.resize(rows, data.arity());
    for (int r = 0; r < rows; ++r) {
        const Period t = first.shifted(12 + r);
        const Period prev = t.shifted(-1);
        data.values(r, 0) = table.rate(target, prev);
        data.values(r, 1) = table.rate(target, t.shifted(-12));
        for (std::size_t s = 0; s < sources.size(); ++s)
            data.values(r, static_cast<Eigen::Index>(2 + s)) = table.rate(sources[s], prev);
        data.labels.push_back(label_outbreak(table.rate(target, t)));
        data.periods.push_back(t);
    }
    return data;
}

namespace {

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

double uniform_in(Rng &rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

} // namespace

SeriesTable generate_planted_outbreak(Rng &rng, const PlantedOutbreakOptions &options) {
    if (options.months < 13)
        throw ConfigError(fmt::format("planted series needs >= 13 months, got {}", options.months));
    if (options.cutoff <= 6.0)
        throw ConfigError(fmt::format("planted cutoff must exceed 6, got {}", options.cutoff));
    const double c = options.cutoff;
    SeriesTable table;
    const Period start{options.start_year, 1};
    double driver_prev = 0.0;
    for (int i = 0; i < options.months; ++i) {
        const Period p = start.shifted(i);
        // The driver keeps a margin around the cutoff so the rule has a clean gap.
        const double driver = rng.bernoulli(0.4) ? round3(uniform_in(rng, c + 6.0, c + 25.0))
                                                 : round3(uniform_in(rng, 1.0, c - 6.0));
        const double noise = round3(uniform_in(rng, 0.0, 2.0 * c));
        double target;
        if (i == 0)
            target = round3(uniform_in(rng, 0.0, c - 2.0));
        else if (driver_prev > c)
            target = round3(uniform_in(rng, c + 2.0, 2.5 * c));
        else
            target = round3(uniform_in(rng, 0.0, c - 2.0));
        table.add("I", p, target);
        table.add("II", p, driver);
        table.add("III", p, noise);
        driver_prev = driver;
    }
    return table;
}

NeighborConfig planted_outbreak_config() {
    return NeighborConfig{{{"I", {"II", "III"}}, {"II", {"I", "III"}}, {"III", {"I", "II"}}}};
}

std::pair<LabeledDataset, LabeledDataset> split_by_year(const LabeledDataset &data, int year) {
    if (data.periods.empty())
        throw DataError("dataset has no year/month columns to split on");
    std::vector<int> before, during;
    for (int r = 0; r < data.size(); ++r) {
        const int y = data.periods[static_cast<std::size_t>(r)].year;
        if (y < year)
            before.push_back(r);
        else if (y == year)
            during.push_back(r);
    }
    return {data.subset(before), data.subset(during)};
}

} // namespace tsetlin
