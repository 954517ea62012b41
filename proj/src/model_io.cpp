#include "tsetlin/model.hpp"

#include "tsetlin/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace tsetlin {

int Model::predict(std::span<const double> row) const {
    const BitVector bits = encode_row(row, encoder);
    return machine.predict(bits);
}

std::vector<int> Model::predict(const Eigen::MatrixXd &rows) const {
    return machine.predict(encoder.encode(rows));
}

TrainingOutcome train_model(const LabeledDataset &data, const TrainingSetup &setup, bool trace) {
    data.validate();
    if (data.size() == 0)
        throw DataError("cannot train on an empty dataset");
    RowEncoder encoder = RowEncoder::fit(data.values, data.features, setup.max_thresholds);
    const BitMatrix bits = encoder.encode(data.values);
    TsetlinMachine machine(encoder.width(), setup.machine);
    Rng rng(setup.machine.seed);
    FitOptions options{setup.epochs, trace, setup.threads};
    FitResult result = fit(machine, bits, data.labels, options, rng);
    return {Model{std::move(encoder), std::move(machine)}, std::move(result)};
}

namespace {

constexpr const char *kMagic = "tsetlin-model";
constexpr int kVersion = 1;

void check_name(const std::string &name) {
    if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos)
        throw DataError(fmt::format("feature name '{}' cannot be stored (empty or contains whitespace)", name));
}

class Reader {
public:
    explicit Reader(std::istream &in) : in_(in) {}

    // Reads the next non-empty line and checks its leading keyword.
    std::istringstream expect(std::string_view keyword) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                break;
            line.clear();
        }
        if (line.empty())
            fail(fmt::format("unexpected end of document, expected '{}'", keyword));
        std::istringstream fields(line);
        std::string word;
        fields >> word;
        if (word != keyword)
            fail(fmt::format("expected '{}', found '{}'", keyword, word));
        return fields;
    }

    template <typename T>
    T read(std::istringstream &fields, std::string_view what) {
        std::string token;
        if (!(fields >> token))
            fail(fmt::format("missing {}", what));
        T value{};
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size())
            fail(fmt::format("bad {} '{}'", what, token));
        return value;
    }

    template <typename T>
    T scalar(std::string_view keyword) {
        auto fields = expect(keyword);
        return read<T>(fields, keyword);
    }

    [[noreturn]] void fail(const std::string &msg) const {
        throw DataError(fmt::format("model line {}: {}", line_no_, msg));
    }

private:
    std::istream &in_;
    int line_no_ = 0;
};

} // namespace

void save_model(std::ostream &out, const Model &model) {
    const MachineConfig &c = model.machine.config();
    out << kMagic << ' ' << kVersion << '\n';
    out << "inputs " << model.machine.inputs() << '\n';
    out << "classes " << c.classes << '\n';
    out << "clauses " << c.clauses_per_class << '\n';
    out << "states " << c.states_per_action << '\n';
    out << "threshold " << c.threshold << '\n';
    out << fmt::format("precision {}\n", c.precision);
    out << "seed " << c.seed << '\n';
    out << "init " << c.initial_state << '\n';
    out << "negatives " << (c.feedback_all_negatives ? "all" : "single") << '\n';
    out << "features " << model.encoder.arity() << '\n';
    for (const FeatureBlock &b : model.encoder.blocks()) {
        check_name(b.name);
        out << "feature " << (b.kind == FeatureKind::Continuous ? "continuous" : "categorical") << ' '
            << b.name << ' ' << b.values.size();
        for (const double v : b.values)
            out << fmt::format(" {}", v);
        out << '\n';
    }
    const int banks = c.classes == 1 ? 1 : c.classes;
    for (int b = 0; b < banks; ++b) {
        out << "bank " << b << '\n';
        for (const Clause &clause : model.machine.bank(b)) {
            out << "clause " << (clause.polarity() > 0 ? '+' : '-');
            for (int l = 0; l < clause.literals(); ++l)
                out << ' ' << clause.state(l);
            out << '\n';
        }
    }
    out << "end\n";
}

Model load_model(std::istream &in) {
    Reader r(in);
    {
        auto fields = r.expect(kMagic);
        const int version = r.read<int>(fields, "version");
        if (version != kVersion)
            r.fail(fmt::format("unsupported model version {}", version));
    }
    const int inputs = r.scalar<int>("inputs");
    MachineConfig c;
    c.classes = r.scalar<int>("classes");
    c.clauses_per_class = r.scalar<int>("clauses");
    c.states_per_action = r.scalar<int>("states");
    c.threshold = r.scalar<int>("threshold");
    c.precision = r.scalar<double>("precision");
    c.seed = r.scalar<std::uint64_t>("seed");
    c.initial_state = r.scalar<int>("init");
    {
        auto fields = r.expect("negatives");
        std::string mode;
        fields >> mode;
        if (mode != "all" && mode != "single")
            r.fail(fmt::format("bad negatives mode '{}'", mode));
        c.feedback_all_negatives = mode == "all";
    }
    try {
        validate(c);
    } catch (const ConfigError &e) {
        r.fail(e.what());
    }

    const int arity = r.scalar<int>("features");
    std::vector<FeatureBlock> blocks;
    for (int f = 0; f < arity; ++f) {
        auto fields = r.expect("feature");
        std::string kind, name;
        fields >> kind >> name;
        if (kind != "continuous" && kind != "categorical")
            r.fail(fmt::format("bad feature kind '{}'", kind));
        const int count = r.read<int>(fields, "value count");
        FeatureBlock block{name, kind == "continuous" ? FeatureKind::Continuous : FeatureKind::Categorical,
                           {}, 0};
        for (int i = 0; i < count; ++i)
            block.values.push_back(r.read<double>(fields, "feature value"));
        blocks.push_back(std::move(block));
    }
    RowEncoder encoder(std::move(blocks));
    if (encoder.width() != inputs)
        r.fail(fmt::format("encoder width {} does not match {} inputs", encoder.width(), inputs));

    TsetlinMachine machine(inputs, c);
    const int banks = c.classes == 1 ? 1 : c.classes;
    for (int b = 0; b < banks; ++b) {
        auto header = r.expect("bank");
        if (r.read<int>(header, "bank index") != b)
            r.fail(fmt::format("expected bank {}", b));
        for (int i = 0; i < c.clauses_per_class; ++i) {
            auto fields = r.expect("clause");
            std::string sign;
            fields >> sign;
            const int polarity = sign == "+" ? 1 : sign == "-" ? -1 : 0;
            Clause &clause = machine.clause(b, i);
            if (polarity != clause.polarity())
                r.fail(fmt::format("clause {} of bank {} has polarity '{}'", i, b, sign));
            for (int l = 0; l < clause.literals(); ++l) {
                const int state = r.read<int>(fields, "automaton state");
                if (state < 1 || state > 2 * c.states_per_action)
                    r.fail(fmt::format("automaton state {} outside [1, {}]", state, 2 * c.states_per_action));
                clause.set_state(l, state);
            }
        }
    }
    r.expect("end");
    return Model{std::move(encoder), std::move(machine)};
}

} // namespace tsetlin
