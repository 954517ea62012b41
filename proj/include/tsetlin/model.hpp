#pragma once

#include "tsetlin/binarizer.hpp"
#include "tsetlin/data.hpp"
#include "tsetlin/machine.hpp"

#include <iosfwd>
#include <optional>

namespace tsetlin {

/// A fitted encoder together with the machine trained on its output.
struct Model {
    RowEncoder encoder;
    TsetlinMachine machine;

    int predict(std::span<const double> row) const;
    std::vector<int> predict(const Eigen::MatrixXd &rows) const;
};

struct TrainingSetup {
    MachineConfig machine;
    int epochs = 100;
    int max_thresholds = 0; ///< 0 keeps every unique value as a threshold
    int threads = 1;
};

struct TrainingOutcome {
    Model model;
    FitResult fit;
};

/// Fits the encoder on `data`, then trains a fresh machine seeded from
/// `setup.machine.seed`.
TrainingOutcome train_model(const LabeledDataset &data, const TrainingSetup &setup,
                            bool trace = false);

/// Text model document: header, encoder section, then every clause's
/// polarity and 2n automaton states. Reals are written in shortest
/// round-trip form, so save/load is exact.
void save_model(std::ostream &out, const Model &model);
Model load_model(std::istream &in);

} // namespace tsetlin
