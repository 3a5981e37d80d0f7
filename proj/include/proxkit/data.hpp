#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "proxkit/objective.hpp"

namespace proxkit {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntheticSpec {
    std::size_t d = 0;
    std::size_t m = 0;
    std::size_t s = 0;
    std::uint64_t seed = 0;
    double rho = 0.5;
};

struct LabeledDataset {
    LassoProblem problem;
    std::optional<Vec> ground_truth;
    std::optional<SyntheticSpec> spec;
    std::optional<std::vector<std::string>> column_names;
};

/// Lower-triangular Q with Q Q^T = C, c_ij = rho^|i-j|.
Mat ar_correlation_cholesky(std::size_t d, double rho);

/// Synthetic benchmark instance: planted x* with support {0..s-1} drawn
/// uniform (0,1), rows of A correlated standard normal with covariance C,
/// b = A x* + standard normal noise. Deterministic per seed; three
/// independent streams (x*, A, noise) derived from the master seed.
LabeledDataset generate_synthetic(const SyntheticSpec& spec);

LabeledDataset load_csv(const std::string& path, const std::string& target_column);
void write_csv(const LabeledDataset& ds, const std::string& path,
               const std::string& target_column = "target");

struct StandardizeStats {
    Vec feature_mean, feature_sd;
    double target_mean = 0.0, target_sd = 1.0;
};

/// Zero-mean unit-sd columns (population divisor m). When stats are
/// supplied (a test split), those are applied instead of recomputing.
std::pair<LabeledDataset, StandardizeStats> standardize(
    const LabeledDataset& ds, const std::optional<StandardizeStats>& stats = std::nullopt);

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& ds,
                                                           double fraction,
                                                           std::uint64_t seed);

/// Little-endian cache format: magic "PXG1", then d, m, s, seed as 64-bit
/// words, then row-major A, then b, then x*.
void save_dataset(const LabeledDataset& ds, const std::string& path);
LabeledDataset load_dataset(const std::string& path);

std::string spec_hash(const SyntheticSpec& spec);

}  // namespace proxkit
