#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <npchange/cusum.hpp>
#include <npchange/series.hpp>

namespace npchange {

struct PermutationPolicy {
    std::size_t n_permutations = 200;
    double quantile_level = 0.99;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

struct ThresholdEstimate {
    double threshold = 0.0;
    std::vector<double> maxima; // max_t W(t) per permutation, draw order
};

struct DetectionOutcome {
    bool change_detected = false;
    std::optional<std::size_t> k_hat; // present iff change_detected
    double max_stat = 0.0;
    double threshold = 0.0;
    std::size_t n = 0;
};

/// detect() plus the intermediates the CLI exports.
struct DetectionResult {
    DetectionOutcome outcome;
    CusumProfile profile;
    ThresholdEstimate threshold;
};

/// Jointly permuted copy: (x, y) pairs are reindexed by one random
/// permutation, destroying the time location of any regression change while
/// preserving the (x, y) joint marginal.
PairedSeries permute_series(const PairedSeries& series, std::mt19937_64& engine);

/// Permutation threshold: recompute the full-range scan maximum max_t W(t),
/// t = 1..n-1, on n_permutations jointly permuted copies and take the
/// nearest-rank empirical quantile (rank ceil(level * n_permutations)).
/// Deterministic given rng_seed; permutation r draws from a stream derived
/// from (rng_seed, r), so results are independent of execution order.
ThresholdEstimate permutation_threshold(const PairedSeries& series, const DetectionConfig& config,
                                        const PermutationPolicy& policy);

/// Decision rule: change iff the full-range max_t W(t) strictly exceeds the
/// threshold; a tie means no change. k_hat is the trimmed-range argmax.
DetectionResult detect_full(const PairedSeries& series, const DetectionConfig& config,
                            const PermutationPolicy& policy);

DetectionOutcome detect(const PairedSeries& series, const DetectionConfig& config,
                        const PermutationPolicy& policy);

} // namespace npchange
