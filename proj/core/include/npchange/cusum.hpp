#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <npchange/regression.hpp>
#include <npchange/series.hpp>

namespace npchange {

enum class Aggregation { SumOfSquares, Supremum };
enum class Estimator { NadarayaWatson, LocalLinear };

/// Grid-construction parameters used when no explicit grid is supplied.
struct GridParams {
    std::size_t m = 100;
    double lo_pct = 5.0;
    double hi_pct = 95.0;
};

struct DetectionConfig {
    double bandwidth = 1.0;
    KernelSpec kernel{};
    GridParams grid_params{};
    std::optional<EvaluationGrid> explicit_grid;
    double trim_fraction = 0.05;
    Aggregation aggregation = Aggregation::SumOfSquares;
    Estimator estimator = Estimator::NadarayaWatson;

    void validate() const;
};

/// The scan statistic W(t) over the trimmed range t = trim .. n - trim.
struct CusumProfile {
    std::size_t n = 0;
    std::size_t trim = 0;
    std::vector<double> values;
    std::vector<std::size_t> undefined_counts; // grid points skipped at each t

    std::size_t t_at(std::size_t idx) const { return trim + idx; }
    std::size_t size() const { return values.size(); }
};

struct ChangePointEstimate {
    std::size_t k_hat = 0;
    double max_stat = 0.0;
    std::size_t ties = 0; // number of scanned t attaining the maximum
};

/// Effective trim: max(1, floor(n * trim_fraction)). A split must leave both
/// windows nonempty, so the trim never drops below 1 even for tiny n.
std::size_t effective_trim(std::size_t n, double trim_fraction);

/// W(t) = [t(n-t)/n^2] * sum_i |phi_left(x_i) - phi_right(x_i)|^2 for
/// sum-of-squares aggregation, or the weight times max_i |difference| for
/// supremum aggregation. Grid points with an undefined estimate on either
/// side of the split are skipped and counted. Throws ScanInfeasibleError
/// when the series is too short to scan.
CusumProfile cusum_profile(const PairedSeries& series, const DetectionConfig& config);

/// Variant reusing a prebuilt accumulator (grid and bandwidth already fixed).
CusumProfile cusum_profile(const ScanAccumulator& acc, const DetectionConfig& config);

/// W(t) over the full split range t = 1 .. n-1 (trim forced to 1). Used for
/// the detection comparison max_t W(t) vs the permutation threshold: the
/// boundary splits are nearly exchangeable under pair permutation (a length-1
/// window sees only *which* pair comes first, not the ordering of the rest),
/// which keeps the permutation calibration honest for serially dependent
/// regressors. Localization (the argmax) stays trimmed.
CusumProfile detection_scan(const PairedSeries& series, const DetectionConfig& config);
CusumProfile detection_scan(const ScanAccumulator& acc, const DetectionConfig& config);

/// Smallest t attaining max W(t), plus the tie count.
ChangePointEstimate argmax_change_point(const CusumProfile& profile);

/// Argmax restricted to splits t in [lo_t, hi_t] (intersected with the
/// profile's range; throws ConfigError when the intersection is empty).
ChangePointEstimate argmax_change_point(const CusumProfile& profile, std::size_t lo_t,
                                        std::size_t hi_t);

/// Resolve the evaluation grid for a series under the config.
EvaluationGrid resolve_grid(const PairedSeries& series, const DetectionConfig& config);

} // namespace npchange
