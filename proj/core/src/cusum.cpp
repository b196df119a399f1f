#include <npchange/cusum.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <npchange/errors.hpp>
#include <npchange/kahan.hpp>

namespace npchange {

void DetectionConfig::validate() const {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw ConfigError("DetectionConfig: bandwidth must be positive and finite");
    if (!(trim_fraction > 0.0 && trim_fraction < 0.5))
        throw ConfigError("DetectionConfig: trim_fraction must lie in (0, 0.5)");
    if (!explicit_grid) {
        if (grid_params.m < 1)
            throw ConfigError("DetectionConfig: grid m must be >= 1");
        if (!(grid_params.lo_pct >= 0.0 && grid_params.lo_pct < grid_params.hi_pct &&
              grid_params.hi_pct <= 100.0))
            throw ConfigError("DetectionConfig: invalid grid percentiles");
    }
}

std::size_t effective_trim(std::size_t n, double trim_fraction) {
    auto trim = static_cast<std::size_t>(std::floor(static_cast<double>(n) * trim_fraction));
    return trim < 1 ? 1 : trim;
}

EvaluationGrid resolve_grid(const PairedSeries& series, const DetectionConfig& config) {
    if (config.explicit_grid)
        return *config.explicit_grid;
    return make_grid(series, config.grid_params.m, config.grid_params.lo_pct,
                     config.grid_params.hi_pct);
}

namespace {

CusumProfile scan_with_trim(const ScanAccumulator& acc, const DetectionConfig& config,
                            std::size_t trim) {
    const std::size_t n = acc.n;
    // Feasible only if some admissible split leaves at least two observations
    // in each window; the best split is near n/2, so this needs n >= 4 and a
    // nonempty trimmed range [trim, n - trim].
    if (n < 4 || n < 2 * trim)
        throw ScanInfeasibleError("cusum scan: series too short to scan (n=" +
                                  std::to_string(n) + ")");
    const std::size_t m = acc.grid.size();
    const bool use_ll = config.estimator == Estimator::LocalLinear;
    if (use_ll && !acc.has_local_linear)
        throw ConfigError("cusum_profile: local-linear estimator needs local-linear moments");

    CusumProfile profile;
    profile.n = n;
    profile.trim = trim;
    profile.values.resize(n - 2 * trim + 1);
    profile.undefined_counts.resize(profile.values.size());

    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    for (std::size_t idx = 0; idx < profile.values.size(); ++idx) {
        const std::size_t t = trim + idx;
        KahanSum ssq;
        double sup = 0.0;
        std::size_t undefined = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto left = use_ll ? ll_estimate(acc, 1, t, i) : nw_estimate(acc, 1, t, i);
            const auto right =
                use_ll ? ll_estimate(acc, t + 1, n, i) : nw_estimate(acc, t + 1, n, i);
            if (!left || !right) {
                ++undefined;
                continue;
            }
            const double d = std::fabs(*left - *right);
            if (config.aggregation == Aggregation::SumOfSquares)
                ssq.add(d * d);
            else if (d > sup)
                sup = d;
        }
        const double weight = static_cast<double>(t) * static_cast<double>(n - t) / n2;
        profile.values[idx] =
            weight * (config.aggregation == Aggregation::SumOfSquares ? ssq.value() : sup);
        profile.undefined_counts[idx] = undefined;
    }
    return profile;
}

ScanAccumulator accumulator_for(const PairedSeries& series, const DetectionConfig& config) {
    const EvaluationGrid grid = resolve_grid(series, config);
    return build_accumulator(series, grid, config.bandwidth, config.kernel,
                             config.estimator == Estimator::LocalLinear);
}

} // namespace

CusumProfile cusum_profile(const ScanAccumulator& acc, const DetectionConfig& config) {
    config.validate();
    return scan_with_trim(acc, config, effective_trim(acc.n, config.trim_fraction));
}

CusumProfile cusum_profile(const PairedSeries& series, const DetectionConfig& config) {
    config.validate();
    return cusum_profile(accumulator_for(series, config), config);
}

CusumProfile detection_scan(const ScanAccumulator& acc, const DetectionConfig& config) {
    config.validate();
    return scan_with_trim(acc, config, 1);
}

CusumProfile detection_scan(const PairedSeries& series, const DetectionConfig& config) {
    config.validate();
    return detection_scan(accumulator_for(series, config), config);
}

ChangePointEstimate argmax_change_point(const CusumProfile& profile) {
    if (profile.values.empty())
        throw ConfigError("argmax_change_point: empty profile");
    return argmax_change_point(profile, profile.trim, profile.n - profile.trim);
}

ChangePointEstimate argmax_change_point(const CusumProfile& profile, std::size_t lo_t,
                                        std::size_t hi_t) {
    lo_t = std::max(lo_t, profile.trim);
    hi_t = std::min(hi_t, profile.n - profile.trim);
    if (profile.values.empty() || lo_t > hi_t)
        throw ConfigError("argmax_change_point: empty scan range");
    const std::size_t first = lo_t - profile.trim;
    const std::size_t last = hi_t - profile.trim;
    std::size_t best = first;
    std::size_t ties = 1;
    for (std::size_t idx = first + 1; idx <= last; ++idx) {
        if (profile.values[idx] > profile.values[best]) {
            best = idx;
            ties = 1;
        } else if (profile.values[idx] == profile.values[best]) {
            ++ties;
        }
    }
    return ChangePointEstimate{profile.t_at(best), profile.values[best], ties};
}

} // namespace npchange
