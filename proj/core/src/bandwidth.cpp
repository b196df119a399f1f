#include <npchange/bandwidth.hpp>

#include <algorithm>

#include <npchange/errors.hpp>
#include <npchange/parallel.hpp>

namespace npchange {

BandwidthSearch select_bandwidth(const PairedSeries& series, const DetectionConfig& config_template,
                                 std::size_t n_candidates) {
    if (n_candidates < 2)
        throw ConfigError("select_bandwidth: need at least 2 candidates");
    const auto [mn, mx] = std::minmax_element(series.x.begin(), series.x.end());
    const double range = *mx - *mn;
    if (!(range > 0.0))
        throw ConfigError("select_bandwidth: degenerate x-range");

    DetectionConfig config = config_template;
    config.explicit_grid = resolve_grid(series, config_template);

    BandwidthSearch search;
    search.h_grid.resize(n_candidates);
    search.f_values.resize(n_candidates);
    const double h_max = range / 2.0;
    for (std::size_t j = 0; j < n_candidates; ++j)
        search.h_grid[j] =
            h_max * static_cast<double>(j + 1) / static_cast<double>(n_candidates);

    parallel_for(n_candidates, [&](std::size_t j) {
        DetectionConfig local = config;
        local.bandwidth = search.h_grid[j];
        const CusumProfile profile = cusum_profile(series, local);
        search.f_values[j] = argmax_change_point(profile).max_stat * search.h_grid[j];
    });

    std::size_t best = 0;
    for (std::size_t j = 1; j < n_candidates; ++j)
        if (search.f_values[j] > search.f_values[best])
            best = j;
    search.h_star = search.h_grid[best];
    return search;
}

} // namespace npchange
