#pragma once

#include <cstddef>
#include <vector>

#include <npchange/cusum.hpp>
#include <npchange/series.hpp>

namespace npchange {

struct BandwidthSearch {
    std::vector<double> h_grid;   // strictly increasing candidates
    std::vector<double> f_values; // F(h) = max_t W(t) * h per candidate
    double h_star = 0.0;          // maximizer; smallest h on ties
};

/// Evaluate F(h) = max_t W(t) * h at n_candidates equidistant bandwidths in
/// (0, range/2] where range = max(x) - min(x), and return the maximizer.
/// The evaluation grid and all other config fields are held fixed across
/// candidates; only h varies.
BandwidthSearch select_bandwidth(const PairedSeries& series,
                                 const DetectionConfig& config_template,
                                 std::size_t n_candidates = 50);

} // namespace npchange
