#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <npchange/kernel.hpp>
#include <npchange/series.hpp>

namespace npchange {

/// Per-grid-point prefix sums of kernel moments. Any contiguous window sum
/// is a difference of two prefix entries, so a window regression estimate at
/// a grid point costs O(1) and the full CUSUM scan costs O(n*m) after an
/// O(n*m) precompute.
///
/// Row layout: entry(i, t) with t = 0..n, entry(i, 0) == 0.
///   cum_k   : prefix sums of K_h(X_s - x_i)           = (1/h) K((X_s - x_i)/h)
///   cum_yk  : prefix sums of Y_s * K_h(X_s - x_i)
/// Local-linear moments (present when built with need_local_linear):
///   cum_dk  : prefix sums of (X_s - x_i)   * K_h
///   cum_d2k : prefix sums of (X_s - x_i)^2 * K_h
///   cum_ydk : prefix sums of Y_s * (X_s - x_i) * K_h
struct ScanAccumulator {
    double bandwidth;
    KernelSpec kernel;
    EvaluationGrid grid;
    std::size_t n;
    bool has_local_linear;
    std::vector<double> cum_k, cum_yk, cum_dk, cum_d2k, cum_ydk;

    double at(const std::vector<double>& a, std::size_t i, std::size_t t) const {
        return a[i * (n + 1) + t];
    }
};

ScanAccumulator build_accumulator(const PairedSeries& series, const EvaluationGrid& grid,
                                  double bandwidth, KernelSpec kernel,
                                  bool need_local_linear = false);

/// Nadaraya-Watson estimate over the window [s, u] (1-based inclusive) at
/// grid point i. nullopt when no observation falls within bandwidth of the
/// grid point (zero denominator); invalid window bounds throw instead.
std::optional<double> nw_estimate(const ScanAccumulator& acc, std::size_t s, std::size_t u,
                                  std::size_t i);

/// Intercept of the kernel-weighted linear fit at grid point i over [s, u].
/// nullopt when the weighted design is (near-)singular.
std::optional<double> ll_estimate(const ScanAccumulator& acc, std::size_t s, std::size_t u,
                                  std::size_t i);

/// m equidistant points spanning [Q(lo_pct), Q(hi_pct)] of the x-sample,
/// linear-interpolation quantiles. m == 1 degenerates to the interval midpoint.
EvaluationGrid make_grid(const PairedSeries& series, std::size_t m, double lo_pct = 5.0,
                         double hi_pct = 95.0);

} // namespace npchange
