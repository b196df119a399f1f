#include <npchange/regression.hpp>

#include <cmath>
#include <string>

#include <npchange/errors.hpp>
#include <npchange/kahan.hpp>

namespace npchange {

ScanAccumulator build_accumulator(const PairedSeries& series, const EvaluationGrid& grid,
                                  double bandwidth, KernelSpec kernel, bool need_local_linear) {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw ConfigError("build_accumulator: bandwidth must be positive and finite");

    const std::size_t n = series.size();
    const std::size_t m = grid.size();
    ScanAccumulator acc{bandwidth, kernel, grid, n, need_local_linear, {}, {}, {}, {}, {}};
    acc.cum_k.assign(m * (n + 1), 0.0);
    acc.cum_yk.assign(m * (n + 1), 0.0);
    if (need_local_linear) {
        acc.cum_dk.assign(m * (n + 1), 0.0);
        acc.cum_d2k.assign(m * (n + 1), 0.0);
        acc.cum_ydk.assign(m * (n + 1), 0.0);
    }

    const double inv_h = 1.0 / bandwidth;
    for (std::size_t i = 0; i < m; ++i) {
        const double xi = grid.points[i];
        const std::size_t base = i * (n + 1);
        KahanSum sk, syk, sdk, sd2k, sydk;
        for (std::size_t t = 0; t < n; ++t) {
            const double d = series.x[t] - xi;
            const double kh = kernel_eval(kernel, d * inv_h) * inv_h;
            if (kh != 0.0) {
                sk.add(kh);
                syk.add(series.y[t] * kh);
                if (need_local_linear) {
                    sdk.add(d * kh);
                    sd2k.add(d * d * kh);
                    sydk.add(series.y[t] * d * kh);
                }
            }
            acc.cum_k[base + t + 1] = sk.value();
            acc.cum_yk[base + t + 1] = syk.value();
            if (need_local_linear) {
                acc.cum_dk[base + t + 1] = sdk.value();
                acc.cum_d2k[base + t + 1] = sd2k.value();
                acc.cum_ydk[base + t + 1] = sydk.value();
            }
        }
    }
    return acc;
}

namespace {

void check_window(const ScanAccumulator& acc, std::size_t s, std::size_t u, std::size_t i) {
    if (s < 1 || u > acc.n || s > u)
        throw std::out_of_range("window [" + std::to_string(s) + "," + std::to_string(u) +
                                "] invalid for n=" + std::to_string(acc.n));
    if (i >= acc.grid.size())
        throw std::out_of_range("grid index out of range");
}

inline double window_sum(const ScanAccumulator& acc, const std::vector<double>& a, std::size_t s,
                         std::size_t u, std::size_t i) {
    return acc.at(a, i, u) - acc.at(a, i, s - 1);
}

} // namespace

std::optional<double> nw_estimate(const ScanAccumulator& acc, std::size_t s, std::size_t u,
                                  std::size_t i) {
    check_window(acc, s, u, i);
    const double den = window_sum(acc, acc.cum_k, s, u, i);
    if (den == 0.0)
        return std::nullopt;
    return window_sum(acc, acc.cum_yk, s, u, i) / den;
}

std::optional<double> ll_estimate(const ScanAccumulator& acc, std::size_t s, std::size_t u,
                                  std::size_t i) {
    check_window(acc, s, u, i);
    if (!acc.has_local_linear)
        throw ConfigError("ll_estimate: accumulator built without local-linear moments");
    const double s0 = window_sum(acc, acc.cum_k, s, u, i);
    if (s0 == 0.0)
        return std::nullopt;
    const double s1 = window_sum(acc, acc.cum_dk, s, u, i);
    const double s2 = window_sum(acc, acc.cum_d2k, s, u, i);
    const double t0 = window_sum(acc, acc.cum_yk, s, u, i);
    const double t1 = window_sum(acc, acc.cum_ydk, s, u, i);
    const double den = s2 * s0 - s1 * s1;
    // Singularity floor relative to the squared window kernel mass; a single
    // in-bandwidth observation lands here (den == 0 exactly).
    if (std::fabs(den) < 1e-12 * s0 * s0)
        return std::nullopt;
    return (s2 * t0 - s1 * t1) / den;
}

EvaluationGrid make_grid(const PairedSeries& series, std::size_t m, double lo_pct, double hi_pct) {
    if (m < 1)
        throw ConfigError("make_grid: m must be >= 1");
    if (!(lo_pct >= 0.0 && lo_pct < hi_pct && hi_pct <= 100.0))
        throw ConfigError("make_grid: need 0 <= lo_pct < hi_pct <= 100");
    const double lo = interpolated_percentile(series.x, lo_pct);
    const double hi = interpolated_percentile(series.x, hi_pct);
    if (!(hi > lo))
        throw ConfigError("make_grid: degenerate x-sample (percentile interval empty)");
    std::vector<double> pts;
    pts.reserve(m);
    if (m == 1) {
        pts.push_back(0.5 * (lo + hi));
    } else {
        const double step = (hi - lo) / static_cast<double>(m - 1);
        for (std::size_t j = 0; j < m; ++j)
            pts.push_back(j + 1 == m ? hi : lo + step * static_cast<double>(j));
    }
    return EvaluationGrid(std::move(pts));
}

} // namespace npchange
