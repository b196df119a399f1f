#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include <npchange/errors.hpp>

namespace npchange {

/// The observed sample {(X_t, Y_t)}, t = 1..n. Immutable after construction.
struct PairedSeries {
    std::vector<double> x;
    std::vector<double> y;

    PairedSeries(std::vector<double> xs, std::vector<double> ys)
        : x(std::move(xs)), y(std::move(ys)) {
        if (x.size() != y.size())
            throw ConfigError("PairedSeries: x and y lengths differ");
        if (x.size() < 2)
            throw ConfigError("PairedSeries: need at least 2 observations");
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
                throw ConfigError("PairedSeries: non-finite value at row " + std::to_string(i + 1));
        }
    }

    std::size_t size() const { return x.size(); }
};

inline PairedSeries reverse_series(const PairedSeries& s) {
    std::vector<double> rx(s.x.rbegin(), s.x.rend());
    std::vector<double> ry(s.y.rbegin(), s.y.rend());
    return PairedSeries(std::move(rx), std::move(ry));
}

/// Contiguous subsample [first, last], 1-based inclusive.
inline PairedSeries subseries(const PairedSeries& s, std::size_t first, std::size_t last) {
    if (first < 1 || last > s.size() || first > last)
        throw ConfigError("subseries: invalid bounds");
    std::vector<double> sx(s.x.begin() + first - 1, s.x.begin() + last);
    std::vector<double> sy(s.y.begin() + first - 1, s.y.begin() + last);
    return PairedSeries(std::move(sx), std::move(sy));
}

/// Sorted evaluation points x_1 < ... < x_m.
struct EvaluationGrid {
    std::vector<double> points;

    explicit EvaluationGrid(std::vector<double> pts) : points(std::move(pts)) {
        if (points.empty())
            throw ConfigError("EvaluationGrid: empty");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!std::isfinite(points[i]))
                throw ConfigError("EvaluationGrid: non-finite point");
            if (i > 0 && points[i] <= points[i - 1])
                throw ConfigError("EvaluationGrid: points not strictly increasing");
        }
    }

    std::size_t size() const { return points.size(); }
};

/// Linear-interpolation sample quantile, p in [0, 100].
inline double interpolated_percentile(std::vector<double> v, double p) {
    if (v.empty())
        throw ConfigError("percentile of empty sample");
    std::sort(v.begin(), v.end());
    double pos = (static_cast<double>(v.size()) - 1.0) * p / 100.0;
    auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= v.size())
        return v.back();
    double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

} // namespace npchange
