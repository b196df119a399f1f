#include <doctest.h>

#include <algorithm>

#include <npchange/bandwidth.hpp>
#include <npchange/errors.hpp>

#include "test_support.hpp"

using namespace npchange;
using namespace testsupport;

namespace {

DetectionConfig tmpl() {
    DetectionConfig config;
    config.grid_params.m = 10;
    return config;
}

} // namespace

TEST_CASE("two candidates sit at range/4 and range/2") {
    std::mt19937_64 engine(3);
    const auto series = random_series(engine, 60);
    const auto [mn, mx] = std::minmax_element(series.x.begin(), series.x.end());
    const double range = *mx - *mn;
    const auto search = select_bandwidth(series, tmpl(), 2);
    REQUIRE(search.h_grid.size() == 2);
    CHECK(search.h_grid[0] == doctest::Approx(range / 4.0));
    CHECK(search.h_grid[1] == doctest::Approx(range / 2.0));
}

TEST_CASE("selection is deterministic and h_star lies on the grid") {
    std::mt19937_64 engine(5);
    const auto series = random_series(engine, 80);
    const auto a = select_bandwidth(series, tmpl(), 12);
    const auto b = select_bandwidth(series, tmpl(), 12);
    CHECK(a.h_star == b.h_star);
    CHECK(a.f_values == b.f_values);
    CHECK(std::find(a.h_grid.begin(), a.h_grid.end(), a.h_star) != a.h_grid.end());
    const auto it = std::max_element(a.f_values.begin(), a.f_values.end());
    CHECK(a.h_star == a.h_grid[static_cast<std::size_t>(it - a.f_values.begin())]);
    for (double f : a.f_values)
        CHECK(f >= 0.0);
}

TEST_CASE("reported F(h) matches independent recomputation") {
    std::mt19937_64 engine(7);
    const auto series = random_series(engine, 70);
    DetectionConfig config = tmpl();
    const auto search = select_bandwidth(series, config, 6);
    config.explicit_grid = resolve_grid(series, tmpl());
    for (std::size_t j = 0; j < search.h_grid.size(); ++j) {
        config.bandwidth = search.h_grid[j];
        const double f =
            argmax_change_point(cusum_profile(series, config)).max_stat * search.h_grid[j];
        CHECK(rel_err(f, search.f_values[j]) < 1e-9);
    }
}

TEST_CASE("degenerate x-range is rejected") {
    PairedSeries series({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0});
    CHECK_THROWS_AS(select_bandwidth(series, tmpl(), 4), ConfigError);
    std::mt19937_64 engine(9);
    const auto ok = random_series(engine, 40);
    CHECK_THROWS_AS(select_bandwidth(ok, tmpl(), 1), ConfigError);
}
