#include <doctest.h>

#include <cmath>
#include <numeric>

#include <npchange/dgp.hpp>
#include <npchange/errors.hpp>

using namespace npchange;

namespace {

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

double autocorr(const std::vector<double>& v, std::size_t lag) {
    const double m = mean(v);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + lag < v.size(); ++i)
        num += (v[i] - m) * (v[i + lag] - m);
    for (double x : v)
        den += (x - m) * (x - m);
    return num / den;
}

} // namespace

TEST_CASE("arma with zero coefficients is white noise") {
    const auto x = gen_arma11(arma_spec(0.0, 0.0, 1.0, 100000, 5));
    CHECK(std::fabs(autocorr(x, 1)) < 0.01);
    CHECK(std::fabs(mean(x)) < 0.02);
}

TEST_CASE("arma(0.5, 0.5) with innovation variance 3/7 has unit variance") {
    const auto x = gen_arma11(arma_spec(0.5, 0.5, std::sqrt(3.0 / 7.0), 1000000, 7));
    CHECK(std::fabs(variance(x) - 1.0) < 0.02);
    CHECK(std::fabs(mean(x)) < 3.0 / 1000.0); // 3 sd of the sample mean
}

TEST_CASE("arma generation is deterministic in the seed") {
    const auto spec = arma_spec(0.5, 0.5, 1.0, 500, 11);
    CHECK(gen_arma11(spec) == gen_arma11(spec));
}

TEST_CASE("non-stationary ar coefficient is rejected") {
    CHECK_THROWS_AS(gen_arma11(arma_spec(1.0, 0.5, 1.0, 100, 1)), ConfigError);
    CHECK_THROWS_AS(gen_arma11(arma_spec(-1.2, 0.0, 1.0, 100, 1)), ConfigError);
}

TEST_CASE("arfima d=0 is bit-identical to the white-noise path") {
    const auto a = gen_arfima0d0(arfima_spec(0.0, 1.3, 2000, 17));
    const auto b = gen_arma11(DgpSpec{Arma11{0.0, 0.0, 1.3}, 2000, 1000, 17});
    CHECK(a == b);
}

TEST_CASE("arfima |d| >= 0.5 is rejected") {
    CHECK_THROWS_AS(gen_arfima0d0(arfima_spec(0.5, 1.0, 100, 1)), ConfigError);
    CHECK_THROWS_AS(gen_arfima0d0(arfima_spec(-0.6, 1.0, 100, 1)), ConfigError);
}

TEST_CASE("arfima determinism") {
    const auto spec = arfima_spec(0.15, 1.0, 300, 23);
    CHECK(gen_arfima0d0(spec) == gen_arfima0d0(spec));
}

TEST_CASE("arfima d=0.15 with the matched innovation variance is close to unit variance") {
    const double sd = std::sqrt(std::tgamma(0.85) * std::tgamma(0.85) / std::tgamma(0.7));
    const auto x = gen_arfima0d0(arfima_spec(0.15, sd, 200000, 29));
    CHECK(std::fabs(variance(x) - 1.0) < 0.05);
}

TEST_CASE("change model m41: direct formula at n=2") {
    const auto series = apply_change_model({1.0, 2.0}, {0.0, 0.0},
                                           ChangeModelSpec{ChangeModel::LinearToQuadratic, 0.5});
    CHECK(series.y[0] == doctest::Approx(2.0)); // 1 + x
    CHECK(series.y[1] == doctest::Approx(4.0)); // x^2
}

TEST_CASE("change model m42 with delta=0.5 on constant inputs") {
    const auto series = apply_change_model(
        {1.0, 1.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0},
        ChangeModelSpec{ChangeModel::QuadraticShift, 0.5, 0.5});
    CHECK(series.y == std::vector<double>{1.0, 1.0, 2.25, 2.25});
}

TEST_CASE("m42 with delta=0 equals the no-change quadratic model") {
    std::vector<double> x{0.5, -1.0, 2.0, 0.0}, eps{0.1, -0.2, 0.0, 0.3};
    const auto changed =
        apply_change_model(x, eps, ChangeModelSpec{ChangeModel::QuadraticShift, 0.5, 0.0});
    for (std::size_t t = 0; t < x.size(); ++t)
        CHECK(changed.y[t] == x[t] * x[t] + eps[t]);
}

TEST_CASE("the change touches only indices past k") {
    std::vector<double> x(10, 1.0), eps(10, 0.0);
    const auto base =
        apply_change_model(x, eps, ChangeModelSpec{ChangeModel::QuadraticShift, 0.9, 0.7});
    const std::size_t k = change_index(10, 0.9);
    for (std::size_t t = 0; t < k; ++t)
        CHECK(base.y[t] == 1.0);
    for (std::size_t t = k; t < 10; ++t)
        CHECK(base.y[t] == doctest::Approx(1.7 * 1.7));
}

TEST_CASE("mismatched lengths are rejected") {
    CHECK_THROWS_AS(apply_change_model({1.0, 2.0}, {0.0},
                                       ChangeModelSpec{ChangeModel::QuadraticShift, 0.5}),
                    ConfigError);
}
