#include <npchange/experiment.hpp>

#include <cmath>
#include <limits>

#include <npchange/errors.hpp>
#include <npchange/kahan.hpp>
#include <npchange/parallel.hpp>
#include <npchange/rng.hpp>

namespace npchange {

Method method_from_string(const std::string& name) {
    if (name == "nwss")
        return Method::nwss;
    if (name == "nwsup")
        return Method::nwsup;
    if (name == "llss")
        return Method::llss;
    if (name == "llsup")
        return Method::llsup;
    throw ConfigError("unknown method: " + name);
}

std::string to_string(Method method) {
    switch (method) {
    case Method::nwss:
        return "nwss";
    case Method::nwsup:
        return "nwsup";
    case Method::llss:
        return "llss";
    case Method::llsup:
        return "llsup";
    }
    return "?";
}

Estimator method_estimator(Method method) {
    return (method == Method::llss || method == Method::llsup) ? Estimator::LocalLinear
                                                               : Estimator::NadarayaWatson;
}

Aggregation method_aggregation(Method method) {
    return (method == Method::nwss || method == Method::llss) ? Aggregation::SumOfSquares
                                                              : Aggregation::Supremum;
}

void ExperimentSpec::validate() const {
    if (replications < 1)
        throw ConfigError("ExperimentSpec: replications must be >= 1");
    if (n < 2)
        throw ConfigError("ExperimentSpec: n must be >= 2");
    detection.validate();
    if (policy)
        policy->validate();
}

PairedSeries simulate_replication(const ExperimentSpec& spec, std::size_t rep) {
    DgpSpec xs{spec.regressor_process, spec.n, spec.regressor_burn_in,
               derive_seed(spec.master_seed, stream::regressor, rep)};
    DgpSpec es{spec.noise_process, spec.n, spec.noise_burn_in,
               derive_seed(spec.master_seed, stream::noise, rep)};
    return apply_change_model(generate(xs), generate(es), spec.model);
}

namespace {

DetectionConfig method_config(const ExperimentSpec& spec) {
    DetectionConfig config = spec.detection;
    config.estimator = method_estimator(spec.method);
    config.aggregation = method_aggregation(spec.method);
    return config;
}

ExperimentReport summarize(std::vector<double> deviations, std::size_t replications,
                           std::size_t true_k, double pdc) {
    ExperimentReport report;
    report.replications = replications;
    report.true_k = true_k;
    report.pdc = pdc;
    const std::size_t count = deviations.size();
    if (count == 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        report.bias = report.abias = report.bias_sd = report.abias_sd = nan;
        return report;
    }
    KahanSum sum, abs_sum;
    for (double d : deviations) {
        sum.add(d);
        abs_sum.add(std::fabs(d));
    }
    report.bias = sum.value() / static_cast<double>(count);
    report.abias = abs_sum.value() / static_cast<double>(count);
    if (count > 1) {
        KahanSum var, abs_var;
        for (double d : deviations) {
            var.add((d - report.bias) * (d - report.bias));
            abs_var.add((std::fabs(d) - report.abias) * (std::fabs(d) - report.abias));
        }
        report.bias_sd = std::sqrt(var.value() / static_cast<double>(count - 1));
        report.abias_sd = std::sqrt(abs_var.value() / static_cast<double>(count - 1));
    } else {
        report.bias_sd = report.abias_sd = 0.0;
    }
    report.khat_deviation = std::move(deviations);
    return report;
}

} // namespace

ExperimentReport run_bias_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const DetectionConfig config = method_config(spec);
    const std::size_t k = change_index(spec.n, spec.model.theta);
    std::vector<double> deviations(spec.replications);
    parallel_for(spec.replications, [&](std::size_t rep) {
        const PairedSeries series = simulate_replication(spec, rep);
        const auto est = argmax_change_point(cusum_profile(series, config));
        deviations[rep] = static_cast<double>(est.k_hat) - static_cast<double>(k);
    });
    return summarize(std::move(deviations), spec.replications, k,
                     std::numeric_limits<double>::quiet_NaN());
}

ExperimentReport run_pdc_experiment(const ExperimentSpec& spec) {
    spec.validate();
    if (!spec.policy)
        throw ConfigError("run_pdc_experiment: permutation policy required");
    const DetectionConfig config = method_config(spec);
    const std::size_t k = change_index(spec.n, spec.model.theta);
    std::vector<std::optional<double>> detected(spec.replications);
    parallel_for(spec.replications, [&](std::size_t rep) {
        const PairedSeries series = simulate_replication(spec, rep);
        PermutationPolicy policy = *spec.policy;
        policy.rng_seed = derive_seed(spec.master_seed, stream::permutation, rep);
        const DetectionOutcome outcome = detect(series, config, policy);
        if (outcome.change_detected)
            detected[rep] = static_cast<double>(*outcome.k_hat) - static_cast<double>(k);
    });
    std::vector<double> deviations;
    for (const auto& d : detected)
        if (d)
            deviations.push_back(*d);
    const double pdc =
        static_cast<double>(deviations.size()) / static_cast<double>(spec.replications);
    return summarize(std::move(deviations), spec.replications, k, pdc);
}

std::vector<ScalingPoint> scaling_probe(const std::vector<std::size_t>& n_values,
                                                const ExperimentSpec& spec_template,
                                                double omega) {
    std::vector<ScalingPoint> points;
    points.reserve(n_values.size());
    for (std::size_t n : n_values) {
        ExperimentSpec spec = spec_template;
        spec.n = n;
        spec.detection.bandwidth = std::pow(static_cast<double>(n), -omega);
        spec.validate();
        const DetectionConfig config = method_config(spec);
        std::vector<double> maxima(spec.replications);
        parallel_for(spec.replications, [&](std::size_t rep) {
            const PairedSeries series = simulate_replication(spec, rep);
            maxima[rep] = argmax_change_point(cusum_profile(series, config)).max_stat;
        });
        KahanSum sum;
        for (double v : maxima)
            sum.add(v);
        const double mean = sum.value() / static_cast<double>(spec.replications);
        const double logn = std::log(static_cast<double>(n));
        const double normalizer =
            logn * logn * logn * logn / (static_cast<double>(n) * spec.detection.bandwidth);
        points.push_back(ScalingPoint{n, mean, mean / normalizer});
    }
    return points;
}

} // namespace npchange
