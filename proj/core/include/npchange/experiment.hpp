#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <npchange/cusum.hpp>
#include <npchange/dgp.hpp>
#include <npchange/threshold.hpp>

namespace npchange {

/// Method labels crossing estimator with aggregation.
enum class Method { nwss, nwsup, llss, llsup };

Method method_from_string(const std::string& name);
std::string to_string(Method method);
Estimator method_estimator(Method method);
Aggregation method_aggregation(Method method);

struct ExperimentSpec {
    ProcessKind regressor_process{Arma11{}};
    std::size_t regressor_burn_in = 500;
    ProcessKind noise_process{Arma11{0.0, 0.0, 0.5}};
    std::size_t noise_burn_in = 500;
    ChangeModelSpec model{};
    std::size_t n = 500;
    Method method = Method::nwss;
    DetectionConfig detection{};
    std::optional<PermutationPolicy> policy; // nullopt: no-threshold (bias) mode
    std::size_t replications = 200;
    std::uint64_t master_seed = 0;

    void validate() const;
};

struct ExperimentReport {
    double bias = 0.0;
    double abias = 0.0;
    double bias_sd = 0.0;
    double abias_sd = 0.0;
    double pdc = 0.0; // NaN in bias mode
    std::size_t replications = 0;
    std::size_t true_k = 0;
    std::vector<double> khat_deviation; // k_hat - k per (detected) replication
};

/// One simulated sample for replication rep: the regressor and noise
/// processes draw from independent streams derived from the master seed.
PairedSeries simulate_replication(const ExperimentSpec& spec, std::size_t rep);

/// Unconditional-argmax protocol: no threshold, k_hat taken from the profile
/// argmax on every replication.
ExperimentReport run_bias_experiment(const ExperimentSpec& spec);

/// Threshold protocol: pdc = fraction of replications with
/// max_t W(t) > threshold; deviations recorded only for detected ones.
ExperimentReport run_pdc_experiment(const ExperimentSpec& spec);

struct ScalingPoint {
    std::size_t n = 0;
    double mean_max_stat = 0.0;
    double ratio = 0.0; // mean max stat / (log^4 n / (n h)), h = n^{-omega}
};

/// No-change scan-maximum scaling across sample sizes with h = n^{-omega}.
/// Under stability the ratio sequence stays bounded in n.
std::vector<ScalingPoint> scaling_probe(const std::vector<std::size_t>& n_values,
                                                const ExperimentSpec& spec_template,
                                                double omega = 0.2);

} // namespace npchange
