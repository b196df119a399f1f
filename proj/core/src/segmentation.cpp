#include <npchange/segmentation.hpp>

#include <algorithm>

#include <npchange/bandwidth.hpp>
#include <npchange/errors.hpp>
#include <npchange/rng.hpp>

namespace npchange {

std::string to_string(SegmentStop stop) {
    switch (stop) {
    case SegmentStop::Detected:
        return "detected";
    case SegmentStop::BelowThreshold:
        return "below_threshold";
    case SegmentStop::TooShort:
        return "too_short";
    }
    return "?";
}

namespace {

bool scan_feasible(std::size_t len, double trim_fraction) {
    if (len < 4)
        return false;
    const std::size_t trim = effective_trim(len, trim_fraction);
    return len >= 2 * trim;
}

struct Segmenter {
    const PairedSeries& series;
    const DetectionConfig& config;
    const PermutationPolicy& policy;
    const SegmentationOptions& options;
    SegmentationResult result;

    void run(std::size_t start, std::size_t end, std::size_t depth) {
        result.tree_depth = std::max(result.tree_depth, depth);
        const std::size_t len = end - start + 1;
        SegmentRecord record;
        record.start = start;
        record.end = end;

        if (len < options.min_segment || !scan_feasible(len, config.trim_fraction)) {
            record.stop = SegmentStop::TooShort;
            result.segments.push_back(record);
            result.nodes.push_back(record);
            return;
        }

        const PairedSeries sub = subseries(series, start, end);
        DetectionConfig local = config;
        local.explicit_grid.reset(); // grid rebuilt from the subsample
        if (options.rebandwidth_per_segment)
            local.bandwidth =
                select_bandwidth(sub, local, options.bandwidth_candidates).h_star;
        PermutationPolicy local_policy = policy;
        local_policy.rng_seed = derive_seed(policy.rng_seed, start, end);

        const DetectionOutcome outcome = detect(sub, local, local_policy);
        record.max_stat = outcome.max_stat;
        record.threshold = outcome.threshold;
        record.detected = outcome.change_detected;
        if (!outcome.change_detected) {
            record.stop = SegmentStop::BelowThreshold;
            result.segments.push_back(record);
            result.nodes.push_back(record);
            return;
        }

        const std::size_t global_k = start - 1 + *outcome.k_hat;
        record.k_hat = global_k;
        record.stop = SegmentStop::Detected;
        result.nodes.push_back(record);
        result.change_points.push_back(global_k);
        run(start, global_k, depth + 1);
        run(global_k + 1, end, depth + 1);
    }
};

} // namespace

SegmentationResult binary_segmentation(const PairedSeries& series, const DetectionConfig& config,
                                       const PermutationPolicy& policy,
                                       const SegmentationOptions& options) {
    config.validate();
    policy.validate();
    Segmenter seg{series, config, policy, options, {}};
    seg.run(1, series.size(), 1);
    std::sort(seg.result.change_points.begin(), seg.result.change_points.end());
    auto by_bounds = [](const SegmentRecord& a, const SegmentRecord& b) {
        return a.start != b.start ? a.start < b.start : a.end < b.end;
    };
    std::sort(seg.result.segments.begin(), seg.result.segments.end(), by_bounds);
    std::sort(seg.result.nodes.begin(), seg.result.nodes.end(), by_bounds);
    return seg.result;
}

} // namespace npchange
