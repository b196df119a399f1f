#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <npchange/threshold.hpp>

namespace npchange {

/// Why a branch of the recursion stopped.
enum class SegmentStop { Detected, BelowThreshold, TooShort };

struct SegmentRecord {
    std::size_t start = 0; // global 1-based, inclusive
    std::size_t end = 0;
    double max_stat = 0.0;
    double threshold = 0.0;
    bool detected = false;
    std::optional<std::size_t> k_hat; // global index, present iff detected
    SegmentStop stop = SegmentStop::TooShort;
};

struct SegmentationResult {
    std::vector<std::size_t> change_points; // sorted global indices
    std::vector<SegmentRecord> segments;    // leaves; partition [1, n] by start
    std::vector<SegmentRecord> nodes;       // every segment visited, incl. splits
    std::size_t tree_depth = 0;
};

struct SegmentationOptions {
    std::size_t min_segment = 50;
    bool rebandwidth_per_segment = false;
    std::size_t bandwidth_candidates = 50;
};

/// Binary segmentation: detect on the segment; on detection record the
/// global change index and recurse on [start, k] and [k+1, end]. A branch
/// stops when its length drops below min_segment or detection fails. The
/// permutation threshold is recomputed per segment, and each segment draws
/// from a seed derived from (policy seed, segment bounds) so results do not
/// depend on traversal order.
SegmentationResult binary_segmentation(const PairedSeries& series, const DetectionConfig& config,
                                       const PermutationPolicy& policy,
                                       const SegmentationOptions& options = {});

std::string to_string(SegmentStop stop);

} // namespace npchange
