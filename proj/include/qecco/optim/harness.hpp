#pragma once

#include <functional>

#include "qecco/optim/train.hpp"

namespace qecco {

struct HarnessResult {
    std::vector<TrainRun> runs;
    std::size_t success_count = 0;

    double success_percentage() const {
        return runs.empty() ? 0.0
                            : 100.0 * static_cast<double>(success_count) /
                                  static_cast<double>(runs.size());
    }
};

/// Independent seeded runs (seed = base_seed + index) distributed over a
/// worker pool. All runs complete; aggregation is index-ordered so the result
/// is deterministic for a fixed base seed.
HarnessResult multi_restart(const std::function<TrainRun(std::uint64_t)>& job, std::size_t runs,
                            std::uint64_t base_seed, std::size_t workers = 0);

}  // namespace qecco
