#include "qecco/optim/harness.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qecco {

HarnessResult multi_restart(const std::function<TrainRun(std::uint64_t)>& job, std::size_t runs,
                            std::uint64_t base_seed, std::size_t workers) {
    if (runs < 1) throw std::invalid_argument("need at least one run");
    if (workers == 0) {
        workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, runs);

    HarnessResult result;
    result.runs.resize(runs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= runs) return;
            try {
                result.runs[idx] = job(base_seed + idx);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& run : result.runs) result.success_count += run.success ? 1 : 0;
    return result;
}

}  // namespace qecco
