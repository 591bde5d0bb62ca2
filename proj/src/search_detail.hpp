#pragma once

#include <chrono>
#include <cstdint>
#include <random>

#include "pbtd/search.hpp"

namespace pbtd::detail {

void validate_config(const SearchConfig& config, SearchEngine expected);

// Wall-clock budget plus cooperative stop flag.
class Budget {
public:
    explicit Budget(const SearchConfig& config)
        : stop_(config.stop), start_(std::chrono::steady_clock::now()) {
        if (config.time_budget_seconds)
            deadline_ = start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                     std::chrono::duration<double>(*config.time_budget_seconds));
    }

    bool expired() const {
        if (stop_ && stop_->load(std::memory_order_relaxed)) return true;
        return deadline_ && std::chrono::steady_clock::now() >= *deadline_;
    }

    double elapsed_seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    const std::atomic<bool>* stop_;
    std::chrono::steady_clock::time_point start_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

inline double rand_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace pbtd::detail
