#ifndef DELSUB_BUDGET_HPP
#define DELSUB_BUDGET_HPP

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace delsub {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(uint64_t limit)
        : std::runtime_error("instance too large: enumeration budget of " + std::to_string(limit) +
                             " ball-membership evaluations exceeded") {}
};

// Counts work in units of one candidate word generated or tested.
// Exhaustive operations charge it and fail hard instead of truncating.
class Budget {
public:
    static constexpr uint64_t kDefaultLimit = 1ull << 26;

    explicit Budget(uint64_t limit = kDefaultLimit) : limit_(limit) {}
    Budget(const Budget&) = delete;
    Budget& operator=(const Budget&) = delete;

    void charge(uint64_t units) {
        if (used_.fetch_add(units, std::memory_order_relaxed) + units > limit_)
            throw BudgetExceeded(limit_);
    }
    uint64_t used() const { return used_.load(std::memory_order_relaxed); }
    uint64_t limit() const { return limit_; }

private:
    uint64_t limit_;
    std::atomic<uint64_t> used_{0};
};

}  // namespace delsub

#endif
