#pragma once

#include <chrono>
#include <optional>
#include <stop_token>

namespace lattice_lab {

/// Cooperative cancellation: a wall-clock deadline and/or an external stop
/// request. Long-running solvers poll `requested()`; a default-constructed
/// signal never fires.
class CancelSignal {
public:
    using Clock = std::chrono::steady_clock;

    CancelSignal() = default;
    explicit CancelSignal(Clock::time_point deadline, std::stop_token stop = {})
        : deadline_(deadline), stop_(std::move(stop)) {}

    static CancelSignal after(std::chrono::duration<double> budget, std::stop_token stop = {})
    {
        return CancelSignal(Clock::now() + std::chrono::duration_cast<Clock::duration>(budget),
                            std::move(stop));
    }

    bool requested() const
    {
        if (stop_.stop_requested())
            return true;
        return deadline_ && Clock::now() >= *deadline_;
    }

private:
    std::optional<Clock::time_point> deadline_;
    std::stop_token stop_;
};

} // namespace lattice_lab
