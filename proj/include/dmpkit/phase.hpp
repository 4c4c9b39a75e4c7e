#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dmpkit {

enum class PhaseKind { Exponential, Linear };

// Canonical system driving the forcing term: x decays from x0 toward 0.
// Exponential: x(t) = x0 * exp(-alpha_x * t).
// Linear: x(t) = max(0, x0 * (1 - t/T)), a true ramp hitting 0 at t = T.
struct PhaseConfig {
    PhaseKind kind = PhaseKind::Linear;
    double alpha_x = 1.0;   // exponential rate, used iff Exponential
    double total_time = 1.0; // ramp duration T, used iff Linear
    double x0 = 1.0;
};

inline void validate(const PhaseConfig& config)
{
    if (config.kind == PhaseKind::Exponential && !(config.alpha_x > 0.0))
        throw std::invalid_argument("phase: alpha_x must be positive");
    if (config.kind == PhaseKind::Linear && !(config.total_time > 0.0))
        throw std::invalid_argument("phase: total_time must be positive");
    if (!(config.x0 > 0.0) || config.x0 > 1.0)
        throw std::invalid_argument("phase: x0 must be in (0, 1]");
}

// Closed-form phase value at time t; no integration, hence no drift.
inline double phase_at(const PhaseConfig& config, double t)
{
    if (config.kind == PhaseKind::Exponential)
        return config.x0 * std::exp(-config.alpha_x * t);
    const double x = config.x0 * (1.0 - t / config.total_time);
    return x > 0.0 ? x : 0.0;
}

// Number of samples on [0, duration] with step dt. The small nudge keeps
// the count at its real-arithmetic value when duration/dt sits a few ulp
// below an integer (duration is typically (M-1)*dt recomputed in doubles).
inline std::size_t sample_count_for(double duration, double dt)
{
    return static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
}

// Phase values at t = 0, dt, 2*dt, ... covering [0, duration].
inline std::vector<double> phase_sequence(const PhaseConfig& config,
                                          double duration, double dt)
{
    validate(config);
    if (!(duration > 0.0))
        throw std::invalid_argument("phase: duration must be positive");
    if (!(dt > 0.0))
        throw std::invalid_argument("phase: dt must be positive");
    if (dt > duration)
        throw std::invalid_argument("phase: dt must not exceed duration");

    const std::size_t count = sample_count_for(duration, dt);
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i)
        xs[i] = phase_at(config, static_cast<double>(i) * dt);
    return xs;
}

} // namespace dmpkit
