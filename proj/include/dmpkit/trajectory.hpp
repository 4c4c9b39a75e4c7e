#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dmpkit/errors.hpp"

namespace dmpkit {

// Channel-major position block: positions[d][i] is DoF d at sample i.
using Channels = std::vector<std::vector<double>>;

struct Derivatives {
    std::vector<double> velocity;
    std::vector<double> acceleration;
};

// Finite-difference derivatives on a uniform grid: central differences in
// the interior, second-order one-sided stencils at the ends so endpoint
// accelerations do not pick up spurious first-order error.
inline Derivatives differentiate(std::span<const double> y, double dt)
{
    const std::size_t m = y.size();
    if (m < 3)
        throw std::invalid_argument("differentiate: need at least 3 samples");
    if (!(dt > 0.0))
        throw std::invalid_argument("differentiate: dt must be positive");

    Derivatives d;
    d.velocity.resize(m);
    d.acceleration.resize(m);
    const double dt2 = dt * dt;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        d.velocity[i] = (y[i + 1] - y[i - 1]) / (2.0 * dt);
        d.acceleration[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / dt2;
    }
    d.velocity[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dt);
    d.velocity[m - 1] = (3.0 * y[m - 1] - 4.0 * y[m - 2] + y[m - 3]) / (2.0 * dt);
    if (m >= 4) {
        d.acceleration[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) / dt2;
        d.acceleration[m - 1] =
            (2.0 * y[m - 1] - 5.0 * y[m - 2] + 4.0 * y[m - 3] - y[m - 4]) / dt2;
    } else {
        // with 3 samples the second difference is the only estimate available
        d.acceleration[0] = d.acceleration[1];
        d.acceleration[m - 1] = d.acceleration[1];
    }
    return d;
}

// A uniformly sampled multi-DoF position record with derived velocity and
// acceleration channels. Derivatives are regenerated, never stored stale:
// rebuilding them from positions reproduces the held values bitwise.
struct Demonstration {
    double dt = 0.0;
    std::vector<std::string> dof_names;
    Channels positions;      // [dof][sample]
    Channels velocities;     // derived; empty when sample_count() == 2
    Channels accelerations;

    std::size_t dof_count() const { return positions.size(); }
    std::size_t sample_count() const
    {
        return positions.empty() ? 0 : positions.front().size();
    }
    double duration() const
    {
        return static_cast<double>(sample_count() - 1) * dt;
    }
};

inline void refresh_derivatives(Demonstration& demo)
{
    demo.velocities.clear();
    demo.accelerations.clear();
    if (demo.sample_count() < 3)
        return;
    for (const auto& channel : demo.positions) {
        Derivatives d = differentiate(channel, demo.dt);
        demo.velocities.push_back(std::move(d.velocity));
        demo.accelerations.push_back(std::move(d.acceleration));
    }
}

// Validates shape invariants and populates derivatives.
inline Demonstration make_demonstration(double dt,
                                        std::vector<std::string> dof_names,
                                        Channels positions)
{
    if (!(dt > 0.0))
        throw DataError("demonstration: dt must be positive");
    if (positions.empty())
        throw DataError("demonstration: no DoF channels");
    const std::size_t m = positions.front().size();
    if (m < 2)
        throw DataError("demonstration: fewer than 2 samples");
    for (const auto& channel : positions)
        if (channel.size() != m)
            throw DataError("demonstration: channels differ in length");
    if (dof_names.size() != positions.size())
        throw DataError("demonstration: DoF name count mismatch");

    Demonstration demo;
    demo.dt = dt;
    demo.dof_names = std::move(dof_names);
    demo.positions = std::move(positions);
    refresh_derivatives(demo);
    return demo;
}

// Linear interpolation of one channel onto target_count uniform samples
// spanning the same index range.
inline std::vector<double> resample_channel(std::span<const double> y,
                                            std::size_t target_count)
{
    if (target_count < 2)
        throw std::invalid_argument("resample: need at least 2 samples");
    const std::size_t m = y.size();
    std::vector<double> out(target_count);
    const double scale =
        static_cast<double>(m - 1) / static_cast<double>(target_count - 1);
    for (std::size_t j = 0; j < target_count; ++j) {
        const double u = static_cast<double>(j) * scale;
        std::size_t i = static_cast<std::size_t>(u);
        if (i >= m - 1) {
            out[j] = y[m - 1];
            continue;
        }
        const double frac = u - static_cast<double>(i);
        out[j] = y[i] + frac * (y[i + 1] - y[i]);
    }
    return out;
}

// Resamples all channels onto target_count uniform samples over the same
// duration; dt is rescaled and derivatives recomputed.
inline Demonstration resample(const Demonstration& demo, std::size_t target_count)
{
    if (target_count < 2)
        throw std::invalid_argument("resample: need at least 2 samples");
    Channels positions;
    positions.reserve(demo.dof_count());
    for (const auto& channel : demo.positions)
        positions.push_back(resample_channel(channel, target_count));
    const double new_dt =
        demo.duration() / static_cast<double>(target_count - 1);
    return make_demonstration(new_dt, demo.dof_names, std::move(positions));
}

// Mean per-sample euclidean distance between two position blocks.
struct ErrorValue {
    double value = 0.0; // meters
};

inline ErrorValue euclidean_error(const Channels& a, const Channels& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("euclidean_error: DoF count mismatch");
    if (a.empty() || a.front().empty() || b.front().empty())
        throw std::invalid_argument("euclidean_error: empty trajectory");

    // unequal lengths: interpolate the shorter onto the longer's grid
    const std::size_t m = std::max(a.front().size(), b.front().size());
    auto at = [m](const std::vector<double>& channel, std::size_t i) {
        if (channel.size() == m)
            return channel[i];
        const double u = static_cast<double>(i) *
                         static_cast<double>(channel.size() - 1) /
                         static_cast<double>(m - 1);
        const std::size_t k =
            std::min(static_cast<std::size_t>(u), channel.size() - 2);
        return channel[k] + (u - static_cast<double>(k)) * (channel[k + 1] - channel[k]);
    };

    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double sq = 0.0;
        for (std::size_t d = 0; d < a.size(); ++d) {
            const double diff = at(a[d], i) - at(b[d], i);
            sq += diff * diff;
        }
        sum += std::sqrt(sq);
    }
    return ErrorValue{sum / static_cast<double>(m)};
}

// Diagonal of the axis-aligned bounding box of a position block; the error
// scale the accuracy studies are measured against.
inline double bounding_box_diagonal(const Channels& positions)
{
    double sq = 0.0;
    for (const auto& channel : positions) {
        const auto [lo, hi] = std::minmax_element(channel.begin(), channel.end());
        sq += (*hi - *lo) * (*hi - *lo);
    }
    return std::sqrt(sq);
}

} // namespace dmpkit
