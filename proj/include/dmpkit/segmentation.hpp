#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmpkit/errors.hpp"
#include "dmpkit/generator.hpp"
#include "dmpkit/model.hpp"
#include "dmpkit/trajectory.hpp"

namespace dmpkit {

struct SegmentationConfig {
    double lift_velocity = 0.05;           // theta: m/s, vertical speed ending a stroke
    double plane_band = 0.005;             // sigma: m, half-width around the plane
    std::optional<double> plane_height;    // mu_z: m; unset = estimate from data
};

inline void validate(const SegmentationConfig& config)
{
    if (!(config.lift_velocity > 0.0))
        throw std::invalid_argument("segment: theta must be positive");
    if (!(config.plane_band > 0.0))
        throw std::invalid_argument("segment: sigma must be positive");
}

// A contiguous pen-down run: 2-D samples verbatim from the source plus the
// half-open [start_index, end_index) range they occupy in it.
struct Stroke {
    Demonstration samples;    // pen DoFs only (z dropped)
    std::size_t start_index = 0;
    std::size_t end_index = 0;
    bool pen_down = true;
};

struct SegmentationResult {
    std::vector<Stroke> strokes;
    std::size_t pen_up_runs = 0;
    double plane_height = 0.0;   // mu_z actually used
    double lift_velocity = 0.0;  // theta actually used
    double plane_band = 0.0;     // sigma actually used
};

namespace detail {

inline double median(std::vector<double> values)
{
    const std::size_t m = values.size();
    auto mid = values.begin() + static_cast<std::ptrdiff_t>(m / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (m % 2 == 1)
        return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(values.begin(), mid);
    return 0.5 * (lo + hi);
}

inline std::size_t z_channel_index(const Demonstration& demo)
{
    for (std::size_t d = 0; d < demo.dof_names.size(); ++d)
        if (demo.dof_names[d] == "z")
            return d;
    if (demo.dof_count() == 3)
        return 2;
    throw DataError("segment: demonstration has no z channel");
}

} // namespace detail

struct PlaneEstimate {
    double height = 0.0;          // mu_z
    double band_suggestion = 0.0; // 3 x MAD of z over low-velocity samples
};

// Writing-plane estimate: the height is the median of z (robust to lifts);
// the suggested band is 3x the median absolute deviation restricted to
// low-velocity samples, |dz/dt| <= 2 * median(|dz/dt|), so lift transients
// do not widen it. The suggestion is advisory: exactly planar data yields 0.
inline PlaneEstimate estimate_plane(const Demonstration& demo)
{
    const std::size_t zi = detail::z_channel_index(demo);
    if (demo.velocities.size() != demo.dof_count())
        throw DataError("estimate_plane: demonstration too short for derivatives");
    const auto& z = demo.positions[zi];
    const auto& vz = demo.velocities[zi];

    const double mu = detail::median(z);

    std::vector<double> speed(vz.size());
    for (std::size_t i = 0; i < vz.size(); ++i)
        speed[i] = std::abs(vz[i]);
    const double speed_cap = 2.0 * detail::median(speed);

    std::vector<double> deviations;
    deviations.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        if (speed[i] <= speed_cap)
            deviations.push_back(std::abs(z[i] - mu));
    if (deviations.empty())
        for (double value : z)
            deviations.push_back(std::abs(value - mu));
    return PlaneEstimate{mu, 3.0 * detail::median(std::move(deviations))};
}

// Splits a 3-D demonstration into pen-down strokes. A sample is pen-down iff
// it sits inside the plane band AND its vertical velocity does not exceed
// theta (a lift or fast vertical motion ends the stroke). Maximal pen-down
// runs of at least 3 samples become strokes; shorter runs and pen-up runs
// are dropped from the output, the latter counted in the result.
inline SegmentationResult segment(const Demonstration& demo,
                                  const SegmentationConfig& config = {})
{
    validate(config);
    const std::size_t zi = detail::z_channel_index(demo);
    if (demo.velocities.size() != demo.dof_count())
        throw DataError("segment: demonstration too short for derivatives");

    const double mu = config.plane_height ? *config.plane_height
                                          : estimate_plane(demo).height;
    const auto& z = demo.positions[zi];
    const auto& vz = demo.velocities[zi];
    const std::size_t m = demo.sample_count();

    std::vector<char> pen_down(m);
    for (std::size_t i = 0; i < m; ++i)
        pen_down[i] = std::abs(z[i] - mu) < config.plane_band &&
                      vz[i] <= config.lift_velocity;

    std::vector<std::string> pen_names;
    std::vector<std::size_t> pen_channels;
    for (std::size_t d = 0; d < demo.dof_count(); ++d) {
        if (d == zi)
            continue;
        pen_names.push_back(demo.dof_names[d]);
        pen_channels.push_back(d);
    }

    SegmentationResult result;
    result.plane_height = mu;
    result.lift_velocity = config.lift_velocity;
    result.plane_band = config.plane_band;

    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j < m && pen_down[j] == pen_down[i])
            ++j;
        if (!pen_down[i]) {
            ++result.pen_up_runs;
        } else if (j - i >= 3) {
            Channels positions;
            for (std::size_t d : pen_channels)
                positions.emplace_back(demo.positions[d].begin() +
                                           static_cast<std::ptrdiff_t>(i),
                                       demo.positions[d].begin() +
                                           static_cast<std::ptrdiff_t>(j));
            Stroke stroke;
            stroke.samples =
                make_demonstration(demo.dt, pen_names, std::move(positions));
            stroke.start_index = i;
            stroke.end_index = j;
            result.strokes.push_back(std::move(stroke));
        }
        i = j;
    }
    return result;
}

inline nlohmann::json manifest_json(const SegmentationResult& result)
{
    nlohmann::json doc;
    doc["mu_z"] = result.plane_height;
    doc["theta"] = result.lift_velocity;
    doc["sigma"] = result.plane_band;
    doc["strokes"] = nlohmann::json::array();
    for (const auto& stroke : result.strokes)
        doc["strokes"].push_back({
            {"start_index", stroke.start_index},
            {"end_index", stroke.end_index},
        });
    return doc;
}

struct StrokeOverride {
    std::optional<std::vector<double>> start;
    std::optional<std::vector<double>> goal;
};

struct ComposeOptions {
    // settle time per stroke: lets the attractor finish the last millimeter
    // of an overridden goal before the pen moves on
    double settle = 0.5;
};

struct ComposedLetter {
    std::vector<RolloutResult> strokes;
    // pen_up_gaps[k][d]: displacement from stroke k's terminal position to
    // stroke k+1's start; no pen-up path is synthesized
    Channels pen_up_gaps;
    std::vector<std::uint32_t> original_formulation_strokes;
};

// Rolls out each stroke model with its override, in order. Strokes fitted
// with the Original formulation are permitted but reported, since their
// goal handling is the failure mode the goal-robust form exists to fix.
inline ComposedLetter compose(std::span<const DmpModel> models,
                              std::span<const StrokeOverride> overrides,
                              const ComposeOptions& options = {})
{
    if (overrides.size() != models.size())
        throw std::invalid_argument("compose: one override entry per stroke required");
    if (!(options.settle >= 0.0))
        throw std::invalid_argument("compose: settle must be non-negative");

    ComposedLetter letter;
    for (std::size_t k = 0; k < models.size(); ++k) {
        if (models[k].params.formulation == Formulation::Original)
            letter.original_formulation_strokes.push_back(
                static_cast<std::uint32_t>(k));
        RolloutOptions rollout_options;
        rollout_options.start = overrides[k].start;
        rollout_options.goal = overrides[k].goal;
        rollout_options.settle = options.settle;
        letter.strokes.push_back(rollout(models[k], rollout_options));
    }
    for (std::size_t k = 0; k + 1 < letter.strokes.size(); ++k) {
        const auto& prev = letter.strokes[k].positions;
        const auto& next = letter.strokes[k + 1].positions;
        if (prev.size() != next.size())
            throw std::invalid_argument("compose: stroke DoF counts differ");
        std::vector<double> gap(prev.size());
        for (std::size_t d = 0; d < prev.size(); ++d)
            gap[d] = next[d].front() - prev[d].back();
        letter.pen_up_gaps.push_back(std::move(gap));
    }
    return letter;
}

} // namespace dmpkit
