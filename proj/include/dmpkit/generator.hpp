#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmpkit/errors.hpp"
#include "dmpkit/kernels.hpp"
#include "dmpkit/learner.hpp"
#include "dmpkit/model.hpp"
#include "dmpkit/phase.hpp"
#include "dmpkit/trajectory.hpp"

namespace dmpkit {

// Rollout state beyond this is treated as divergence. Near-degenerate goals
// under Original legitimately explode; they must fail loudly, not hang.
inline constexpr double kDivergenceLimit = 1e6;

struct RolloutOptions {
    std::optional<std::vector<double>> start; // per-DoF override, meters
    std::optional<std::vector<double>> goal;
    std::optional<double> dt;        // default: model's
    std::optional<double> duration;  // default: model's
    double settle = 0.0;             // extra seconds after duration
    std::optional<std::vector<double>> initial_velocity; // default: rest
};

struct RolloutResult {
    double dt = 0.0;
    std::vector<std::string> dof_names;
    Channels positions;
    Channels velocities;
    Channels accelerations;
    // DoFs rolled out under Original with |goal - start| < 1e-8: the
    // documented stay-at-start failure, permitted but worth surfacing.
    std::vector<std::uint32_t> degenerate_dofs;
};

namespace detail {

inline void check_override(const std::optional<std::vector<double>>& v,
                           std::size_t dofs, const char* what)
{
    if (v && v->size() != dofs)
        throw std::invalid_argument(std::string("rollout: ") + what +
                                    " override size differs from DoF count");
}

} // namespace detail

// Explicit Euler integration of the transformation system:
//   acc_t   = f(y_t, yd_t, x_t)
//   yd_t+1  = yd_t + acc_t * dt
//   y_t+1   = y_t + yd_t * dt
// starting from (start, 0) unless an initial velocity is supplied. The phase
// comes from the model's canonical system in closed form.
inline RolloutResult rollout(const DmpModel& model, const RolloutOptions& options = {})
{
    validate(model);
    const std::size_t dofs = model.dofs.size();
    detail::check_override(options.start, dofs, "start");
    detail::check_override(options.goal, dofs, "goal");
    detail::check_override(options.initial_velocity, dofs, "initial velocity");

    const double dt = options.dt.value_or(model.dt);
    const double duration = options.duration.value_or(model.duration);
    if (!(dt > 0.0) || !(duration > 0.0))
        throw std::invalid_argument("rollout: dt and duration must be positive");
    if (!(options.settle >= 0.0))
        throw std::invalid_argument("rollout: settle must be non-negative");

    const std::size_t count = sample_count_for(duration + options.settle, dt);

    RolloutResult result;
    result.dt = dt;
    result.dof_names = model.dof_names;
    result.positions.assign(dofs, std::vector<double>(count));
    result.velocities.assign(dofs, std::vector<double>(count));
    result.accelerations.assign(dofs, std::vector<double>(count));

    for (std::size_t d = 0; d < dofs; ++d) {
        const DofModel& dof = model.dofs[d];
        const double start = options.start ? (*options.start)[d] : dof.start;
        const double goal = options.goal ? (*options.goal)[d] : dof.goal;
        if (model.params.formulation == Formulation::Original &&
            std::abs(goal - start) < kDegenerateGoalSpan)
            result.degenerate_dofs.push_back(static_cast<std::uint32_t>(d));

        double y = start;
        double yd = options.initial_velocity ? (*options.initial_velocity)[d] : 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double x = phase_at(model.phase, static_cast<double>(i) * dt);
            const double f = forcing_value(model.bank, dof.weights, x);
            const double acc = transformation_acceleration(model.params, y, yd,
                                                           start, goal, x, f);
            if (!std::isfinite(y) || std::abs(y) > kDivergenceLimit)
                throw IntegrationError(
                    "rollout diverged at DoF '" + model.dof_names[d] +
                    "', step " + std::to_string(i));
            result.positions[d][i] = y;
            result.velocities[d][i] = yd;
            result.accelerations[d][i] = acc;
            const double yd_next = yd + acc * dt;
            y += yd * dt;
            yd = yd_next;
        }
    }
    return result;
}

// The formulation's acceleration at t = 0 (x = x0, y = start, rest) without
// integrating. Under GoalRobust the goal cancels out exactly at x0 = 1:
// this is the no-jump property that motivates the reformulation.
inline std::vector<double> initial_acceleration(const DmpModel& model,
                                                const std::vector<double>& start,
                                                const std::vector<double>& goal)
{
    validate(model);
    if (start.size() != model.dofs.size() || goal.size() != model.dofs.size())
        throw std::invalid_argument("initial_acceleration: endpoint size mismatch");
    std::vector<double> acc(model.dofs.size());
    for (std::size_t d = 0; d < model.dofs.size(); ++d) {
        const double f =
            forcing_value(model.bank, model.dofs[d].weights, model.phase.x0);
        acc[d] = transformation_acceleration(model.params, start[d], 0.0,
                                             start[d], goal[d], model.phase.x0, f);
    }
    return acc;
}

} // namespace dmpkit
