#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmpkit/errors.hpp"
#include "dmpkit/kernels.hpp"
#include "dmpkit/model.hpp"
#include "dmpkit/phase.hpp"
#include "dmpkit/trajectory.hpp"

namespace dmpkit {

// Start/goal closer than this cannot be learned by Original (the forcing
// target divides by goal - start).
inline constexpr double kDegenerateGoalSpan = 1e-8;

// Per-sample forcing values a fit must reproduce, obtained by inverting the
// transformation system on the demonstrated state.
inline std::vector<double> forcing_targets(std::span<const double> y,
                                           std::span<const double> yd,
                                           std::span<const double> ydd,
                                           double start, double goal,
                                           std::span<const double> phase_seq,
                                           const TransformParams& params)
{
    const std::size_t m = y.size();
    if (yd.size() != m || ydd.size() != m || phase_seq.size() != m)
        throw std::invalid_argument("targets: channel length mismatch");
    const bool original = params.formulation == Formulation::Original;
    const double span = goal - start;
    if (original && std::abs(span) < kDegenerateGoalSpan)
        throw DegenerateGoalError(
            "original formulation cannot learn a channel whose goal and start "
            "coincide (|goal - start| below 1e-8 m)");

    const double k = params.alpha_z * params.beta_z;
    std::vector<double> f(m);
    for (std::size_t t = 0; t < m; ++t) {
        const double residual =
            ydd[t] - params.alpha_z * (params.beta_z * (goal - y[t]) - yd[t]);
        f[t] = original ? residual / span
                        : (residual + k * span * phase_seq[t]) / k;
    }
    return f;
}

// One-dimensional locally weighted regression per kernel:
// w_i = sum_t(x_t psi_i f_t) / sum_t(x_t psi_i x_t).
// Kernels that no sample activates get w = 0 and are reported.
struct WeightFit {
    std::vector<double> weights;
    std::vector<std::uint32_t> empty_kernels; // indices with no support
};

inline WeightFit fit_weights(std::span<const double> phase_seq,
                             const std::vector<std::vector<double>>& psi,
                             std::span<const double> targets)
{
    const std::size_t m = phase_seq.size();
    if (targets.size() != m)
        throw std::invalid_argument("fit: target length mismatch");
    WeightFit fit;
    fit.weights.resize(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (psi[i].size() != m)
            throw std::invalid_argument("fit: activation row length mismatch");
        double num = 0.0;
        double den = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            const double xw = phase_seq[t] * psi[i][t];
            num += xw * targets[t];
            den += xw * phase_seq[t];
        }
        if (den == 0.0) {
            fit.weights[i] = 0.0;
            fit.empty_kernels.push_back(static_cast<std::uint32_t>(i));
        } else {
            fit.weights[i] = num / den;
        }
    }
    return fit;
}

struct FitOptions {
    PhaseKind phase_kind = PhaseKind::Linear;
    double width_factor = 1.0;
    std::optional<std::size_t> kernel_count; // default: max(1, round(M/10))
    bool truncated = true;
    double edge_value = 0.5;
    // Exponential-phase rate; default ln(100)/duration puts the phase at
    // 0.01 when the demonstration ends, independent of duration.
    std::optional<double> alpha_x;
};

struct FitDiagnostics {
    // per DoF, the kernel indices nothing activated (w forced to 0)
    std::vector<std::vector<std::uint32_t>> empty_kernels;
};

// Fits one movement primitive to a demonstration: start and goal are the
// first and last samples per DoF, the kernel bank is built once and shared,
// and each DoF's weights come from an independent LWR solve.
inline DmpModel fit_dmp(const Demonstration& demo, const TransformParams& params,
                        const FitOptions& options = {},
                        FitDiagnostics* diagnostics = nullptr)
{
    validate(params);
    const std::size_t m = demo.sample_count();
    if (m < 3)
        throw DataError("fit: demonstration needs at least 3 samples");
    if (demo.velocities.size() != demo.dof_count() ||
        demo.accelerations.size() != demo.dof_count())
        throw DataError("fit: demonstration is missing derivative channels");
    if (!(options.width_factor > 0.0))
        throw std::invalid_argument("fit: width_factor must be positive");

    const double duration = static_cast<double>(m - 1) * demo.dt;
    const std::size_t kernel_count = options.kernel_count.value_or(
        std::max<std::size_t>(1,
            static_cast<std::size_t>(std::llround(static_cast<double>(m) / 10.0))));

    DmpModel model;
    model.params = params;
    model.dt = demo.dt;
    model.duration = duration;
    model.dof_names = demo.dof_names;
    model.bank = build_bank(kernel_count, options.width_factor,
                            options.truncated, options.edge_value);
    if (options.phase_kind == PhaseKind::Linear) {
        model.phase = PhaseConfig{PhaseKind::Linear, 1.0, duration, 1.0};
    } else {
        const double alpha_x =
            options.alpha_x.value_or(std::log(100.0) / duration);
        model.phase = PhaseConfig{PhaseKind::Exponential, alpha_x, duration, 1.0};
    }

    const std::vector<double> xs = phase_sequence(model.phase, duration, demo.dt);
    if (xs.size() != m)
        throw DataError("fit: phase sample count mismatch");
    const auto psi = activation_matrix(model.bank, xs);

    if (diagnostics)
        diagnostics->empty_kernels.assign(demo.dof_count(), {});
    for (std::size_t d = 0; d < demo.dof_count(); ++d) {
        const auto& y = demo.positions[d];
        const double start = y.front();
        const double goal = y.back();
        std::vector<double> targets;
        try {
            targets = forcing_targets(y, demo.velocities[d], demo.accelerations[d],
                                      start, goal, xs, params);
        } catch (const DegenerateGoalError& e) {
            throw DegenerateGoalError("DoF '" + demo.dof_names[d] + "': " + e.what());
        }
        WeightFit fit = fit_weights(xs, psi, targets);
        if (diagnostics)
            diagnostics->empty_kernels[d] = std::move(fit.empty_kernels);
        model.dofs.push_back(DofModel{std::move(fit.weights), start, goal});
    }
    return model;
}

} // namespace dmpkit
