#include <catch2/catch_amalgamated.hpp>

#include <dmpkit/learner.hpp>
#include <dmpkit/model.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

using namespace dmpkit;

namespace {

// smooth test curve with distinct start and goal and zero end velocities
Demonstration smooth_demo(std::size_t m = 200, double dt = 0.005)
{
    Channels positions(1);
    const double T = static_cast<double>(m - 1) * dt;
    for (std::size_t i = 0; i < m; ++i) {
        const double tau = static_cast<double>(i) * dt / T;
        const double ease = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
        const double pi = std::numbers::pi;
        positions[0].push_back(0.05 * ease + 0.01 * std::sin(2.0 * pi * tau) *
                                                 std::sin(pi * tau));
    }
    return make_demonstration(dt, {"x"}, positions);
}

} // namespace

TEST_CASE("learning targets invert the transformation system")
{
    // build analytically consistent (y, yd, ydd), derive targets, and check
    // that feeding them back through the acceleration model reproduces ydd
    const std::size_t m = 100;
    const double dt = 0.01, T = static_cast<double>(m - 1) * dt;
    std::vector<double> y(m), yd(m), ydd(m), phases(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = static_cast<double>(i) * dt;
        y[i] = 0.3 * std::sin(2.0 * t) + 0.1 * t;
        yd[i] = 0.6 * std::cos(2.0 * t) + 0.1;
        ydd[i] = -1.2 * std::sin(2.0 * t);
        phases[i] = 1.0 - t / T;
    }
    const double start = y.front(), goal = y.back();

    for (Formulation formulation : {Formulation::Original, Formulation::GoalRobust}) {
        TransformParams params;
        params.formulation = formulation;
        auto targets = forcing_targets(y, yd, ydd, start, goal, phases, params);
        REQUIRE(targets.size() == m);
        for (std::size_t i = 0; i < m; ++i) {
            const double acc = transformation_acceleration(
                params, y[i], yd[i], start, goal, phases[i], targets[i]);
            CHECK(acc == Catch::Approx(ydd[i]).margin(1e-10));
        }
    }
}

TEST_CASE("coincident start and goal is unlearnable for the original form")
{
    const std::size_t m = 50;
    std::vector<double> y(m, 0.25), zero(m, 0.0), phases(m);
    for (std::size_t i = 0; i < m; ++i)
        phases[i] = 1.0 - static_cast<double>(i) / static_cast<double>(m - 1);

    TransformParams params;
    params.formulation = Formulation::Original;
    CHECK_THROWS_AS(forcing_targets(y, zero, zero, 0.25, 0.25, phases, params),
                    DegenerateGoalError);

    // the reformulation learns it as a zero forcing term
    params.formulation = Formulation::GoalRobust;
    auto targets = forcing_targets(y, zero, zero, 0.25, 0.25, phases, params);
    for (double f : targets)
        CHECK(f == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("per-kernel regression matches a dense scan of the loss")
{
    // independent oracle: the fitted weight must minimize
    // J_i(w) = sum_t psi_it (f_t - w x_t)^2 over a dense 1-D grid
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);

    const std::size_t m = 60;
    std::vector<double> phases(m), targets(m);
    for (std::size_t i = 0; i < m; ++i) {
        phases[i] = 1.0 - static_cast<double>(i) / static_cast<double>(m - 1);
        targets[i] = 0.4 * std::sin(5.0 * phases[i]) + 0.2 * noise(rng);
    }
    KernelBank bank = build_bank(4, 1.5, true);
    auto psi = activation_matrix(bank, phases);
    WeightFit fit = fit_weights(phases, psi, targets);
    REQUIRE(fit.weights.size() == 4);
    CHECK(fit.empty_kernels.empty());

    for (std::size_t i = 0; i < 4; ++i) {
        auto loss = [&](double w) {
            double J = 0.0;
            for (std::size_t t = 0; t < m; ++t) {
                const double r = targets[t] - w * phases[t];
                J += psi[i][t] * r * r;
            }
            return J;
        };
        double best_w = 0.0, best_J = loss(0.0);
        for (int k = -4000; k <= 4000; ++k) {
            const double w = static_cast<double>(k) * 0.002;
            const double J = loss(w);
            if (J < best_J) {
                best_J = J;
                best_w = w;
            }
        }
        CHECK(fit.weights[i] == Catch::Approx(best_w).margin(4e-3));
        // and no grid point does better than the analytic answer
        CHECK(loss(fit.weights[i]) <= best_J + 1e-12);
    }
}

TEST_CASE("truncated kernels learn only from their own support")
{
    // corrupting targets outside kernel 0's support leaves w0 untouched
    const std::size_t m = 120;
    std::vector<double> phases(m), targets(m);
    for (std::size_t i = 0; i < m; ++i) {
        phases[i] = 1.0 - static_cast<double>(i) / static_cast<double>(m - 1);
        targets[i] = std::cos(3.0 * phases[i]);
    }
    KernelBank bank = build_bank(5, 1.0, true);
    auto psi = activation_matrix(bank, phases);
    WeightFit base = fit_weights(phases, psi, targets);

    auto corrupted = targets;
    for (std::size_t i = 0; i < m; ++i)
        if (phases[i] > bank.centers[0] + bank.half_width + 1e-9)
            corrupted[i] += 100.0;
    WeightFit redo = fit_weights(phases, psi, corrupted);
    CHECK(redo.weights[0] == base.weights[0]);
    CHECK(redo.weights[4] != base.weights[4]);
}

TEST_CASE("sample order does not change the fit")
{
    const std::size_t m = 80;
    std::vector<double> phases(m), targets(m);
    for (std::size_t i = 0; i < m; ++i) {
        phases[i] = 1.0 - static_cast<double>(i) / static_cast<double>(m - 1);
        targets[i] = std::sin(7.0 * phases[i]);
    }
    KernelBank bank = build_bank(3, 1.0, true);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937 rng(11);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> phases2(m), targets2(m);
    for (std::size_t i = 0; i < m; ++i) {
        phases2[i] = phases[order[i]];
        targets2[i] = targets[order[i]];
    }

    WeightFit a = fit_weights(phases, activation_matrix(bank, phases), targets);
    WeightFit b = fit_weights(phases2, activation_matrix(bank, phases2), targets2);
    for (std::size_t i = 0; i < a.weights.size(); ++i)
        CHECK(a.weights[i] == Catch::Approx(b.weights[i]).epsilon(1e-12));
}

TEST_CASE("kernels with no support are zeroed and reported")
{
    // a collapsed phase sequence leaves mid-range kernels unseen
    std::vector<double> phases{1.0, 0.01, 0.005, 0.001};
    std::vector<double> targets{0.5, 0.25, 0.2, 0.1};
    KernelBank bank = build_bank(10, 1.0, true);
    WeightFit fit = fit_weights(phases, activation_matrix(bank, phases), targets);

    REQUIRE_FALSE(fit.empty_kernels.empty());
    for (std::uint32_t idx : fit.empty_kernels) {
        CHECK(fit.weights[idx] == 0.0);
        CHECK(idx > 0);
        CHECK(idx < 9);
    }
}

TEST_CASE("kernel count defaults to a tenth of the samples")
{
    Demonstration demo = smooth_demo(1000, 0.003);
    DmpModel model = fit_dmp(demo, TransformParams{});
    CHECK(model.bank.size() == 100);

    Demonstration tiny = smooth_demo(5, 0.01);
    DmpModel small = fit_dmp(tiny, TransformParams{});
    CHECK(small.bank.size() == 1);

    FitOptions options;
    options.kernel_count = 17;
    CHECK(fit_dmp(demo, TransformParams{}, options).bank.size() == 17);
}

TEST_CASE("degenerate channels are reported by DoF name")
{
    Channels positions{{0.0, 0.01, 0.03, 0.06, 0.1}, {0.5, 0.5, 0.5, 0.5, 0.5}};
    Demonstration demo = make_demonstration(0.01, {"x", "held"}, positions);
    TransformParams params;
    params.formulation = Formulation::Original;
    CHECK_THROWS_WITH(fit_dmp(demo, params),
                      Catch::Matchers::ContainsSubstring("held"));
    // the reformulation fits the same demonstration without complaint
    params.formulation = Formulation::GoalRobust;
    CHECK_NOTHROW(fit_dmp(demo, params));
}

TEST_CASE("exponential phase rate defaults to ln(100) over the duration")
{
    Demonstration demo = smooth_demo(200, 0.005);
    FitOptions options;
    options.phase_kind = PhaseKind::Exponential;
    DmpModel model = fit_dmp(demo, TransformParams{}, options);
    CHECK(model.phase.alpha_x ==
          Catch::Approx(std::log(100.0) / demo.duration()).epsilon(1e-12));

    options.alpha_x = 2.0;
    CHECK(fit_dmp(demo, TransformParams{}, options).phase.alpha_x == 2.0);
}

TEST_CASE("fitting requires at least three samples and derivatives")
{
    Channels tiny{{0.0, 1.0}};
    Demonstration demo = make_demonstration(0.01, {"x"}, tiny);
    // a 2-sample demonstration is loadable but not fittable
    CHECK_THROWS_AS(fit_dmp(demo, TransformParams{}), DataError);
}

TEST_CASE("fit diagnostics surface empty kernels per DoF")
{
    // an exponential phase sampled coarsely skips most kernel supports
    Channels positions(1);
    for (std::size_t i = 0; i < 11; ++i)
        positions[0].push_back(0.01 * static_cast<double>(i * i));
    Demonstration demo = make_demonstration(0.1, {"x"}, positions);

    FitOptions options;
    options.phase_kind = PhaseKind::Exponential;
    options.alpha_x = 50.0;
    options.kernel_count = 10;
    FitDiagnostics diag;
    DmpModel model = fit_dmp(demo, TransformParams{}, options, &diag);
    REQUIRE(diag.empty_kernels.size() == 1);
    CHECK_FALSE(diag.empty_kernels[0].empty());
    for (std::uint32_t idx : diag.empty_kernels[0])
        CHECK(model.dofs[0].weights[idx] == 0.0);
}
