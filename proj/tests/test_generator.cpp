#include <catch2/catch_amalgamated.hpp>

#include <dmpkit/generator.hpp>
#include <dmpkit/learner.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace dmpkit;

namespace {

DmpModel zero_weight_model(Formulation formulation, double start, double goal,
                           double dt = 1e-4, double duration = 1.0)
{
    DmpModel model;
    model.bank = build_bank(5, 1.0, true);
    model.phase.kind = PhaseKind::Linear;
    model.phase.total_time = duration;
    model.params.formulation = formulation;
    model.dt = dt;
    model.duration = duration;
    model.dof_names = {"x"};
    model.dofs.push_back({std::vector<double>(5, 0.0), start, goal});
    return model;
}

Demonstration wiggle_demo(std::size_t m = 400, double dt = 0.005)
{
    const double pi = std::numbers::pi;
    Channels positions(1);
    const double T = static_cast<double>(m - 1) * dt;
    for (std::size_t i = 0; i < m; ++i) {
        const double tau = static_cast<double>(i) * dt / T;
        const double ease = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
        positions[0].push_back(0.05 * ease +
                               0.012 * std::sin(2.0 * pi * tau) * std::sin(pi * tau));
    }
    return make_demonstration(dt, {"x"}, positions);
}

} // namespace

TEST_CASE("zero-weight original rollout follows the critically damped step")
{
    // analytic oracle: y(t) = g - (g - y0)(1 + wn t) e^(-wn t), wn = sqrt(az bz)
    DmpModel model = zero_weight_model(Formulation::Original, 0.0, 1.0);
    RolloutResult rr = rollout(model);

    const double wn = std::sqrt(model.params.alpha_z * model.params.beta_z);
    double worst = 0.0;
    for (std::size_t i = 0; i < rr.positions[0].size(); ++i) {
        const double t = static_cast<double>(i) * model.dt;
        const double exact = 1.0 - (1.0 + wn * t) * std::exp(-wn * t);
        worst = std::max(worst, std::abs(rr.positions[0][i] - exact));
    }
    CHECK(worst < 2e-3);
    CHECK(std::abs(rr.positions[0].back() - 1.0) < 1e-4);
}

TEST_CASE("zero-weight goal-robust rollout converges to the goal")
{
    // phase runs for 1 s; by 2 s of simulated time the attractor has closed
    // all but a sub-millimeter fraction of the span
    DmpModel model = zero_weight_model(Formulation::GoalRobust, 0.2, 0.9,
                                       1e-3, 1.0);
    RolloutOptions options;
    options.duration = 2.0;
    RolloutResult rr = rollout(model, options);
    CHECK(std::abs(rr.positions[0].back() - 0.9) < 1e-3 * std::abs(0.9 - 0.2));
    for (double y : rr.positions[0])
        CHECK(std::isfinite(y));
}

TEST_CASE("coincident goal and start freeze the original formulation")
{
    Demonstration demo = wiggle_demo();
    TransformParams params;
    params.formulation = Formulation::Original;
    DmpModel model = fit_dmp(demo, params);

    RolloutOptions options;
    options.goal = std::vector<double>{model.dofs[0].start};
    RolloutResult rr = rollout(model, options);

    REQUIRE(rr.degenerate_dofs == std::vector<std::uint32_t>{0});
    double worst = 0.0;
    for (double y : rr.positions[0])
        worst = std::max(worst, std::abs(y - model.dofs[0].start));
    CHECK(worst < 1e-12);
}

TEST_CASE("initial acceleration ignores goal changes under the reformulation")
{
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> weight(-5.0, 5.0);
    std::uniform_real_distribution<double> endpoint(-1.0, 1.0);

    for (int trial = 0; trial < 20; ++trial) {
        DmpModel model = zero_weight_model(Formulation::GoalRobust,
                                           endpoint(rng), endpoint(rng));
        for (double& w : model.dofs[0].weights)
            w = weight(rng);

        const std::vector<double> start{model.dofs[0].start};
        const std::vector<double> goal{model.dofs[0].goal};
        const std::vector<double> shifted{model.dofs[0].goal + 0.01};

        const double a0 = initial_acceleration(model, start, goal)[0];
        const double a1 = initial_acceleration(model, start, shifted)[0];
        CHECK(std::abs(a1 - a0) < 1e-12);

        // the original formulation jumps by az bz delta + delta f(x0)
        model.params.formulation = Formulation::Original;
        const double b0 = initial_acceleration(model, start, goal)[0];
        const double b1 = initial_acceleration(model, start, shifted)[0];
        const double f_at_start =
            forcing_value(model.bank, model.dofs[0].weights, model.phase.x0);
        const double expected =
            model.params.alpha_z * model.params.beta_z * 0.01 + 0.01 * f_at_start;
        CHECK(b1 - b0 == Catch::Approx(expected).margin(1e-12));
    }
}

TEST_CASE("goal changes scale the original rollout affinely")
{
    Demonstration demo = wiggle_demo();
    TransformParams params;
    params.formulation = Formulation::Original;
    DmpModel model = fit_dmp(demo, params);

    RolloutResult base = rollout(model);

    const double y0 = model.dofs[0].start;
    const double g = model.dofs[0].goal;
    for (double g_new : {0.12, -0.05, 2.0 * g - y0}) {
        RolloutOptions options;
        options.goal = std::vector<double>{g_new};
        RolloutResult moved = rollout(model, options);

        const double lambda = (g_new - y0) / (g - y0);
        double worst = 0.0;
        for (std::size_t i = 0; i < base.positions[0].size(); ++i) {
            const double predicted = y0 + lambda * (base.positions[0][i] - y0);
            worst = std::max(worst, std::abs(moved.positions[0][i] - predicted));
        }
        INFO("goal " << g_new);
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("halving the integration step barely moves the endpoint")
{
    Demonstration demo = wiggle_demo();
    DmpModel model = fit_dmp(demo, TransformParams{});

    RolloutResult coarse = rollout(model);
    RolloutOptions options;
    options.dt = model.dt / 2.0;
    RolloutResult fine = rollout(model, options);

    CHECK(std::abs(coarse.positions[0].back() - fine.positions[0].back()) < 1e-4);
}

TEST_CASE("runaway weights raise a diagnostic naming the DoF")
{
    DmpModel model = zero_weight_model(Formulation::Original, 0.0, 1.0, 0.01, 1.0);
    for (double& w : model.dofs[0].weights)
        w = 1e12;
    CHECK_THROWS_MATCHES(rollout(model), IntegrationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("'x'") &&
                             Catch::Matchers::ContainsSubstring("step")));
}

TEST_CASE("settle time extends the rollout at the goal")
{
    DmpModel model = zero_weight_model(Formulation::Original, 0.0, 0.5,
                                       1e-3, 1.0);
    RolloutOptions options;
    options.settle = 0.5;
    RolloutResult rr = rollout(model, options);
    CHECK(rr.positions[0].size() == sample_count_for(1.5, 1e-3));
    // the settle tail sits on the goal
    CHECK(std::abs(rr.positions[0].back() - 0.5) < 1e-6);
}

TEST_CASE("a longer duration does not stretch the motion")
{
    // the phase runs out on the model's own clock; extra time is pure settle
    Demonstration demo = wiggle_demo();
    DmpModel model = fit_dmp(demo, TransformParams{});

    RolloutOptions options;
    options.duration = 2.0 * model.duration;
    RolloutResult rr = rollout(model, options);

    const std::size_t at_T = sample_count_for(model.duration, model.dt) - 1;
    CHECK(std::abs(rr.positions[0][at_T] - model.dofs[0].goal) < 5e-4);
    CHECK(std::abs(rr.positions[0].back() - model.dofs[0].goal) < 1e-6);
}

TEST_CASE("rollout override validation")
{
    DmpModel model = zero_weight_model(Formulation::GoalRobust, 0.0, 1.0);
    RolloutOptions options;
    options.goal = std::vector<double>{1.0, 2.0};
    CHECK_THROWS_AS(rollout(model, options), std::invalid_argument);

    options = {};
    options.dt = -0.1;
    CHECK_THROWS_AS(rollout(model, options), std::invalid_argument);

    options = {};
    options.settle = -1.0;
    CHECK_THROWS_AS(rollout(model, options), std::invalid_argument);
}

TEST_CASE("initial velocity override seeds the first step")
{
    DmpModel model = zero_weight_model(Formulation::GoalRobust, 0.0, 1.0,
                                       1e-3, 1.0);
    RolloutOptions options;
    options.initial_velocity = std::vector<double>{0.75};
    RolloutResult rr = rollout(model, options);
    CHECK(rr.velocities[0].front() == 0.75);
}
