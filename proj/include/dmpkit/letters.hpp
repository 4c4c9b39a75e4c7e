#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dmpkit/errors.hpp"
#include "dmpkit/trajectory.hpp"

namespace dmpkit {

// Synthetic single-stroke pen letters built from fixed waypoint splines.
// They stand in for captured handwriting: Catmull-Rom interpolation gives
// tangent-continuous curves, and a quintic ease-in/ease-out time warp puts
// zero pen velocity at both ends, the way a real stroke starts and stops.
// 'D' is drawn exactly closed (first sample == last sample bitwise); every
// other letter keeps start and goal clearly apart in both DoFs.

namespace letters_detail {

struct Point {
    double x;
    double y;
};

struct BezierPiece {
    Point p0, p1, p2, p3;
};

inline std::vector<Point> waypoints(std::string_view name)
{
    if (name == "a")
        return {{0.052, 0.048}, {0.034, 0.056}, {0.014, 0.048}, {0.008, 0.030},
                {0.014, 0.012}, {0.032, 0.006}, {0.046, 0.014}, {0.050, 0.032},
                {0.051, 0.048}, {0.052, 0.030}, {0.053, 0.014}, {0.058, 0.006},
                {0.068, 0.010}};
    if (name == "B")
        return {{0.002, 0.002}, {0.000, 0.026}, {0.000, 0.054}, {0.002, 0.078},
                {0.022, 0.082}, {0.040, 0.074}, {0.042, 0.060}, {0.030, 0.048},
                {0.012, 0.044}, {0.032, 0.042}, {0.050, 0.034}, {0.054, 0.018},
                {0.042, 0.004}, {0.020, 0.000}, {0.008, 0.006}};
    if (name == "D")
        return {{0.002, 0.080}, {0.000, 0.060}, {0.000, 0.040}, {0.000, 0.020},
                {0.002, 0.002}, {0.020, 0.000}, {0.042, 0.004}, {0.056, 0.020},
                {0.058, 0.042}, {0.050, 0.062}, {0.032, 0.076}, {0.002, 0.080}};
    if (name == "e")
        return {{0.006, 0.036}, {0.024, 0.040}, {0.044, 0.042}, {0.050, 0.056},
                {0.038, 0.066}, {0.022, 0.062}, {0.008, 0.046}, {0.006, 0.028},
                {0.014, 0.010}, {0.032, 0.004}, {0.050, 0.008}, {0.058, 0.016}};
    if (name == "M")
        return {{0.000, 0.002}, {0.002, 0.030}, {0.004, 0.058}, {0.006, 0.074},
                {0.010, 0.080}, {0.014, 0.072}, {0.020, 0.048}, {0.026, 0.024},
                {0.031, 0.014}, {0.036, 0.024}, {0.042, 0.048}, {0.048, 0.072},
                {0.052, 0.080}, {0.056, 0.074}, {0.058, 0.058}, {0.060, 0.030},
                {0.062, 0.006}};
    throw DataError("unknown bundled letter '" + std::string(name) + "'");
}

// Catmull-Rom through the waypoints, emitted as cubic Bezier pieces; the
// shared tangents make consecutive pieces join with continuous velocity.
inline std::vector<BezierPiece> spline_pieces(const std::vector<Point>& wp,
                                              bool closed)
{
    const std::size_t k = wp.size();
    auto at = [&](std::ptrdiff_t i) -> Point {
        if (closed) {
            // wp.front() == wp.back(); wrap neighbors skip the duplicate
            if (i < 0)
                return wp[k - 2];
            if (i >= static_cast<std::ptrdiff_t>(k))
                return wp[1];
        } else {
            i = std::max<std::ptrdiff_t>(
                0, std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(k) - 1, i));
        }
        return wp[static_cast<std::size_t>(i)];
    };
    std::vector<BezierPiece> pieces;
    pieces.reserve(k - 1);
    for (std::ptrdiff_t i = 0; i + 1 < static_cast<std::ptrdiff_t>(k); ++i) {
        const Point a = at(i - 1), b = at(i), c = at(i + 1), d = at(i + 2);
        const Point m0{(c.x - a.x) / 2.0, (c.y - a.y) / 2.0};
        const Point m1{(d.x - b.x) / 2.0, (d.y - b.y) / 2.0};
        pieces.push_back({b,
                          {b.x + m0.x / 3.0, b.y + m0.y / 3.0},
                          {c.x - m1.x / 3.0, c.y - m1.y / 3.0},
                          c});
    }
    return pieces;
}

inline Point eval(const std::vector<BezierPiece>& pieces, double u)
{
    const double scaled = u * static_cast<double>(pieces.size());
    std::size_t index = static_cast<std::size_t>(scaled);
    if (index >= pieces.size())
        index = pieces.size() - 1;
    const double v = scaled - static_cast<double>(index);
    const BezierPiece& p = pieces[index];
    const double w = 1.0 - v;
    const double b0 = w * w * w;
    const double b1 = 3.0 * w * w * v;
    const double b2 = 3.0 * w * v * v;
    const double b3 = v * v * v;
    return {b0 * p.p0.x + b1 * p.p1.x + b2 * p.p2.x + b3 * p.p3.x,
            b0 * p.p0.y + b1 * p.p1.y + b2 * p.p2.y + b3 * p.p3.y};
}

// Quintic ease: zero velocity and acceleration at both ends.
inline double ease(double tau)
{
    return tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
}

inline Channels trace(const std::vector<Point>& wp, std::size_t samples,
                      bool closed)
{
    const auto pieces = spline_pieces(wp, closed);
    Channels positions(2, std::vector<double>(samples));
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau =
            static_cast<double>(i) / static_cast<double>(samples - 1);
        const Point p = eval(pieces, ease(tau));
        positions[0][i] = p.x;
        positions[1][i] = p.y;
    }
    if (closed) {
        positions[0][samples - 1] = positions[0][0];
        positions[1][samples - 1] = positions[1][0];
    }
    return positions;
}

} // namespace letters_detail

inline std::vector<std::string> bundled_letter_names()
{
    return {"a", "B", "D", "e", "M"};
}

// A bundled 2-DoF letter demonstration. The defaults (1000 samples, 3 ms
// steps, about 3 s of writing) keep explicit-Euler reproduction error well
// under the accuracy studies' tolerances.
inline Demonstration make_letter(std::string_view name,
                                 std::size_t samples = 1000, double dt = 0.003)
{
    if (samples < 4)
        throw std::invalid_argument("letter: need at least 4 samples");
    const auto wp = letters_detail::waypoints(name);
    return make_demonstration(
        dt, {"x", "y"}, letters_detail::trace(wp, samples, name == "D"));
}

// A 3-D capture of 'D' written in two strokes: the stem drawn top to
// bottom, a 0.03 m pen lift back to the top (0.2 s), then the bowl. The pen
// plane sits at z = 0.02 m.
inline Demonstration make_two_stroke_d_3d(double dt = 0.002)
{
    using letters_detail::ease;
    const std::vector<letters_detail::Point> stem_wp = {{0.002, 0.080},
                                                        {0.000, 0.060},
                                                        {0.000, 0.040},
                                                        {0.000, 0.020},
                                                        {0.002, 0.002}};
    const std::vector<letters_detail::Point> bowl_wp = {
        {0.002, 0.080}, {0.020, 0.078}, {0.042, 0.072},
        {0.056, 0.052}, {0.058, 0.036}, {0.050, 0.016},
        {0.032, 0.004}, {0.014, 0.000}, {0.002, 0.002}};
    const std::size_t n_stem = 500;
    const std::size_t n_lift = 100; // 0.2 s at 2 ms steps
    const std::size_t n_bowl = 700;
    const double plane_z = 0.02;
    const double lift_height = 0.03;

    const Channels stem = letters_detail::trace(stem_wp, n_stem, false);
    const Channels bowl = letters_detail::trace(bowl_wp, n_bowl, false);

    Channels positions(3);
    for (std::size_t d = 0; d < 2; ++d) {
        auto& channel = positions[d];
        channel = stem[d];
        const double from = stem[d].back();
        const double to = bowl[d].front();
        for (std::size_t k = 1; k <= n_lift; ++k) {
            const double tau =
                static_cast<double>(k) / static_cast<double>(n_lift + 1);
            channel.push_back(from + (to - from) * ease(tau));
        }
        channel.insert(channel.end(), bowl[d].begin(), bowl[d].end());
    }
    auto& z = positions[2];
    z.assign(n_stem, plane_z);
    for (std::size_t k = 1; k <= n_lift; ++k) {
        const double tau =
            static_cast<double>(k) / static_cast<double>(n_lift + 1);
        const double s = std::sin(3.14159265358979323846 * tau);
        z.push_back(plane_z + lift_height * s * s);
    }
    z.insert(z.end(), n_bowl, plane_z);

    return make_demonstration(dt, {"x", "y", "z"}, std::move(positions));
}

// A 3-D capture of a continuous letter (an 'I' bar): one stroke, never
// leaving the pen plane.
inline Demonstration make_single_stroke_i_3d(std::size_t samples = 800,
                                             double dt = 0.002)
{
    if (samples < 4)
        throw std::invalid_argument("letter: need at least 4 samples");
    const std::vector<letters_detail::Point> wp = {{0.010, 0.078},
                                                   {0.008, 0.058},
                                                   {0.007, 0.040},
                                                   {0.008, 0.020},
                                                   {0.010, 0.004}};
    Channels positions = letters_detail::trace(wp, samples, false);
    positions.emplace_back(samples, 0.02);
    return make_demonstration(dt, {"x", "y", "z"}, std::move(positions));
}

namespace letters_detail {

// Deterministic capture-like wobble: a few incommensurate sines under a
// sin^2 envelope that vanishes at both ends, so endpoints stay exact.
inline double wobble(double tau, double amplitude, double cycles, double shift)
{
    const double pi = 3.14159265358979323846;
    const double envelope = std::sin(pi * tau) * std::sin(pi * tau);
    return amplitude * envelope * std::sin(2.0 * pi * cycles * tau + shift);
}

} // namespace letters_detail

// Recorded-style 2-DoF 'a': the synthetic letter with sub-millimeter pen
// wobble layered on, resembling a motion capture.
inline Demonstration make_recorded_style_a(std::size_t samples = 1000,
                                           double dt = 0.003)
{
    Demonstration demo = make_letter("a", samples, dt);
    Channels positions = demo.positions;
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau =
            static_cast<double>(i) / static_cast<double>(samples - 1);
        positions[0][i] += letters_detail::wobble(tau, 1.5e-4, 6.3, 0.7);
        positions[1][i] += letters_detail::wobble(tau, 1.5e-4, 8.1, 2.1);
    }
    return make_demonstration(dt, demo.dof_names, std::move(positions));
}

// Recorded-style 3-D 'e': pen wobble in the plane plus a slow sub-band
// height ripple around z = 0.02, still a single stroke under the default
// segmentation thresholds.
inline Demonstration make_recorded_style_e_3d(std::size_t samples = 900,
                                              double dt = 0.002)
{
    Demonstration flat = make_letter("e", samples, dt);
    Channels positions = flat.positions;
    positions.emplace_back(samples, 0.02);
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau =
            static_cast<double>(i) / static_cast<double>(samples - 1);
        positions[0][i] += letters_detail::wobble(tau, 1.2e-4, 5.7, 0.3);
        positions[1][i] += letters_detail::wobble(tau, 1.2e-4, 7.9, 1.4);
        positions[2][i] += letters_detail::wobble(tau, 8.0e-4, 2.7, 0.4);
    }
    return make_demonstration(dt, {"x", "y", "z"}, std::move(positions));
}

} // namespace dmpkit
