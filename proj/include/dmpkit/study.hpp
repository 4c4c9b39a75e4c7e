#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmpkit/errors.hpp"
#include "dmpkit/generator.hpp"
#include "dmpkit/io.hpp"
#include "dmpkit/learner.hpp"
#include "dmpkit/trajectory.hpp"

namespace dmpkit {

struct NamedDemo {
    std::string name;
    Demonstration demo;
};

// One accuracy grid: errors[letter][axis position], NaN marking cells whose
// fit failed (excluded from any argmin taken over the grid).
struct SweepReport {
    std::string axis_name; // "width_factor" or "kernel_count"
    std::vector<double> axis;
    std::vector<std::string> letters;
    std::vector<std::vector<double>> errors;
};

namespace detail {

template <typename FitOnce>
SweepReport run_sweep(std::span<const NamedDemo> demos, std::string axis_name,
                      std::vector<double> axis, FitOnce&& fit_once)
{
    if (axis.empty())
        throw std::invalid_argument("sweep: empty axis");
    SweepReport report;
    report.axis_name = std::move(axis_name);
    report.axis = std::move(axis);
    for (const auto& named : demos) {
        report.letters.push_back(named.name);
        std::vector<double> row;
        row.reserve(report.axis.size());
        for (double value : report.axis) {
            try {
                DmpModel model = fit_once(named.demo, value);
                RolloutResult run = rollout(model);
                row.push_back(
                    euclidean_error(run.positions, named.demo.positions).value);
            } catch (const std::exception&) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        report.errors.push_back(std::move(row));
    }
    return report;
}

} // namespace detail

// Reconstruction error as the kernel width varies in units of 1/N
// (goal-robust, truncated kernels, linear phase, N from the M/10 rule).
// The expected picture: too narrow leaves coverage gaps, too wide blurs,
// with the sweet spot between factor 1 and 4.
inline SweepReport sweep_width(std::span<const NamedDemo> demos,
                               std::span<const double> width_factors)
{
    for (double factor : width_factors)
        if (!(factor > 0.0))
            throw std::invalid_argument("sweep: width factors must be positive");
    return detail::run_sweep(
        demos, "width_factor",
        std::vector<double>(width_factors.begin(), width_factors.end()),
        [](const Demonstration& demo, double factor) {
            FitOptions options;
            options.width_factor = factor;
            return fit_dmp(demo, TransformParams{}, options);
        });
}

// Reconstruction error as the kernel count varies at fixed unit width.
// Expected: error falls steeply, then plateaus around N = M/10.
inline SweepReport sweep_number(std::span<const NamedDemo> demos,
                                std::span<const std::size_t> kernel_counts)
{
    std::vector<double> axis;
    axis.reserve(kernel_counts.size());
    for (std::size_t count : kernel_counts) {
        if (count == 0)
            throw std::invalid_argument("sweep: kernel counts must be positive");
        axis.push_back(static_cast<double>(count));
    }
    return detail::run_sweep(
        demos, "kernel_count", std::move(axis),
        [](const Demonstration& demo, double count) {
            FitOptions options;
            options.kernel_count = static_cast<std::size_t>(count);
            return fit_dmp(demo, TransformParams{}, options);
        });
}

struct GoalChangeResult {
    double original_error = 0.0; // vs the re-anchored demonstration
    double dmpstar_error = 0.0;
    bool mirror_flag = false;    // original's (goal - start) changed sign
};

// The demonstration linearly re-anchored so its endpoint lands on the
// shifted goal: sample t moves by delta * t/(M-1). Start stays pinned.
inline Channels reanchor_positions(const Channels& positions,
                                   std::span<const double> deltas)
{
    if (positions.size() != deltas.size())
        throw std::invalid_argument("reanchor: delta size mismatch");
    Channels out = positions;
    const std::size_t m = out.empty() ? 0 : out.front().size();
    for (std::size_t d = 0; d < out.size(); ++d)
        for (std::size_t i = 0; i < m; ++i)
            out[d][i] += deltas[d] * static_cast<double>(i) /
                         static_cast<double>(m - 1);
    return out;
}

// Fits both formulations on the same demonstration, shifts the goal by
// delta, and scores each rollout against the re-anchored demonstration:
// a shape comparison both formulations are judged by equally.
inline GoalChangeResult goal_change_experiment(const Demonstration& demo,
                                               std::span<const double> goal_deltas)
{
    if (demo.dof_count() != 1 && demo.dof_count() != 2)
        throw std::invalid_argument("goal change study: need a 1- or 2-DoF demo");
    if (goal_deltas.size() != demo.dof_count())
        throw std::invalid_argument("goal change study: delta size mismatch");

    const Channels reference =
        reanchor_positions(demo.positions, goal_deltas);

    GoalChangeResult result;
    for (bool original : {true, false}) {
        TransformParams params;
        params.formulation =
            original ? Formulation::Original : Formulation::GoalRobust;
        DmpModel model = fit_dmp(demo, params);

        RolloutOptions options;
        std::vector<double> goal(demo.dof_count());
        for (std::size_t d = 0; d < goal.size(); ++d)
            goal[d] = model.dofs[d].goal + goal_deltas[d];
        options.goal = goal;

        const double error =
            euclidean_error(rollout(model, options).positions, reference).value;
        if (original) {
            result.original_error = error;
            for (std::size_t d = 0; d < goal.size(); ++d)
                if ((goal[d] - model.dofs[d].start) *
                        (model.dofs[d].goal - model.dofs[d].start) < 0.0)
                    result.mirror_flag = true;
        } else {
            result.dmpstar_error = error;
        }
    }
    return result;
}

inline void write_report_csv(std::ostream& out, const SweepReport& report)
{
    out << report.axis_name;
    for (const auto& letter : report.letters)
        out << ',' << letter;
    out << '\n';
    for (std::size_t j = 0; j < report.axis.size(); ++j) {
        out << format_double(report.axis[j]);
        for (const auto& row : report.errors)
            out << ',' << format_double(row[j]);
        out << '\n';
    }
}

inline nlohmann::json report_json(const SweepReport& report)
{
    return nlohmann::json{
        {"axis_name", report.axis_name},
        {"axis", report.axis},
        {"letters", report.letters},
        {"errors", report.errors},
    };
}

inline void write_report(const std::filesystem::path& path,
                         const SweepReport& report)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write " + path.string());
    if (format_for_path(path) == DemoFormat::Csv)
        write_report_csv(out, report);
    else
        out << report_json(report).dump(2) << '\n';
}

inline SweepReport report_from_json(const nlohmann::json& doc)
{
    try {
        SweepReport report;
        report.axis_name = doc.at("axis_name").get<std::string>();
        report.axis = doc.at("axis").get<std::vector<double>>();
        report.letters = doc.at("letters").get<std::vector<std::string>>();
        for (const auto& row : doc.at("errors")) {
            std::vector<double> values;
            values.reserve(row.size());
            // NaN cells (failed fits) serialize as null
            for (const auto& cell : row)
                values.push_back(cell.is_null()
                                     ? std::numeric_limits<double>::quiet_NaN()
                                     : cell.get<double>());
            report.errors.push_back(std::move(values));
        }
        if (report.errors.size() != report.letters.size())
            throw DataError("report: errors grid does not match letters");
        for (const auto& row : report.errors)
            if (row.size() != report.axis.size())
                throw DataError("report: errors grid does not match axis");
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("report json: ") + e.what());
    }
}

// Reads back a sweep CSV (axis column + one error column per letter).
inline SweepReport load_report_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw DataError("report: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    auto header = detail::split(line, ',');
    if (header.size() < 2)
        throw DataError("report: header needs an axis and at least one letter");
    SweepReport report;
    report.axis_name = std::string(header.front());
    report.letters.assign(header.begin() + 1, header.end());
    report.errors.assign(report.letters.size(), {});
    std::size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto cells = detail::split(line, ',');
        if (cells.size() != header.size())
            throw DataError("report row " + std::to_string(row_number) +
                            ": column count mismatch");
        const std::string where = "report row " + std::to_string(row_number);
        report.axis.push_back(parse_double(cells[0], where));
        for (std::size_t k = 0; k < report.letters.size(); ++k)
            report.errors[k].push_back(parse_double(cells[k + 1], where));
    }
    if (report.axis.empty())
        throw DataError("report: no data rows");
    return report;
}

} // namespace dmpkit
