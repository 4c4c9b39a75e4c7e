#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "dmpkit/errors.hpp"
#include "dmpkit/trajectory.hpp"

namespace dmpkit {

// Shortest decimal form that parses back to the same double; locale-free.
inline std::string format_double(double v)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const std::string& where)
{
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw DataError(where + ": not a number: '" + std::string(text) + "'");
    return v;
}

enum class DemoFormat { Csv, Json };

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace detail

// CSV demonstration: header "t,x,y[,z]", one row per sample, t ascending
// uniform (1e-9 s jitter tolerated), positions in meters.
inline Demonstration load_demonstration_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw DataError("csv: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();

    auto header = detail::split(line, ',');
    if (header.size() < 2 || header.front() != "t")
        throw DataError("csv: header must be t,<dof>[,<dof>...]");
    std::vector<std::string> dof_names(header.begin() + 1, header.end());
    for (const auto& name : dof_names)
        if (name.empty())
            throw DataError("csv: empty DoF name in header");

    std::vector<double> times;
    Channels positions(dof_names.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto cells = detail::split(line, ',');
        if (cells.size() != dof_names.size() + 1)
            throw DataError("csv row " + std::to_string(row) + ": expected " +
                            std::to_string(dof_names.size() + 1) + " columns, got " +
                            std::to_string(cells.size()));
        const std::string where = "csv row " + std::to_string(row);
        times.push_back(parse_double(cells[0], where));
        for (std::size_t d = 0; d < dof_names.size(); ++d)
            positions[d].push_back(parse_double(cells[d + 1], where));
    }

    if (times.size() < 2)
        throw DataError("csv: fewer than 2 samples");
    const double dt = times[1] - times[0];
    if (!(dt > 0.0))
        throw DataError("csv: time column must ascend");
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double expected = times[0] + static_cast<double>(i) * dt;
        if (std::abs(times[i] - expected) > 1e-9)
            throw DataError("csv sample " + std::to_string(i + 1) +
                            ": non-uniform timestamp (jitter above 1e-9 s)");
    }
    return make_demonstration(dt, std::move(dof_names), std::move(positions));
}

// JSON demonstration: {"dt": seconds, "dofs": [names], "positions": [[...]...]}
// with positions indexed [dof][sample].
inline Demonstration load_demonstration_json(std::istream& in)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dt") || !doc.contains("dofs") ||
        !doc.contains("positions"))
        throw DataError("json: need object with dt, dofs, positions");
    try {
        const double dt = doc.at("dt").get<double>();
        auto dof_names = doc.at("dofs").get<std::vector<std::string>>();
        auto positions = doc.at("positions").get<Channels>();
        return make_demonstration(dt, std::move(dof_names), std::move(positions));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("json: ") + e.what());
    }
}

inline Demonstration load_demonstration(std::istream& in, DemoFormat format)
{
    return format == DemoFormat::Csv ? load_demonstration_csv(in)
                                     : load_demonstration_json(in);
}

inline DemoFormat format_for_path(const std::filesystem::path& path)
{
    auto ext = path.extension().string();
    for (char& c : ext)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".csv")
        return DemoFormat::Csv;
    if (ext == ".json")
        return DemoFormat::Json;
    throw DataError("unrecognized trajectory extension '" + ext + "' on " +
                    path.string() + " (want .csv or .json)");
}

inline Demonstration load_demonstration(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path.string());
    try {
        return load_demonstration(in, format_for_path(path));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

inline void save_trajectory_csv(std::ostream& out, double dt,
                                const std::vector<std::string>& dof_names,
                                const Channels& positions)
{
    out << "t";
    for (const auto& name : dof_names)
        out << ',' << name;
    out << '\n';
    const std::size_t m = positions.empty() ? 0 : positions.front().size();
    for (std::size_t i = 0; i < m; ++i) {
        out << format_double(static_cast<double>(i) * dt);
        for (const auto& channel : positions)
            out << ',' << format_double(channel[i]);
        out << '\n';
    }
}

inline void save_trajectory_json(std::ostream& out, double dt,
                                 const std::vector<std::string>& dof_names,
                                 const Channels& positions)
{
    nlohmann::json doc;
    doc["dt"] = dt;
    doc["dofs"] = dof_names;
    doc["positions"] = positions;
    out << doc.dump(2) << '\n';
}

inline void save_trajectory(const std::filesystem::path& path, double dt,
                            const std::vector<std::string>& dof_names,
                            const Channels& positions)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write " + path.string());
    if (format_for_path(path) == DemoFormat::Csv)
        save_trajectory_csv(out, dt, dof_names, positions);
    else
        save_trajectory_json(out, dt, dof_names, positions);
}

} // namespace dmpkit
