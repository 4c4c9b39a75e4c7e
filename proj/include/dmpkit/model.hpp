#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmpkit/errors.hpp"
#include "dmpkit/kernels.hpp"
#include "dmpkit/phase.hpp"

namespace dmpkit {

// Original: the forcing term is scaled by (goal - start), which breaks down
// when they coincide and flips the shape when their difference changes sign.
// GoalRobust: the reformulation whose forcing enters with a fixed gain and a
// decaying (goal - start) compensation, immune to both failure modes.
enum class Formulation { Original, GoalRobust };

struct TransformParams {
    double alpha_z = 25.0;
    double beta_z = 6.25; // alpha_z/4: critical damping
    Formulation formulation = Formulation::GoalRobust;
};

inline void validate(const TransformParams& params)
{
    if (!(params.alpha_z > 0.0) || !(params.beta_z > 0.0))
        throw std::invalid_argument("transform: alpha_z, beta_z must be positive");
}

// The transformation system's acceleration at one state. Both the learner
// (inverted) and the generator (forward) use this exact expression.
inline double transformation_acceleration(const TransformParams& params,
                                          double y, double yd, double start,
                                          double goal, double x, double f)
{
    const double spring = params.alpha_z * (params.beta_z * (goal - y) - yd);
    if (params.formulation == Formulation::Original)
        return spring + (goal - start) * f;
    const double k = params.alpha_z * params.beta_z;
    return spring - k * (goal - start) * x + k * f;
}

struct DofModel {
    std::vector<double> weights;
    double start = 0.0; // meters
    double goal = 0.0;  // meters
};

// A fitted movement primitive: shared kernel bank, phase config and
// transformation constants plus one weight set and endpoint pair per DoF.
struct DmpModel {
    KernelBank bank;
    PhaseConfig phase;
    TransformParams params;
    std::vector<std::string> dof_names;
    std::vector<DofModel> dofs;
    double dt = 0.0;       // demonstration sampling interval
    double duration = 0.0; // demonstration duration
};

inline void validate(const DmpModel& model)
{
    validate(model.phase);
    validate(model.params);
    if (model.bank.size() == 0)
        throw std::invalid_argument("model: empty kernel bank");
    if (model.dofs.empty())
        throw std::invalid_argument("model: no DoF models");
    if (model.dof_names.size() != model.dofs.size())
        throw std::invalid_argument("model: DoF name count mismatch");
    for (const auto& dof : model.dofs)
        if (dof.weights.size() != model.bank.size())
            throw std::invalid_argument("model: weight count differs from bank");
    if (!(model.dt > 0.0) || !(model.duration > 0.0))
        throw std::invalid_argument("model: dt and duration must be positive");
}

inline nlohmann::json to_json(const DmpModel& model)
{
    nlohmann::json doc;
    doc["dt"] = model.dt;
    doc["duration"] = model.duration;
    doc["params"] = {
        {"alpha_z", model.params.alpha_z},
        {"beta_z", model.params.beta_z},
        {"formulation", model.params.formulation == Formulation::Original
                            ? "original"
                            : "goal_robust"},
    };
    doc["phase"] = {
        {"kind", model.phase.kind == PhaseKind::Linear ? "linear" : "exponential"},
        {"alpha_x", model.phase.alpha_x},
        {"total_time", model.phase.total_time},
        {"x0", model.phase.x0},
    };
    doc["bank"] = {
        {"kernel_count", model.bank.size()},
        {"width_factor", model.bank.width_factor},
        {"truncated", model.bank.truncated},
        {"edge_value", model.bank.edge_value},
    };
    doc["dofs"] = nlohmann::json::array();
    for (std::size_t d = 0; d < model.dofs.size(); ++d) {
        doc["dofs"].push_back({
            {"name", model.dof_names[d]},
            {"start", model.dofs[d].start},
            {"goal", model.dofs[d].goal},
            {"weights", model.dofs[d].weights},
        });
    }
    return doc;
}

inline DmpModel model_from_json(const nlohmann::json& doc)
{
    try {
        DmpModel model;
        model.dt = doc.at("dt").get<double>();
        model.duration = doc.at("duration").get<double>();

        const auto& params = doc.at("params");
        model.params.alpha_z = params.at("alpha_z").get<double>();
        model.params.beta_z = params.at("beta_z").get<double>();
        const auto formulation = params.at("formulation").get<std::string>();
        if (formulation == "original")
            model.params.formulation = Formulation::Original;
        else if (formulation == "goal_robust")
            model.params.formulation = Formulation::GoalRobust;
        else
            throw DataError("model: unknown formulation '" + formulation + "'");

        const auto& phase = doc.at("phase");
        const auto kind = phase.at("kind").get<std::string>();
        if (kind == "linear")
            model.phase.kind = PhaseKind::Linear;
        else if (kind == "exponential")
            model.phase.kind = PhaseKind::Exponential;
        else
            throw DataError("model: unknown phase kind '" + kind + "'");
        model.phase.alpha_x = phase.at("alpha_x").get<double>();
        model.phase.total_time = phase.at("total_time").get<double>();
        model.phase.x0 = phase.at("x0").get<double>();

        const auto& bank = doc.at("bank");
        model.bank = build_bank(bank.at("kernel_count").get<std::size_t>(),
                                bank.at("width_factor").get<double>(),
                                bank.at("truncated").get<bool>(),
                                bank.at("edge_value").get<double>());

        for (const auto& dof : doc.at("dofs")) {
            model.dof_names.push_back(dof.at("name").get<std::string>());
            model.dofs.push_back(DofModel{
                dof.at("weights").get<std::vector<double>>(),
                dof.at("start").get<double>(),
                dof.at("goal").get<double>(),
            });
        }
        validate(model);
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("model json: ") + e.what());
    }
}

inline void save_model(const std::filesystem::path& path, const DmpModel& model)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write " + path.string());
    out << to_json(model).dump(2) << '\n';
}

inline DmpModel load_model(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    try {
        return model_from_json(doc);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

} // namespace dmpkit
