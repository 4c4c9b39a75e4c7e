// dmp: command-line front end for the movement-primitive library.
//
// Subcommands: learn, generate, segment, compose, sweep width|number, plot.
// Everything flows through files; repeated runs on the same inputs produce
// byte-identical artifacts.

#include <CLI11.hpp>
#include <dmpkit/dmpkit.hpp>

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace dmpkit;

namespace {

// "dof=value" endpoint override. An explicit sign ("x=+0.1", "y=-0.02")
// shifts the model's stored endpoint; an unsigned value replaces it.
struct EndpointEdit {
    std::string dof;
    double value = 0.0;
    bool relative = false;
};

EndpointEdit parse_endpoint(const std::string& spec, const std::string& flag)
{
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
        throw DataError(flag + ": expected dof=value, got '" + spec + "'");
    EndpointEdit edit;
    edit.dof = spec.substr(0, eq);
    std::string_view num{spec};
    num.remove_prefix(eq + 1);
    edit.relative = num.front() == '+' || num.front() == '-';
    if (num.front() == '+') // from_chars rejects an explicit plus
        num.remove_prefix(1);
    edit.value = parse_double(num, flag + " " + spec);
    return edit;
}

// Same as above with a leading stroke index, "K:dof=value".
std::pair<std::size_t, EndpointEdit> parse_stroke_endpoint(const std::string& spec,
                                                           const std::string& flag)
{
    auto colon = spec.find(':');
    if (colon == std::string::npos || colon == 0)
        throw DataError(flag + ": expected stroke:dof=value, got '" + spec + "'");
    std::size_t stroke = 0;
    try {
        std::size_t used = 0;
        stroke = std::stoul(spec.substr(0, colon), &used);
        if (used != colon)
            throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw DataError(flag + ": bad stroke index in '" + spec + "'");
    }
    return {stroke, parse_endpoint(spec.substr(colon + 1), flag)};
}

void apply_endpoint(std::vector<double>& values,
                    const std::vector<std::string>& names,
                    const EndpointEdit& edit, const std::string& flag)
{
    for (std::size_t d = 0; d < names.size(); ++d) {
        if (names[d] == edit.dof) {
            values[d] = edit.relative ? values[d] + edit.value : edit.value;
            return;
        }
    }
    throw DataError(flag + ": no DoF named '" + edit.dof + "' in the model");
}

std::vector<double> comma_list(const std::string& text, const std::string& flag)
{
    std::vector<double> out;
    for (auto piece : detail::split(text, ','))
        out.push_back(parse_double(piece, flag));
    if (out.empty())
        throw DataError(flag + ": empty list");
    return out;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write " + path.string());
    out << text;
}

// ---------------------------------------------------------------- learn ---

struct LearnArgs {
    std::string demo_path;
    std::string out_path;
    double alpha_z = 25.0;
    double beta_z = 6.25;
    double width_factor = 1.0;
    std::string phase = "linear";
    std::string formulation = "goal-robust";
    std::optional<std::size_t> kernels;
    std::optional<double> alpha_x;
    bool full_gaussians = false;
};

int run_learn(const LearnArgs& args)
{
    Demonstration demo = load_demonstration(args.demo_path);

    TransformParams params;
    params.alpha_z = args.alpha_z;
    params.beta_z = args.beta_z;
    params.formulation = args.formulation == "original" ? Formulation::Original
                                                        : Formulation::GoalRobust;
    FitOptions options;
    options.phase_kind = args.phase == "exponential" ? PhaseKind::Exponential
                                                     : PhaseKind::Linear;
    options.width_factor = args.width_factor;
    options.kernel_count = args.kernels;
    options.alpha_x = args.alpha_x;
    options.truncated = !args.full_gaussians;

    FitDiagnostics diag;
    DmpModel model = fit_dmp(demo, params, options, &diag);
    for (std::size_t d = 0; d < diag.empty_kernels.size(); ++d)
        if (!diag.empty_kernels[d].empty())
            std::cerr << "warning: DoF '" << model.dof_names[d] << "': "
                      << diag.empty_kernels[d].size()
                      << " kernel(s) saw no phase support, weights zeroed\n";

    save_model(args.out_path, model);
    std::cout << "wrote " << args.out_path << " (" << model.dofs.size()
              << " DoFs, " << model.bank.centers.size() << " kernels)\n";
    return 0;
}

// ------------------------------------------------------------- generate ---

struct GenerateArgs {
    std::string model_path;
    std::string out_path;
    std::vector<std::string> goal_edits;
    std::vector<std::string> start_edits;
    std::optional<double> dt;
    std::optional<double> duration;
    double settle = 0.5;
};

int run_generate(const GenerateArgs& args)
{
    DmpModel model = load_model(args.model_path);

    RolloutOptions options;
    options.dt = args.dt;
    options.duration = args.duration;
    options.settle = args.settle;

    std::vector<double> start, goal;
    for (const auto& dof : model.dofs) {
        start.push_back(dof.start);
        goal.push_back(dof.goal);
    }
    for (const auto& spec : args.start_edits)
        apply_endpoint(start, model.dof_names, parse_endpoint(spec, "--start"), "--start");
    for (const auto& spec : args.goal_edits)
        apply_endpoint(goal, model.dof_names, parse_endpoint(spec, "--goal"), "--goal");
    if (!args.start_edits.empty())
        options.start = start;
    if (!args.goal_edits.empty())
        options.goal = goal;

    RolloutResult result = rollout(model, options);
    for (std::uint32_t d : result.degenerate_dofs)
        std::cerr << "warning: DoF '" << result.dof_names[d]
                  << "': goal coincides with start; the original formulation "
                     "holds it constant\n";

    save_trajectory(args.out_path, result.dt, result.dof_names, result.positions);
    std::cout << "wrote " << args.out_path << " ("
              << result.positions.front().size() << " samples)\n";
    return 0;
}

// -------------------------------------------------------------- segment ---

struct SegmentArgs {
    std::string demo_path;
    std::string prefix;
    double theta = 0.05;
    double sigma = 0.005;
    std::optional<double> mu_z;
};

int run_segment(const SegmentArgs& args)
{
    Demonstration demo = load_demonstration(args.demo_path);

    SegmentationConfig config;
    config.lift_velocity = args.theta;
    config.plane_band = args.sigma;
    config.plane_height = args.mu_z;

    SegmentationResult result = segment(demo, config);

    fs::path manifest_path = args.prefix + "_manifest.json";
    write_text(manifest_path, manifest_json(result).dump(2) + "\n");
    for (std::size_t k = 0; k < result.strokes.size(); ++k) {
        const auto& s = result.strokes[k].samples;
        save_trajectory(args.prefix + "_stroke" + std::to_string(k) + ".csv",
                        s.dt, s.dof_names, s.positions);
    }
    std::cout << "wrote " << manifest_path.string() << " ("
              << result.strokes.size() << " strokes, " << result.pen_up_runs
              << " pen-up runs)\n";
    return 0;
}

// -------------------------------------------------------------- compose ---

struct ComposeArgs {
    std::vector<std::string> model_paths;
    std::string prefix;
    std::vector<std::string> goal_edits;
    std::vector<std::string> start_edits;
    double settle = 0.5;
};

int run_compose(const ComposeArgs& args)
{
    std::vector<DmpModel> models;
    for (const auto& path : args.model_paths)
        models.push_back(load_model(path));

    std::vector<StrokeOverride> overrides(models.size());
    auto edit_stroke = [&](const std::string& spec, const std::string& flag,
                           bool is_goal) {
        auto [k, edit] = parse_stroke_endpoint(spec, flag);
        if (k >= models.size())
            throw DataError(flag + ": stroke " + std::to_string(k) +
                            " out of range (have " +
                            std::to_string(models.size()) + " models)");
        auto& slot = is_goal ? overrides[k].goal : overrides[k].start;
        if (!slot) {
            std::vector<double> values;
            for (const auto& dof : models[k].dofs)
                values.push_back(is_goal ? dof.goal : dof.start);
            slot = std::move(values);
        }
        apply_endpoint(*slot, models[k].dof_names, edit, flag);
    };
    for (const auto& spec : args.start_edits)
        edit_stroke(spec, "--start", false);
    for (const auto& spec : args.goal_edits)
        edit_stroke(spec, "--goal", true);

    ComposeOptions options;
    options.settle = args.settle;
    ComposedLetter letter = compose(models, overrides, options);

    nlohmann::json manifest;
    manifest["settle"] = options.settle;
    manifest["pen_up_gaps"] = letter.pen_up_gaps;
    manifest["original_formulation_strokes"] = letter.original_formulation_strokes;
    manifest["strokes"] = nlohmann::json::array();
    for (std::size_t k = 0; k < letter.strokes.size(); ++k) {
        const RolloutResult& stroke = letter.strokes[k];
        fs::path file = args.prefix + "_stroke" + std::to_string(k) + ".csv";
        save_trajectory(file, stroke.dt, stroke.dof_names, stroke.positions);
        nlohmann::json entry;
        entry["file"] = file.filename().string();
        entry["samples"] = stroke.positions.front().size();
        entry["dofs"] = stroke.dof_names;
        manifest["strokes"].push_back(entry);
    }
    fs::path manifest_path = args.prefix + "_manifest.json";
    write_text(manifest_path, manifest.dump(2) + "\n");
    std::cout << "wrote " << manifest_path.string() << " ("
              << letter.strokes.size() << " strokes)\n";
    return 0;
}

// ---------------------------------------------------------------- sweep ---

struct SweepArgs {
    std::vector<std::string> demo_paths;
    std::string out_path;
    std::string factors = "0.2,0.6666666666666666,1,2,4,10,20";
    std::string counts = "5,10,25,50,100,200,500";
};

std::vector<NamedDemo> load_named_demos(const std::vector<std::string>& paths)
{
    std::vector<NamedDemo> demos;
    for (const auto& path : paths)
        demos.push_back({fs::path(path).stem().string(), load_demonstration(path)});
    return demos;
}

int run_sweep_width(const SweepArgs& args)
{
    auto demos = load_named_demos(args.demo_paths);
    auto factors = comma_list(args.factors, "--factors");
    SweepReport report = sweep_width(demos, factors);
    write_report(args.out_path, report);
    std::cout << "wrote " << args.out_path << " (" << report.axis.size()
              << " factors x " << report.letters.size() << " letters)\n";
    return 0;
}

int run_sweep_number(const SweepArgs& args)
{
    auto demos = load_named_demos(args.demo_paths);
    std::vector<std::size_t> counts;
    for (double v : comma_list(args.counts, "--counts")) {
        if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw DataError("--counts: kernel counts must be positive integers");
        counts.push_back(static_cast<std::size_t>(v));
    }
    SweepReport report = sweep_number(demos, counts);
    write_report(args.out_path, report);
    std::cout << "wrote " << args.out_path << " (" << report.axis.size()
              << " counts x " << report.letters.size() << " letters)\n";
    return 0;
}

// ----------------------------------------------------------------- plot ---

struct PlotArgs {
    std::vector<std::string> input_paths;
    std::string out_path;
    int width = 800;
    int height = 600;
    std::string kind = "auto";
};

// Trajectory files carry a "t" column (CSV) or a "positions" key (JSON);
// sweep reports carry an axis column or an "errors" key.
std::string detect_kind(const fs::path& path)
{
    if (format_for_path(path) == DemoFormat::Csv) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw DataError("cannot open " + path.string());
        std::string header;
        std::getline(in, header);
        return (header == "t" || header.rfind("t,", 0) == 0) ? "trajectory"
                                                             : "sweep";
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    if (doc.contains("positions"))
        return "trajectory";
    if (doc.contains("errors"))
        return "sweep";
    throw DataError(path.string() + ": neither a trajectory nor a sweep report");
}

SweepReport load_report(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path.string());
    if (format_for_path(path) == DemoFormat::Csv)
        return load_report_csv(in);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return report_from_json(doc);
}

int run_plot(const PlotArgs& args)
{
    PlotOptions options;
    options.width_px = args.width;
    options.height_px = args.height;

    std::string kind = args.kind;
    if (kind == "auto")
        kind = detect_kind(args.input_paths.front());

    std::string svg;
    if (kind == "sweep") {
        if (args.input_paths.size() != 1)
            throw DataError("plot: a sweep plot takes exactly one report");
        svg = render_sweep_svg(load_report(args.input_paths.front()), options);
    } else {
        // One series per file: first two DoFs as a plane curve, or value
        // against time for single-DoF trajectories.
        std::vector<PlotSeries> series;
        for (const auto& path : args.input_paths) {
            Demonstration demo = load_demonstration(path);
            PlotSeries s;
            s.label = fs::path(path).stem().string();
            s.color = plot_color(series.size());
            if (demo.dof_count() == 1) {
                for (std::size_t i = 0; i < demo.sample_count(); ++i)
                    s.x.push_back(static_cast<double>(i) * demo.dt);
                s.y = demo.positions[0];
            } else {
                s.x = demo.positions[0];
                s.y = demo.positions[1];
            }
            series.push_back(std::move(s));
        }
        svg = render_trajectory_svg(series, options);
    }
    write_text(args.out_path, svg);
    std::cout << "wrote " << args.out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Movement-primitive toolkit: learn pen trajectories from "
                 "demonstrations, regenerate and recombine them, and study "
                 "kernel choices."};
    app.require_subcommand(1);

    LearnArgs learn_args;
    auto* learn = app.add_subcommand(
        "learn", "Fit a movement-primitive model to a demonstration");
    learn->add_option("demo", learn_args.demo_path, "demonstration CSV or JSON")
        ->required();
    learn->add_option("-o,--output", learn_args.out_path, "model JSON path")
        ->required();
    learn->add_option("--alpha-z", learn_args.alpha_z, "spring gain");
    learn->add_option("--beta-z", learn_args.beta_z, "damping ratio gain");
    learn->add_option("--kernels", learn_args.kernels,
                      "kernel count (default: samples/10)");
    learn->add_option("--width-factor", learn_args.width_factor,
                      "kernel support width as a multiple of even spacing");
    learn->add_option("--phase", learn_args.phase, "canonical phase")
        ->check(CLI::IsMember({"linear", "exponential"}));
    learn->add_option("--alpha-x", learn_args.alpha_x,
                      "exponential phase decay rate");
    learn->add_option("--formulation", learn_args.formulation,
                      "transformation system")
        ->check(CLI::IsMember({"original", "goal-robust"}));
    learn->add_flag("--full-gaussians", learn_args.full_gaussians,
                    "untruncated kernels (default: compact support)");

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand(
        "generate", "Roll a model out to a trajectory");
    generate->add_option("model", generate_args.model_path, "model JSON")
        ->required();
    generate->add_option("-o,--output", generate_args.out_path,
                         "trajectory CSV or JSON path")
        ->required();
    generate->add_option("--goal", generate_args.goal_edits,
                         "dof=value goal override (+/- prefix shifts)");
    generate->add_option("--start", generate_args.start_edits,
                         "dof=value start override (+/- prefix shifts)");
    generate->add_option("--dt", generate_args.dt, "integration step override");
    generate->add_option("--duration", generate_args.duration,
                         "duration override, seconds");
    generate->add_option("--settle", generate_args.settle,
                         "extra attractor time after the motion, seconds");

    SegmentArgs segment_args;
    auto* segment_cmd = app.add_subcommand(
        "segment", "Split a 3-D pen demonstration into strokes");
    segment_cmd->add_option("demo", segment_args.demo_path, "3-D demonstration")
        ->required();
    segment_cmd->add_option("-o,--output", segment_args.prefix,
                            "output prefix for manifest and stroke files")
        ->required();
    segment_cmd->add_option("--theta", segment_args.theta,
                            "max pen-down vertical speed, m/s");
    segment_cmd->add_option("--sigma", segment_args.sigma,
                            "writing-plane half band, m");
    segment_cmd->add_option("--mu-z", segment_args.mu_z,
                            "writing-plane height (default: estimated)");

    ComposeArgs compose_args;
    auto* compose_cmd = app.add_subcommand(
        "compose", "Roll out stroke models in sequence");
    compose_cmd->add_option("models", compose_args.model_paths,
                            "stroke model JSONs, in writing order")
        ->required();
    compose_cmd->add_option("-o,--output", compose_args.prefix,
                            "output prefix for manifest and stroke files")
        ->required();
    compose_cmd->add_option("--goal", compose_args.goal_edits,
                            "stroke:dof=value goal override");
    compose_cmd->add_option("--start", compose_args.start_edits,
                            "stroke:dof=value start override");
    compose_cmd->add_option("--settle", compose_args.settle,
                            "per-stroke settle time, seconds");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand(
        "sweep", "Reconstruction-error studies over kernel choices");
    sweep->require_subcommand(1);
    auto* sweep_w = sweep->add_subcommand(
        "width", "Sweep the kernel width factor");
    sweep_w->add_option("demos", sweep_args.demo_paths, "demonstration files")
        ->required();
    sweep_w->add_option("-o,--output", sweep_args.out_path,
                        "report CSV or JSON path")
        ->required();
    sweep_w->add_option("--factors", sweep_args.factors,
                        "comma-separated width factors");
    auto* sweep_n = sweep->add_subcommand(
        "number", "Sweep the kernel count");
    sweep_n->add_option("demos", sweep_args.demo_paths, "demonstration files")
        ->required();
    sweep_n->add_option("-o,--output", sweep_args.out_path,
                        "report CSV or JSON path")
        ->required();
    sweep_n->add_option("--counts", sweep_args.counts,
                        "comma-separated kernel counts");

    PlotArgs plot_args;
    auto* plot = app.add_subcommand(
        "plot", "Render trajectories or a sweep report to SVG");
    plot->add_option("inputs", plot_args.input_paths,
                     "trajectory files, or one sweep report")
        ->required();
    plot->add_option("-o,--output", plot_args.out_path, "SVG path")->required();
    plot->add_option("--width", plot_args.width, "image width, px");
    plot->add_option("--height", plot_args.height, "image height, px");
    plot->add_option("--kind", plot_args.kind, "input interpretation")
        ->check(CLI::IsMember({"auto", "trajectory", "sweep"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (learn->parsed())
            return run_learn(learn_args);
        if (generate->parsed())
            return run_generate(generate_args);
        if (segment_cmd->parsed())
            return run_segment(segment_args);
        if (compose_cmd->parsed())
            return run_compose(compose_args);
        if (sweep->parsed())
            return sweep_w->parsed() ? run_sweep_width(sweep_args)
                                     : run_sweep_number(sweep_args);
        if (plot->parsed())
            return run_plot(plot_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
