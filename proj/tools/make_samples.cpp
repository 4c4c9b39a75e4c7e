// Regenerates the bundled demonstration CSVs under a target directory
// (default: data/). The curves are fixed parametric splines, so the files
// are reproducible bit for bit.

#include <dmpkit/io.hpp>
#include <dmpkit/letters.hpp>

#include <filesystem>
#include <iostream>
#include <string>

int main(int argc, char** argv)
{
    namespace fs = std::filesystem;
    using namespace dmpkit;

    fs::path dir = argc > 1 ? argv[1] : "data";
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << dir << ": " << ec.message()
                  << '\n';
        return 2;
    }

    auto emit = [&](const std::string& name, const Demonstration& demo) {
        fs::path path = dir / (name + ".csv");
        save_trajectory(path, demo.dt, demo.dof_names, demo.positions);
        std::cout << "wrote " << path.string() << " (" << demo.sample_count()
                  << " samples, " << demo.dof_count() << " DoFs)\n";
    };

    try {
        for (const auto& letter : bundled_letter_names())
            emit("letter_" + letter, make_letter(letter));
        emit("two_stroke_D_3d", make_two_stroke_d_3d());
        emit("single_stroke_I_3d", make_single_stroke_i_3d());
        emit("recorded_a", make_recorded_style_a());
        emit("recorded_e_3d", make_recorded_style_e_3d());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
