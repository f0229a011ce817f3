#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "darkviz/image_io.hpp"
#include "support/synthetic.hpp"

using namespace darkviz;
using darkviz::testing::fill_rect;
namespace fs = std::filesystem;

namespace {

constexpr Rgb8 kWhite{255, 255, 255};

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("darkviz_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args, const fs::path& stderr_file = {}) {
    std::string command = std::string(DARKVIZ_CLI_PATH) + " " + args;
    if (!stderr_file.empty()) {
        command += " 2> " + stderr_file.string();
    } else {
        command += " 2> /dev/null";
    }
    command += " > /dev/null";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_cli_capture(const std::string& args, std::string& stdout_text,
                    const fs::path& stderr_file = "/dev/null") {
    const fs::path out =
        fs::temp_directory_path() / ("darkviz_stdout_" + std::to_string(::getpid()));
    const std::string command = std::string(DARKVIZ_CLI_PATH) + " " + args + " > " +
                                out.string() + " 2> " + stderr_file.string();
    const int status = std::system(command.c_str());
    std::ifstream in(out);
    std::stringstream buffer;
    buffer << in.rdbuf();
    stdout_text = buffer.str();
    fs::remove(out);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

PixelImage three_color_chart() {
    PixelImage image(90, 60, kWhite);
    fill_rect(image, 5, 5, 25, 50, {200, 30, 30});
    fill_rect(image, 33, 5, 25, 50, {40, 160, 60});
    fill_rect(image, 61, 5, 25, 50, {40, 70, 200});
    return image;
}

}  // namespace

TEST_CASE("transform is deterministic and leaves the input untouched") {
    TempDir dir;
    const fs::path input = dir.path / "chart.png";
    save_png(three_color_chart(), input);
    const std::string input_bytes = read_bytes(input);

    const std::string command = "transform --input " + input.string() +
                                " -k 3 --iterations 4000 --output " +
                                (dir.path / "out.png").string() + " --report " +
                                (dir.path / "report.json").string();
    CHECK(run_cli(command) == 0);
    const std::string first_png = read_bytes(dir.path / "out.png");
    const std::string first_json = read_bytes(dir.path / "report.json");

    CHECK(run_cli(command) == 0);
    CHECK(read_bytes(dir.path / "out.png") == first_png);
    CHECK(read_bytes(dir.path / "report.json") == first_json);
    CHECK(read_bytes(input) == input_bytes);

    const nlohmann::json report = nlohmann::json::parse(first_json);
    CHECK(report.at("version") == 1);
    CHECK(report.at("palette").size() == 3);
    CHECK(report.at("energy").at("final").get<double>() <=
          report.at("energy").at("initial").get<double>());
}

TEST_CASE("transform defaults match the documented configuration") {
    TempDir dir;
    const fs::path input = dir.path / "chart.png";
    save_png(three_color_chart(), input);

    CHECK(run_cli("transform --input " + input.string() + " --output " +
                  (dir.path / "dark.png").string() + " --report " +
                  (dir.path / "report.json").string()) == 0);
    const nlohmann::json config =
        nlohmann::json::parse(read_bytes(dir.path / "report.json")).at("config");
    CHECK(config.at("requested_k") == 8);
    CHECK(config.at("k") == 3);  // clamped: only 3 distinct foreground colors
    CHECK(config.at("k_clamped").get<bool>());
    CHECK(config.at("light_bg") == "#FFFFFF");
    CHECK(config.at("dark_bg") == "#000000");
    CHECK(config.at("weights").at("lc") == 1.0);
    CHECK(config.at("weights").at("cc") == 1.0);
    CHECK(config.at("weights").at("ac") == 1.0);
    CHECK(config.at("iterations") == 20000);
    CHECK(config.at("t0") == 10000.0);
    CHECK(config.at("alpha") == 0.99);
    CHECK(config.at("seed") == 42);
    CHECK(config.at("mode") == "quantize");
}

TEST_CASE("transform writes a preview twice as wide as the input") {
    TempDir dir;
    const fs::path input = dir.path / "chart.png";
    save_png(three_color_chart(), input);

    CHECK(run_cli("transform --input " + input.string() + " --output " +
                  (dir.path / "dark.png").string() + " -k 3 --iterations 500 --preview " +
                  (dir.path / "preview.png").string()) == 0);
    const PixelImage preview = load_image(dir.path / "preview.png", kWhite);
    CHECK(preview.width == 90 * 2 + 2);
    CHECK(preview.height == 60);
}

TEST_CASE("invert round-trips and flips the background") {
    TempDir dir;
    const fs::path input = dir.path / "chart.png";
    save_png(three_color_chart(), input);

    CHECK(run_cli("invert --input " + input.string() + " --output " +
                  (dir.path / "inv.png").string()) == 0);
    CHECK(run_cli("invert --input " + (dir.path / "inv.png").string() + " --output " +
                  (dir.path / "double.png").string()) == 0);

    const PixelImage inverted = load_image(dir.path / "inv.png", kWhite);
    CHECK(inverted.at(0, 0) == Rgb8{0, 0, 0});
    CHECK(load_image(dir.path / "double.png", kWhite) == three_color_chart());
}

TEST_CASE("extract prints machine-parsable palette JSON") {
    TempDir dir;
    const fs::path input = dir.path / "chart.png";
    save_png(three_color_chart(), input);

    std::string stdout_text;
    CHECK(run_cli_capture("extract --input " + input.string() + " -k 3", stdout_text) == 0);
    const nlohmann::json listing = nlohmann::json::parse(stdout_text);
    CHECK(listing.at("k") == 3);
    CHECK_FALSE(listing.at("k_clamped").get<bool>());

    std::set<std::string> colors;
    std::size_t total_pixels = 0;
    for (const auto& entry : listing.at("palette")) {
        colors.insert(entry.at("color").get<std::string>());
        total_pixels += entry.at("pixels").get<std::size_t>();
    }
    CHECK(colors == std::set<std::string>{"#C81E1E", "#28A03C", "#2846C8"});
    CHECK(total_pixels == 3 * 25 * 50);
}

TEST_CASE("extract clamps k with a warning but succeeds") {
    TempDir dir;
    const fs::path input = dir.path / "chart.png";
    save_png(three_color_chart(), input);

    const fs::path errors = dir.path / "stderr.txt";
    std::string stdout_text;
    CHECK(run_cli_capture("extract --input " + input.string() + " -k 9", stdout_text, errors) ==
          0);
    const nlohmann::json listing = nlohmann::json::parse(stdout_text);
    CHECK(listing.at("k") == 3);
    CHECK(listing.at("k_clamped").get<bool>());
    CHECK(read_bytes(errors).find("clamped") != std::string::npos);
}

TEST_CASE("usage and config errors exit with code 1") {
    TempDir dir;
    const fs::path input = dir.path / "chart.png";
    save_png(three_color_chart(), input);
    const std::string out = (dir.path / "out.png").string();

    const fs::path errors = dir.path / "stderr.txt";
    CHECK(run_cli("transform --input " + input.string() + " --output " + out +
                      " --light-bg notacolor",
                  errors) == 1);
    CHECK(read_bytes(errors).find("--light-bg") != std::string::npos);

    CHECK(run_cli("transform --input " + input.string() + " --output " + out +
                  " --alpha 1.5") == 1);
    CHECK(run_cli("transform --input " + input.string() + " --output " + out +
                  " --mode nosuchmode") == 1);
    CHECK(run_cli("transform --input " + input.string()) == 1);  // missing --output
    CHECK(run_cli("nosuchcommand") == 1);
}

TEST_CASE("I/O failures exit with code 2") {
    TempDir dir;
    CHECK(run_cli("transform --input " + (dir.path / "missing.png").string() + " --output " +
                  (dir.path / "out.png").string()) == 2);
    CHECK(run_cli("invert --input " + (dir.path / "missing.png").string() + " --output " +
                  (dir.path / "out.png").string()) == 2);

    const fs::path garbage = dir.path / "garbage.png";
    std::ofstream(garbage) << "not an image";
    CHECK(run_cli("invert --input " + garbage.string() + " --output " +
                  (dir.path / "out.png").string()) == 2);
}

TEST_CASE("all-background inputs exit with code 3") {
    TempDir dir;
    const fs::path input = dir.path / "blank.png";
    save_png(PixelImage(20, 20, kWhite), input);
    CHECK(run_cli("transform --input " + input.string() + " --output " +
                  (dir.path / "out.png").string()) == 3);
}

TEST_CASE("evaluate produces a schema-complete report and rejects empty corpora") {
    TempDir dir;
    const fs::path corpus = dir.path / "corpus";
    fs::create_directories(corpus);
    CHECK(run_cli("evaluate --input " + corpus.string()) == 3);

    save_png(three_color_chart(), corpus / "chart.png");
    const fs::path report_path = dir.path / "report.json";
    CHECK(run_cli("evaluate --input " + corpus.string() + " -k 3 --iterations 800 --report " +
                  report_path.string()) == 0);

    const nlohmann::json report = nlohmann::json::parse(read_bytes(report_path));
    CHECK(report.at("version") == 1);
    REQUIRE(report.at("per_image").size() == 1);
    const auto& conditions = report.at("per_image")[0].at("conditions");
    CHECK(conditions.at("light").at("wcag_pass").get<bool>());
    CHECK(conditions.at("light").at("color_difference").get<double>() == 0.0);
    CHECK(report.at("summary").at("pass_rate_by_condition").at("light").get<double>() == 100.0);
}
