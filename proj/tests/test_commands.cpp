#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "orthopack/commands.hpp"
#include "orthopack/error.hpp"
#include "orthopack/scene.hpp"

using namespace orthopack;
using doctest::Approx;

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(ORTHOPACK_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

RunConfig config(Command c, SchlafliSymbol s = {3, 3}) {
    RunConfig r;
    r.command = c;
    r.symbol = s;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("cell report") {
    RunConfig c = config(Command::Cell);
    c.format = "json";
    const auto j = nlohmann::json::parse(run(c));
    CHECK(j["vertices"][2]["class"] == "ideal");
    CHECK(j["vertices"][0]["class"] == "proper");
    CHECK(j["residuals"]["gram"].get<double>() < 1e-12);
    CHECK(j["ideal_vertices"].size() == 1);

    RunConfig d = config(Command::Cell, {4, 4});
    d.format = "json";
    CHECK(nlohmann::json::parse(run(d))["ideal_vertices"].size() == 2);

    CHECK_THROWS_AS(run(config(Command::Cell, {3, 7})), InvalidInput);
    CHECK(run(config(Command::Cell)).find("gram residual") != std::string::npos);
}

TEST_CASE("inball and horoball reports") {
    RunConfig c = config(Command::Inball);
    c.format = "json";
    const auto j = nlohmann::json::parse(run(c));
    CHECK(j["density"]["value"].get<double>() == Approx(0.2623649).epsilon(2e-3));
    CHECK(j["density"].contains("est_error"));
    CHECK(j["tangent_faces"].size() >= 4);

    RunConfig h = config(Command::Horoball);
    h.format = "json";
    const auto k = nlohmann::json::parse(run(h));
    CHECK(k["density"]["value"].get<double>() == Approx(0.8188080).epsilon(1e-3));
    CHECK(k["touching_face"] == 2);

    RunConfig two = config(Command::Horoball, {4, 4});
    two.horoball_mode = "two";
    CHECK_THROWS_AS(run(two), InvalidInput);
    two.touch_t = 0.5;
    two.format = "json";
    const auto t = nlohmann::json::parse(run(two));
    CHECK(t["valid"] == true);
    CHECK(t["contact"].get<double>() == Approx(-2.0));
    two.touch_t = 0.3;
    CHECK(nlohmann::json::parse(run(two))["valid"] == false);
}

TEST_CASE("optimize") {
    RunConfig c = config(Command::Optimize, {4, 4});
    c.format = "json";
    const auto j = nlohmann::json::parse(run(c));
    CHECK(j["samples"] == 256);
    CHECK(j["density"]["value"].get<double>() == Approx(0.8188080).epsilon(1e-6));

    c.format = "csv";
    const std::string csv = run(c);
    CHECK(csv.rfind("t,density\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 257);

    CHECK_THROWS_AS(run(config(Command::Optimize, {3, 3})), InvalidInput);
}

TEST_CASE("tiling and export") {
    RunConfig t = config(Command::Tiling);
    t.crowns = 0;
    CHECK(run(t).find("cells 1\n") != std::string::npos);
    t.format = "json";
    t.crowns = 1;
    CHECK(nlohmann::json::parse(run(t))["cells"] == 6);

    const auto dir = std::filesystem::temp_directory_path() / "orthopack-test";
    std::filesystem::create_directories(dir);
    RunConfig e = config(Command::Export, {3, 6});
    e.resolution = 8;
    e.horoball_mode = "two";
    e.out = (dir / "scene.json").string();
    run(e);
    const Scene s = import_json(slurp(e.out));
    CHECK(s.metadata["symbol"] == "{inf,3,6,inf}");
    CHECK(s.metadata["densities"]["horoball"]["value"].get<double>() == Approx(0.8532761).epsilon(1e-6));
    for (const auto& m : s.meshes)
        validate(m);

    e.out = (dir / "scene.obj").string();
    e.model_sphere = true;
    run(e);
    const std::string obj = slurp(e.out);
    CHECK(obj.find("o model_sphere") != std::string::npos);
    CHECK(obj.find("o horoball_1") != std::string::npos);

    e.out = (dir / "scene.ply").string();
    run(e);
    CHECK(slurp(e.out).rfind("ply\n", 0) == 0);

    RunConfig bad = e;
    bad.out = "/nonexistent-dir/scene.obj";
    CHECK_THROWS_AS(run(bad), IoError);
}

TEST_CASE("table") {
    RunConfig c = config(Command::Table);
    c.format = "csv";
    const std::string csv = run(c);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    CHECK(csv.find("\"{inf,3,4,inf}\"") != std::string::npos);
    CHECK(csv == run(c));
    std::istringstream in(csv);
    std::string line;
    int na = 0;
    while (std::getline(in, line))
        na += line.find(",n/a,n/a,n/a,n/a,n/a") != std::string::npos;
    CHECK(na == 5);
}

TEST_CASE("validation") {
    RunConfig c = config(Command::Cell);
    c.tol = 0;
    CHECK_THROWS_AS(validate(c), InvalidInput);
    c = config(Command::Tiling);
    c.crowns = 9;
    CHECK_THROWS_AS(validate(c), InvalidInput);
    c = config(Command::Export);
    c.resolution = 3;
    CHECK_THROWS_AS(validate(c), InvalidInput);
    c = config(Command::Cell);
    c.format = "xml";
    CHECK_THROWS_AS(run(c), InvalidInput);
}

TEST_CASE("command line") {
    CHECK(cli("cell --symbol inf,3,3,inf").code == 0);
    CHECK(cli("cell --symbol '{∞,4,4,∞}' --format json").out.find("\"ideal\"") != std::string::npos);
    CHECK(cli("cell --symbol inf,3,7,inf").code == 2);
    CHECK(cli("cell --symbol inf,3,7,inf --allow-nonstandard-symbol").code == 2);
    CHECK(cli("cell --bogus").code == 2);
    CHECK(cli("tiling --crowns 0").out.find("cells 1") != std::string::npos);
    CHECK(cli("horoball --mode one").out.find("0.81880") != std::string::npos);
    CHECK(cli("optimize --symbol inf,4,4,inf --out /nonexistent-dir/curve.csv").code == 4);
    CHECK(cli("export --symbol inf,3,3,inf --resolution 8 --format obj").out.rfind("# orthopack", 0) == 0);
    CHECK(cli("--help").code == 0);
    const Run a = cli("table --format csv"), b = cli("table --format csv");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
