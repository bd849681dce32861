#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ptsusy/jobs.hpp"
#include "ptsusy/susy2.hpp"

using namespace ptsusy;
using namespace ptsusy::jobs;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("ptsusy_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

json base_config(json transform) {
    return {{"params", {{"lambda", 5}, {"nu", 8}}}, {"transform", std::move(transform)}};
}

std::string field_of(const json& cfg) {
    try {
        parse_config(cfg);
    } catch (const ValidationError& e) {
        return e.field();
    }
    return "";
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(PTSUSY_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path& dir, const json& cfg) {
    fs::path p = dir / "config.json";
    std::ofstream(p) << cfg.dump(2);
    return p;
}

} // namespace

TEST_CASE("config errors name the offending field") {
    CHECK(field_of(json::array()) == "$");
    CHECK(field_of({{"transform", {{"case", "none"}}}}) == "$.params");
    CHECK(field_of({{"params", {{"lambda", "x"}, {"nu", 8}}}, {"transform", {{"case", "none"}}}}) == "params.lambda");
    CHECK(field_of(base_config({{"case", "bogus"}})) == "transform.case");
    auto bad_grid = base_config({{"case", "none"}});
    bad_grid["oracle"] = {{"grid_points", 10}};
    CHECK(field_of(bad_grid).rfind("oracle", 0) == 0);
    auto bad_range = base_config({{"case", "none"}});
    bad_range["output"] = {{"x_min", 1.0}, {"x_max", 0.5}};
    CHECK(field_of(bad_range) == "output.x_min");
    auto bad_expect = base_config({{"case", "none"}});
    bad_expect["expected_spectrum"] = {3.0, 2.0};
    CHECK(field_of(bad_expect) == "expected_spectrum");
}

TEST_CASE("every case name builds from a config") {
    std::vector<json> transforms = {
        {{"case", "none"}},
        {{"case", "delete_ground"}},
        {{"case", "create_ground"}, {"epsilon", 60.0}, {"q", 1.0}},
        {{"case", "isospectral_first"}, {"epsilon", 60.0}, {"side", "right"}},
        {{"case", "delete_two"}, {"i", 3}},
        {{"case", "create_two"}, {"eps1", 128.0}, {"eps2", 115.52}, {"q1", 1.0}, {"q2", -1.0}},
        {{"case", "iso_two_real"}, {"eps1", 70.0}, {"eps2", 60.0}},
        {{"case", "create_one"}, {"eps1", 128.0}, {"q1", 1.0}},
        {{"case", "move_level"}, {"i", 3}, {"target", 169.28}, {"direction", "up"}},
        {{"case", "delete_one"}, {"i", 3}},
        {{"case", "iso_complex"}, {"epsilon", {176.344, 1.5}}},
        {{"case", "confluent_create"}, {"epsilon", 147.92}, {"w0", 1.0}},
        {{"case", "confluent_iso"}, {"epsilon", 162.0}, {"variant", "mirrored_w0_zero"}},
        {{"case", "confluent_delete"}, {"i", 3}, {"limit", "w0_to_minus_one"}},
    };
    CHECK(transforms.size() == case_names().size());
    for (const auto& t : transforms) {
        auto cfg = parse_config(base_config(t));
        auto p = build_transform(cfg);
        CHECK(p != nullptr);
        CHECK(std::isfinite(p->value(0.7)));
    }
}

TEST_CASE("recipe preconditions surface as validation errors") {
    auto cfg = parse_config(base_config({{"case", "create_two"}, {"eps1", 128.0}, {"eps2", 115.52}, {"q1", -1.0}, {"q2", -1.0}}));
    CHECK_THROWS_AS(build_transform(cfg), ValidationError);
    auto missing = parse_config(base_config({{"case", "delete_two"}}));
    try {
        build_transform(missing);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.field() == "transform.i");
    }
}

TEST_CASE("generate writes CSV and JSON deterministically") {
    auto dir = scratch("generate");
    json j = base_config({{"case", "delete_two"}, {"i", 3}});
    j["output"] = {{"samples", 200}, {"eigenfunctions", {0, 1, 2}}};
    auto cfg = parse_config(j);
    generate(cfg, dir / "a");
    generate(cfg, dir / "b");
    for (auto name : {"potential.csv", "spectrum.json", "eigenfunctions.csv"}) {
        REQUIRE(fs::exists(dir / "a" / name));
        CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
    }
    std::string csv = slurp(dir / "a" / "potential.csv");
    CHECK(csv.rfind("x,V,V_tilde\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);
    std::string eig = slurp(dir / "a" / "eigenfunctions.csv");
    CHECK(eig.rfind("x,psi_0,psi_1,psi_2\n", 0) == 0);
    auto spec = json::parse(slurp(dir / "a" / "spectrum.json"));
    CHECK(spec["case"] == "delete_two");
    CHECK(std::abs(spec["endpoint_coefficients"]["left"].get<double>() - 21.0) < 1e-9);
    CHECK(spec["predicted_spectrum"][2]["tag"] == "deleted");
}

TEST_CASE("verify passes a correct prediction and fails a tampered claim") {
    auto dir = scratch("verify");
    auto cfg = parse_config(base_config({{"case", "delete_two"}, {"i", 3}}));
    auto ok = verify_job(cfg, dir / "ok");
    CHECK(ok.pass);
    auto report = json::parse(slurp(dir / "ok" / "report.json"));
    CHECK(report["verdict"] == "pass");
    CHECK(report["absent_as_expected"].size() == 2);

    json tampered = base_config({{"case", "delete_two"}, {"i", 3}});
    tampered["expected_spectrum"] = {84.5, 112.5, 150.0, 220.5, 264.5, 312.5};
    auto bad = verify_job(parse_config(tampered), dir / "bad");
    CHECK(!bad.pass);
    auto bad_report = json::parse(slurp(dir / "bad" / "report.json"));
    CHECK(bad_report["verdict"] == "fail");
    CHECK(bad_report["claimed_override"] == true);
    bool lists_150 = false;
    for (const auto& l : bad_report["unmatched_predicted"]) lists_150 |= l["energy"] == 150.0;
    CHECK(lists_150);
}

TEST_CASE("figures manifest") {
    auto dir = scratch("figures");
    figures(dir);
    auto manifest = json::parse(slurp(dir / "manifest.json"));
    REQUIRE(manifest["cases"].size() == figure_cases().size());
    for (const auto& c : manifest["cases"]) {
        CHECK(fs::exists(dir / c["file"].get<std::string>()));
        CHECK(c["figure"].get<int>() >= 1);
        CHECK(c["figure"].get<int>() <= 4);
    }
    // The deleted-ground curve is the shifted potential.
    std::ifstream in(dir / "fig1_delete_ground.csv");
    std::string line;
    std::getline(in, line);
    double worst = 0.0;
    while (std::getline(in, line)) {
        double x, v, vt;
        CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &v, &vt) == 3);
        double expected = potential_value(PTParams(4, 5), x);
        worst = std::max(worst, std::abs(vt - expected) / std::max(1.0, std::abs(expected)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("command-line exit codes") {
    auto dir = scratch("cli");
    CHECK(run_cli("") == 2);
    CHECK(run_cli("generate --out " + dir.string()) == 2);
    CHECK(run_cli("generate --config " + (dir / "nope.json").string() + " --out " + dir.string()) == 2);

    auto good = write_config(dir, base_config({{"case", "delete_two"}, {"i", 3}}));
    CHECK(run_cli("generate --config " + good.string() + " --out " + (dir / "gen").string()) == 0);
    CHECK(fs::exists(dir / "gen" / "potential.csv"));
    CHECK(run_cli("verify --config " + good.string() + " --out " + (dir / "ver").string() + " --levels 4 --grid 2000") == 0);

    fs::create_directories(dir / "v");
    auto invalid = write_config(dir / "v", base_config({{"case", "create_two"}, {"eps1", 128.0}, {"eps2", 115.52}, {"q1", -1.0}, {"q2", -1.0}}));
    CHECK(run_cli("generate --config " + invalid.string() + " --out " + (dir / "x").string()) == 2);

    fs::create_directories(dir / "c");
    // q seeds are undefined when Gamma(3/2 - lambda) has a pole.
    json pole = base_config({{"case", "create_two"}, {"eps1", 128.0}, {"eps2", 115.52}, {"q1", 1.0}, {"q2", -1.0}});
    pole["params"]["lambda"] = 4.5;
    auto nodes = write_config(dir / "c", pole);
    CHECK(run_cli("generate --config " + nodes.string() + " --out " + (dir / "y").string()) == 3);

    fs::create_directories(dir / "t");
    json tampered = base_config({{"case", "delete_two"}, {"i", 3}});
    tampered["expected_spectrum"] = {84.5, 112.5, 150.0, 220.5, 264.5, 312.5};
    auto t = write_config(dir / "t", tampered);
    CHECK(run_cli("verify --config " + t.string() + " --out " + (dir / "z").string()) == 4);

    CHECK(run_cli("figures --out " + (dir / "figs").string()) == 0);
}
