#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hbz/bench.hpp"
#include "hbz/cli.hpp"
#include "hbz/io.hpp"

using namespace hbz;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir()
    {
        path_ = fs::temp_directory_path() / ("hbz_cli_" + std::to_string(std::rand()) + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string write(const std::string& name, const std::string& text) const
    {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
    static inline int counter_ = 0;
};

std::string slurp(const std::string& path)
{
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("polygon text format")
{
    const auto a = parse_polygon("0 0\n0.5 1\n1 0");
    CHECK(a.size() == 3);
    CHECK(a.dim() == 2);

    const auto b = parse_polygon("# comment\n1 2 3\n4 5 6");
    CHECK(b.size() == 2);
    CHECK(b.dim() == 3);

    const auto c = parse_polygon("\n  1\t2  # trailing\n\n3 4\n");
    CHECK(c[1] == Point{3, 4});

    try {
        parse_polygon("1 2\n3");
        FAIL("expected DimensionMismatch");
    } catch (const InputError& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
        CHECK(e.line() == 2);
    }
    try {
        parse_polygon("1 2\n3 x\n");
        FAIL("expected ParseError");
    } catch (const InputError& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_polygon("# only\n1 2\n"), InputError);
    CHECK_THROWS_AS(parse_polygon_file("/nonexistent/poly.txt"), Error);

    const auto poly = generate_control_points(9, 3, 4);
    CHECK(parse_polygon(format_polygon(poly)) == poly);
}

TEST_CASE("sample CSV round trip is exact")
{
    const auto poly = generate_control_points(15, 2, 8);
    const auto s = evaluate_curve(poly, EvalGrid::uniform(), Method::Hankel);
    const auto csv = samples_to_csv(s);
    CHECK(csv.rfind("s,x1,x2\n", 0) == 0);
    const auto back = samples_from_csv(csv);
    CHECK(back.svalues == s.svalues);
    CHECK(back.points == s.points);
}

TEST_CASE("svg output")
{
    const auto poly = generate_control_points(5, 2, 1);
    const auto s = evaluate_curve(poly, EvalGrid::uniform(17), Method::Casteljau);
    const auto svg = samples_to_svg(s, poly);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("eval subcommand")
{
    TempDir dir;
    const auto input = dir.write("tri.txt", "0 0\n0.5 1\n1 0\n");

    const auto c = run({"eval", input, "--method", "casteljau", "--grid", "3"});
    REQUIRE(c.code == kExitOk);
    const auto cs = samples_from_csv(c.out);
    CHECK(cs.svalues == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(cs.points[1] == Point{0.5, 0.5});

    const auto h = run({"eval", input, "--method", "hankel", "--grid", "3"});
    REQUIRE(h.code == kExitOk);
    const auto hs = samples_from_csv(h.out);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(std::abs(hs.points[i][k] - cs.points[i][k]) <= 1e-10);

    SUBCASE("even input is elevated with a note")
    {
        const auto even = dir.write("four.txt", "0 0\n1 2\n2 -1\n3 0\n");
        const auto r = run({"eval", even, "--method", "hankel", "--grid", "5"});
        CHECK(r.code == kExitOk);
        CHECK(r.err.find("degree-elevated") != std::string::npos);
    }

    SUBCASE("fallback exits with the degraded status")
    {
        const auto flat = dir.write("flat.txt", "0 1\n1 1\n0 1\n");
        const auto r = run({"eval", flat, "--method", "hankel", "--precondition", "never", "--grid", "5"});
        CHECK(r.code == kExitDegraded);
        CHECK(r.err.find("fell back") != std::string::npos);
        CHECK(samples_from_csv(r.out).points.size() == 5);
    }

    SUBCASE("svg to a file")
    {
        const auto out = dir.file("curve.svg");
        const auto r = run({"eval", input, "--svg", "-o", out});
        CHECK(r.code == kExitOk);
        CHECK(slurp(out).find("<svg") != std::string::npos);
    }

    SUBCASE("identical invocations give identical bytes")
    {
        const auto gen = dir.write("g.txt", format_polygon(generate_control_points(21, 2, 3)));
        const auto a = run({"eval", gen, "--method", "hankel-precond", "--seed", "5"});
        const auto b = run({"eval", gen, "--method", "hankel-precond", "--seed", "5"});
        CHECK(a.out == b.out);
    }

    SUBCASE("bad input")
    {
        CHECK(run({"eval", dir.write("bad.txt", "1 2\n3\n")}).code == kExitError);
        CHECK(run({"eval", input, "--method", "nope"}).code == kExitError);
        CHECK(run({"eval", input, "--grid", "abc"}).code == kExitError);
        CHECK(run({"eval", dir.file("missing.txt")}).code == kExitError);
        CHECK(run({"eval"}).code == kExitError);
    }
}

TEST_CASE("factor subcommand")
{
    const auto r = run({"factor", "--values", "2,1,3", "--json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["axes"][0]["residual"].get<double>() < 1e-12);
    CHECK(j["axes"][0]["nodes"].size() == 2);
    CHECK(j["axes"][0]["condition"].get<double>() == doctest::Approx(3.2));

    const auto text = run({"factor", "--values", "2,1,3"});
    CHECK(text.code == kExitOk);
    CHECK(text.out.find("residual") != std::string::npos);

    CHECK(run({"factor", "--values", "1,1,1", "--precondition", "never"}).code == kExitError);

    const auto shifted = run({"factor", "--values", "1,1,1", "--precondition", "always", "--json"});
    REQUIRE(shifted.code == kExitOk);
    CHECK(nlohmann::json::parse(shifted.out)["axes"][0]["sigma"].get<double>() == 4.0);

    CHECK(run({"factor", "--values", "1,2"}).code == kExitError);
    CHECK(run({"factor", "--values", "1,x,2"}).code == kExitError);
    CHECK(run({"factor"}).code == kExitError);

    TempDir dir;
    const auto poly = dir.write("p.txt", "0 0\n1 0\n0 1\n");
    const auto per_axis = run({"factor", poly, "--json"});
    REQUIRE(per_axis.code == kExitOk);
    const auto pj = nlohmann::json::parse(per_axis.out);
    CHECK(pj["axes"].size() == 2);
    CHECK(pj["axes"][0]["sigma"].is_null());
    CHECK(pj["axes"][1]["sigma"].is_number());
}

TEST_CASE("bench subcommand")
{
    TempDir dir;
    const auto csv = dir.file("bench.csv");
    const auto r = run({"bench", "--n", "15,23,31", "--methods", "casteljau,hankel", "--reps", "1", "--grid", "33",
        "--seed", "7", "-f", "csv", "-o", csv});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("| 31 |") != std::string::npos);
    const auto text = slurp(csv);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 2);

    const auto again = run({"bench", "--n", "15", "--methods", "casteljau,hankel", "--reps", "1", "--seed", "7",
        "-f", "json", "-o", dir.file("a.json")});
    run({"bench", "--n", "15", "--methods", "casteljau,hankel", "--reps", "1", "--seed", "7", "-f", "json", "-o",
        dir.file("b.json")});
    REQUIRE(again.code == kExitOk);
    const auto a = parse_report_json(slurp(dir.file("a.json")));
    const auto b = parse_report_json(slurp(dir.file("b.json")));
    CHECK(a.rows[1].error_norm == b.rows[1].error_norm);

    CHECK(run({"bench", "--n", "14"}).code == kExitError);
    CHECK(run({"bench", "--methods", "fast"}).code == kExitError);
    CHECK(run({"bench", "--format", "xml"}).code == kExitError);
}

TEST_CASE("gen and elevate subcommands")
{
    TempDir dir;
    const auto g = run({"gen", "--n", "5", "--d", "3", "--seed", "9"});
    REQUIRE(g.code == kExitOk);
    const auto poly = parse_polygon(g.out);
    CHECK(poly == generate_control_points(5, 3, 9));

    const auto well = run({"gen", "--n", "15", "--condition", "well", "--seed", "2"});
    REQUIRE(well.code == kExitOk);
    CHECK(instance_condition(parse_polygon(well.out)) < kWellConditionedMax);
    CHECK(run({"gen", "--n", "14", "--condition", "ill"}).code == kExitError);

    const auto input = dir.write("seg.txt", "0 0\n2 4\n");
    const auto e = run({"elevate", input});
    REQUIRE(e.code == kExitOk);
    CHECK(parse_polygon(e.out) == ControlPolygon({{0, 0}, {1, 2}, {2, 4}}));
}

TEST_CASE("seed from the environment")
{
    setenv("HANKEL_BEZIER_SEED", "9", 1);
    const auto env = run({"gen", "--n", "5", "--d", "3"});
    unsetenv("HANKEL_BEZIER_SEED");
    CHECK(parse_polygon(env.out) == generate_control_points(5, 3, 9));
    const auto plain = run({"gen", "--n", "5", "--d", "3"});
    CHECK(parse_polygon(plain.out) == generate_control_points(5, 3, 1));
}

TEST_CASE("help and usage errors")
{
    const auto h = run({"--help"});
    CHECK(h.code == kExitOk);
    CHECK(h.out.find("eval") != std::string::npos);
    CHECK(run({}).code == kExitError);
    CHECK(run({"frobnicate"}).code == kExitError);
}
