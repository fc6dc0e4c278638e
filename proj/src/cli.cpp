#include "hbz/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbz/bench.hpp"
#include "hbz/io.hpp"

namespace hbz {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("HANKEL_BEZIER_SEED")) {
        try {
            return std::stoull(env, nullptr, 0);
        } catch (const std::exception&) {
            // unparsable override: keep the built-in seed
        }
    }
    return kDefaultSeed;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    f << text;
}

std::vector<double> parse_value_list(const std::string& list)
{
    std::vector<double> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || tok.find_first_not_of(" \t", used) != std::string::npos)
            throw Error(ErrorCode::ParseError, "bad number '" + tok + "' in value list");
        out.push_back(v);
    }
    return out;
}

nlohmann::json cjson(cplx z)
{
    return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json cjson(const std::vector<cplx>& v)
{
    nlohmann::json a = nlohmann::json::array();
    for (cplx z : v)
        a.push_back(cjson(z));
    return a;
}

std::string ctext(cplx z)
{
    std::string s = format_double(z.real());
    if (z.imag() != 0.0)
        s += (z.imag() < 0 ? " - " : " + ") + format_double(std::abs(z.imag())) + "i";
    return s;
}

struct Common {
    std::uint64_t seed = default_seed();
    std::string precondition = "auto";
    std::string output;
};

PreconditionMode precondition_flag(const std::string& s)
{
    const auto m = parse_precondition(s);
    if (!m)
        throw Error(ErrorCode::InvalidArgument, "unknown --precondition '" + s + "' (auto, always, never)");
    return *m;
}

Method method_flag(const std::string& s)
{
    const auto m = parse_method(s);
    if (!m)
        throw Error(ErrorCode::InvalidArgument,
            "unknown method '" + s + "' (casteljau, hankel, hankel-precond, pascal)");
    return *m;
}

// ---- eval ----

struct EvalArgs {
    std::string input;
    std::string method = "casteljau";
    std::size_t grid = 129;
    bool svg = false;
};

int cmd_eval(const EvalArgs& a, const Common& c, std::ostream& out, std::ostream& err)
{
    const Method method = method_flag(a.method);
    const PreconditionMode mode = precondition_flag(c.precondition);
    if (a.grid < 1)
        throw Error(ErrorCode::InvalidArgument, "--grid must be at least 1");
    const ControlPolygon poly = parse_polygon_file(a.input);

    EvalOptions opts;
    opts.factorization.rng_seed = c.seed;
    opts.precondition = mode;
    const CurveSamples samples = evaluate_curve(poly, EvalGrid::uniform(a.grid), method, opts);

    if (samples.degree_elevated)
        err << "note: " << poly.size() << " control points; degree-elevated to " << poly.size() + 1
            << " for the Hankel form\n";
    write_output(c.output, a.svg ? samples_to_svg(samples, poly) : samples_to_csv(samples), out);
    if (samples.fell_back) {
        err << "warning: " << to_string(method) << " fell back to de Casteljau: " << samples.fallback_reason << '\n';
        return kExitDegraded;
    }
    return kExitOk;
}

// ---- factor ----

struct FactorArgs {
    std::string input;
    std::string values;
    bool json = false;
};

int cmd_factor(const FactorArgs& a, const Common& c, std::ostream& out, std::ostream& err)
{
    const PreconditionMode mode = precondition_flag(c.precondition);
    std::vector<std::vector<double>> axes;
    if (!a.values.empty()) {
        axes.push_back(parse_value_list(a.values));
    } else if (!a.input.empty()) {
        const ControlPolygon poly = parse_polygon_file(a.input);
        for (std::size_t k = 0; k < poly.dim(); ++k)
            axes.push_back(poly.axis(k));
    } else {
        throw Error(ErrorCode::InvalidArgument, "give --values or an input polygon file");
    }

    FactorizationConfig cfg;
    cfg.rng_seed = c.seed;
    nlohmann::json report = {{"axes", nlohmann::json::array()}};
    std::ostringstream text;

    for (std::size_t k = 0; k < axes.size(); ++k) {
        const HankelMatrix h = hankel_from_coords(axes[k]);
        HankelAxisModel ax;
        try {
            ax = build_axis_model(h, cfg, mode);
        } catch (const RetriesExhausted& e) {
            err << "error: axis " << k << ": " << e.what() << '\n'
                << "best residual: " << format_double(e.best_residual()) << '\n';
            return kExitError;
        }
        const double cond = ax.zero ? condition_estimate(h) : ax.condition;
        nlohmann::json j = {
            {"axis", k},
            {"order", h.order()},
            {"condition", std::isfinite(cond) ? nlohmann::json(cond) : nlohmann::json(nullptr)},
            {"sigma", ax.sigma ? nlohmann::json(*ax.sigma) : nlohmann::json(nullptr)},
            {"zero", ax.zero},
        };
        text << "axis " << k << ": order " << h.order() << ", condition " << format_double(cond) << '\n';
        if (ax.sigma)
            text << "  preconditioned: sigma = " << format_double(*ax.sigma) << '\n';
        if (ax.zero) {
            text << "  all-zero axis, nothing to factorize\n";
        } else {
            const auto& f = ax.factorization;
            j["gamma"] = cjson(f.gamma_used);
            j["residual"] = f.residual;
            j["nodes"] = cjson(f.nodes);
            j["weights"] = cjson(f.weights);
            text << "  gamma = " << ctext(f.gamma_used) << "\n  residual = " << format_double(f.residual) << '\n';
            for (std::size_t i = 0; i < f.nodes.size(); ++i)
                text << "  t[" << i << "] = " << ctext(f.nodes[i]) << "    d[" << i << "] = " << ctext(f.weights[i])
                     << '\n';
        }
        report["axes"].push_back(j);
    }
    write_output(c.output, a.json ? report.dump(2) + "\n" : text.str(), out);
    return kExitOk;
}

// ---- bench ----

struct BenchArgs {
    std::string n_values;
    std::string methods;
    std::size_t grid = 129;
    int reps = 11;
    std::string condition = "any";
    std::string format = "csv";
};

int cmd_bench(const BenchArgs& a, const Common& c, std::ostream& out, std::ostream&)
{
    BenchmarkConfig cfg;
    cfg.seed = c.seed;
    cfg.grid_size = a.grid;
    cfg.repetitions = a.reps;
    cfg.precondition = precondition_flag(c.precondition);
    if (!a.n_values.empty()) {
        cfg.n_values.clear();
        for (double v : parse_value_list(a.n_values)) {
            if (v < 0 || v != std::floor(v))
                throw Error(ErrorCode::InvalidArgument, "--n takes integers");
            cfg.n_values.push_back(static_cast<std::size_t>(v));
        }
    }
    if (!a.methods.empty()) {
        cfg.methods.clear();
        std::stringstream ss(a.methods);
        std::string tok;
        while (std::getline(ss, tok, ','))
            cfg.methods.push_back(method_flag(tok));
    }
    if (a.condition == "well")
        cfg.condition_filter = std::make_pair(0.0, std::nextafter(kWellConditionedMax, 0.0));
    else if (a.condition == "ill")
        cfg.condition_filter = std::make_pair(std::nextafter(kIllConditionedMin, kWellConditionedMax),
            std::numeric_limits<double>::infinity());
    else if (a.condition != "any")
        throw Error(ErrorCode::InvalidArgument, "--condition takes any, well or ill");
    const auto format = parse_report_format(a.format);
    if (!format)
        throw Error(ErrorCode::InvalidArgument, "--format takes csv, markdown or json");
    cfg.validate();

    const BenchmarkReport report = run_benchmark(cfg);
    out << emit_report(report, ReportFormat::Markdown);
    if (!c.output.empty())
        write_output(c.output, emit_report(report, *format), out);
    return kExitOk;
}

// ---- gen / elevate ----

struct GenArgs {
    std::size_t n = 15;
    std::size_t d = 2;
    std::string condition = "any";
};

int cmd_gen(const GenArgs& a, const Common& c, std::ostream& out, std::ostream&)
{
    ControlPolygon poly;
    if (a.condition == "any") {
        poly = generate_control_points(a.n, a.d, c.seed);
    } else {
        if (a.d != 2)
            throw Error(ErrorCode::InvalidArgument, "conditioned instances are planar (--d 2)");
        if (a.condition == "well")
            poly = generate_conditioned_instance(a.n, c.seed, Conditioning::Well);
        else if (a.condition == "ill")
            poly = generate_conditioned_instance(a.n, c.seed, Conditioning::Ill);
        else
            throw Error(ErrorCode::InvalidArgument, "--condition takes any, well or ill");
    }
    write_output(c.output, format_polygon(poly), out);
    return kExitOk;
}

int cmd_elevate(const std::string& input, const Common& c, std::ostream& out, std::ostream&)
{
    write_output(c.output, format_polygon(degree_elevate(parse_polygon_file(input))), out);
    return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool with_precondition)
{
    sub->add_option("--seed", c.seed, "RNG seed (default: $HANKEL_BEZIER_SEED or 1)");
    sub->add_option("-o,--output", c.output, "output file (default: stdout)");
    if (with_precondition)
        sub->add_option("--precondition", c.precondition, "skew-diagonal shift: auto, always, never");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bezier curve evaluation through Vandermonde factorizations of Hankel matrices", "hbz"};
    app.require_subcommand(1);

    Common common;
    EvalArgs eval_args;
    FactorArgs factor_args;
    BenchArgs bench_args;
    GenArgs gen_args;
    std::string elevate_input;

    auto* eval = app.add_subcommand("eval", "evaluate a curve on a uniform grid");
    eval->add_option("input", eval_args.input, "polygon file")->required();
    eval->add_option("-m,--method", eval_args.method, "casteljau, hankel, hankel-precond or pascal");
    eval->add_option("-g,--grid", eval_args.grid, "number of grid points s = k/(g-1)");
    eval->add_flag("--svg", eval_args.svg, "write an SVG drawing instead of CSV");
    add_common(eval, common, true);

    auto* factor = app.add_subcommand("factor", "show the Vandermonde factorization of coordinate Hankels");
    factor->add_option("input", factor_args.input, "polygon file (one factorization per axis)");
    factor->add_option("-v,--values", factor_args.values, "comma-separated anti-diagonals h_1..h_{2m-1}");
    factor->add_flag("--json", factor_args.json, "machine-readable output");
    add_common(factor, common, true);

    auto* bench = app.add_subcommand("bench", "time and compare the evaluation methods");
    bench->add_option("--n", bench_args.n_values, "comma-separated odd control counts");
    bench->add_option("--methods", bench_args.methods, "comma-separated method names");
    bench->add_option("-g,--grid", bench_args.grid, "grid points per curve");
    bench->add_option("--reps", bench_args.reps, "timed repetitions (median is reported)");
    bench->add_option("--condition", bench_args.condition, "instance filter: any, well (<1e4) or ill (>5e2)");
    bench->add_option("-f,--format", bench_args.format, "format of --output: csv, markdown or json");
    add_common(bench, common, true);

    auto* gen = app.add_subcommand("gen", "generate random control points in [0,1]^d");
    gen->add_option("-n,--n", gen_args.n, "number of control points");
    gen->add_option("-d,--d", gen_args.d, "dimension");
    gen->add_option("--condition", gen_args.condition, "any, well or ill (planar, odd n)");
    add_common(gen, common, false);

    auto* elevate = app.add_subcommand("elevate", "degree-elevate a control polygon");
    elevate->add_option("input", elevate_input, "polygon file")->required();
    add_common(elevate, common, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitError;
    }

    try {
        if (eval->parsed())
            return cmd_eval(eval_args, common, out, err);
        if (factor->parsed())
            return cmd_factor(factor_args, common, out, err);
        if (bench->parsed())
            return cmd_bench(bench_args, common, out, err);
        if (gen->parsed())
            return cmd_gen(gen_args, common, out, err);
        if (elevate->parsed())
            return cmd_elevate(elevate_input, common, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace hbz
