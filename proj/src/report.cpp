#include "hbz/bench.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace hbz {

using nlohmann::json;

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept
{
    if (name == "csv")
        return ReportFormat::Csv;
    if (name == "markdown" || name == "md")
        return ReportFormat::Markdown;
    if (name == "json")
        return ReportFormat::Json;
    return std::nullopt;
}

namespace {

// json has no inf/nan; null stands for +inf (a singular axis)
json number(double v)
{
    if (std::isfinite(v))
        return v;
    return nullptr;
}

double number_from(const json& j)
{
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

Method method_from(const json& j)
{
    const auto m = parse_method(j.get<std::string>());
    if (!m)
        throw Error(ErrorCode::ParseError, "unknown method '" + j.get<std::string>() + "' in report");
    return *m;
}

json to_json(const BenchmarkConfig& c)
{
    json methods = json::array();
    for (Method m : c.methods)
        methods.push_back(std::string(to_string(m)));
    json filter = nullptr;
    if (c.condition_filter)
        filter = json::array({number(c.condition_filter->first), number(c.condition_filter->second)});
    return {
        {"n_values", c.n_values},
        {"grid_size", c.grid_size},
        {"repetitions", c.repetitions},
        {"seed", c.seed},
        {"methods", methods},
        {"condition_filter", filter},
        {"precondition", std::string(to_string(c.precondition))},
    };
}

BenchmarkConfig config_from(const json& j)
{
    BenchmarkConfig c;
    c.n_values = j.at("n_values").get<std::vector<std::size_t>>();
    c.grid_size = j.at("grid_size").get<std::size_t>();
    c.repetitions = j.at("repetitions").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.methods.clear();
    for (const auto& m : j.at("methods"))
        c.methods.push_back(method_from(m));
    const auto& f = j.at("condition_filter");
    if (!f.is_null())
        c.condition_filter = std::make_pair(f.at(0).is_null() ? 0.0 : f.at(0).get<double>(), number_from(f.at(1)));
    const auto p = parse_precondition(j.at("precondition").get<std::string>());
    if (!p)
        throw Error(ErrorCode::ParseError, "unknown precondition mode in report");
    c.precondition = *p;
    return c;
}

std::string emit_csv(const BenchmarkReport& r)
{
    std::string out = "n,method,median_time_s,error_norm,cond,fallbacks\n";
    for (const auto& row : r.rows) {
        out += std::to_string(row.n) + ',' + std::string(to_string(row.method)) + ','
            + format_double(row.median_time_seconds) + ',' + format_double(row.error_norm) + ','
            + format_double(row.condition_estimate) + ',' + std::to_string(row.fallback_count) + '\n';
    }
    return out;
}

std::string column_tag(Method m)
{
    switch (m) {
    case Method::Casteljau: return "C";
    case Method::Hankel: return "H";
    case Method::HankelPrecond: return "PH";
    case Method::Pascal: return "P";
    }
    return "?";
}

std::string sci(double v, int digits = 4)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits) << v;
    return os.str();
}

// One line per N, one time column and one error column per method.
std::string emit_markdown(const BenchmarkReport& r)
{
    std::vector<Method> methods = r.config.methods;
    std::vector<std::size_t> ns;
    std::map<std::pair<std::size_t, Method>, const BenchmarkRow*> cell;
    for (const auto& row : r.rows) {
        if (std::find(ns.begin(), ns.end(), row.n) == ns.end())
            ns.push_back(row.n);
        if (std::find(methods.begin(), methods.end(), row.method) == methods.end())
            methods.push_back(row.method);
        cell[{row.n, row.method}] = &row;
    }

    std::string out = "| N | cond(H) |";
    std::string rule = "|---|---|";
    for (Method m : methods) {
        out += " Time (" + column_tag(m) + ") |";
        rule += "---|";
    }
    for (Method m : methods) {
        if (m == Method::Casteljau)
            continue;
        out += " ||B_C - B_" + column_tag(m) + "|| |";
        rule += "---|";
    }
    out += " Fallbacks |\n" + rule + "---|\n";

    for (std::size_t n : ns) {
        double cond = 0.0;
        int fallbacks = 0;
        std::string times, errors;
        for (Method m : methods) {
            const auto it = cell.find({n, m});
            const BenchmarkRow* row = it == cell.end() ? nullptr : it->second;
            if (row) {
                cond = row->condition_estimate;
                fallbacks += row->fallback_count;
            }
            times += " " + (row ? sci(row->median_time_seconds, 3) + "s" : std::string("-")) + " |";
            if (m != Method::Casteljau)
                errors += " " + (row ? sci(row->error_norm) : std::string("-")) + " |";
        }
        out += "| " + std::to_string(n) + " | " + sci(cond) + " |" + times + errors + " " + std::to_string(fallbacks)
            + " |\n";
    }
    if (!r.environment.empty())
        out += "\n" + r.environment + "\n";
    return out;
}

std::string emit_json(const BenchmarkReport& r)
{
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({
            {"n", row.n},
            {"method", std::string(to_string(row.method))},
            {"median_time_seconds", number(row.median_time_seconds)},
            {"error_norm", number(row.error_norm)},
            {"condition_estimate", number(row.condition_estimate)},
            {"fallback_count", row.fallback_count},
        });
    json j = {{"config", to_json(r.config)}, {"rows", rows}, {"environment", r.environment}};
    return j.dump(2) + "\n";
}

} // namespace

std::string emit_report(const BenchmarkReport& report, ReportFormat format)
{
    switch (format) {
    case ReportFormat::Csv: return emit_csv(report);
    case ReportFormat::Markdown: return emit_markdown(report);
    case ReportFormat::Json: return emit_json(report);
    }
    return {};
}

BenchmarkReport parse_report_json(std::string_view text)
{
    try {
        const json j = json::parse(text);
        BenchmarkReport r;
        r.config = config_from(j.at("config"));
        for (const auto& row : j.at("rows")) {
            BenchmarkRow b;
            b.n = row.at("n").get<std::size_t>();
            b.method = method_from(row.at("method"));
            b.median_time_seconds = number_from(row.at("median_time_seconds"));
            b.error_norm = number_from(row.at("error_norm"));
            b.condition_estimate = number_from(row.at("condition_estimate"));
            b.fallback_count = row.at("fallback_count").get<int>();
            r.rows.push_back(b);
        }
        r.environment = j.at("environment").get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed report json: ") + e.what());
    }
}

} // namespace hbz
