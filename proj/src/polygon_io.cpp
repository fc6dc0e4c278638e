#include "hbz/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hbz/bench.hpp"

namespace hbz {

namespace {

bool parse_number(std::string_view tok, double& out)
{
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+')
        ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

std::vector<std::string_view> split(std::string_view line, std::string_view seps)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const std::size_t start = line.find_first_not_of(seps, pos);
        if (start == std::string_view::npos)
            break;
        const std::size_t end = line.find_first_of(seps, start);
        out.push_back(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        pos = end == std::string_view::npos ? line.size() : end;
    }
    return out;
}

} // namespace

ControlPolygon parse_polygon(std::string_view text)
{
    std::vector<Point> pts;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto toks = split(line, " \t\r\f\v");
        if (toks.empty())
            continue;

        Point p;
        for (auto tok : toks) {
            double v = 0.0;
            if (!parse_number(tok, v))
                throw InputError(ErrorCode::ParseError, lineno, "not a number: '" + std::string(tok) + "'");
            p.push_back(v);
        }
        if (!pts.empty() && p.size() != pts.front().size())
            throw InputError(ErrorCode::DimensionMismatch, lineno,
                "expected " + std::to_string(pts.front().size()) + " coordinates, got " + std::to_string(p.size()));
        pts.push_back(std::move(p));
    }
    if (pts.size() < 2)
        throw InputError(ErrorCode::ParseError, lineno, "need at least 2 control points");
    try {
        return ControlPolygon(std::move(pts));
    } catch (const Error& e) {
        throw InputError(ErrorCode::ParseError, lineno, e.what());
    }
}

ControlPolygon parse_polygon_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_polygon(buf.str());
}

std::string format_polygon(const ControlPolygon& poly)
{
    std::string out;
    for (const auto& p : poly.points()) {
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k > 0)
                out += ' ';
            out += format_double(p[k]);
        }
        out += '\n';
    }
    return out;
}

std::string samples_to_csv(const CurveSamples& samples)
{
    const std::size_t d = samples.points.empty() ? 0 : samples.points.front().size();
    std::string out = "s";
    for (std::size_t k = 1; k <= d; ++k)
        out += ",x" + std::to_string(k);
    out += '\n';
    for (std::size_t j = 0; j < samples.points.size(); ++j) {
        out += format_double(samples.svalues[j]);
        for (double c : samples.points[j])
            out += ',' + format_double(c);
        out += '\n';
    }
    return out;
}

CurveSamples samples_from_csv(std::string_view text)
{
    CurveSamples out;
    std::size_t lineno = 0, pos = 0, width = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++lineno;
        const auto cells = split(line, ",\r");
        if (cells.empty())
            continue;
        if (lineno == 1) {
            width = cells.size();
            continue;
        }
        if (cells.size() != width)
            throw InputError(ErrorCode::DimensionMismatch, lineno, "row width differs from header");
        std::vector<double> vals(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k)
            if (!parse_number(cells[k], vals[k]))
                throw InputError(ErrorCode::ParseError, lineno, "not a number: '" + std::string(cells[k]) + "'");
        out.svalues.push_back(vals.front());
        out.points.emplace_back(vals.begin() + 1, vals.end());
    }
    return out;
}

std::string samples_to_svg(const CurveSamples& samples, const ControlPolygon& poly)
{
    auto xy = [](double s, const Point& p) -> std::pair<double, double> {
        if (p.size() >= 2)
            return {p[0], p[1]};
        return {s, p[0]};
    };
    std::vector<std::pair<double, double>> ctrl;
    for (std::size_t i = 0; i < poly.size(); ++i)
        ctrl.push_back(xy(poly.size() > 1 ? static_cast<double>(i) / static_cast<double>(poly.size() - 1) : 0.0, poly[i]));

    double x0 = ctrl.front().first, x1 = x0, y0 = ctrl.front().second, y1 = y0;
    for (auto [x, y] : ctrl) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-12});
    const double pad = 0.05 * span;
    const double w = (x1 - x0) + 2 * pad, h = (y1 - y0) + 2 * pad;
    const double stroke = 0.004 * span;
    // flip y so the picture has the usual orientation
    auto fmt = [&](double x, double y) { return format_double(x) + "," + format_double(y0 + y1 - y); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(x0 - pad) << ' '
       << format_double(y0 - pad) << ' ' << format_double(w) << ' ' << format_double(h) << "\">\n";
    os << "  <polyline fill=\"none\" stroke=\"#888\" stroke-width=\"" << format_double(stroke)
       << "\" stroke-dasharray=\"" << format_double(3 * stroke) << "\" points=\"";
    for (std::size_t i = 0; i < ctrl.size(); ++i)
        os << (i ? " " : "") << fmt(ctrl[i].first, ctrl[i].second);
    os << "\"/>\n";
    for (auto [x, y] : ctrl)
        os << "  <circle fill=\"#888\" r=\"" << format_double(2 * stroke) << "\" cx=\"" << format_double(x)
           << "\" cy=\"" << format_double(y0 + y1 - y) << "\"/>\n";
    os << "  <polyline fill=\"none\" stroke=\"#c22\" stroke-width=\"" << format_double(1.5 * stroke) << "\" points=\"";
    for (std::size_t j = 0; j < samples.points.size(); ++j) {
        const auto [x, y] = xy(samples.svalues[j], samples.points[j]);
        os << (j ? " " : "") << fmt(x, y);
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

} // namespace hbz
