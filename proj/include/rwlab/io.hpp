#pragma once

// Output formats: CSV (authoritative), minimal SVG line charts, JSON run records.
//
// CSV: header row, comma separator, '.' decimal point, every real printed with
// 17 significant digits by std::to_chars (locale independent, round-trips
// doubles). Undefined values are written as NA.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace rwlab::io {

inline constexpr const char* kMissing = "NA";

inline std::string format_double(double v)
{
    if (std::isnan(v)) return kMissing;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path), path_(path)
    {
        if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
        write_fields(header);
    }

    void row(const std::vector<double>& values)
    {
        std::vector<std::string> fields;
        fields.reserve(values.size());
        for (double v : values) fields.push_back(format_double(v));
        write_fields(fields);
    }

    void raw_row(const std::vector<std::string>& fields) { write_fields(fields); }

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    void write_fields(const std::vector<std::string>& fields)
    {
        for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
        out_ << '\n';
    }

    std::ofstream out_;
    std::filesystem::path path_;
};

struct Series {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
};

/// Static line chart; non-finite points are skipped. Optional log axes.
inline void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::vector<Series>& series, bool log_x = false,
                      bool log_y = false)
{
    constexpr double W = 720, H = 480, L = 80, R = 160, T = 40, B = 60;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!log_x || x > 0) && (!log_y || y > 0);
    };
    double x0 = HUGE_VAL, x1 = -HUGE_VAL, y0 = HUGE_VAL, y1 = -HUGE_VAL;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!usable(s.xs[i], s.ys[i])) continue;
            x0 = std::min(x0, tx(s.xs[i]));
            x1 = std::max(x1, tx(s.xs[i]));
            y0 = std::min(y0, ty(s.ys[i]));
            y1 = std::max(y1, ty(s.ys[i]));
        }
    if (!(x1 > x0)) x0 -= 1, x1 += 1;
    if (!(y1 > y0)) y0 -= 1, y1 += 1;
    auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double v) { return H - B - (ty(v) - y0) / (y1 - y0) * (H - T - B); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << xlabel << "</text>\n";
    out << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";
    auto tick = [](double v, bool logged) { return format_double(logged ? std::pow(10.0, v) : v).substr(0, 10); };
    for (int k = 0; k <= 4; ++k) {
        const double fx = x0 + (x1 - x0) * k / 4.0;
        const double fy = y0 + (y1 - y0) * k / 4.0;
        const double sx = L + (W - L - R) * k / 4.0;
        const double sy = H - B - (H - T - B) * k / 4.0;
        out << "<text x=\"" << sx << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\" font-size=\"10\">"
            << tick(fx, log_x) << "</text>\n";
        out << "<text x=\"" << L - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\" font-size=\"10\">"
            << tick(fy, log_y) << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = colors[k % 10];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            if (usable(s.xs[i], s.ys[i])) out << px(s.xs[i]) << ',' << py(s.ys[i]) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 + 16 * k << "\" font-size=\"12\" fill=\"" << color
            << "\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
}

/// ISO-8601 UTC timestamp with second resolution.
inline std::string utc_timestamp(std::chrono::system_clock::time_point tp = std::chrono::system_clock::now())
{
    const std::time_t tt = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance of one CLI invocation, written as run.json next to the outputs.
struct RunRecord {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
    std::string tool_version = kToolVersion;
    std::optional<std::uint64_t> seed;

    nlohmann::json to_json() const
    {
        nlohmann::json j = {{"command", command},   {"config", config},   {"started", started},
                            {"finished", finished}, {"outputs", outputs}, {"tool_version", tool_version}};
        if (seed) j["seed"] = *seed;
        return j;
    }
};

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace rwlab::io
