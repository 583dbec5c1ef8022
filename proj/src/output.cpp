// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellsim/output.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bellsim/config.hpp"

namespace bellsim {

void ResultTable::add_column(const std::string& name, std::vector<double> values)
{
    if (!columns_.empty() && columns_.front().second.size() != values.size()) {
        throw DimensionError("ResultTable: column length mismatch");
    }
    columns_.emplace_back(name, std::move(values));
}

void ResultTable::set_meta(const std::string& key, const std::string& value)
{
    for (auto& e : metadata_) {
        if (e.first == key) {
            e.second = value;
            return;
        }
    }
    metadata_.emplace_back(key, value);
}

std::string ResultTable::meta(const std::string& key) const
{
    for (const auto& e : metadata_) {
        if (e.first == key) {
            return e.second;
        }
    }
    return "";
}

const std::vector<double>& ResultTable::column(const std::string& name) const
{
    for (const auto& c : columns_) {
        if (c.first == name) {
            return c.second;
        }
    }
    throw DimensionError("ResultTable: no column '" + name + "'");
}

size_t ResultTable::rows() const
{
    return columns_.empty() ? 0 : columns_.front().second.size();
}

std::string ResultTable::to_csv() const
{
    std::ostringstream os;
    for (const auto& [k, v] : metadata_) {
        os << "# " << k << " = " << v << "\n";
    }
    for (size_t c = 0; c < columns_.size(); ++c) {
        os << (c ? "," : "") << columns_[c].first;
    }
    os << "\n";
    const size_t n = rows();
    for (size_t i = 0; i < n; ++i) {
        for (size_t c = 0; c < columns_.size(); ++c) {
            os << (c ? "," : "") << format_double(columns_[c].second[i]);
        }
        os << "\n";
    }
    return os.str();
}

void ResultTable::write_csv(const std::string& path) const
{
    std::ofstream out(path);
    if (!out) {
        throw SimError("cannot write '" + path + "'");
    }
    out << to_csv();
}

std::string ResultTable::to_json(bool with_timestamp) const
{
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    for (const auto& [k, v] : metadata_) {
        meta[k] = v;
    }
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
        meta["timestamp"] = buf;
    }
    j["metadata"] = std::move(meta);
    nlohmann::ordered_json cols;
    for (const auto& [name, values] : columns_) {
        cols[name] = values;
    }
    j["columns"] = std::move(cols);
    return j.dump(2);
}

void ResultTable::write_json(const std::string& path, bool with_timestamp) const
{
    std::ofstream out(path);
    if (!out) {
        throw SimError("cannot write '" + path + "'");
    }
    out << to_json(with_timestamp) << "\n";
}

namespace {

struct Rgb {
    int r, g, b;
};

// Diverging blue-white-red palette centered at the contour level.
Rgb diverging_color(double v, double level, double lo, double hi)
{
    if (std::isnan(v)) {
        return {200, 200, 200};
    }
    const auto lerp = [](int a, int b, double t) {
        return static_cast<int>(std::lround(a + (b - a) * t));
    };
    if (v <= level) {
        const double span = std::max(level - lo, 1e-12);
        const double t = std::clamp((v - lo) / span, 0.0, 1.0);
        return {lerp(33, 255, t), lerp(102, 255, t), lerp(172, 255, t)};
    }
    const double span = std::max(hi - level, 1e-12);
    const double t = std::clamp((v - level) / span, 0.0, 1.0);
    return {lerp(255, 178, t), lerp(255, 24, t), lerp(255, 43, t)};
}

} // namespace

void write_svg_heatmap(const std::string& path, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::vector<double>& xs, const std::vector<double>& ys,
                       const RealMatrix& values, double level)
{
    const long nx = static_cast<long>(xs.size());
    const long ny = static_cast<long>(ys.size());
    if (values.rows() != nx || values.cols() != ny || nx < 2 || ny < 2) {
        throw DimensionError("write_svg_heatmap: grid/value shape mismatch");
    }
    constexpr double kPlotW = 560.0, kPlotH = 420.0, kMargL = 70.0, kMargB = 50.0,
                     kMargT = 34.0, kMargR = 20.0;
    const double width = kMargL + kPlotW + kMargR;
    const double height = kMargT + kPlotH + kMargB;

    double lo = level, hi = level;
    for (long i = 0; i < nx; ++i) {
        for (long j = 0; j < ny; ++j) {
            const double v = values(i, j);
            if (!std::isnan(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }

    const double cw = kPlotW / nx;
    const double ch = kPlotH / ny;
    const auto px = [&](double i) { return kMargL + i * cw; };
    const auto py = [&](double j) { return kMargT + kPlotH - (j + 1.0) * ch; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (long i = 0; i < nx; ++i) {
        for (long j = 0; j < ny; ++j) {
            const Rgb c = diverging_color(values(i, j), level, lo, hi);
            os << "<rect x=\"" << format_double(px(i)) << "\" y=\"" << format_double(py(j))
               << "\" width=\"" << format_double(cw + 0.5) << "\" height=\""
               << format_double(ch + 0.5) << "\" fill=\"rgb(" << c.r << "," << c.g << ","
               << c.b << ")\"/>\n";
        }
    }

    // marching-squares contour of values == level on the cell-center grid
    os << "<g stroke=\"black\" stroke-width=\"1.2\" fill=\"none\">\n";
    const auto interp = [&](double a, double b) { return (level - a) / (b - a); };
    for (long i = 0; i + 1 < nx; ++i) {
        for (long j = 0; j + 1 < ny; ++j) {
            const double v00 = values(i, j), v10 = values(i + 1, j);
            const double v01 = values(i, j + 1), v11 = values(i + 1, j + 1);
            if (std::isnan(v00) || std::isnan(v10) || std::isnan(v01) || std::isnan(v11)) {
                continue;
            }
            std::vector<std::pair<double, double>> pts;
            // edge crossings in cell-center coordinates (i+), (j+)
            if ((v00 < level) != (v10 < level)) {
                pts.emplace_back(i + interp(v00, v10), static_cast<double>(j));
            }
            if ((v01 < level) != (v11 < level)) {
                pts.emplace_back(i + interp(v01, v11), j + 1.0);
            }
            if ((v00 < level) != (v01 < level)) {
                pts.emplace_back(static_cast<double>(i), j + interp(v00, v01));
            }
            if ((v10 < level) != (v11 < level)) {
                pts.emplace_back(i + 1.0, j + interp(v10, v11));
            }
            if (pts.size() >= 2) {
                for (size_t a = 0; a + 1 < pts.size(); a += 2) {
                    os << "<line x1=\"" << format_double(px(pts[a].first + 0.5)) << "\" y1=\""
                       << format_double(py(pts[a].second + 0.5) + ch * 0.5) << "\" x2=\""
                       << format_double(px(pts[a + 1].first + 0.5)) << "\" y2=\""
                       << format_double(py(pts[a + 1].second + 0.5) + ch * 0.5) << "\"/>\n";
                }
            }
        }
    }
    os << "</g>\n";

    // frame and labels
    os << "<rect x=\"" << kMargL << "\" y=\"" << kMargT << "\" width=\"" << kPlotW
       << "\" height=\"" << kPlotH << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kMargL << "\" y=\"" << kMargT - 12
       << "\" font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
    os << "<text x=\"" << kMargL + kPlotW / 2 << "\" y=\"" << height - 12
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << xlabel
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << kMargT + kPlotH / 2
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
          "transform=\"rotate(-90 16 "
       << kMargT + kPlotH / 2 << ")\">" << ylabel << "</text>\n";
    const auto tick = [&](double frac, double value, bool xaxis) {
        if (xaxis) {
            os << "<text x=\"" << kMargL + frac * kPlotW << "\" y=\"" << kMargT + kPlotH + 18
               << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
               << format_double(value) << "</text>\n";
        } else {
            os << "<text x=\"" << kMargL - 6 << "\" y=\"" << kMargT + kPlotH - frac * kPlotH + 4
               << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
               << format_double(value) << "</text>\n";
        }
    };
    tick(0.0, xs.front(), true);
    tick(0.5, xs[nx / 2], true);
    tick(1.0, xs.back(), true);
    tick(0.0, ys.front(), false);
    tick(0.5, ys[ny / 2], false);
    tick(1.0, ys.back(), false);
    os << "</svg>\n";

    std::ofstream out(path);
    if (!out) {
        throw SimError("cannot write '" + path + "'");
    }
    out << os.str();
}

} // namespace bellsim
