#include "degenflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace degenflow {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_state_csv(const std::filesystem::path& path, const State& s) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_state_csv: cannot open " + path.string());
    out << "x,v,w,e\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double e = 0.5 * s.v[i] * s.v[i] + s.w[i];
        out << format_g17(s.cell_center(i)) << ',' << format_g17(s.v[i]) << ','
            << format_g17(s.w[i]) << ',' << format_g17(e) << '\n';
    }
}

State read_state_csv(const std::filesystem::path& path, double t) {
    std::ifstream in(path);
    if (!in) throw ConfigError("read_state_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,v,w,e", 0) != 0)
        throw ConfigError("read_state_csv: missing x,v,w,e header in " + path.string());
    State s;
    s.t = t;
    std::vector<double> xs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double vals[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(row, cell, ','))
                throw ConfigError("read_state_csv: short row in " + path.string());
            vals[k] = std::stod(cell);
        }
        xs.push_back(vals[0]);
        s.v.push_back(vals[1]);
        s.w.push_back(vals[2]);
    }
    if (xs.size() < 2) throw ConfigError("read_state_csv: need at least 2 rows");
    s.h = xs[1] - xs[0];
    s.x0 = xs[0] - 0.5 * s.h;
    s.validate();
    return s;
}

std::string snapshot_filename(std::size_t index, double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "snap_%03zu_t%.6f.csv", index, t);
    return buf;
}

std::vector<std::string> write_snapshot_bundle(const std::filesystem::path& dir,
                                               const SnapshotSeries& series) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> names;
    nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < series.snapshots.size(); ++k) {
        const State& s = series.snapshots[k];
        const std::string name = snapshot_filename(k, s.t);
        write_state_csv(dir / name, s);
        names.push_back(name);
        manifest.push_back({{"index", k}, {"t", s.t}, {"filename", name}});
    }
    write_json(dir / "manifest.json", manifest);
    return names;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw ConfigError("read_manifest: no manifest.json in " + dir.string());
    nlohmann::json j;
    in >> j;
    std::vector<ManifestEntry> out;
    for (const auto& e : j)
        out.push_back({e.at("index").get<std::size_t>(), e.at("t").get<double>(),
                       e.at("filename").get<std::string>()});
    std::sort(out.begin(), out.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.index < b.index; });
    return out;
}

void write_rescaled_csv(const std::filesystem::path& path, const RescaledProfile& p) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_rescaled_csv: cannot open " + path.string());
    out << "y,v,w\n";
    for (std::size_t i = 0; i < p.v.size(); ++i)
        out << format_g17(p.cell_center(i)) << ',' << format_g17(p.v[i]) << ','
            << format_g17(p.w[i]) << '\n';
}

void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::vector<SvgSeries>& series) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double x_lo = 50, x_hi = 770, y_lo = 460, y_hi = 40;
    auto px = [&](double x) { return x_lo + (x - xmin) / (xmax - xmin) * (x_hi - x_lo); };
    auto py = [&](double y) { return y_lo + (y - ymin) / (ymax - ymin) * (y_hi - y_lo); };

    std::ofstream out(path);
    if (!out) throw ConfigError("write_svg_plot: cannot open " + path.string());
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n"
        << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
        << "</text>\n"
        << "<line x1=\"50\" y1=\"460\" x2=\"770\" y2=\"460\" stroke=\"black\"/>\n"
        << "<line x1=\"50\" y1=\"40\" x2=\"50\" y2=\"460\" stroke=\"black\"/>\n";
    char num[32];
    std::snprintf(num, sizeof(num), "%.4g", xmin);
    out << "<text x=\"50\" y=\"478\" font-size=\"12\">" << num << "</text>\n";
    std::snprintf(num, sizeof(num), "%.4g", xmax);
    out << "<text x=\"770\" y=\"478\" text-anchor=\"end\" font-size=\"12\">" << num
        << "</text>\n";
    std::snprintf(num, sizeof(num), "%.4g", ymin);
    out << "<text x=\"46\" y=\"460\" text-anchor=\"end\" font-size=\"12\">" << num
        << "</text>\n";
    std::snprintf(num, sizeof(num), "%.4g", ymax);
    out << "<text x=\"46\" y=\"44\" text-anchor=\"end\" font-size=\"12\">" << num << "</text>\n";
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\""
            << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        for (const auto& [x, y] : s.points) {
            std::snprintf(num, sizeof(num), "%.2f,%.2f ", px(x), py(y));
            out << num;
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_json: cannot open " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace degenflow
