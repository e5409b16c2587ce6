#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degenflow/selfsim.hpp"
#include "degenflow/solver.hpp"
#include "degenflow/state.hpp"

namespace degenflow {

/// Shortest round-trippable decimal form of a double (17 significant digits).
std::string format_g17(double x);

/// Snapshot CSV with header x,v,w,e; one row per cell, 17 significant digits.
void write_state_csv(const std::filesystem::path& path, const State& s);

/// Re-ingests a snapshot CSV. The grid (x0, h) is reconstructed from the x
/// column; the time stamp is supplied by the caller (it is not stored in the
/// CSV body).
State read_state_csv(const std::filesystem::path& path, double t);

/// Stable snapshot filename: snap_<index,3 digits>_t<time,6 decimals>.csv.
std::string snapshot_filename(std::size_t index, double t);

/// Writes all snapshots plus manifest.json (exact times at full precision).
std::vector<std::string> write_snapshot_bundle(const std::filesystem::path& dir,
                                               const SnapshotSeries& series);

struct ManifestEntry {
    std::size_t index = 0;
    double t = 0.0;
    std::string filename;
};
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir);

/// Rescaled-profile CSV with header y,v,w.
void write_rescaled_csv(const std::filesystem::path& path, const RescaledProfile& p);

/// Minimal SVG polyline plot, fixed 800x500 viewBox.
struct SvgSeries {
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    bool dashed = false;
};
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::vector<SvgSeries>& series);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);

} // namespace degenflow
