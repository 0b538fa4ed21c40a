#pragma once

// JSON and CSV emission. Layouts are documented in docs/report_format.md and
// pinned by the golden-file tests; bump kReportSchemaVersion on any change.

#include <json.hpp>

#include <ostream>
#include <span>

#include "gramsum/experiment.hpp"
#include "gramsum/gram.hpp"
#include "gramsum/kernels.hpp"

namespace gramsum {

inline constexpr int kReportSchemaVersion = 1;

/// Volatile fields (timestamp, elapsed time, worker count) live under this
/// key so reports can be compared byte-for-byte after removing it.
inline constexpr const char* kRunInfoKey = "run_info";

nlohmann::ordered_json to_json(const ExperimentParams& p);
nlohmann::ordered_json to_json(const NRange& r);
nlohmann::ordered_json to_json(const MomentReport& r);
nlohmann::ordered_json to_json(const ExperimentResult& result);
nlohmann::ordered_json to_json(const SweepResult& sweep);
nlohmann::ordered_json to_json(const IdentitySummary& summary);
nlohmann::ordered_json to_json(const GramInterval& gi);
nlohmann::ordered_json to_json(const SumValues& v);

/// Copy of `j` without the run_info block.
nlohmann::ordered_json without_run_info(nlohmann::ordered_json j);

/// nu,t,S,w,w1,S_star_mag
void write_points_csv(std::ostream& os, std::span<const PointRecord> points);
/// nu,t,residual
void write_gram_csv(std::ostream& os, const GramInterval& gi);
/// Column list in sweep_csv_columns().
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);
std::span<const char* const> sweep_csv_columns();

/// %.17g
std::string format_double(double x);

}  // namespace gramsum
