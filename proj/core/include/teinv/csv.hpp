#pragma once
// Plain-text exchange formats: two-column field CSVs with full double
// precision, trajectory and history exports, key = value metadata sidecars,
// and the versioned summary table.

#include <map>
#include <string>
#include <vector>

#include "teinv/experiment.hpp"

namespace teinv {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_full(double v);

void write_field_csv(const std::string& path, const Field& f);
Field read_field_csv(const std::string& path);

/// Columns t, x, u, theta over all time levels.
void write_trajectory_csv(const std::string& path, const ForwardSolution& sol);

/// Columns k, cost, discrepancy, e_r (e_r empty when no truth was supplied).
void write_history_csv(const std::string& path, const ReconstructionResult& result);

/// Ordered `key = value` lines; '#' starts a comment.
void write_metadata(const std::string& path, const std::vector<std::pair<std::string, std::string>>& entries);
std::map<std::string, std::string> read_metadata(const std::string& path);

void write_measurement(const std::string& csv_path, const std::string& meta_path,
                       const Measurement& m);
Measurement read_measurement(const std::string& csv_path, const std::string& meta_path);

inline constexpr const char* kSummarySchema = "teinv-summary-v1";

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);

/// One summary row in the CSV schema (no trailing newline).
std::string summary_row_line(const SummaryRow& row);

}  // namespace teinv
