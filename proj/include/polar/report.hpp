#pragma once

#include "polar/simulation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace polar {

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(const std::string& s);

std::string format_csv(const std::vector<SweepPoint>& points);
std::string format_json(const std::vector<SweepPoint>& points);

// Write to a temporary file in the same directory, then rename over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

void emit_report(const std::vector<SweepPoint>& points, ReportFormat format, const std::filesystem::path& path);

} // namespace polar
