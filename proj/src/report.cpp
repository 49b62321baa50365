#include "polar/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

#include <json.hpp>

namespace polar {

ReportFormat parse_report_format(const std::string& s)
{
	if (s == "csv")
		return ReportFormat::Csv;
	if (s == "json")
		return ReportFormat::Json;
	throw std::invalid_argument("unknown format '" + s + "' (csv|json)");
}

namespace {

std::string g6(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.6g", v);
	return buf;
}

double round6(double v) { return std::stod(g6(v)); }

void require_points(const std::vector<SweepPoint>& points)
{
	if (points.empty())
		throw std::invalid_argument("report: no sweep points");
}

} // namespace

std::string format_csv(const std::vector<SweepPoint>& points)
{
	require_points(points);
	std::string out = "ebno_db,frames,frame_errors,bler,avg_steps,avg_cycles,p_redecode,avg_comparisons,seed\n";
	for (const auto& p : points) {
		out += g6(p.ebno_db) + "," + std::to_string(p.frames) + "," + std::to_string(p.frame_errors) + "," +
			g6(p.bler) + "," + g6(p.avg_steps) + "," + g6(p.avg_cycles) + "," + g6(p.p_redecode) + "," +
			g6(p.avg_comparisons) + "," + std::to_string(p.seed) + "\n";
	}
	return out;
}

std::string format_json(const std::vector<SweepPoint>& points)
{
	require_points(points);
	auto arr = nlohmann::json::array();
	for (const auto& p : points) {
		arr.push_back({
			{"ebno_db", round6(p.ebno_db)},
			{"frames", p.frames},
			{"frame_errors", p.frame_errors},
			{"bler", round6(p.bler)},
			{"avg_steps", round6(p.avg_steps)},
			{"avg_cycles", round6(p.avg_cycles)},
			{"p_redecode", round6(p.p_redecode)},
			{"avg_comparisons", round6(p.avg_comparisons)},
			{"seed", p.seed},
			{"sigma", round6(p.sigma)},
			{"avg_hard_decided", round6(p.avg_hard_decided)},
		});
	}
	return arr.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
	const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if (!out)
			throw std::runtime_error("cannot write " + path.string());
		out << content;
		out.flush();
		if (!out) {
			std::error_code ec;
			std::filesystem::remove(tmp, ec);
			throw std::runtime_error("write failed for " + path.string());
		}
	}
	std::error_code ec;
	std::filesystem::rename(tmp, path, ec);
	if (ec) {
		std::filesystem::remove(tmp, ec);
		throw std::runtime_error("cannot write " + path.string() + ": " + ec.message());
	}
}

void emit_report(const std::vector<SweepPoint>& points, ReportFormat format, const std::filesystem::path& path)
{
	write_file_atomic(path, format == ReportFormat::Csv ? format_csv(points) : format_json(points));
}

} // namespace polar
