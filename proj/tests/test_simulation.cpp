#include "polar/report.hpp"
#include "polar/simulation.hpp"
#include "polar/srfsc_decoder.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace polar;

namespace {

bool same(const SweepPoint& a, const SweepPoint& b)
{
	return a.frames == b.frames && a.frame_errors == b.frame_errors && a.bler == b.bler &&
		a.avg_steps == b.avg_steps && a.avg_cycles == b.avg_cycles && a.p_redecode == b.p_redecode &&
		a.avg_comparisons == b.avg_comparisons && a.avg_hard_decided == b.avg_hard_decided;
}

std::string slurp(const std::filesystem::path& p)
{
	std::ifstream in(p);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

} // namespace

TEST_CASE("channel")
{
	CHECK(sigma_from_ebno(0.0, 0.5) == doctest::Approx(1.0));
	CHECK(sigma_from_ebno(10.0 * std::log10(2.0), 0.5) == doctest::Approx(std::sqrt(0.5)));

	std::mt19937_64 rng(5);
	const double sigma = 0.8;
	Bits x(200000);
	for (std::size_t k = 0; k < x.size(); ++k)
		x[k] = k % 3 == 0;
	const auto llr = awgn_channel(x, sigma, rng);
	double mean = 0, var = 0;
	for (std::size_t k = 0; k < x.size(); ++k) {
		const double y = llr[k] * sigma * sigma / 2.0 - (x[k] ? -1.0 : 1.0);
		mean += y;
		var += y * y;
	}
	mean /= double(x.size());
	var /= double(x.size());
	CHECK(std::abs(mean) < 0.01);
	CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.02));
	CHECK_THROWS(awgn_channel(x, 0.0, rng));
}

TEST_CASE("frame seeds")
{
	CHECK(frame_seed(1, 0, 0) != frame_seed(1, 0, 1));
	CHECK(frame_seed(1, 0, 5) != frame_seed(1, 1, 5));
	CHECK(frame_seed(1, 2, 3) == frame_seed(1, 2, 3));
	CHECK(splitmix64(0) == 0xe220a8397b1dcdafull);
}

TEST_CASE("sweeps are deterministic and independent of the worker count")
{
	const CodeSpec spec = construct_frozen_set(7, 64, sigma_from_ebno(2.0, 0.5));
	SweepConfig cfg;
	cfg.decoder = DecoderKind::Ta;
	cfg.epsilon = 0.9;
	cfg.stop = {40, 3000};
	cfg.seed = 99;
	cfg.workers = 1;
	const auto a = run_sweep(spec, {1.0, 3.0}, cfg);
	const auto b = run_sweep(spec, {1.0, 3.0}, cfg);
	cfg.workers = 3;
	const auto c = run_sweep(spec, {1.0, 3.0}, cfg);
	REQUIRE(a.size() == 2);
	for (int p = 0; p < 2; ++p) {
		CHECK(same(a[p], b[p]));
		CHECK(same(a[p], c[p]));
	}
	CHECK(a[0].frame_errors == 40);
	CHECK(a[0].bler == doctest::Approx(40.0 / double(a[0].frames)));
	cfg.seed = 100;
	CHECK_FALSE(same(run_sweep(spec, {1.0}, cfg)[0], a[0]));
}

TEST_CASE("sweep stop rules and configuration errors")
{
	const CodeSpec spec = construct_frozen_set(6, 32, 0.8);
	SweepConfig cfg;
	cfg.stop = {1000000, 300};
	const auto pts = run_sweep(spec, {8.0}, cfg);
	CHECK(pts[0].frames == 300);
	CHECK(pts[0].avg_steps == double(schedule_time_steps(spec, make_plan(spec), Schedule::Srfsc).time_steps));

	CHECK_THROWS(run_sweep(spec, {}, cfg));
	cfg.decoder = DecoderKind::Ta;
	CHECK_THROWS(run_sweep(spec, {1.0}, cfg));
	cfg.decoder = DecoderKind::Multistage;
	cfg.epsilon = 0.9;
	CHECK_THROWS(run_sweep(spec, {1.0}, cfg));
	cfg.decoder = DecoderKind::Sc;
	cfg.stop = {0, 10};
	CHECK_THROWS(run_sweep(spec, {1.0}, cfg));
	CHECK_THROWS(parse_decoder_kind("fast"));
	CHECK(parse_decoder_kind("multistage") == DecoderKind::Multistage);
}

TEST_CASE("sc sweep charges 2N - 2 steps")
{
	const CodeSpec spec = construct_frozen_set(6, 32, 0.8);
	SweepConfig cfg;
	cfg.decoder = DecoderKind::Sc;
	cfg.stop = {5, 200};
	CHECK(run_sweep(spec, {2.0}, cfg)[0].avg_steps == 126.0);
}

TEST_CASE("multistage sweep accounting")
{
	const CodeSpec spec = construct_frozen_set(8, 128, sigma_from_ebno(2.5, 0.5), std::nullopt, CrcSpec::crc11());
	const double srfsc = double(schedule_time_steps(spec, make_plan(spec), Schedule::Srfsc).time_steps);
	SweepConfig cfg;
	cfg.decoder = DecoderKind::Multistage;
	cfg.epsilon = 0.9;
	cfg.stop = {30, 2000};
	for (const auto& p : run_sweep(spec, {2.0, 4.0}, cfg)) {
		const double total = p.avg_first_attempt_steps * double(p.frames) + p.p_redecode * double(p.frames) * srfsc;
		CHECK(p.avg_steps * double(p.frames) == doctest::Approx(total).epsilon(1e-12));
		CHECK(p.avg_steps <= srfsc * (1.0 + p.p_redecode));
	}
}

TEST_CASE("paired runs")
{
	const CodeSpec spec = construct_frozen_set(6, 32, 0.8);
	const ScDecoder sc(spec);
	const SrfscDecoder sr(spec);
	const PairedPoint p = run_paired(spec, sc, sr, 1.0, {30, 5000}, 3);
	CHECK(p.errors_a >= 30);
	CHECK(p.errors_b >= 30);
	CHECK(p.errors_a - p.errors_b == p.only_a - p.only_b);
	CHECK(p.std_error >= 0.0);
	const PairedPoint same_dec = run_paired(spec, sc, sc, 1.0, {10, 1000}, 3);
	CHECK(same_dec.only_a == 0);
	CHECK(same_dec.std_error == 0.0);
}

TEST_CASE("reports")
{
	SweepPoint p;
	p.ebno_db = 2.5;
	p.sigma = 0.6;
	p.frames = 1234;
	p.frame_errors = 100;
	p.bler = 100.0 / 1234.0;
	p.avg_steps = 97.123456789;
	p.seed = 42;
	const std::string csv = format_csv({p});
	CHECK(csv == "ebno_db,frames,frame_errors,bler,avg_steps,avg_cycles,p_redecode,avg_comparisons,seed\n"
				 "2.5,1234,100,0.0810373,97.1235,0,0,0,42\n");
	const auto j = nlohmann::json::parse(format_json({p, p}));
	REQUIRE(j.size() == 2);
	CHECK(j[0]["frames"] == 1234);
	CHECK(j[0]["avg_steps"].get<double>() == 97.1235);
	CHECK(j[1]["seed"] == 42);
	CHECK_THROWS(format_csv({}));
	CHECK_THROWS(format_json({}));
	CHECK(parse_report_format("json") == ReportFormat::Json);
	CHECK_THROWS(parse_report_format("xml"));

	const auto dir = std::filesystem::temp_directory_path() / "polar_report_test";
	std::filesystem::create_directories(dir);
	const auto path = dir / "out.csv";
	emit_report({p}, ReportFormat::Csv, path);
	CHECK(slurp(path) == csv);
	write_file_atomic(path, "replaced\n");
	CHECK(slurp(path) == "replaced\n");
	int files = 0;
	for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir))
		++files;
	CHECK(files == 1);
	CHECK_THROWS(write_file_atomic(dir / "missing" / "x.csv", "x"));
	std::filesystem::remove_all(dir);
}
