#include "polar/code.hpp"
#include "polar/gaussian.hpp"
#include "polar/report.hpp"
#include "polar/simulation.hpp"
#include "polar/srfsc_decoder.hpp"
#include "polar/ta_decoder.hpp"
#include "polar/tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace polar;
using nlohmann::json;

namespace {

// Input problems surface as exit status 2 along with CLI11's own usage errors.
struct InputError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct CodeOptions {
	std::optional<int> n;
	std::optional<int> k;
	std::optional<double> sigma;
	std::string code_file;
	int crc = 0;

	void add(CLI::App* app)
	{
		auto* on = app->add_option("--n", n, "log2 of the block length")->check(CLI::Range(1, 20));
		auto* ok = app->add_option("--k", k, "information length, CRC bits included");
		auto* os = app->add_option("--sigma", sigma, "design noise standard deviation for the construction")
					   ->check(CLI::PositiveNumber);
		auto* oc = app->add_option("--code", code_file, "frozen-set JSON file instead of a construction")
					   ->check(CLI::ExistingFile);
		oc->excludes(ok)->excludes(os);
		(void)on;
		app->add_option("--crc", crc, "CRC length appended to the information bits")
			->check(CLI::IsMember({0, 6, 11, 16}));
	}

	CodeSpec build() const
	{
		std::optional<CrcSpec> c;
		if (crc)
			c = CrcSpec::from_length(crc);
		if (!code_file.empty()) {
			Bits d;
			try {
				d = read_frozen_file(code_file);
			} catch (const std::exception& e) {
				throw InputError(e.what());
			}
			if (n && (std::size_t(1) << *n) != d.size())
				throw InputError("--n " + std::to_string(*n) + " disagrees with N = " + std::to_string(d.size()) +
					" in " + code_file);
			return code_from_flags(std::move(d), c);
		}
		if (!n || !k || !sigma)
			throw InputError("give either --code FILE or all of --n, --k and --sigma");
		return construct_frozen_set(*n, *k, *sigma, std::nullopt, c);
	}
};

void emit(const std::string& text, const std::string& out)
{
	if (out.empty())
		std::cout << text;
	else
		write_file_atomic(out, text);
}

std::vector<double> parse_ebno_grid(const std::string& s)
{
	auto num = [&](const std::string& t) {
		std::size_t used = 0;
		double v;
		try {
			v = std::stod(t, &used);
		} catch (const std::exception&) {
			throw InputError("bad Eb/N0 value '" + t + "'");
		}
		if (used != t.size() || !std::isfinite(v))
			throw InputError("bad Eb/N0 value '" + t + "'");
		return v;
	};
	std::vector<std::string> parts;
	std::stringstream ss(s);
	for (std::string p; std::getline(ss, p, ':');)
		parts.push_back(p);
	if (parts.size() == 1)
		return {num(parts[0])};
	if (parts.size() != 3)
		throw InputError("Eb/N0 grid must be a value or start:step:stop");
	const double start = num(parts[0]), step = num(parts[1]), stop = num(parts[2]);
	if (!(step > 0) || stop < start)
		throw InputError("Eb/N0 grid needs step > 0 and stop >= start");
	std::vector<double> grid;
	for (long i = 0;; ++i) {
		const double v = start + double(i) * step;
		if (v > stop + 1e-9 * step)
			break;
		grid.push_back(v);
		if (grid.size() > 10000)
			throw InputError("Eb/N0 grid has too many points");
	}
	return grid;
}

// Whitespace or comma separated reals; C99 hex floats (%a) keep them exact. '#' starts a comment.
std::vector<double> read_llr_file(const std::string& path, std::size_t expected)
{
	std::ifstream in(path);
	if (!in)
		throw InputError("cannot read " + path);
	std::vector<double> llr;
	for (std::string line; std::getline(in, line);) {
		if (const auto hash = line.find('#'); hash != std::string::npos)
			line.erase(hash);
		for (char& ch : line)
			if (ch == ',')
				ch = ' ';
		std::istringstream words(line);
		for (std::string w; words >> w;) {
			char* end = nullptr;
			errno = 0;
			const double v = std::strtod(w.c_str(), &end);
			if (end == w.c_str() || *end != '\0' || errno == ERANGE || std::isnan(v))
				throw InputError(path + ": bad LLR value '" + w + "'");
			llr.push_back(v);
		}
	}
	if (llr.size() != expected)
		throw InputError(path + ": " + std::to_string(llr.size()) + " LLR values, expected " + std::to_string(expected));
	return llr;
}

void check_epsilon(const std::string& decoder, const std::optional<double>& epsilon)
{
	const bool needs = decoder == "ta" || decoder == "multistage";
	if (needs && !epsilon)
		throw CLI::ValidationError("--epsilon", "required for --decoder " + decoder);
	if (!needs && epsilon)
		throw CLI::ValidationError("--epsilon", "only meaningful for --decoder ta or multistage");
}

std::string to_json_text(const json& j) { return j.dump(2) + "\n"; }

json census_json(const Census& c)
{
	json by_seq = json::object(), levels = json::object();
	for (const auto& [s, cnt] : c.by_sequence_count)
		by_seq[std::to_string(s)] = cnt;
	for (const auto& [s, per] : c.levels_by_sequences)
		for (const auto& [lvl, cnt] : per)
			levels[std::to_string(s)][std::to_string(lvl)] = cnt;
	return {
		{"sr_count", c.sr_count},
		{"general_count", c.general_count},
		{"by_source", c.by_source},
		{"by_sequence_count", by_seq},
		{"levels_by_sequence_count", levels},
	};
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Polar code construction, SR-node analysis, and fast SC decoding experiments", "polar"};
	app.set_version_flag("--version", std::string("polar ") + POLAR_VERSION);
	app.require_subcommand(1);

	// construct
	CodeOptions c_code;
	std::string c_out;
	auto* construct = app.add_subcommand("construct", "Gaussian-approximation frozen set as JSON");
	c_code.add(construct);
	construct->add_option("--out", c_out, "output file (default: standard output)");

	// analyze
	CodeOptions a_code;
	std::string a_out, a_csv;
	long a_P = 0, a_pipeline = 0;
	auto* analyze = app.add_subcommand("analyze", "SR cover census and latency model");
	a_code.add(analyze);
	analyze->add_option("--P", a_P, "processing elements for the cycle model (0: unlimited)")->check(CLI::NonNegativeNumber);
	analyze->add_option("--sr-pipeline", a_pipeline, "extra cycles per SR node")->check(CLI::NonNegativeNumber);
	analyze->add_option("--out", a_out, "JSON output file (default: standard output)");
	analyze->add_option("--csv", a_csv, "also write the per-node schedule as CSV");

	// thresholds
	std::optional<double> t_eps, t_c;
	int t_n = 0;
	double t_sigma = 0;
	std::string t_out;
	auto* thresholds = app.add_subcommand("thresholds", "Hard-decision constants and eligible nodes");
	thresholds->add_option("--epsilon", t_eps, "per-frame reliability target")->required()->check(CLI::Range(0.0, 1.0));
	thresholds->add_option("--c", t_c, "threshold constant (default: smallest on the 0.1 grid)");
	thresholds->add_option("--n", t_n, "log2 of the block length")->required()->check(CLI::Range(1, 20));
	thresholds->add_option("--sigma", t_sigma, "channel noise standard deviation")->required()->check(CLI::PositiveNumber);
	thresholds->add_option("--out", t_out, "output file (default: standard output)");

	// decode
	CodeOptions d_code;
	std::string d_llr, d_decoder = "srfsc", d_mode = "minsum", d_out;
	std::optional<double> d_eps, d_c, d_channel;
	long d_P = 0;
	auto* decode = app.add_subcommand("decode", "Decode one frame of channel LLRs");
	d_code.add(decode);
	decode->add_option("--llr", d_llr, "LLR file, one real per entry, hex floats accepted")->required()->check(CLI::ExistingFile);
	decode->add_option("--decoder", d_decoder)->check(CLI::IsMember({"sc", "srfsc", "ta", "multistage"}));
	decode->add_option("--epsilon", d_eps)->check(CLI::Range(0.0, 1.0));
	decode->add_option("--c", d_c);
	decode->add_option("--channel-sigma", d_channel, "channel noise level the thresholds are built for")->check(CLI::PositiveNumber);
	decode->add_option("--mode", d_mode)->check(CLI::IsMember({"minsum", "exact"}));
	decode->add_option("--P", d_P)->check(CLI::NonNegativeNumber);
	decode->add_option("--out", d_out, "output file (default: standard output)");

	// simulate
	CodeOptions s_code;
	std::string s_decoder = "srfsc", s_ebno, s_out, s_format, s_mode = "minsum";
	std::optional<double> s_eps, s_c;
	std::uint64_t s_seed = 1;
	long s_P = 0, s_errors = 100, s_frames = 1000000;
	int s_workers = 0;
	auto* simulate = app.add_subcommand("simulate", "Monte Carlo sweep over Eb/N0");
	s_code.add(simulate);
	simulate->add_option("--decoder", s_decoder)->check(CLI::IsMember({"sc", "srfsc", "ta", "multistage"}));
	simulate->add_option("--ebno", s_ebno, "value or start:step:stop in dB")->required();
	simulate->add_option("--epsilon", s_eps)->check(CLI::Range(0.0, 1.0));
	simulate->add_option("--c", s_c);
	simulate->add_option("--seed", s_seed);
	simulate->add_option("--out", s_out, "report file (default: standard output)");
	simulate->add_option("--format", s_format, "csv or json (default: from --out extension, else csv)")
		->check(CLI::IsMember({"csv", "json"}));
	simulate->add_option("--mode", s_mode)->check(CLI::IsMember({"minsum", "exact"}));
	simulate->add_option("--P", s_P)->check(CLI::NonNegativeNumber);
	simulate->add_option("--max-errors", s_errors, "frame errors per point before stopping")->check(CLI::PositiveNumber);
	simulate->add_option("--max-frames", s_frames, "frames per point at most")->check(CLI::PositiveNumber);
	simulate->add_option("--workers", s_workers, "threads (default: POLAR_WORKERS or 1)")->check(CLI::NonNegativeNumber);

	try {
		app.parse(argc, argv);

		if (construct->parsed()) {
			emit(frozen_json(c_code.build()), c_out);
		} else if (analyze->parsed()) {
			const CodeSpec spec = a_code.build();
			const DecodePlan plan = make_plan(spec);
			const CycleModel model{a_P, a_pipeline};
			const LatencyReport sc = schedule_time_steps(spec, plan, Schedule::Sc, model);
			const LatencyReport sr = schedule_time_steps(spec, plan, Schedule::Srfsc, model);
			json cover = json::array();
			for (const auto& d : plan.cover)
				cover.push_back({{"j", d.j()}, {"i", d.owner.i}, {"node", label(d)}, {"steps", sr_time_steps(d)}});
			const json out = {
				{"N", spec.N},
				{"K", spec.K},
				{"census", census_json(node_census(spec, plan))},
				{"latency",
					{{"P", a_P},
						{"sc_steps", sc.time_steps},
						{"srfsc_steps", sr.time_steps},
						{"sc_cycles", sc.cycles},
						{"srfsc_cycles", sr.cycles}}},
				{"cover", cover},
			};
			if (!a_csv.empty()) {
				std::string csv = "j,i,kind,steps,cycles\n";
				for (const auto& e : sr.breakdown)
					csv += std::to_string(e.node.j) + "," + std::to_string(e.node.i) + "," + e.kind + "," +
						std::to_string(e.steps) + "," + std::to_string(e.cycles) + "\n";
				write_file_atomic(a_csv, csv);
			}
			emit(to_json_text(out), a_out);
		} else if (thresholds->parsed()) {
			const double eps = *t_eps;
			if (!(eps > 0 && eps < 1))
				throw InputError("--epsilon must lie strictly between 0 and 1");
			const TaConfig cfg = t_c ? build_ta_config(compute_means(t_n, t_sigma), eps, *t_c)
									 : build_ta_config(compute_means(t_n, t_sigma), eps);
			const json out = {
				{"epsilon", eps},
				{"c", cfg.c},
				{"m_bound", cfg.m_bound},
				{"n", t_n},
				{"sigma", t_sigma},
				{"eligible_per_level", cfg.eligible_per_level()},
				{"eligible_total", cfg.eligible_count()},
			};
			emit(to_json_text(out), t_out);
		} else if (decode->parsed()) {
			check_epsilon(d_decoder, d_eps);
			const bool needs_ta = d_eps.has_value();
			if (needs_ta && !d_channel)
				throw CLI::ValidationError("--channel-sigma", "required for --decoder " + d_decoder);
			const CodeSpec spec = d_code.build();
			const auto llr = read_llr_file(d_llr, std::size_t(spec.N));
			auto plan = std::make_shared<const DecodePlan>(make_plan(spec));
			std::shared_ptr<const TaConfig> ta;
			if (needs_ta) {
				const GaussianTable table = compute_means(spec.n, *d_channel);
				ta = std::make_shared<const TaConfig>(d_c ? build_ta_config(table, *d_eps, *d_c)
														  : build_ta_config(table, *d_eps));
			}
			const auto dec = make_decoder(spec, plan, parse_decoder_kind(d_decoder), ta,
				parse_arithmetic_mode(d_mode), CycleModel{d_P, 0});
			const DecodeResult r = dec->decode(llr);
			const Bits info = extract_info_bits(spec, r.u_hat);
			json out = {
				{"decoder", d_decoder},
				{"info", bits_to_hex(std::span(info).first(std::size_t(spec.info_length())))},
				{"u_hat", bits_to_hex(r.u_hat)},
				{"steps", r.steps},
				{"cycles", r.cycles},
				{"hard_decided", r.hard_decided},
				{"comparisons", r.comparisons},
				{"attempts", r.attempts},
			};
			if (spec.crc)
				out["crc_pass"] = crc_check(info, *spec.crc);
			emit(to_json_text(out), d_out);
		} else if (simulate->parsed()) {
			check_epsilon(s_decoder, s_eps);
			if (s_c && !s_eps)
				throw CLI::ValidationError("--c", "only meaningful with --epsilon");
			const CodeSpec spec = s_code.build();
			SweepConfig cfg;
			cfg.decoder = parse_decoder_kind(s_decoder);
			cfg.epsilon = s_eps;
			cfg.c = s_c;
			cfg.mode = parse_arithmetic_mode(s_mode);
			cfg.cycles = {s_P, 0};
			cfg.stop = {s_errors, s_frames};
			cfg.seed = s_seed;
			cfg.workers = s_workers;
			if (cfg.decoder == DecoderKind::Multistage && !spec.crc)
				throw CLI::ValidationError("--crc", "multistage decoding needs a CRC");
			ReportFormat fmt = ReportFormat::Csv;
			if (!s_format.empty())
				fmt = parse_report_format(s_format);
			else if (s_out.size() >= 5 && s_out.ends_with(".json"))
				fmt = ReportFormat::Json;
			const auto grid = parse_ebno_grid(s_ebno);
			const auto points = run_sweep(spec, grid, cfg);
			emit(fmt == ReportFormat::Csv ? format_csv(points) : format_json(points), s_out);
		}
	} catch (const CLI::ParseError& e) {
		const int rc = app.exit(e);
		return rc == 0 ? 0 : 2;
	} catch (const InputError& e) {
		std::cerr << "polar: " << e.what() << "\n";
		return 2;
	} catch (const std::invalid_argument& e) {
		std::cerr << "polar: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "polar: " << e.what() << "\n";
		return 1;
	}
	return 0;
}
