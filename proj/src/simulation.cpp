#include "polar/simulation.hpp"
#include "polar/srfsc_decoder.hpp"
#include "polar/ta_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace polar {

const char* to_string(DecoderKind k)
{
	switch (k) {
	case DecoderKind::Sc: return "sc";
	case DecoderKind::Srfsc: return "srfsc";
	case DecoderKind::Ta: return "ta";
	case DecoderKind::Multistage: return "multistage";
	}
	return "?";
}

DecoderKind parse_decoder_kind(const std::string& s)
{
	if (s == "sc")
		return DecoderKind::Sc;
	if (s == "srfsc")
		return DecoderKind::Srfsc;
	if (s == "ta")
		return DecoderKind::Ta;
	if (s == "multistage")
		return DecoderKind::Multistage;
	throw std::invalid_argument("unknown decoder '" + s + "' (sc|srfsc|ta|multistage)");
}

void StopRule::validate() const
{
	if (max_errors < 1 || max_frames < 1)
		throw std::invalid_argument("stop rule needs max_errors >= 1 and max_frames >= 1");
}

double sigma_from_ebno(double ebno_db, double rate)
{
	return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0)));
}

std::uint64_t splitmix64(std::uint64_t x)
{
	x += 0x9e3779b97f4a7c15ull;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
	return x ^ (x >> 31);
}

std::uint64_t frame_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t frame)
{
	return splitmix64(splitmix64(splitmix64(seed) ^ point) ^ frame);
}

std::vector<double> awgn_channel(std::span<const std::uint8_t> x, double sigma, std::mt19937_64& rng)
{
	if (!(sigma > 0))
		throw std::invalid_argument("sigma must be positive");
	std::normal_distribution<double> noise(0.0, sigma);
	const double scale = 2.0 / (sigma * sigma);
	std::vector<double> llr(x.size());
	for (std::size_t k = 0; k < x.size(); ++k)
		llr[k] = scale * ((x[k] ? -1.0 : 1.0) + noise(rng));
	return llr;
}

std::unique_ptr<Decoder> make_decoder(const CodeSpec& spec, std::shared_ptr<const DecodePlan> plan,
	DecoderKind kind, std::shared_ptr<const TaConfig> ta, ArithmeticMode mode, CycleModel cycles)
{
	switch (kind) {
	case DecoderKind::Sc:
		return std::make_unique<ScDecoder>(spec, mode, cycles);
	case DecoderKind::Srfsc:
		return std::make_unique<SrfscDecoder>(spec, std::move(plan), mode, nullptr, cycles);
	case DecoderKind::Ta:
		if (!ta)
			throw std::invalid_argument("ta decoder needs a threshold table");
		return std::make_unique<TaSrfscDecoder>(spec, std::move(plan), std::move(ta), mode, cycles);
	case DecoderKind::Multistage:
		if (!ta)
			throw std::invalid_argument("multistage decoder needs a threshold table");
		return std::make_unique<MultistageDecoder>(spec, std::move(plan), std::move(ta), mode, cycles);
	}
	throw std::invalid_argument("unknown decoder");
}

int worker_count(int requested)
{
	if (requested > 0)
		return requested;
	if (const char* env = std::getenv("POLAR_WORKERS")) {
		char* end = nullptr;
		const long w = std::strtol(env, &end, 10);
		if (end != env && *end == '\0' && w > 0 && w <= 1024)
			return int(w);
	}
	return 1;
}

namespace {

struct Transmission {
	Bits info;
	std::vector<double> llr;
};

Transmission transmit(const CodeSpec& spec, double sigma, std::uint64_t seed)
{
	std::mt19937_64 rng(seed);
	Transmission t;
	t.info.resize(spec.info_length());
	std::uint64_t word = 0;
	for (int k = 0; k < spec.info_length(); ++k) {
		if (k % 64 == 0)
			word = rng();
		t.info[k] = std::uint8_t((word >> (k % 64)) & 1u);
	}
	const Frame f = encode(spec, t.info);
	t.llr = awgn_channel(f.x, sigma, rng);
	return t;
}

bool info_error(const CodeSpec& spec, const Bits& info, std::span<const std::uint8_t> u_hat)
{
	int t = 0;
	for (int k = 0; k < spec.N && t < spec.info_length(); ++k)
		if (spec.d[k])
			if (u_hat[k] != info[t++])
				return true;
	return false;
}

struct Outcome {
	bool error = false;
	bool error_b = false;
	long steps = 0;
	long cycles = 0;
	long comparisons = 0;
	int hard_decided = 0;
	int attempts = 1;
	long first_steps = 0;
};

// Runs frames [base, base+count) on `workers` threads, frame f going to worker (f - base) % workers.
template <class Fn>
void parallel_frames(long base, long count, std::vector<Outcome>& out, int workers, Fn&& fn)
{
	out.assign(count, {});
	if (workers <= 1) {
		for (long f = 0; f < count; ++f)
			out[f] = fn(0, base + f);
		return;
	}
	std::vector<std::thread> pool;
	pool.reserve(workers);
	for (int w = 0; w < workers; ++w)
		pool.emplace_back([&, w] {
			for (long f = w; f < count; f += workers)
				out[f] = fn(w, base + f);
		});
	for (auto& t : pool)
		t.join();
}

constexpr long kFramesPerWorker = 128;

} // namespace

std::vector<SweepPoint> run_sweep(const CodeSpec& spec, const std::vector<double>& ebno_db, const SweepConfig& cfg)
{
	if (ebno_db.empty())
		throw std::invalid_argument("run_sweep: empty Eb/N0 list");
	cfg.stop.validate();
	const bool needs_ta = cfg.decoder == DecoderKind::Ta || cfg.decoder == DecoderKind::Multistage;
	if (needs_ta && !cfg.epsilon)
		throw std::invalid_argument("decoder '" + std::string(to_string(cfg.decoder)) + "' needs epsilon");
	if (cfg.decoder == DecoderKind::Multistage && !spec.crc)
		throw std::invalid_argument("multistage decoder needs a CRC");
	const int workers = worker_count(cfg.workers);
	auto plan = std::make_shared<const DecodePlan>(make_plan(spec));

	std::vector<SweepPoint> points;
	for (std::size_t p = 0; p < ebno_db.size(); ++p) {
		const double sigma = sigma_from_ebno(ebno_db[p], spec.rate());
		std::shared_ptr<const TaConfig> ta;
		if (needs_ta) {
			const GaussianTable table = compute_means(spec.n, sigma);
			const double c = cfg.c ? *cfg.c : min_c(*cfg.epsilon, spec.n);
			ta = std::make_shared<const TaConfig>(build_ta_config(table, *cfg.epsilon, c));
		}
		const auto proto = make_decoder(spec, plan, cfg.decoder, ta, cfg.mode, cfg.cycles);
		std::vector<std::unique_ptr<Decoder>> decoders;
		for (int w = 0; w < workers; ++w)
			decoders.push_back(proto->clone());

		SweepPoint pt;
		pt.ebno_db = ebno_db[p];
		pt.sigma = sigma;
		pt.seed = cfg.seed;
		long steps = 0, cycles = 0, comparisons = 0, hard = 0, redecode = 0, first = 0;
		std::vector<Outcome> round;
		bool done = false;
		for (long base = 0; !done; base += long(round.size())) {
			const long count = std::min<long>(kFramesPerWorker * workers, cfg.stop.max_frames - base);
			parallel_frames(base, count, round, workers, [&](int w, long f) {
				const Transmission t = transmit(spec, sigma, frame_seed(cfg.seed, p, std::uint64_t(f)));
				const DecodeResult r = decoders[w]->decode(t.llr);
				Outcome o;
				o.error = info_error(spec, t.info, r.u_hat);
				o.steps = r.steps;
				o.cycles = r.cycles;
				o.comparisons = r.comparisons;
				o.hard_decided = r.hard_decided;
				o.attempts = r.attempts;
				o.first_steps = r.first_attempt_steps;
				return o;
			});
			for (const Outcome& o : round) {
				++pt.frames;
				pt.frame_errors += o.error;
				steps += o.steps;
				cycles += o.cycles;
				comparisons += o.comparisons;
				hard += o.hard_decided;
				redecode += o.attempts == 2;
				first += o.first_steps;
				if (pt.frame_errors >= cfg.stop.max_errors || pt.frames >= cfg.stop.max_frames) {
					done = true;
					break;
				}
			}
		}
		const double n = double(pt.frames);
		pt.bler = pt.frame_errors / n;
		pt.avg_steps = steps / n;
		pt.avg_cycles = cycles / n;
		pt.avg_comparisons = comparisons / n;
		pt.p_redecode = redecode / n;
		pt.avg_hard_decided = hard / n;
		pt.avg_first_attempt_steps = first / n;
		points.push_back(pt);
	}
	return points;
}

PairedPoint run_paired(const CodeSpec& spec, const Decoder& a, const Decoder& b, double ebno_db,
	const StopRule& stop, std::uint64_t seed, int workers)
{
	stop.validate();
	workers = worker_count(workers);
	const double sigma = sigma_from_ebno(ebno_db, spec.rate());
	std::vector<std::unique_ptr<Decoder>> da, db;
	for (int w = 0; w < workers; ++w) {
		da.push_back(a.clone());
		db.push_back(b.clone());
	}
	PairedPoint pt;
	pt.ebno_db = ebno_db;
	std::vector<Outcome> round;
	bool done = false;
	for (long base = 0; !done; base += long(round.size())) {
		const long count = std::min<long>(kFramesPerWorker * workers, stop.max_frames - base);
		parallel_frames(base, count, round, workers, [&](int w, long f) {
			const Transmission t = transmit(spec, sigma, frame_seed(seed, 0, std::uint64_t(f)));
			Outcome o;
			o.error = info_error(spec, t.info, da[w]->decode(t.llr).u_hat);
			o.error_b = info_error(spec, t.info, db[w]->decode(t.llr).u_hat);
			return o;
		});
		for (const Outcome& o : round) {
			++pt.frames;
			pt.errors_a += o.error;
			pt.errors_b += o.error_b;
			pt.only_a += o.error && !o.error_b;
			pt.only_b += o.error_b && !o.error;
			if ((pt.errors_a >= stop.max_errors && pt.errors_b >= stop.max_errors) || pt.frames >= stop.max_frames) {
				done = true;
				break;
			}
		}
	}
	const double n = double(pt.frames);
	pt.bler_a = pt.errors_a / n;
	pt.bler_b = pt.errors_b / n;
	const double d = double(pt.only_a - pt.only_b);
	pt.std_error = std::sqrt(std::max(0.0, pt.only_a + pt.only_b - d * d / n)) / n;
	return pt;
}

} // namespace polar
