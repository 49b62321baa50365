#pragma once

#include "polar/code.hpp"
#include "polar/gaussian.hpp"
#include "polar/sc_decoder.hpp"
#include "polar/tree.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace polar {

enum class DecoderKind { Sc, Srfsc, Ta, Multistage };

const char* to_string(DecoderKind k);
DecoderKind parse_decoder_kind(const std::string& s);

struct StopRule {
	long max_errors = 100;
	long max_frames = 1000000;

	void validate() const;
};

struct SweepConfig {
	DecoderKind decoder = DecoderKind::Srfsc;
	std::optional<double> epsilon;
	std::optional<double> c; // default: min_c(epsilon, n)
	ArithmeticMode mode = ArithmeticMode::MinSum;
	CycleModel cycles;
	StopRule stop;
	std::uint64_t seed = 1;
	int workers = 0; // 0: POLAR_WORKERS or 1
};

struct SweepPoint {
	double ebno_db = 0.0;
	double sigma = 0.0;
	long frames = 0;
	long frame_errors = 0;
	double bler = 0.0;
	double avg_steps = 0.0;
	double avg_cycles = 0.0;
	double p_redecode = 0.0;
	double avg_comparisons = 0.0;
	std::uint64_t seed = 0;
	double avg_hard_decided = 0.0;
	double avg_first_attempt_steps = 0.0;
};

double sigma_from_ebno(double ebno_db, double rate);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t frame_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t frame);

// y = (-1)^x + n, n ~ N(0, sigma^2); returns the channel LLRs 2y/sigma^2
std::vector<double> awgn_channel(std::span<const std::uint8_t> x, double sigma, std::mt19937_64& rng);

std::unique_ptr<Decoder> make_decoder(const CodeSpec& spec, std::shared_ptr<const DecodePlan> plan,
	DecoderKind kind, std::shared_ptr<const TaConfig> ta, ArithmeticMode mode = ArithmeticMode::MinSum,
	CycleModel cycles = {});

int worker_count(int requested);

std::vector<SweepPoint> run_sweep(const CodeSpec& spec, const std::vector<double>& ebno_db, const SweepConfig& cfg);

struct PairedPoint {
	double ebno_db = 0.0;
	long frames = 0;
	long errors_a = 0;
	long errors_b = 0;
	long only_a = 0; // a wrong, b right
	long only_b = 0;
	double bler_a = 0.0;
	double bler_b = 0.0;
	double std_error = 0.0; // of bler_a - bler_b
};

// Same frames through both decoders; stops when both have max_errors errors or at max_frames.
PairedPoint run_paired(const CodeSpec& spec, const Decoder& a, const Decoder& b, double ebno_db,
	const StopRule& stop, std::uint64_t seed, int workers = 0);

} // namespace polar
