#pragma once

#include "polar/gaussian.hpp"
#include "polar/sc_decoder.hpp"
#include "polar/tree.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace polar {

// Source-node LLRs of every path, in listing order: for path l and source bit k,
// sum_m llr[m 2^r + k] (-1)^{s_l[m]} with s_l in natural block order.
std::vector<std::vector<double>> source_llrs(std::span<const double> node_llr, const SrDescriptor& desc);

std::uint8_t egpc_parity(std::span<const double> path_llr, const SrDescriptor& desc,
	ArithmeticMode mode = ArithmeticMode::MinSum);

// Hard decisions, then flip the least reliable bit (lowest index on ties) if the parity is not z.
Bits wagner_decode(std::span<const double> llr, std::uint8_t z);

// argmax, lowest index on ties
std::size_t select_path(std::span<const double> metrics);

double correlation_metric(std::span<const double> llr, std::span<const std::uint8_t> beta);

struct SrOutput {
	Bits beta;
	int steps = 0;
	std::size_t path = 0;
	double metric = 0.0;
};

// Decodes one SR node. Keeps scratch buffers so that repeated calls do not allocate.
class SrNodeDecoder {
public:
	explicit SrNodeDecoder(int max_level, ArithmeticMode mode = ArithmeticMode::MinSum);

	// Writes the node estimate (width 2^j) to beta; returns the chosen path and its metric.
	std::pair<std::size_t, double> decode(std::span<const double> alpha, const SrDescriptor& desc,
		std::span<std::uint8_t> beta);
	void decode_source(std::span<const double> a, const SrDescriptor& desc, std::span<std::uint8_t> out);

private:
	void descend(const SrDescriptor& desc, int t, const double* a, std::size_t len);

	ArithmeticMode mode_;
	const simd::KernelTable* kernels_;
	ScEngine sc_;
	std::vector<std::vector<double>> level_llr_;
	Bits eta_;
	Bits cand_;
	Bits best_src_;
	Bits best_eta_;
	std::size_t path_counter_ = 0;
	std::size_t best_path_ = 0;
	double best_metric_ = 0.0;
	bool have_best_ = false;
};

SrOutput decode_sr(std::span<const double> node_llr, const SrDescriptor& desc,
	ArithmeticMode mode = ArithmeticMode::MinSum);

class SrfscDecoder : public Decoder {
public:
	// With `ta`, eligible general nodes are hard-decided when every input LLR clears the threshold.
	SrfscDecoder(const CodeSpec& spec, std::shared_ptr<const DecodePlan> plan,
		ArithmeticMode mode = ArithmeticMode::MinSum, std::shared_ptr<const TaConfig> ta = nullptr,
		CycleModel model = {});
	explicit SrfscDecoder(const CodeSpec& spec, ArithmeticMode mode = ArithmeticMode::MinSum);

	DecodeResult decode(std::span<const double> llr) override;
	std::unique_ptr<Decoder> clone() const override { return std::make_unique<SrfscDecoder>(*this); }
	const char* name() const override { return ta_ ? "ta" : "srfsc"; }

	const CodeSpec& spec() const { return spec_; }
	const DecodePlan& plan() const { return *plan_; }

private:
	void node(std::size_t h, int j, const double* alpha, std::uint8_t* beta, DecodeResult& res);

	CodeSpec spec_;
	std::shared_ptr<const DecodePlan> plan_;
	std::shared_ptr<const TaConfig> ta_;
	ArithmeticMode mode_;
	CycleModel model_;
	const simd::KernelTable* kernels_;
	SrNodeDecoder sr_;
	std::vector<std::vector<double>> alpha_;
	Bits beta_;
};

DecodeResult decode_srfsc(const CodeSpec& spec, const DecodePlan& plan, std::span<const double> llr,
	ArithmeticMode mode = ArithmeticMode::MinSum);

} // namespace polar
