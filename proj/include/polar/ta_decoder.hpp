#pragma once

#include "polar/gaussian.hpp"
#include "polar/srfsc_decoder.hpp"

#include <memory>
#include <optional>
#include <span>

namespace polar {

// Every |llr| > T: llr > T -> 0, llr < -T -> 1. Otherwise nothing.
std::optional<Bits> try_hard_decide(std::span<const double> node_llr, double T);

double bler_upper_bound(double epsilon, double bler_srfsc);

class TaSrfscDecoder final : public Decoder {
public:
	TaSrfscDecoder(const CodeSpec& spec, std::shared_ptr<const DecodePlan> plan,
		std::shared_ptr<const TaConfig> ta, ArithmeticMode mode = ArithmeticMode::MinSum,
		CycleModel model = {});

	DecodeResult decode(std::span<const double> llr) override { return inner_.decode(llr); }
	std::unique_ptr<Decoder> clone() const override { return std::make_unique<TaSrfscDecoder>(*this); }
	const char* name() const override { return "ta"; }

private:
	SrfscDecoder inner_;
};

// TA-SRFSC first; if the CRC fails after at least one hard decision, SRFSC from the first bit.
class MultistageDecoder final : public Decoder {
public:
	MultistageDecoder(const CodeSpec& spec, std::shared_ptr<const DecodePlan> plan,
		std::shared_ptr<const TaConfig> ta, ArithmeticMode mode = ArithmeticMode::MinSum,
		CycleModel model = {});

	DecodeResult decode(std::span<const double> llr) override;
	std::unique_ptr<Decoder> clone() const override { return std::make_unique<MultistageDecoder>(*this); }
	const char* name() const override { return "multistage"; }

private:
	CodeSpec spec_;
	SrfscDecoder first_;
	SrfscDecoder second_;
};

DecodeResult decode_ta_srfsc(const CodeSpec& spec, const DecodePlan& plan, const TaConfig& ta,
	std::span<const double> llr, ArithmeticMode mode = ArithmeticMode::MinSum);
DecodeResult decode_multistage(const CodeSpec& spec, const DecodePlan& plan, const TaConfig& ta,
	std::span<const double> llr, ArithmeticMode mode = ArithmeticMode::MinSum);

} // namespace polar
