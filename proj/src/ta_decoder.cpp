#include "polar/ta_decoder.hpp"

#include <cmath>
#include <stdexcept>

namespace polar {

std::optional<Bits> try_hard_decide(std::span<const double> node_llr, double T)
{
	Bits out(node_llr.size());
	for (std::size_t k = 0; k < node_llr.size(); ++k) {
		if (node_llr[k] > T)
			out[k] = 0;
		else if (node_llr[k] < -T)
			out[k] = 1;
		else
			return std::nullopt;
	}
	return out;
}

double bler_upper_bound(double epsilon, double bler_srfsc)
{
	if (!(epsilon >= 0 && epsilon <= 1 && bler_srfsc >= 0 && bler_srfsc <= 1))
		throw std::invalid_argument("bler_upper_bound: inputs must lie in [0, 1]");
	return 1.0 - epsilon * (1.0 - bler_srfsc);
}

TaSrfscDecoder::TaSrfscDecoder(const CodeSpec& spec, std::shared_ptr<const DecodePlan> plan,
	std::shared_ptr<const TaConfig> ta, ArithmeticMode mode, CycleModel model)
	: inner_(spec, std::move(plan), mode, ta ? std::move(ta) : std::make_shared<const TaConfig>(empty_ta_config(spec.n)),
		  model)
{
}

MultistageDecoder::MultistageDecoder(const CodeSpec& spec, std::shared_ptr<const DecodePlan> plan,
	std::shared_ptr<const TaConfig> ta, ArithmeticMode mode, CycleModel model)
	: spec_(spec), first_(spec, plan, mode, std::move(ta), model), second_(spec, plan, mode, nullptr, model)
{
	if (!spec.crc)
		throw std::invalid_argument("multi-stage decoding needs a CRC");
}

DecodeResult MultistageDecoder::decode(std::span<const double> llr)
{
	DecodeResult first = first_.decode(llr);
	first.crc_checked = true;
	first.crc_pass = crc_check(extract_info_bits(spec_, first.u_hat), *spec_.crc);
	first.first_attempt_steps = first.steps;
	if (first.crc_pass || first.hard_decided == 0)
		return first;

	DecodeResult second = second_.decode(llr);
	second.attempts = 2;
	second.first_attempt_steps = first.steps;
	second.steps += first.steps;
	second.cycles += first.cycles;
	second.comparisons = first.comparisons;
	second.hard_decided = first.hard_decided;
	second.hard_nodes = std::move(first.hard_nodes);
	second.crc_checked = true;
	second.crc_pass = crc_check(extract_info_bits(spec_, second.u_hat), *spec_.crc);
	return second;
}

DecodeResult decode_ta_srfsc(const CodeSpec& spec, const DecodePlan& plan, const TaConfig& ta,
	std::span<const double> llr, ArithmeticMode mode)
{
	TaSrfscDecoder dec(spec, std::make_shared<const DecodePlan>(plan), std::make_shared<const TaConfig>(ta), mode);
	return dec.decode(llr);
}

DecodeResult decode_multistage(const CodeSpec& spec, const DecodePlan& plan, const TaConfig& ta,
	std::span<const double> llr, ArithmeticMode mode)
{
	MultistageDecoder dec(spec, std::make_shared<const DecodePlan>(plan), std::make_shared<const TaConfig>(ta), mode);
	return dec.decode(llr);
}

} // namespace polar
