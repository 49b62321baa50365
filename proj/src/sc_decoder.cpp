#include "polar/sc_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polar {

const char* to_string(ArithmeticMode m) { return m == ArithmeticMode::MinSum ? "minsum" : "exact"; }

ArithmeticMode parse_arithmetic_mode(const std::string& s)
{
	if (s == "minsum")
		return ArithmeticMode::MinSum;
	if (s == "exact")
		return ArithmeticMode::Exact;
	throw std::invalid_argument("unknown arithmetic mode '" + s + "' (minsum|exact)");
}

double f_op(double x, double y, ArithmeticMode mode)
{
	if (mode == ArithmeticMode::MinSum) {
		const double m = std::min(std::abs(x), std::abs(y));
		return (x < 0) != (y < 0) ? -m : m;
	}
	constexpr double kClamp = 1.0 - 1e-12;
	const double p = std::clamp(std::tanh(0.5 * x) * std::tanh(0.5 * y), -kClamp, kClamp);
	return 2.0 * std::atanh(p);
}

double g_op(double x, double y, std::uint8_t u) { return (u ? -x : x) + y; }

ScEngine::ScEngine(int max_level, ArithmeticMode mode)
	: mode_(mode), kernels_(&simd::active_kernels()), alpha_(std::max(max_level, 1))
{
	for (int j = 0; j < int(alpha_.size()); ++j)
		alpha_[j].resize(std::size_t(1) << j);
}

void ScEngine::decode(std::span<const double> llr, std::span<const std::uint8_t> d, std::span<std::uint8_t> beta)
{
	const std::size_t w = llr.size();
	if (w == 0 || (w & (w - 1)) || d.size() != w || beta.size() != w)
		throw std::invalid_argument("ScEngine::decode: inconsistent widths");
	const int j = std::bit_width(w) - 1;
	if (j > int(alpha_.size()))
		throw std::invalid_argument("ScEngine::decode: node wider than the engine");
	node(j, llr.data(), d.data(), beta.data());
}

void ScEngine::node(int j, const double* alpha, const std::uint8_t* d, std::uint8_t* beta)
{
	if (j == 0) {
		beta[0] = d[0] ? hard_bit(alpha[0]) : 0;
		return;
	}
	const std::size_t half = std::size_t(1) << (j - 1);
	double* child = alpha_[j - 1].data();
	if (mode_ == ArithmeticMode::MinSum) {
		kernels_->f_minsum(alpha, alpha + half, child, half);
	} else {
		for (std::size_t k = 0; k < half; ++k)
			child[k] = f_op(alpha[k], alpha[k + half], mode_);
	}
	node(j - 1, child, d, beta);
	kernels_->g(alpha, alpha + half, beta, child, half);
	node(j - 1, child, d + half, beta + half);
	kernels_->xor_bytes(beta, beta + half, half);
}

ScDecoder::ScDecoder(const CodeSpec& spec, ArithmeticMode mode, CycleModel model)
	: spec_(spec), engine_(spec.n, mode), beta_(spec.N)
{
	const LatencyReport rep = schedule_time_steps(spec, DecodePlan{}, Schedule::Sc, model);
	steps_ = rep.time_steps;
	cycles_ = rep.cycles;
}

DecodeResult ScDecoder::decode(std::span<const double> llr)
{
	if (int(llr.size()) != spec_.N)
		throw std::invalid_argument("decode: llr length != N");
	engine_.decode(llr, spec_.d, beta_);
	DecodeResult res;
	res.u_hat = beta_;
	polar_transform(res.u_hat);
	res.steps = steps_;
	res.first_attempt_steps = steps_;
	res.cycles = cycles_;
	res.frozen_violations = count_frozen_violations(spec_, res.u_hat);
	return res;
}

DecodeResult decode_sc(const CodeSpec& spec, std::span<const double> llr, ArithmeticMode mode)
{
	ScDecoder dec(spec, mode);
	return dec.decode(llr);
}

int count_frozen_violations(const CodeSpec& spec, std::span<const std::uint8_t> u)
{
	int v = 0;
	for (int k = 0; k < spec.N; ++k)
		v += !spec.d[k] && u[k];
	return v;
}

} // namespace polar
