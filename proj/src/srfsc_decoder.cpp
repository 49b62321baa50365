#include "polar/srfsc_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polar {

std::vector<std::vector<double>> source_llrs(std::span<const double> node_llr, const SrDescriptor& desc)
{
	const std::size_t S = std::size_t(1) << desc.r;
	if (node_llr.size() != S << desc.v.size())
		throw std::invalid_argument("source_llrs: node LLR length does not match the descriptor");
	std::vector<std::vector<double>> out;
	out.reserve(desc.tree_sequences.size());
	for (const auto& s : desc.tree_sequences) {
		std::vector<double> a(S, 0.0);
		for (std::size_t m = 0; m < s.size(); ++m)
			for (std::size_t k = 0; k < S; ++k)
				a[k] += s[m] ? -node_llr[m * S + k] : node_llr[m * S + k];
		out.push_back(std::move(a));
	}
	return out;
}

namespace {

double block_check(std::span<const double> a, std::size_t first, std::size_t stride, std::size_t count,
	ArithmeticMode mode)
{
	if (mode == ArithmeticMode::MinSum) {
		double acc = a[first];
		for (std::size_t q = 1; q < count; ++q)
			acc = f_op(acc, a[first + q * stride], mode);
		return acc;
	}
	constexpr double kClamp = 1.0 - 1e-12;
	double p = 1.0;
	for (std::size_t q = 0; q < count; ++q)
		p *= std::tanh(0.5 * a[first + q * stride]);
	return 2.0 * std::atanh(std::clamp(p, -kClamp, kClamp));
}

void wagner_strided(std::span<const double> a, std::size_t first, std::size_t stride, std::size_t count,
	std::uint8_t z, std::uint8_t* out)
{
	std::uint8_t parity = 0;
	std::size_t weakest = first;
	double weakest_mag = INFINITY;
	for (std::size_t q = 0; q < count; ++q) {
		const std::size_t k = first + q * stride;
		out[k] = hard_bit(a[k]);
		parity ^= out[k];
		const double mag = std::abs(a[k]);
		if (mag < weakest_mag) {
			weakest_mag = mag;
			weakest = k;
		}
	}
	if (parity != z)
		out[weakest] ^= 1;
}

} // namespace

std::uint8_t egpc_parity(std::span<const double> path_llr, const SrDescriptor& desc, ArithmeticMode mode)
{
	if (desc.snt != SourceType::EgPc)
		throw std::invalid_argument("egpc_parity: descriptor source is not EG-PC");
	if (!desc.egpc_leftmost_rep)
		return 0;
	const std::size_t blocks = std::size_t(1) << desc.egpc_level;
	double sum = 0.0;
	for (std::size_t b = 0; b < blocks; ++b)
		sum += block_check(path_llr, b, blocks, std::size_t(desc.egpc_block_len), mode);
	return hard_bit(sum);
}

Bits wagner_decode(std::span<const double> llr, std::uint8_t z)
{
	if (llr.empty())
		throw std::invalid_argument("wagner_decode: empty input");
	Bits out(llr.size());
	wagner_strided(llr, 0, 1, llr.size(), z, out.data());
	return out;
}

std::size_t select_path(std::span<const double> metrics)
{
	if (metrics.empty())
		throw std::invalid_argument("select_path: no paths");
	std::size_t best = 0;
	for (std::size_t l = 1; l < metrics.size(); ++l)
		if (metrics[l] > metrics[best])
			best = l;
	return best;
}

double correlation_metric(std::span<const double> llr, std::span<const std::uint8_t> beta)
{
	double m = 0.0;
	for (std::size_t k = 0; k < llr.size(); ++k)
		m += beta[k] ? -llr[k] : llr[k];
	return m;
}

SrNodeDecoder::SrNodeDecoder(int max_level, ArithmeticMode mode)
	: mode_(mode), kernels_(&simd::active_kernels()), sc_(max_level, mode), level_llr_(std::max(max_level, 1))
{
	for (int l = 0; l < int(level_llr_.size()); ++l)
		level_llr_[l].resize(std::size_t(1) << l);
	const std::size_t w = std::size_t(1) << max_level;
	cand_.resize(w);
	best_src_.resize(w);
	eta_.resize(max_level + 1);
	best_eta_.resize(max_level + 1);
}

void SrNodeDecoder::decode_source(std::span<const double> a, const SrDescriptor& desc, std::span<std::uint8_t> out)
{
	const std::size_t S = a.size();
	switch (desc.snt) {
	case SourceType::Rate0:
		std::fill(out.begin(), out.begin() + S, 0);
		break;
	case SourceType::Rate1:
		kernels_->hard_decision(a.data(), out.data(), S);
		break;
	case SourceType::EgPc: {
		const std::uint8_t z = egpc_parity(a, desc, mode_);
		const std::size_t blocks = std::size_t(1) << desc.egpc_level;
		for (std::size_t b = 0; b < blocks; ++b)
			wagner_strided(a, b, blocks, std::size_t(desc.egpc_block_len), z, out.data());
		break;
	}
	case SourceType::RateC:
		sc_.decode(a, desc.source_frozen, out.first(S));
		break;
	}
}

void SrNodeDecoder::descend(const SrDescriptor& desc, int t, const double* a, std::size_t len)
{
	if (t == int(desc.v.size())) {
		decode_source({a, len}, desc, {cand_.data(), len});
		const double metric = correlation_metric({a, len}, {cand_.data(), len});
		if (!have_best_ || metric > best_metric_) {
			have_best_ = true;
			best_metric_ = metric;
			best_path_ = path_counter_;
			std::copy_n(cand_.begin(), len, best_src_.begin());
			std::copy_n(eta_.begin(), desc.v.size(), best_eta_.begin());
		}
		++path_counter_;
		return;
	}
	const std::size_t half = len / 2;
	const int level = desc.j() - t;
	double* out = level_llr_[level - 1].data();
	const int choices = desc.v[t] ? 2 : 1;
	for (int e = 0; e < choices; ++e) {
		eta_[t] = std::uint8_t(e);
		kernels_->g_const(a, a + half, std::uint8_t(e), out, half);
		descend(desc, t + 1, out, half);
	}
}

std::pair<std::size_t, double> SrNodeDecoder::decode(std::span<const double> alpha, const SrDescriptor& desc,
	std::span<std::uint8_t> beta)
{
	const std::size_t w = std::size_t(1) << desc.j();
	if (alpha.size() != w || beta.size() != w)
		throw std::invalid_argument("decode_sr: width mismatch");
	if (desc.j() > int(level_llr_.size()))
		throw std::invalid_argument("decode_sr: node wider than the decoder");
	path_counter_ = 0;
	have_best_ = false;
	descend(desc, 0, alpha.data(), w);

	std::size_t width = std::size_t(1) << desc.r;
	std::copy_n(best_src_.begin(), width, beta.begin());
	for (int t = int(desc.v.size()) - 1; t >= 0; --t) {
		std::copy_n(beta.begin(), width, beta.begin() + width);
		kernels_->xor_const(beta.data(), best_eta_[t], width);
		width *= 2;
	}
	return {best_path_, best_metric_};
}

SrOutput decode_sr(std::span<const double> node_llr, const SrDescriptor& desc, ArithmeticMode mode)
{
	SrNodeDecoder dec(desc.j(), mode);
	SrOutput out;
	out.beta.resize(node_llr.size());
	const auto [path, metric] = dec.decode(node_llr, desc, out.beta);
	out.path = path;
	out.metric = metric;
	out.steps = sr_time_steps(desc);
	return out;
}

SrfscDecoder::SrfscDecoder(const CodeSpec& spec, std::shared_ptr<const DecodePlan> plan, ArithmeticMode mode,
	std::shared_ptr<const TaConfig> ta, CycleModel model)
	: spec_(spec), plan_(std::move(plan)), ta_(std::move(ta)), mode_(mode), model_(model),
	  kernels_(&simd::active_kernels()), sr_(spec.n, mode), alpha_(spec.n), beta_(spec.N)
{
	if (!plan_ || plan_->n != spec.n)
		throw std::invalid_argument("SrfscDecoder: plan does not match the code");
	if (ta_ && ta_->n != spec.n)
		throw std::invalid_argument("SrfscDecoder: threshold table does not match the code");
	for (int j = 0; j < spec.n; ++j)
		alpha_[j].resize(std::size_t(1) << j);
}

SrfscDecoder::SrfscDecoder(const CodeSpec& spec, ArithmeticMode mode)
	: SrfscDecoder(spec, std::make_shared<const DecodePlan>(make_plan(spec)), mode)
{
}

void SrfscDecoder::node(std::size_t h, int j, const double* alpha, std::uint8_t* beta, DecodeResult& res)
{
	const std::size_t w = std::size_t(1) << j;
	const int kind = plan_->node_kind[h];
	if (kind >= 0) {
		const SrDescriptor& desc = plan_->cover[kind];
		sr_.decode({alpha, w}, desc, {beta, w});
		res.steps += sr_time_steps(desc);
		res.cycles += sr_node_cycles(desc, model_);
		return;
	}
	if (ta_ && ta_->eligible(h)) {
		++res.comparisons;
		if (kernels_->all_above(alpha, ta_->thresholds[h], w)) {
			kernels_->hard_decision(alpha, beta, w);
			++res.hard_decided;
			res.hard_nodes.push_back(node_at(h, spec_.n));
			return;
		}
	}
	res.steps += 2;
	res.cycles += general_node_cycles(j, model_);
	const std::size_t half = w / 2;
	double* child = alpha_[j - 1].data();
	if (mode_ == ArithmeticMode::MinSum) {
		kernels_->f_minsum(alpha, alpha + half, child, half);
	} else {
		for (std::size_t k = 0; k < half; ++k)
			child[k] = f_op(alpha[k], alpha[k + half], mode_);
	}
	node(2 * h, j - 1, child, beta, res);
	kernels_->g(alpha, alpha + half, beta, child, half);
	node(2 * h + 1, j - 1, child, beta + half, res);
	kernels_->xor_bytes(beta, beta + half, half);
}

DecodeResult SrfscDecoder::decode(std::span<const double> llr)
{
	if (int(llr.size()) != spec_.N)
		throw std::invalid_argument("decode: llr length != N");
	DecodeResult res;
	node(1, spec_.n, llr.data(), beta_.data(), res);
	res.u_hat = beta_;
	polar_transform(res.u_hat);
	res.frozen_violations = count_frozen_violations(spec_, res.u_hat);
	res.first_attempt_steps = res.steps;
	return res;
}

DecodeResult decode_srfsc(const CodeSpec& spec, const DecodePlan& plan, std::span<const double> llr,
	ArithmeticMode mode)
{
	SrfscDecoder dec(spec, std::make_shared<const DecodePlan>(plan), mode);
	return dec.decode(llr);
}

} // namespace polar
