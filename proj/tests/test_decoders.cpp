#include "oracles.hpp"

#include "polar/code.hpp"
#include "polar/sc_decoder.hpp"
#include "polar/simulation.hpp"
#include "polar/srfsc_decoder.hpp"
#include "polar/ta_decoder.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace polar;

namespace {

std::vector<double> gaussian_llr(std::mt19937_64& rng, std::size_t n, double scale = 2.0)
{
	std::normal_distribution<double> g(0.0, scale);
	std::vector<double> v(n);
	for (auto& x : v)
		x = g(rng);
	return v;
}

std::vector<double> noiseless_llr(const Bits& x, double mag = 20.0)
{
	std::vector<double> v(x.size());
	for (std::size_t k = 0; k < x.size(); ++k)
		v[k] = x[k] ? -mag : mag;
	return v;
}

} // namespace

TEST_CASE("f and g")
{
	CHECK(f_op(2.0, -3.0) == -2.0);
	CHECK(f_op(4.0, 0.0) == 0.0);
	CHECK(f_op(4.0, 0.0, ArithmeticMode::Exact) == 0.0);
	CHECK(f_op(1.0, 1.0, ArithmeticMode::Exact) == doctest::Approx(0.4338).epsilon(1e-3));
	CHECK(std::isfinite(f_op(80.0, 90.0, ArithmeticMode::Exact)));
	CHECK(g_op(1.5, 2.0, 0) == 3.5);
	CHECK(g_op(1.5, 2.0, 1) == 0.5);
	CHECK(g_op(-1, 1, 1) == 2.0);
}

TEST_CASE("sc small examples")
{
	const CodeSpec spec = code_from_flags(Bits{0, 1});
	const DecodeResult r = decode_sc(spec, std::vector<double>{-0.8, 2.0});
	CHECK(r.u_hat == Bits{0, 0});
	CHECK(r.steps == 2);

	const CodeSpec frozen = code_from_flags(Bits(16, 0));
	std::mt19937_64 rng(1);
	CHECK(decode_sc(frozen, gaussian_llr(rng, 16)).u_hat == Bits(16, 0));
}

TEST_CASE("sc matches the reference recursion and recovers noiseless frames")
{
	std::mt19937_64 rng(2);
	for (int t = 0; t < 200; ++t) {
		const int n = 1 + int(rng() % 8);
		const CodeSpec spec = code_from_flags(oracle::random_flags(rng, std::size_t(1) << n, 0.5));
		const auto llr = gaussian_llr(rng, spec.N);
		Bits beta;
		oracle::sc_rec(llr, spec.d, 0, beta);
		const DecodeResult r = decode_sc(spec, llr);
		CHECK(r.u_hat == oracle::transform(beta));
		CHECK(r.steps == 2 * spec.N - 2);

		const Bits info = oracle::random_flags(rng, spec.info_length(), 0.5);
		const Frame f = encode(spec, info);
		CHECK(decode_sc(spec, noiseless_llr(f.x)).u_hat == f.u);
		CHECK(decode_srfsc(spec, make_plan(spec), noiseless_llr(f.x)).u_hat == f.u);
		CHECK(decode_sc(spec, noiseless_llr(f.x), ArithmeticMode::Exact).u_hat == f.u);
	}
}

TEST_CASE("sc sign convention and scaling")
{
	std::mt19937_64 rng(3);
	const CodeSpec all = code_from_flags(Bits(32, 1));
	auto llr = gaussian_llr(rng, 32);
	const Bits a = decode_sc(all, llr).u_hat;
	for (auto& x : llr)
		x = -x;
	Bits b = decode_sc(all, llr).u_hat;
	// hard decisions complement; transform the codewords back to compare
	Bits xa = a, xb = b;
	polar_transform(xa);
	polar_transform(xb);
	for (int k = 0; k < 32; ++k)
		CHECK(xa[k] != xb[k]);

	const CodeSpec spec = construct_frozen_set(7, 64, 0.8);
	for (int t = 0; t < 50; ++t) {
		auto l = gaussian_llr(rng, 128);
		const Bits base = decode_sc(spec, l).u_hat;
		for (auto& x : l)
			x *= 3.7;
		CHECK(decode_sc(spec, l).u_hat == base);
	}
}

TEST_CASE("source llrs, parity and Wagner examples")
{
	const SrDescriptor d1 = describe_sr(Bits{1, 0});
	REQUIRE(d1.v == Bits{1});
	const auto paths = source_llrs(std::vector<double>{2, -1}, d1);
	REQUIRE(paths.size() == 2);
	CHECK(paths[0] == std::vector<double>{1});
	CHECK(paths[1] == std::vector<double>{-3});
	const SrDescriptor r1 = describe_sr(Bits{1, 1});
	CHECK(source_llrs(std::vector<double>{0.5, -2}, r1) == std::vector<std::vector<double>>{{0.5, -2}});
	for (const auto& p : source_llrs(std::vector<double>(8, 0.0), describe_sr(Bits{0, 0, 0, 1, 0, 1, 1, 0})))
		CHECK(p == std::vector<double>(p.size(), 0.0));

	// two strided parity blocks {0,2} and {1,3} under a repetition leftmost node
	SrDescriptor eg = describe_sr(Bits{0, 1, 1, 1});
	REQUIRE(eg.snt == SourceType::EgPc);
	CHECK(egpc_parity(std::vector<double>{1, -2, 3, 4}, eg) == 0);
	eg.egpc_leftmost_rep = true;
	eg.egpc_level = 1;
	eg.egpc_block_len = 2;
	CHECK(egpc_parity(std::vector<double>{1, 3, -2, 4}, eg) == 0);
	CHECK(egpc_parity(std::vector<double>{1, -3, -2, 4}, eg) == 1);
	CHECK_THROWS(egpc_parity(std::vector<double>{1, 2}, describe_sr(Bits{0, 1})));

	CHECK(wagner_decode(std::vector<double>{1.2, -0.4, 2.0, 0.9}, 0) == Bits{0, 0, 0, 0});
	CHECK(wagner_decode(std::vector<double>{1.2, -0.4, 2.0, 0.9}, 1) == Bits{0, 1, 0, 0});
	CHECK(wagner_decode(std::vector<double>{1, 2, 3, 4}, 1) == Bits{1, 0, 0, 0});
	CHECK(wagner_decode(std::vector<double>{-1, 1, 2}, 0) == Bits{0, 0, 0});
}

TEST_CASE("source decoding")
{
	SrNodeDecoder dec(4);
	Bits out(4);
	dec.decode_source(std::vector<double>{-3, 5}, describe_sr(Bits{1, 1}), {out.data(), 2});
	CHECK(out[0] == 1);
	CHECK(out[1] == 0);
	dec.decode_source(std::vector<double>{-3, -5}, describe_sr(Bits{0, 0}), {out.data(), 2});
	CHECK(out[0] == 0);
	CHECK(out[1] == 0);
	// SPC with leftmost Rate-0: even parity, one block
	dec.decode_source(std::vector<double>{1.2, -0.4, 2.0, 0.9}, describe_sr(Bits{0, 1, 1, 1}), out);
	CHECK(out == Bits{0, 0, 0, 0});
	SrDescriptor two_blocks = describe_sr(Bits{0, 1, 1, 1});
	two_blocks.egpc_level = 1;
	two_blocks.egpc_block_len = 2;
	dec.decode_source(std::vector<double>{1.2, -0.4, 2.0, 0.9}, two_blocks, out);
	CHECK(out == Bits{0, 0, 0, 0});
}

TEST_CASE("path selection and sr example")
{
	CHECK(select_path(std::vector<double>{1, 3}) == 1);
	CHECK(select_path(std::vector<double>{2}) == 0);
	CHECK(select_path(std::vector<double>{2, 2, 1}) == 0);
	CHECK_THROWS(select_path(std::vector<double>{}));

	// SR((1), Rate-1, 0): same sequences as SR((1), Rate-0, 0), information source
	SrDescriptor rep_rate1 = describe_sr(Bits{1, 0});
	rep_rate1.snt = SourceType::Rate1;
	rep_rate1.source_frozen = Bits{1};
	const SrOutput o = decode_sr(std::vector<double>{2, -1}, rep_rate1);
	CHECK(o.path == 1);
	CHECK(o.metric == 3.0);
	CHECK(o.beta == Bits{0, 1});
	CHECK(decode_sr(std::vector<double>{-2, -1, 4, -3}, describe_sr(Bits(4, 0))).beta == Bits(4, 0));
}

TEST_CASE("sr decoding is ML for Rate-0, Rate-1 and EG-PC sources")
{
	std::mt19937_64 rng(31);
	int tested = 0;
	for (int t = 0; t < 6000; ++t) {
		const int j = 1 + int(rng() % 5);
		const Bits d = oracle::random_flags(rng, std::size_t(1) << j, double(rng() % 10 + 1) / 11.0);
		if (popcount(d) > 12)
			continue;
		const SrDescriptor desc = describe_sr(d);
		if (desc.snt == SourceType::RateC)
			continue;
		const auto llr = gaussian_llr(rng, d.size());
		const oracle::MlResult ml = oracle::exhaustive_ml(llr, d);
		const SrOutput o = decode_sr(llr, desc);
		CHECK(o.metric == doctest::Approx(correlation_metric(llr, o.beta)).epsilon(1e-12));
		// output is a node codeword
		const Bits u = oracle::transform(o.beta);
		for (std::size_t k = 0; k < d.size(); ++k)
			if (!d[k])
				CHECK(u[k] == 0);
		if (ml.best - ml.second < 1e-9)
			continue;
		CHECK(std::abs(o.metric - ml.best) < 1e-9);
		++tested;
	}
	CHECK(tested > 2000);
}

TEST_CASE("sr decoding is invariant to positive scaling")
{
	std::mt19937_64 rng(37);
	for (int t = 0; t < 500; ++t) {
		const int j = 1 + int(rng() % 5);
		const Bits d = oracle::random_flags(rng, std::size_t(1) << j, 0.5);
		const SrDescriptor desc = describe_sr(d);
		auto llr = gaussian_llr(rng, d.size());
		const SrOutput a = decode_sr(llr, desc);
		for (auto& x : llr)
			x *= 0.25;
		const SrOutput b = decode_sr(llr, desc);
		CHECK(a.path == b.path);
		CHECK(a.beta == b.beta);
	}
}

// With min-sum, SC on a Rate-1 subtree is elementwise hard decision, and frozen
// left siblings only feed g with beta = 0, so these covers must reproduce SC.
TEST_CASE("srfsc equals sc on covers made of Rate-0, Rate-1 and repetition nodes")
{
	std::mt19937_64 rng(41);
	int codes = 0, with_rep = 0;
	for (int t = 0; t < 200000 && codes < 60; ++t) {
		const int n = 3 + int(rng() % 5);
		const CodeSpec spec = code_from_flags(oracle::random_flags(rng, std::size_t(1) << n, 0.75));
		const DecodePlan plan = make_plan(spec);
		bool simple = true, rep = false;
		for (const auto& s : plan.cover) {
			simple = simple && popcount(s.v) == 0 && (s.snt == SourceType::Rate0 || s.snt == SourceType::Rate1);
			rep = rep || (s.snt == SourceType::Rate1 && s.r == 0 && !s.v.empty());
		}
		if (!simple || plan.general_count() == 0)
			continue;
		++codes;
		with_rep += rep;
		for (int f = 0; f < 20; ++f) {
			const auto llr = gaussian_llr(rng, spec.N);
			CHECK(decode_srfsc(spec, plan, llr).u_hat == decode_sc(spec, llr).u_hat);
		}
	}
	CHECK(codes >= 20);
	CHECK(with_rep >= 5);
}

TEST_CASE("all-information code decodes by hard decision")
{
	std::mt19937_64 rng(43);
	const CodeSpec spec = code_from_flags(Bits(64, 1));
	const auto llr = gaussian_llr(rng, 64);
	Bits h(64);
	for (int k = 0; k < 64; ++k)
		h[k] = llr[k] < 0;
	polar_transform(h);
	const DecodeResult r = decode_srfsc(spec, make_plan(spec), llr);
	CHECK(r.u_hat == h);
	CHECK(r.steps == 0);
}

TEST_CASE("srfsc latency matches the schedule")
{
	std::mt19937_64 rng(47);
	const CodeSpec spec = construct_frozen_set(9, 256, 0.7);
	const DecodePlan plan = make_plan(spec);
	const long expected = schedule_time_steps(spec, plan, Schedule::Srfsc).time_steps;
	const long expected_cycles = semi_parallel_cycles(spec, plan, 32);
	SrfscDecoder dec(spec, std::make_shared<const DecodePlan>(plan), ArithmeticMode::MinSum, nullptr, {32, 0});
	for (int t = 0; t < 10; ++t) {
		const DecodeResult r = dec.decode(gaussian_llr(rng, spec.N));
		CHECK(r.steps == expected);
		CHECK(r.cycles == expected_cycles);
	}
}

TEST_CASE("hard decision test")
{
	CHECK(try_hard_decide(std::vector<double>{8.1, -7.9}, 7.0) == Bits{0, 1});
	CHECK_FALSE(try_hard_decide(std::vector<double>{8.1, -6.9}, 7.0));
	CHECK_FALSE(try_hard_decide(std::vector<double>{1.0, 0.0}, 0.0));
	CHECK(bler_upper_bound(0.9, 0.01) == doctest::Approx(0.109));
	CHECK(bler_upper_bound(1.0, 0.2) == doctest::Approx(0.2));
	CHECK(bler_upper_bound(0.9, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("ta decoding")
{
	std::mt19937_64 rng(53);
	const double sigma = sigma_from_ebno(4.0, 0.5);
	const CodeSpec spec = construct_frozen_set(10, 512, sigma);
	const DecodePlan plan = make_plan(spec);
	const TaConfig none = empty_ta_config(spec.n);
	for (int t = 0; t < 5; ++t) {
		const auto llr = gaussian_llr(rng, spec.N);
		const DecodeResult a = decode_srfsc(spec, plan, llr);
		const DecodeResult b = decode_ta_srfsc(spec, plan, none, llr);
		CHECK(a.u_hat == b.u_hat);
		CHECK(a.steps == b.steps);
		CHECK(b.comparisons == 0);
	}

	const TaConfig cfg = build_ta_config(compute_means(spec.n, sigma), 0.9);
	const Bits info = oracle::random_flags(rng, spec.info_length(), 0.5);
	const Frame f = encode(spec, info);
	const DecodeResult clean = decode_ta_srfsc(spec, plan, cfg, noiseless_llr(f.x, 1e3));
	CHECK(clean.hard_decided >= 1);
	CHECK(clean.steps < decode_srfsc(spec, plan, noiseless_llr(f.x, 1e3)).steps);
	CHECK(clean.u_hat == f.u);
	CHECK(clean.comparisons >= clean.hard_decided);

	// per-frame ordering and bounded comparisons
	std::normal_distribution<double> noise(0.0, sigma);
	const long srfsc_steps = schedule_time_steps(spec, plan, Schedule::Srfsc).time_steps;
	const long eligible_general = [&] {
		long c = 0;
		for (std::size_t h = 1; h < plan.node_kind.size(); ++h)
			c += plan.node_kind[h] == DecodePlan::kGeneral && cfg.eligible(h);
		return c;
	}();
	for (int t = 0; t < 50; ++t) {
		std::vector<double> llr(spec.N);
		for (int k = 0; k < spec.N; ++k)
			llr[k] = 2.0 / (sigma * sigma) * ((f.x[k] ? -1.0 : 1.0) + noise(rng));
		const DecodeResult r = decode_ta_srfsc(spec, plan, cfg, llr);
		CHECK(r.steps <= srfsc_steps);
		if (r.hard_decided == 0)
			CHECK(r.steps == srfsc_steps);
		CHECK(r.comparisons <= eligible_general);
	}
}

TEST_CASE("multistage decoding")
{
	std::mt19937_64 rng(59);
	const double sigma = sigma_from_ebno(3.0, 0.5);
	const CodeSpec spec = construct_frozen_set(8, 128, sigma, std::nullopt, CrcSpec::crc11());
	const DecodePlan plan = make_plan(spec);
	const long srfsc_steps = schedule_time_steps(spec, plan, Schedule::Srfsc).time_steps;
	const Bits info = oracle::random_flags(rng, spec.info_length(), 0.5);
	const Frame f = encode(spec, info);

	const TaConfig none = empty_ta_config(spec.n);
	const DecodeResult pass = decode_multistage(spec, plan, none, noiseless_llr(f.x));
	CHECK(pass.attempts == 1);
	CHECK(pass.crc_pass);

	// garbage in, nothing hard-decided: one attempt, its output kept
	const auto junk = gaussian_llr(rng, spec.N, 0.5);
	const DecodeResult fail1 = decode_multistage(spec, plan, none, junk);
	CHECK(fail1.attempts == 1);
	CHECK(fail1.u_hat == decode_srfsc(spec, plan, junk).u_hat);
	CHECK(fail1.steps == srfsc_steps);

	// a zero threshold at the root hard-decides everything
	TaConfig root = empty_ta_config(spec.n);
	root.thresholds[1] = 0.0;
	REQUIRE(plan.node_kind[1] == DecodePlan::kGeneral);
	int seen = 0;
	for (int t = 0; t < 50 && !seen; ++t) {
		const auto llr = gaussian_llr(rng, spec.N, 0.5);
		const DecodeResult ta = decode_ta_srfsc(spec, plan, root, llr);
		REQUIRE(ta.hard_decided == 1);
		if (crc_check(extract_info_bits(spec, ta.u_hat), *spec.crc))
			continue;
		const DecodeResult r = decode_multistage(spec, plan, root, llr);
		CHECK(r.attempts == 2);
		CHECK(r.steps == ta.steps + srfsc_steps);
		CHECK(r.first_attempt_steps == 0);
		CHECK(r.u_hat == decode_srfsc(spec, plan, llr).u_hat);
		++seen;
	}
	CHECK(seen == 1);
	CHECK_THROWS(decode_multistage(construct_frozen_set(4, 8, 1.0), make_plan(construct_frozen_set(4, 8, 1.0)), none,
		gaussian_llr(rng, 16)));
}
