#pragma once

#include "polar/bits.hpp"
#include "polar/code.hpp"
#include "polar/kernels.hpp"
#include "polar/node_id.hpp"
#include "polar/tree.hpp"

#include <memory>
#include <span>
#include <vector>

namespace polar {

enum class ArithmeticMode { MinSum, Exact };

const char* to_string(ArithmeticMode m);
ArithmeticMode parse_arithmetic_mode(const std::string& s);

// sign(x)sign(y)min(|x|,|y|) or 2 atanh(tanh(x/2) tanh(y/2)); sign(0) = +1
double f_op(double x, double y, ArithmeticMode mode = ArithmeticMode::MinSum);
double g_op(double x, double y, std::uint8_t u);

// h(a) = 0 for a >= 0
inline std::uint8_t hard_bit(double a) { return a < 0.0; }

struct DecodeResult {
	Bits u_hat;
	long steps = 0;
	long cycles = 0;
	long comparisons = 0;
	int hard_decided = 0;
	std::vector<NodeId> hard_nodes;
	int frozen_violations = 0;
	int attempts = 1;
	long first_attempt_steps = 0;
	bool crc_checked = false;
	bool crc_pass = false;
};

class Decoder {
public:
	virtual ~Decoder() = default;
	virtual DecodeResult decode(std::span<const double> llr) = 0;
	// independent workspace, same configuration
	virtual std::unique_ptr<Decoder> clone() const = 0;
	virtual const char* name() const = 0;
};

// Plain SC over an arbitrary node: llr and flags of width 2^j in, codeword estimate out.
class ScEngine {
public:
	explicit ScEngine(int max_level, ArithmeticMode mode = ArithmeticMode::MinSum);

	void decode(std::span<const double> llr, std::span<const std::uint8_t> d, std::span<std::uint8_t> beta);
	ArithmeticMode mode() const { return mode_; }

private:
	void node(int j, const double* alpha, const std::uint8_t* d, std::uint8_t* beta);

	ArithmeticMode mode_;
	const simd::KernelTable* kernels_;
	std::vector<std::vector<double>> alpha_;
};

class ScDecoder final : public Decoder {
public:
	explicit ScDecoder(const CodeSpec& spec, ArithmeticMode mode = ArithmeticMode::MinSum, CycleModel model = {});

	DecodeResult decode(std::span<const double> llr) override;
	std::unique_ptr<Decoder> clone() const override { return std::make_unique<ScDecoder>(*this); }
	const char* name() const override { return "sc"; }

private:
	CodeSpec spec_;
	ScEngine engine_;
	long steps_;
	long cycles_;
	Bits beta_;
};

DecodeResult decode_sc(const CodeSpec& spec, std::span<const double> llr,
	ArithmeticMode mode = ArithmeticMode::MinSum);

int count_frozen_violations(const CodeSpec& spec, std::span<const std::uint8_t> u);

} // namespace polar
