#pragma once

#include "polar/bits.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polar {

struct CrcSpec {
	int length = 0;
	// poly[k] is the coefficient of D^k; poly.size() == length + 1.
	Bits poly;

	static CrcSpec crc6();  // D^6 + D^5 + 1
	static CrcSpec crc11(); // D^11 + D^10 + D^9 + D^5 + 1
	static CrcSpec crc16(); // D^16 + D^12 + D^5 + 1
	static CrcSpec from_length(int length);

	std::string name() const { return "crc" + std::to_string(length); }
};

// Remainder of bits * D^length mod poly. Zero initial state, no reflection, no final xor.
// Output is MSB first (coefficient of D^{length-1} first).
Bits crc_compute(std::span<const std::uint8_t> bits, const CrcSpec& crc);
bool crc_check(std::span<const std::uint8_t> bits_with_crc, const CrcSpec& crc);

struct CodeSpec {
	int n = 0;
	int N = 0;
	int K = 0;
	Bits d; // 1 = information position
	std::optional<CrcSpec> crc;
	double design_sigma = 0.0;

	int crc_length() const { return crc ? crc->length : 0; }
	// Number of payload bits the caller supplies (K minus CRC).
	int info_length() const { return K - crc_length(); }
	double rate() const { return double(K) / N; }
	std::vector<int> info_positions() const;
	void validate() const;
};

// K most reliable leaves by Gaussian-approximation mean at design_sigma, ties toward the
// higher index. With `override_d` the flags are taken verbatim and the sigma is ignored.
CodeSpec construct_frozen_set(int n, int K, double design_sigma,
	const std::optional<Bits>& override_d = std::nullopt,
	std::optional<CrcSpec> crc = std::nullopt);

CodeSpec code_from_flags(Bits d, std::optional<CrcSpec> crc = std::nullopt);

struct Frame {
	Bits u;
	Bits x;
	std::vector<double> llr;
};

// Appends the CRC, places the K bits on the information positions in increasing order,
// and transforms. llr is left empty.
Frame encode(const CodeSpec& spec, std::span<const std::uint8_t> info);

// The K bits at the information positions of u, CRC included.
Bits extract_info_bits(const CodeSpec& spec, std::span<const std::uint8_t> u);

std::vector<double> channel_llr(std::span<const double> y, double sigma);

// {"N": int, "frozen": [1-based indices]}
Bits read_frozen_file(const std::filesystem::path& path);
std::string frozen_json(const CodeSpec& spec);

} // namespace polar
