#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polar {

/// One bit per byte, values 0 or 1.
using Bits = std::vector<std::uint8_t>;

/// Bits packed MSB-first into hex digits; the last digit is zero-padded.
std::string bits_to_hex(std::span<const std::uint8_t> bits);

/// Inverse of bits_to_hex. Throws std::invalid_argument on bad digits, too few
/// digits, or nonzero padding bits.
Bits hex_to_bits(std::string_view hex, std::size_t count);

/// In-place x = u * F^{(x)n} over GF(2), natural order. The transform is its own inverse.
void polar_transform(std::span<std::uint8_t> bits);

int popcount(std::span<const std::uint8_t> bits);

/// Reverse the low `width` bits of `value`.
inline std::uint32_t bit_reverse(std::uint32_t value, int width)
{
	std::uint32_t out = 0;
	for (int b = 0; b < width; ++b)
		out |= ((value >> b) & 1u) << (width - 1 - b);
	return out;
}

} // namespace polar
