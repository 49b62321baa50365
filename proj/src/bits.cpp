#include "polar/bits.hpp"

#include <stdexcept>

namespace polar {

std::string bits_to_hex(std::span<const std::uint8_t> bits)
{
	static const char digits[] = "0123456789abcdef";
	std::string out;
	out.reserve((bits.size() + 3) / 4);
	for (std::size_t i = 0; i < bits.size(); i += 4) {
		unsigned nibble = 0;
		for (std::size_t b = 0; b < 4; ++b) {
			nibble <<= 1;
			if (i + b < bits.size())
				nibble |= bits[i + b] & 1u;
		}
		out.push_back(digits[nibble]);
	}
	return out;
}

Bits hex_to_bits(std::string_view hex, std::size_t count)
{
	if (hex.starts_with("0x") || hex.starts_with("0X"))
		hex.remove_prefix(2);
	if (hex.size() != (count + 3) / 4)
		throw std::invalid_argument("hex string has " + std::to_string(hex.size()) + " digits, expected " +
			std::to_string((count + 3) / 4) + " for " + std::to_string(count) + " bits");
	Bits out;
	out.reserve(hex.size() * 4);
	for (char ch : hex) {
		unsigned nibble;
		if (ch >= '0' && ch <= '9')
			nibble = ch - '0';
		else if (ch >= 'a' && ch <= 'f')
			nibble = ch - 'a' + 10;
		else if (ch >= 'A' && ch <= 'F')
			nibble = ch - 'A' + 10;
		else
			throw std::invalid_argument(std::string("invalid hex digit '") + ch + "'");
		for (int b = 3; b >= 0; --b)
			out.push_back((nibble >> b) & 1u);
	}
	for (std::size_t i = count; i < out.size(); ++i)
		if (out[i])
			throw std::invalid_argument("nonzero padding bits in hex string");
	out.resize(count);
	return out;
}

void polar_transform(std::span<std::uint8_t> bits)
{
	const std::size_t n = bits.size();
	for (std::size_t h = 1; h < n; h *= 2)
		for (std::size_t i = 0; i < n; i += 2 * h)
			for (std::size_t k = i; k < i + h; ++k)
				bits[k] ^= bits[k + h];
}

int popcount(std::span<const std::uint8_t> bits)
{
	int w = 0;
	for (auto b : bits)
		w += b & 1;
	return w;
}

} // namespace polar
