#include "polar/code.hpp"

#include <stdexcept>

namespace polar {

namespace {

CrcSpec make_crc(int length, std::initializer_list<int> powers)
{
	CrcSpec c;
	c.length = length;
	c.poly.assign(length + 1, 0);
	for (int p : powers)
		c.poly[p] = 1;
	return c;
}

} // namespace

CrcSpec CrcSpec::crc6() { return make_crc(6, {6, 5, 0}); }
CrcSpec CrcSpec::crc11() { return make_crc(11, {11, 10, 9, 5, 0}); }
CrcSpec CrcSpec::crc16() { return make_crc(16, {16, 12, 5, 0}); }

CrcSpec CrcSpec::from_length(int length)
{
	switch (length) {
	case 6: return crc6();
	case 11: return crc11();
	case 16: return crc16();
	}
	throw std::invalid_argument("unsupported CRC length " + std::to_string(length) + " (6, 11 or 16)");
}

Bits crc_compute(std::span<const std::uint8_t> bits, const CrcSpec& crc)
{
	const int L = crc.length;
	// reg[k] holds the coefficient of D^{L-1-k}
	Bits reg(L, 0);
	for (auto b : bits) {
		const std::uint8_t fb = reg[0] ^ (b & 1u);
		for (int k = 0; k + 1 < L; ++k)
			reg[k] = reg[k + 1] ^ (fb & crc.poly[L - 1 - k]);
		reg[L - 1] = fb & crc.poly[0];
	}
	return reg;
}

bool crc_check(std::span<const std::uint8_t> bits_with_crc, const CrcSpec& crc)
{
	if (bits_with_crc.size() <= std::size_t(crc.length))
		throw std::invalid_argument("crc_check: sequence not longer than the CRC");
	for (auto b : crc_compute(bits_with_crc, crc))
		if (b)
			return false;
	return true;
}

} // namespace polar
