#include "polar/kernels.hpp"

#include <bit>
#include <cmath>

namespace polar::simd {

namespace {

constexpr std::uint64_t kSign = 0x8000000000000000ull;

void f_minsum(const double* a, const double* b, double* out, std::size_t n)
{
	for (std::size_t k = 0; k < n; ++k) {
		const std::uint64_t s = (std::bit_cast<std::uint64_t>(a[k]) ^ std::bit_cast<std::uint64_t>(b[k])) & kSign;
		const double m = std::fmin(std::fabs(a[k]), std::fabs(b[k]));
		out[k] = std::bit_cast<double>(std::bit_cast<std::uint64_t>(m) | s);
	}
}

void g(const double* a, const double* b, const std::uint8_t* beta, double* out, std::size_t n)
{
	for (std::size_t k = 0; k < n; ++k)
		out[k] = (beta[k] ? -a[k] : a[k]) + b[k];
}

void g_const(const double* a, const double* b, std::uint8_t beta, double* out, std::size_t n)
{
	if (beta)
		for (std::size_t k = 0; k < n; ++k)
			out[k] = -a[k] + b[k];
	else
		for (std::size_t k = 0; k < n; ++k)
			out[k] = a[k] + b[k];
}

void xor_bytes(std::uint8_t* dst, const std::uint8_t* src, std::size_t n)
{
	for (std::size_t k = 0; k < n; ++k)
		dst[k] ^= src[k];
}

void xor_const(std::uint8_t* dst, std::uint8_t value, std::size_t n)
{
	for (std::size_t k = 0; k < n; ++k)
		dst[k] ^= value;
}

void hard_decision(const double* llr, std::uint8_t* out, std::size_t n)
{
	for (std::size_t k = 0; k < n; ++k)
		out[k] = llr[k] < 0.0;
}

bool all_above(const double* llr, double T, std::size_t n)
{
	for (std::size_t k = 0; k < n; ++k)
		if (!(std::fabs(llr[k]) > T))
			return false;
	return true;
}

} // namespace

const KernelTable& scalar_kernels()
{
	static const KernelTable table{"scalar", f_minsum, g, g_const, xor_bytes, xor_const, hard_decision, all_above};
	return table;
}

} // namespace polar::simd
