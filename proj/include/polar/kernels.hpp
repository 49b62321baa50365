#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace polar::simd {

// Batch primitives of the decoders. Every variant must match the scalar table bit for bit.
struct KernelTable {
	const char* name;
	// sign(a)sign(b)min(|a|,|b|), signs taken from the sign bits
	void (*f_minsum)(const double* a, const double* b, double* out, std::size_t n);
	// (beta ? -a : a) + b
	void (*g)(const double* a, const double* b, const std::uint8_t* beta, double* out, std::size_t n);
	void (*g_const)(const double* a, const double* b, std::uint8_t beta, double* out, std::size_t n);
	void (*xor_bytes)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
	void (*xor_const)(std::uint8_t* dst, std::uint8_t value, std::size_t n);
	// llr < 0
	void (*hard_decision)(const double* llr, std::uint8_t* out, std::size_t n);
	// every |llr| > T
	bool (*all_above)(const double* llr, double T, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the variant was not compiled in or the CPU lacks it
const KernelTable* avx2_kernels();

// Chosen once: POLAR_KERNELS=scalar|avx2 overrides, otherwise the widest supported variant.
const KernelTable& active_kernels();
std::vector<const KernelTable*> available_kernels();

} // namespace polar::simd
