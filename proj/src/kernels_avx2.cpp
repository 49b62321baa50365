#include "polar/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace polar::simd {

const KernelTable& scalar_kernels();

namespace {

inline __m256d sign_mask() { return _mm256_set1_pd(-0.0); }

// four beta bytes -> sign-bit mask per lane
inline __m256d beta_mask(const std::uint8_t* beta)
{
	std::uint32_t w;
	std::memcpy(&w, beta, 4);
	const __m256i lanes = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(int(w)));
	return _mm256_castsi256_pd(_mm256_slli_epi64(lanes, 63));
}

void f_minsum(const double* a, const double* b, double* out, std::size_t n)
{
	const __m256d sm = sign_mask();
	std::size_t k = 0;
	for (; k + 4 <= n; k += 4) {
		const __m256d x = _mm256_loadu_pd(a + k);
		const __m256d y = _mm256_loadu_pd(b + k);
		const __m256d s = _mm256_and_pd(_mm256_xor_pd(x, y), sm);
		const __m256d m = _mm256_min_pd(_mm256_andnot_pd(sm, x), _mm256_andnot_pd(sm, y));
		_mm256_storeu_pd(out + k, _mm256_or_pd(m, s));
	}
	if (k < n)
		scalar_kernels().f_minsum(a + k, b + k, out + k, n - k);
}

void g(const double* a, const double* b, const std::uint8_t* beta, double* out, std::size_t n)
{
	std::size_t k = 0;
	for (; k + 4 <= n; k += 4) {
		const __m256d x = _mm256_xor_pd(_mm256_loadu_pd(a + k), beta_mask(beta + k));
		_mm256_storeu_pd(out + k, _mm256_add_pd(x, _mm256_loadu_pd(b + k)));
	}
	if (k < n)
		scalar_kernels().g(a + k, b + k, beta + k, out + k, n - k);
}

void g_const(const double* a, const double* b, std::uint8_t beta, double* out, std::size_t n)
{
	const __m256d flip = beta ? sign_mask() : _mm256_setzero_pd();
	std::size_t k = 0;
	for (; k + 4 <= n; k += 4) {
		const __m256d x = _mm256_xor_pd(_mm256_loadu_pd(a + k), flip);
		_mm256_storeu_pd(out + k, _mm256_add_pd(x, _mm256_loadu_pd(b + k)));
	}
	if (k < n)
		scalar_kernels().g_const(a + k, b + k, beta, out + k, n - k);
}

void xor_bytes(std::uint8_t* dst, const std::uint8_t* src, std::size_t n)
{
	std::size_t k = 0;
	for (; k + 32 <= n; k += 32) {
		const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
		const __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
		_mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), _mm256_xor_si256(x, y));
	}
	for (; k < n; ++k)
		dst[k] ^= src[k];
}

void xor_const(std::uint8_t* dst, std::uint8_t value, std::size_t n)
{
	if (!value)
		return;
	const __m256i v = _mm256_set1_epi8(char(value));
	std::size_t k = 0;
	for (; k + 32 <= n; k += 32) {
		const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
		_mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), _mm256_xor_si256(x, v));
	}
	for (; k < n; ++k)
		dst[k] ^= value;
}

void hard_decision(const double* llr, std::uint8_t* out, std::size_t n)
{
	const __m256d zero = _mm256_setzero_pd();
	std::size_t k = 0;
	for (; k + 4 <= n; k += 4) {
		const int bits = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(llr + k), zero, _CMP_LT_OQ));
		out[k] = bits & 1;
		out[k + 1] = (bits >> 1) & 1;
		out[k + 2] = (bits >> 2) & 1;
		out[k + 3] = (bits >> 3) & 1;
	}
	for (; k < n; ++k)
		out[k] = llr[k] < 0.0;
}

bool all_above(const double* llr, double T, std::size_t n)
{
	const __m256d sm = sign_mask();
	const __m256d t = _mm256_set1_pd(T);
	std::size_t k = 0;
	for (; k + 4 <= n; k += 4) {
		const __m256d mag = _mm256_andnot_pd(sm, _mm256_loadu_pd(llr + k));
		if (_mm256_movemask_pd(_mm256_cmp_pd(mag, t, _CMP_GT_OQ)) != 0xF)
			return false;
	}
	for (; k < n; ++k)
		if (!(std::fabs(llr[k]) > T))
			return false;
	return true;
}

} // namespace

const KernelTable& avx2_table()
{
	static const KernelTable table{"avx2", f_minsum, g, g_const, xor_bytes, xor_const, hard_decision, all_above};
	return table;
}

} // namespace polar::simd
