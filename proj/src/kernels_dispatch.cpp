#include "polar/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace polar::simd {

#ifdef POLAR_HAVE_AVX2
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels()
{
#ifdef POLAR_HAVE_AVX2
	if (__builtin_cpu_supports("avx2"))
		return &avx2_table();
#endif
	return nullptr;
}

std::vector<const KernelTable*> available_kernels()
{
	std::vector<const KernelTable*> out{&scalar_kernels()};
	if (const auto* t = avx2_kernels())
		out.push_back(t);
	return out;
}

namespace {

const KernelTable& choose()
{
	const char* env = std::getenv("POLAR_KERNELS");
	if (env && std::strcmp(env, "scalar") == 0)
		return scalar_kernels();
	if (env && *env && std::strcmp(env, "avx2") != 0)
		std::fprintf(stderr, "polar: unknown POLAR_KERNELS=%s, using default\n", env);
	if (const auto* t = avx2_kernels())
		return *t;
	if (env && std::strcmp(env, "avx2") == 0)
		std::fprintf(stderr, "polar: avx2 kernels unavailable, using scalar\n");
	return scalar_kernels();
}

} // namespace

const KernelTable& active_kernels()
{
	static const KernelTable& table = choose();
	return table;
}

} // namespace polar::simd
