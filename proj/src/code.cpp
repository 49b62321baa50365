#include "polar/code.hpp"
#include "polar/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace polar {

std::vector<int> CodeSpec::info_positions() const
{
	std::vector<int> pos;
	pos.reserve(K);
	for (int k = 0; k < N; ++k)
		if (d[k])
			pos.push_back(k);
	return pos;
}

void CodeSpec::validate() const
{
	if (n < 1 || n > 24 || N != (1 << n))
		throw std::invalid_argument("code length must be 2^n with 1 <= n <= 24");
	if (int(d.size()) != N)
		throw std::invalid_argument("flag vector length " + std::to_string(d.size()) + " != N");
	if (popcount(d) != K)
		throw std::invalid_argument("flag vector weight != K");
	if (crc && K < crc->length + 1)
		throw std::invalid_argument("K must exceed the CRC length");
}

CodeSpec code_from_flags(Bits d, std::optional<CrcSpec> crc)
{
	CodeSpec spec;
	spec.N = int(d.size());
	spec.n = std::bit_width(unsigned(spec.N)) - 1;
	spec.K = popcount(d);
	spec.d = std::move(d);
	spec.crc = std::move(crc);
	spec.validate();
	return spec;
}

CodeSpec construct_frozen_set(int n, int K, double design_sigma, const std::optional<Bits>& override_d,
	std::optional<CrcSpec> crc)
{
	if (n < 1 || n > 24)
		throw std::invalid_argument("n out of range");
	const int N = 1 << n;
	if (K < 1 || K > N)
		throw std::invalid_argument("K=" + std::to_string(K) + " out of range 1.." + std::to_string(N));
	if (override_d) {
		if (int(override_d->size()) != N)
			throw std::invalid_argument("override length != N");
		if (popcount(*override_d) != K)
			throw std::invalid_argument("override weight != K");
		CodeSpec spec = code_from_flags(*override_d, std::move(crc));
		spec.design_sigma = design_sigma;
		return spec;
	}
	if (!(design_sigma > 0))
		throw std::invalid_argument("design sigma must be positive");

	const GaussianTable table = compute_means(n, design_sigma);
	std::vector<int> order(N);
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
		const double ma = table.leaf_mean(a), mb = table.leaf_mean(b);
		if (ma != mb)
			return ma > mb;
		return a > b;
	});
	Bits d(N, 0);
	for (int k = 0; k < K; ++k)
		d[order[k]] = 1;
	CodeSpec spec = code_from_flags(std::move(d), std::move(crc));
	spec.design_sigma = design_sigma;
	return spec;
}

Frame encode(const CodeSpec& spec, std::span<const std::uint8_t> info)
{
	if (int(info.size()) != spec.info_length())
		throw std::invalid_argument("encode: got " + std::to_string(info.size()) + " info bits, expected " +
			std::to_string(spec.info_length()));
	Bits payload(info.begin(), info.end());
	if (spec.crc) {
		const Bits r = crc_compute(payload, *spec.crc);
		payload.insert(payload.end(), r.begin(), r.end());
	}
	Frame f;
	f.u.assign(spec.N, 0);
	int t = 0;
	for (int k = 0; k < spec.N; ++k)
		if (spec.d[k])
			f.u[k] = payload[t++] & 1u;
	f.x = f.u;
	polar_transform(f.x);
	return f;
}

Bits extract_info_bits(const CodeSpec& spec, std::span<const std::uint8_t> u)
{
	Bits out;
	out.reserve(spec.K);
	for (int k = 0; k < spec.N; ++k)
		if (spec.d[k])
			out.push_back(u[k]);
	return out;
}

std::vector<double> channel_llr(std::span<const double> y, double sigma)
{
	if (!(sigma > 0))
		throw std::invalid_argument("sigma must be positive");
	const double s = 2.0 / (sigma * sigma);
	std::vector<double> out(y.size());
	for (std::size_t k = 0; k < y.size(); ++k)
		out[k] = s * y[k];
	return out;
}

Bits read_frozen_file(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open " + path.string());
	nlohmann::json j;
	try {
		in >> j;
	} catch (const nlohmann::json::exception& e) {
		throw std::runtime_error(path.string() + ": " + e.what());
	}
	if (!j.is_object() || !j.contains("N") || !j.contains("frozen"))
		throw std::runtime_error(path.string() + ": expected {\"N\": int, \"frozen\": [...]}");
	const long N = j.at("N").get<long>();
	if (N < 2 || N > (1L << 24) || (N & (N - 1)))
		throw std::runtime_error(path.string() + ": N must be a power of two");
	Bits d(N, 1);
	for (const auto& v : j.at("frozen")) {
		const long idx = v.get<long>();
		if (idx < 1 || idx > N)
			throw std::runtime_error(path.string() + ": frozen index " + std::to_string(idx) + " out of range");
		if (!d[idx - 1])
			throw std::runtime_error(path.string() + ": duplicate frozen index " + std::to_string(idx));
		d[idx - 1] = 0;
	}
	return d;
}

std::string frozen_json(const CodeSpec& spec)
{
	nlohmann::json j;
	j["N"] = spec.N;
	auto frozen = nlohmann::json::array();
	for (int k = 0; k < spec.N; ++k)
		if (!spec.d[k])
			frozen.push_back(k + 1);
	j["frozen"] = frozen;
	return j.dump() + "\n";
}

} // namespace polar
