#include "polar/gaussian.hpp"
#include "polar/code.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace polar {

namespace {

constexpr double kQuadTol = 1e-13;

// The adaptive driver compares its error estimate on the reference interval against a tolerance
// scaled by the interval width, so narrow intervals never terminate. Integrate over [0, 1] instead.
template <class F>
double integrate(F f, double a, double b)
{
	const double w = b - a;
	auto g = [&](double t) { return f(a + w * t); };
	return w * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 20, kQuadTol);
}

// Int_0^inf sech(u/2) exp(-u^2/(4x)) du
double sech_integral(double x)
{
	const double upper = std::min(90.0, 60.0 * std::sqrt(x));
	return integrate([x](double u) { return std::exp(-u * u / (4.0 * x)) / std::cosh(0.5 * u); }, 0.0, upper);
}

} // namespace

double log_phi(double x)
{
	if (!(x > 0))
		throw std::domain_error("log_phi: argument must be positive");
	return -x / 4.0 - 0.5 * std::log(4.0 * std::numbers::pi * x) + std::log(2.0 * sech_integral(x));
}

double phi(double x)
{
	if (!(x >= 0))
		throw std::domain_error("phi: negative argument");
	if (x == 0)
		return 0.0;
	return std::exp(log_phi(x));
}

double phi_complement(double x)
{
	if (!(x > 0))
		throw std::domain_error("phi_complement: argument must be positive");
	const double sd = std::sqrt(2.0 * x);
	const double upper = x + 40.0 * sd;
	const double s = integrate(
		[x](double u) {
			// exp(-(u-x)^2/4x) - exp(-(u+x)^2/4x) without cancellation near u = 0
			return std::tanh(0.5 * u) * std::exp(-(u - x) * (u - x) / (4.0 * x)) * -std::expm1(-u);
		},
		0.0, upper);
	return s / std::sqrt(4.0 * std::numbers::pi * x);
}

double phi_inv(double p)
{
	if (!(p >= 0 && p < 1))
		throw std::domain_error("phi_inv: argument outside [0, 1)");
	if (p == 0)
		return 0.0;
	double lo = 0.0, hi = 1.0;
	while (phi(hi) > p) {
		lo = hi;
		hi *= 2;
		if (hi > 1e6)
			return hi;
	}
	for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
		const double mid = 0.5 * (lo + hi);
		if (phi(mid) > p)
			lo = mid;
		else
			hi = mid;
	}
	return 0.5 * (lo + hi);
}

double q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inv(double p)
{
	if (!(p > 0 && p < 1))
		throw std::domain_error("q_inv: argument outside (0, 1)");
	double lo = -40.0, hi = 40.0;
	for (int it = 0; it < 400; ++it) {
		const double mid = 0.5 * (lo + hi);
		if (mid == lo || mid == hi)
			break;
		if (q(mid) > p)
			lo = mid;
		else
			hi = mid;
	}
	return std::abs(q(lo) - p) < std::abs(q(hi) - p) ? lo : hi;
}

double check_node_mean(double m)
{
	if (!(m > 0))
		return 0.0;
	// f output satisfies 1 - phi(m') = (1 - phi(m))^2. Solve in whichever form keeps precision.
	const double c = phi_complement(m);
	double lo = 0.0, hi = m;
	if (c < 0.5) {
		const double target = c * c;
		for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
			const double mid = 0.5 * (lo + hi);
			if (phi_complement(mid) < target)
				lo = mid;
			else
				hi = mid;
		}
	} else {
		const double lp = log_phi(m);
		const double target = lp + std::log(2.0 - std::exp(lp));
		for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
			const double mid = 0.5 * (lo + hi);
			if (mid == 0 || log_phi(mid) > target)
				lo = mid;
			else
				hi = mid;
		}
	}
	return 0.5 * (lo + hi);
}

GaussianTable compute_means(int n, double sigma)
{
	if (!(sigma > 0))
		throw std::invalid_argument("sigma must be positive");
	GaussianTable t;
	t.n = n;
	t.sigma = sigma;
	const std::size_t N = std::size_t(1) << n;
	t.means.assign(2 * N, 0.0);
	t.means[1] = 2.0 / (sigma * sigma);
	for (std::size_t h = 1; h < N; ++h) {
		t.means[2 * h] = check_node_mean(t.means[h]);
		t.means[2 * h + 1] = 2.0 * t.means[h];
	}
	return t;
}

GaussianTable compute_means(const CodeSpec& spec, double sigma) { return compute_means(spec.n, sigma); }

namespace {

double one_minus_root(double epsilon, int n) { return -std::expm1(std::log(epsilon) / std::ldexp(1.0, n)); }

void check_epsilon(double epsilon)
{
	if (!(epsilon > 0.5 && epsilon < 1))
		throw std::invalid_argument("epsilon must lie in (0.5, 1)");
}

} // namespace

double min_c(double epsilon, int n, double step)
{
	check_epsilon(epsilon);
	const double limit = one_minus_root(epsilon, n);
	for (int k = 1; k < 100000; ++k) {
		// k / (1/step) lands on the decimal grid value exactly for steps like 0.1
		const double c = k / (1.0 / step);
		if (q(c) <= limit)
			return c;
	}
	throw std::runtime_error("min_c: no grid point satisfies the bound");
}

double eligibility_bound(double epsilon, double c, int n)
{
	check_epsilon(epsilon);
	const double inner = q(c) / std::expm1(-std::log(epsilon) / std::ldexp(1.0, n));
	if (!(inner > 0 && inner < 1))
		throw std::invalid_argument("eligibility_bound: Q(c) / (epsilon^(-1/2^n) - 1) = " + std::to_string(inner) +
			" outside (0, 1); c too small for this epsilon and n");
	const double t = c - q_inv(inner);
	return 0.5 * t * t;
}

double threshold(double m, double c) { return std::abs(-m + c * std::sqrt(2.0 * m)); }

std::size_t TaConfig::eligible_count() const
{
	std::size_t cnt = 0;
	for (std::size_t h = 1; h < thresholds.size(); ++h)
		cnt += eligible(h);
	return cnt;
}

std::vector<int> TaConfig::eligible_per_level() const
{
	std::vector<int> out(n + 1, 0);
	for (std::size_t h = 1; h < thresholds.size(); ++h)
		if (eligible(h))
			++out[node_at(h, n).j];
	return out;
}

TaConfig empty_ta_config(int n)
{
	TaConfig cfg;
	cfg.n = n;
	cfg.m_bound = std::numeric_limits<double>::infinity();
	cfg.thresholds.assign(std::size_t(2) << n, std::numeric_limits<double>::quiet_NaN());
	return cfg;
}

TaConfig build_ta_config(const GaussianTable& table, double epsilon, double c)
{
	check_epsilon(epsilon);
	if (q(c) > one_minus_root(epsilon, table.n))
		throw std::invalid_argument("Q(c) exceeds 1 - epsilon^(1/2^n); choose a larger c");
	TaConfig cfg = empty_ta_config(table.n);
	cfg.epsilon = epsilon;
	cfg.c = c;
	cfg.m_bound = eligibility_bound(epsilon, c, table.n);
	for (std::size_t h = 1; h < table.means.size(); ++h)
		if (table.means[h] >= cfg.m_bound)
			cfg.thresholds[h] = threshold(table.means[h], c);
	return cfg;
}

TaConfig build_ta_config(const GaussianTable& table, double epsilon)
{
	return build_ta_config(table, epsilon, min_c(epsilon, table.n));
}

} // namespace polar
