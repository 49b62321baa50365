#pragma once

#include "polar/node_id.hpp"

#include <cstddef>
#include <vector>

namespace polar {

struct CodeSpec;

// Gaussian-approximation phi. Decreasing on (0, inf) from 1 toward 0; phi(0) = 0 by convention.
double phi(double x);
// 1 - phi(x) for x > 0, accurate when phi is close to 1.
double phi_complement(double x);
// log phi(x) for x > 0, accurate when phi underflows.
double log_phi(double x);
// Bisection inverse; phi_inv(0) = 0.
double phi_inv(double p);

double q(double x);
double q_inv(double p);

// Mean of the check-node (f) output given a symmetric Gaussian input of mean m:
// phi^{-1}(1 - (1 - phi(m))^2).
double check_node_mean(double m);

struct GaussianTable {
	int n = 0;
	double sigma = 0.0;
	std::vector<double> means; // heap-indexed, size 2N, entry 0 unused

	double mean(NodeId id) const { return means[heap_index(id, n)]; }
	double leaf_mean(int k) const { return means[(std::size_t(1) << n) + k]; }
};

GaussianTable compute_means(int n, double sigma);
GaussianTable compute_means(const CodeSpec& spec, double sigma);

// Smallest c on the grid {k * step} with Q(c) <= 1 - epsilon^(1/2^n).
double min_c(double epsilon, int n, double step = 0.1);
double eligibility_bound(double epsilon, double c, int n);
double threshold(double m, double c);

struct TaConfig {
	double epsilon = 0.0;
	double c = 0.0;
	double m_bound = 0.0;
	int n = 0;
	std::vector<double> thresholds; // heap-indexed, NaN where the node is not eligible

	bool eligible(std::size_t h) const { return h < thresholds.size() && thresholds[h] == thresholds[h]; }
	std::size_t eligible_count() const;
	std::vector<int> eligible_per_level() const; // index j
};

TaConfig build_ta_config(const GaussianTable& table, double epsilon, double c);
// Same with c = min_c(epsilon, n).
TaConfig build_ta_config(const GaussianTable& table, double epsilon);
TaConfig empty_ta_config(int n);

} // namespace polar
