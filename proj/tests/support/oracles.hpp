#pragma once

// Reference computations written independently of the library code they check.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "timewise/network.hpp"
#include "timewise/value.hpp"

namespace timewise::testing {

// P(target = state | observed) by nested enumeration, indexing CPT rows with
// locally computed strides. Returns {posterior, evidence mass}.
std::pair<double, double> enumerate_posterior(const Network& net, const std::map<std::size_t, std::size_t>& observed,
                                              std::size_t target, std::size_t state);

// Undirected cycle test by repeatedly stripping vertices of degree <= 1.
bool has_undirected_cycle(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// 1 - (1 - leak) * prod over active causes of (1 - p_i).
double noisy_or_product(const std::vector<double>& activations, double leak, const std::vector<bool>& on);

// Monte Carlo estimate of the preposterior object value.
double monte_carlo_object_value(const ValueContext& ctx, double width, std::size_t draws, std::uint64_t seed);

// Smallest p on a uniform grid of `n` points where treating strictly beats not treating.
double grid_switch_point(const UtilityTable& u, std::size_t n);

struct GridPeak {
  double t = 0.0;
  double value = 0.0;
};

// Argmax of f over a uniform grid of `n` points on [0, horizon].
GridPeak dense_grid_peak(const std::function<double(double)>& f, double horizon, std::size_t n);

}  // namespace timewise::testing
