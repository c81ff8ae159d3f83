#pragma once

#include "nbh/distribution.hpp"
#include "nbh/graph.hpp"

#include <cstdint>

namespace nbh {

/// Erdos-Renyi graph: each pair present with probability c/n, unit weights.
/// Row i draws its neighbours j > i from stream (seed, topology, i).
WeightedGraph generate_er(Index n, double c, std::uint64_t seed);

/// Chung-Lu graph with theta_i proportional to (i+1)^(-1/(exponent-1)),
/// normalized so sum(theta) = n, and p_ij = min(1, c theta_i theta_j / n).
WeightedGraph generate_powerlaw(Index n, double c, double exponent, std::uint64_t seed);

/// Replaces the weights of `topology` by i.i.d. draws from the law whose
/// Nishimori temperature is `beta_n`: Gaussian uses mean beta_n nu^2 and the
/// law's nu; PlusMinusJ uses the law's J0 and p = e^{beta J0} / (2 cosh(beta J0)).
/// The draw for edge (i, j) depends only on (seed, i, j).
WeightedGraph sample_weights(const WeightedGraph& topology, const WeightDistribution& dist,
                             double beta_n, std::uint64_t seed);

/// J~_ij = J_ij sigma_i sigma_j.
LabeledInstance plant_labels(const WeightedGraph& J, const LabelVector& sigma);

/// Exactly balanced +-1 labels (first ceil(n/2) entries +1 before shuffling).
LabelVector random_labels(Index n, std::uint64_t seed);

/// Two-level sparsified correlation kernel: features kept with probability
/// sqrt(kappa/p), pairs evaluated with probability c/n, weight
/// (1/p) <masked z_i, masked z_j>. Exact zeros are dropped.
WeightedGraph sparsify_kernel(const FeatureDataset& data, double kappa, double c,
                              std::uint64_t seed);

/// z_i = sigma_i mu + N(0, I_p) with mu = (separation / sqrt(p)) 1_p and
/// balanced labels.
FeatureDataset gaussian_mixture(Index n, Index p, double separation, std::uint64_t seed);

}  // namespace nbh
