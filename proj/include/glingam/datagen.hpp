#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "glingam/matrix_core.hpp"
#include "glingam/model.hpp"

namespace glingam {

enum class GenMode { ChainGraph, Dag, Eq4Example };

GenMode parse_gen_mode(const std::string& text);
std::string to_string(GenMode mode);


/// External influences e = loading * s, where the rows of s are independent,
/// standardized non-Gaussian sources. A source loaded by several variables of
/// one block plays the role of a hidden confounder.
struct NoiseStructure {
  Eigen::MatrixXd loading;   // p x sources
  Eigen::VectorXd exponents; // power-transform exponent per source
};

struct GeneratingProcess {
  ChainGraphModel truth;
  NoiseStructure noise;
};

/// Parameters of the five-variable confounded example.
struct Eq4Params {
  double b21 = 0.8, b32 = 0.8, b42 = 0.8, b43 = 0.8, b51 = 0.8, b54 = 0.8;
  double c1 = 0.7, c2 = 0.7, c4 = 0.7, c5 = 0.7;
  /// Power-transform exponent of every source; 0 draws each one from
  /// [0.5, 0.8] u [1.2, 2.0] like the random generators do.
  double source_exponent = 2.0;
};

struct GenSpec {
  int p = 5;
  int n = 1000;
  std::uint64_t seed = 0;
  GenMode mode = GenMode::ChainGraph;
  Eq4Params eq4;
};

/// splitmix64 of seed + index; used for every derived stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform over [0.5, 0.8] u [1.2, 2.0].
double draw_exponent(std::mt19937_64& rng);

/// sign(z)|z|^q of standard normal z, standardized to zero mean and unit
/// (1/n) variance.
Eigen::VectorXd sample_nongaussian(int n, double q, std::uint64_t seed);

/// Random block structure with contiguous blocks, one latent factor per
/// multi-variable block, and parent-induced standard deviations in [0.5, 1.5].
GeneratingProcess random_process(int p, std::uint64_t seed, bool singleton_blocks);
ChainGraphModel random_chain_graph(int p, std::uint64_t seed);

/// x1 = e1, x2 = b21 x1 + e2, x3 = b32 x2 + e3, x4 = b42 x2 + b43 x3 + e4,
/// x5 = b51 x1 + b54 x4 + e5 with e1, e2 sharing f and e4, e5 sharing g.
/// Blocks {0,1} < {2} < {3,4}; every e_i has unit variance.
GeneratingProcess eq4_process(std::uint64_t seed, const Eq4Params& params = {});

/// Population covariance of x under the process.
Eigen::MatrixXd population_covariance(const GeneratingProcess& process);

struct Dataset {
  DataMatrix data;
  ChainGraphModel truth;
  /// External influences e, p x n, in the same variable order as `data`.
  Eigen::MatrixXd noise;
  NoiseStructure noise_structure;
};

/// n samples from the process. With `permute`, variables are randomly
/// relabelled afterwards and the truth is relabelled to match.
Dataset sample_dataset(const GeneratingProcess& process, int n, std::uint64_t seed, bool permute);

/// Chain and DAG datasets are permuted; eq4 keeps its variable order.
Dataset generate_dataset(const GenSpec& spec);

}  // namespace glingam
