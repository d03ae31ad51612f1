#include "glingam/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "glingam/errors.hpp"

namespace glingam {

namespace {

constexpr std::uint64_t kStructureStream = 0;
constexpr std::uint64_t kPermutationStream = 1;
constexpr std::uint64_t kSourceStreamBase = 16;

double draw_weight(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    const double w = unit(rng);
    if (std::abs(w) >= 0.1) return w;
  }
}

}  // namespace

GenMode parse_gen_mode(const std::string& text) {
  if (text == "chain" || text == "chain_graph") return GenMode::ChainGraph;
  if (text == "dag") return GenMode::Dag;
  if (text == "eq4" || text == "eq4_example") return GenMode::Eq4Example;
  throw InvalidInputError("unknown generator mode '" + text + "' (expected chain, dag or eq4)");
}

std::string to_string(GenMode mode) {
  switch (mode) {
    case GenMode::ChainGraph: return "chain";
    case GenMode::Dag: return "dag";
    case GenMode::Eq4Example: return "eq4";
  }
  return "chain";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double draw_exponent(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.1);
  const double v = u(rng);
  return v < 0.3 ? 0.5 + v : 1.2 + (v - 0.3);
}

Eigen::VectorXd sample_nongaussian(int n, double q, std::uint64_t seed) {
  if (n < 2) throw InvalidInputError("need at least two samples");
  if (!(q > 0.0)) throw InvalidInputError("exponent must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd e(n);
  for (int i = 0; i < n; ++i) {
    const double z = normal(rng);
    e(i) = std::copysign(std::pow(std::abs(z), q), z);
  }
  e.array() -= e.mean();
  e /= std::sqrt(e.squaredNorm() / n);
  return e;
}

GeneratingProcess random_process(int p, std::uint64_t seed, bool singleton_blocks) {
  if (p < 1) throw InvalidInputError("need at least one variable");
  std::mt19937_64 rng(seed);

  const int m = singleton_blocks ? p : std::uniform_int_distribution<int>(1, p)(rng);
  std::vector<int> gaps(static_cast<std::size_t>(std::max(0, p - 1)));
  std::iota(gaps.begin(), gaps.end(), 1);
  std::shuffle(gaps.begin(), gaps.end(), rng);
  std::vector<int> cuts(gaps.begin(), gaps.begin() + (m - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(p);
  BlockOrdering ordering;
  for (int start = 0; int stop : cuts) {
    IndexSet block(static_cast<std::size_t>(stop - start));
    std::iota(block.begin(), block.end(), start);
    ordering.append(std::move(block));
    start = stop;
  }
  const int max_parents = std::uniform_int_distribution<int>(1, p)(rng);

  std::uniform_real_distribution<double> spread(0.5, 1.5);
  std::uniform_real_distribution<double> loading_draw(0.5, 1.0);
  Eigen::VectorXd noise_std(p);
  for (int i = 0; i < p; ++i) noise_std(i) = spread(rng);

  int factors = 0;
  for (const auto& block : ordering.blocks()) factors += block.size() > 1;
  NoiseStructure noise{Eigen::MatrixXd::Zero(p, p + factors), Eigen::VectorXd(p + factors)};
  for (int factor = p; const auto& block : ordering.blocks()) {
    if (block.size() == 1) {
      noise.loading(block[0], block[0]) = noise_std(block[0]);
      continue;
    }
    for (int i : block) {
      const double c = loading_draw(rng);
      const double norm = std::sqrt(1.0 + c * c);
      noise.loading(i, factor) = noise_std(i) * c / norm;
      noise.loading(i, i) = noise_std(i) / norm;
    }
    ++factor;
  }
  for (int s = 0; s < p + factors; ++s) noise.exponents(s) = draw_exponent(rng);

  const Eigen::MatrixXd noise_cov = noise.loading * noise.loading.transpose();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
  IndexSet predecessors;
  for (const auto& block : ordering.blocks()) {
    if (!predecessors.empty()) {
      const Eigen::MatrixXd a = mixing_from_adjacency(b);
      const Eigen::MatrixXd cov = a * noise_cov * a.transpose();
      for (int i : block) {
        IndexSet parents = predecessors;
        std::shuffle(parents.begin(), parents.end(), rng);
        parents.resize(std::min(parents.size(), static_cast<std::size_t>(max_parents)));
        std::sort(parents.begin(), parents.end());
        Eigen::VectorXd w(static_cast<Eigen::Index>(parents.size()));
        for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = draw_weight(rng);
        Eigen::MatrixXd cov_pp(w.size(), w.size());
        for (Eigen::Index r = 0; r < w.size(); ++r)
          for (Eigen::Index c = 0; c < w.size(); ++c) cov_pp(r, c) = cov(parents[r], parents[c]);
        const double induced = std::sqrt(w.dot(cov_pp * w));
        w *= spread(rng) / induced;
        for (Eigen::Index k = 0; k < w.size(); ++k) b(i, parents[k]) = w(k);
      }
    }
    predecessors.insert(predecessors.end(), block.begin(), block.end());
  }
  return {ChainGraphModel(std::move(b), std::move(ordering), std::move(noise_std)), std::move(noise)};
}

ChainGraphModel random_chain_graph(int p, std::uint64_t seed) { return random_process(p, seed, false).truth; }

GeneratingProcess eq4_process(std::uint64_t seed, const Eq4Params& coef) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(5, 5);
  b(1, 0) = coef.b21;
  b(2, 1) = coef.b32;
  b(3, 1) = coef.b42;
  b(3, 2) = coef.b43;
  b(4, 0) = coef.b51;
  b(4, 3) = coef.b54;

  // Sources d1..d5, then f (shared by e1, e2) and g (shared by e4, e5).
  NoiseStructure noise{Eigen::MatrixXd::Zero(5, 7), Eigen::VectorXd(7)};
  auto confounded = [&](int i, int factor, double c) {
    if (!(std::abs(c) < 1.0)) throw InvalidInputError("confounder loading must lie in (-1, 1)");
    noise.loading(i, factor) = c;
    noise.loading(i, i) = std::sqrt(1.0 - c * c);
  };
  confounded(0, 5, coef.c1);
  confounded(1, 5, coef.c2);
  noise.loading(2, 2) = 1.0;
  confounded(3, 6, coef.c4);
  confounded(4, 6, coef.c5);

  std::mt19937_64 rng(seed);
  for (int s = 0; s < 7; ++s)
    noise.exponents(s) = coef.source_exponent > 0.0 ? coef.source_exponent : draw_exponent(rng);
  return {ChainGraphModel(std::move(b), BlockOrdering({{0, 1}, {2}, {3, 4}}), Eigen::VectorXd::Ones(5)),
          std::move(noise)};
}

Eigen::MatrixXd population_covariance(const GeneratingProcess& process) {
  const Eigen::MatrixXd a = mixing_from_adjacency(process.truth.adjacency());
  const Eigen::MatrixXd m = a * process.noise.loading;
  return m * m.transpose();
}

Dataset sample_dataset(const GeneratingProcess& process, int n, std::uint64_t seed, bool permute) {
  if (n < 2) throw InvalidInputError("need at least two samples");
  const auto& loading = process.noise.loading;
  Eigen::MatrixXd sources(loading.cols(), n);
  for (Eigen::Index s = 0; s < loading.cols(); ++s)
    sources.row(s) = sample_nongaussian(n, process.noise.exponents(s),
                                        derive_seed(seed, kSourceStreamBase + static_cast<std::uint64_t>(s)))
                         .transpose();
  const Eigen::MatrixXd noise = loading * sources;
  const DataMatrix x = simulate(process.truth, noise);
  if (!permute) return {x, process.truth, noise, process.noise};

  const int p = process.truth.p();
  std::vector<int> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 perm_rng(derive_seed(seed, kPermutationStream));
  std::shuffle(perm.begin(), perm.end(), perm_rng);

  Eigen::MatrixXd xp(p, n), noise_p(p, n), loading_p(p, loading.cols()), bp(p, p);
  Eigen::VectorXd std_p(p);
  for (int i = 0; i < p; ++i) {
    const int to = perm[static_cast<std::size_t>(i)];
    xp.row(to) = x.values().row(i);
    noise_p.row(to) = noise.row(i);
    loading_p.row(to) = loading.row(i);
    std_p(to) = process.truth.noise_std()(i);
    for (int j = 0; j < p; ++j) bp(to, perm[static_cast<std::size_t>(j)]) = process.truth.adjacency()(i, j);
  }
  ChainGraphModel truth(std::move(bp), relabel(process.truth.ordering(), perm), std::move(std_p));
  return {DataMatrix(std::move(xp)), std::move(truth), std::move(noise_p),
          NoiseStructure{std::move(loading_p), process.noise.exponents}};
}

Dataset generate_dataset(const GenSpec& spec) {
  if (spec.p < 1) throw InvalidInputError("need at least one variable");
  const std::uint64_t structure_seed = derive_seed(spec.seed, kStructureStream);
  if (spec.mode == GenMode::Eq4Example) return sample_dataset(eq4_process(structure_seed, spec.eq4), spec.n, spec.seed, false);
  return sample_dataset(random_process(spec.p, structure_seed, spec.mode == GenMode::Dag), spec.n, spec.seed, true);
}

}  // namespace glingam
