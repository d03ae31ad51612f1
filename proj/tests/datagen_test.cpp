#include <doctest.h>

#include <cmath>
#include <numbers>

#include "glingam/datagen.hpp"
#include "glingam/errors.hpp"

using namespace glingam;

namespace {

double excess_kurtosis(const Eigen::VectorXd& v) {
  const double m2 = v.array().square().mean();
  return v.array().pow(4).mean() / (m2 * m2) - 3.0;
}

}  // namespace

TEST_CASE("power-transformed sources have the analytic kurtosis") {
  // E|z|^{4q} / (E|z|^{2q})^2 with E|z|^r = 2^{r/2} Gamma((r+1)/2) / sqrt(pi)
  auto analytic = [](double q) {
    auto moment = [](double r) { return std::pow(2.0, r / 2) * std::tgamma((r + 1) / 2) / std::sqrt(std::numbers::pi); };
    return moment(4 * q) / std::pow(moment(2 * q), 2) - 3.0;
  };
  CHECK(analytic(2.0) == doctest::Approx(105.0 / 9.0 - 3.0));
  CHECK(analytic(0.5) == doctest::Approx(std::numbers::pi / 2 - 3.0));
  const Eigen::VectorXd low = sample_nongaussian(200000, 0.5, 1);
  const Eigen::VectorXd high = sample_nongaussian(200000, 2.0, 2);
  CHECK(excess_kurtosis(low) == doctest::Approx(analytic(0.5)).epsilon(0.03));
  CHECK(excess_kurtosis(high) == doctest::Approx(analytic(2.0)).epsilon(0.1));
  CHECK(std::abs(high.mean()) < 1e-12);
  CHECK(high.array().square().mean() == doctest::Approx(1.0));
}

TEST_CASE("exponents avoid the gaussian neighbourhood") {
  std::mt19937_64 rng(4);
  int low = 0;
  for (int i = 0; i < 4000; ++i) {
    const double q = draw_exponent(rng);
    const bool in_low = q >= 0.5 && q <= 0.8;
    CHECK((in_low || (q >= 1.2 && q <= 2.0)));
    low += in_low;
  }
  // widths 0.3 and 0.8
  CHECK(low / 4000.0 == doctest::Approx(0.3 / 1.1).epsilon(0.08));
}

TEST_CASE("block count is uniform over 1..p") {
  const int p = 10;
  std::vector<int> counts(p + 1, 0);
  const int draws = 1000;
  for (int s = 0; s < draws; ++s) ++counts[random_process(p, 1000 + s, false).truth.ordering().size()];
  double chi2 = 0.0;
  const double expect = static_cast<double>(draws) / p;
  for (int m = 1; m <= p; ++m) chi2 += (counts[m] - expect) * (counts[m] - expect) / expect;
  CHECK(chi2 < 27.88);  // 0.999 quantile, 9 degrees of freedom
}

TEST_CASE("random processes are valid chain graphs with scaled parents") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int p = 1 + static_cast<int>(seed % 12);
    const GeneratingProcess g = random_process(p, seed, false);
    const auto& b = g.truth.adjacency();
    CHECK(check_block_lower_triangular(b, g.truth.ordering()));
    const auto lvl = g.truth.ordering().block_of();
    const Eigen::MatrixXd cov = population_covariance(g);
    for (int i = 0; i < p; ++i) {
      CHECK(cov(i, i) > 0.0);
      for (int j = 0; j < p; ++j) {
        if (b(i, j) == 0.0) continue;
        CHECK(lvl[j] < lvl[i]);
        CHECK(std::abs(b(i, j)) > 0.0);
      }
      const Eigen::RowVectorXd w = b.row(i);
      if (w.cwiseAbs().maxCoeff() == 0.0) continue;
      const double sd = std::sqrt((w * cov * w.transpose())(0, 0));
      CHECK(sd >= 0.5 - 1e-9);
      CHECK(sd <= 1.5 + 1e-9);
    }
    for (int i = 0; i < p; ++i) CHECK(g.noise.loading.row(i).norm() == doctest::Approx(g.truth.noise_std()(i)));
    // Sources shared across variables stay inside one block.
    for (Eigen::Index s = 0; s < g.noise.loading.cols(); ++s) {
      int block = -1;
      for (int i = 0; i < p; ++i) {
        if (g.noise.loading(i, s) == 0.0) continue;
        if (block == -1) block = lvl[i];
        CHECK(lvl[i] == block);
      }
    }
  }
}

TEST_CASE("dag mode has singleton blocks and independent noise") {
  const GeneratingProcess g = random_process(7, 9, true);
  CHECK(g.truth.ordering().size() == 7);
  CHECK(g.noise.loading.cols() == 7);
}

TEST_CASE("eq4 process structure") {
  const GeneratingProcess g = eq4_process(0);
  CHECK(g.truth.ordering() == BlockOrdering({{0, 1}, {2}, {3, 4}}));
  const auto& b = g.truth.adjacency();
  CHECK(b(1, 0) == 0.8);
  CHECK(b(3, 1) == 0.8);
  CHECK(b(4, 3) == 0.8);
  CHECK(b(2, 0) == 0.0);
  CHECK((g.noise.exponents.array() == 2.0).all());
  // e1 and e2 share one source, unit variance each.
  CHECK(g.noise.loading(0, 5) == doctest::Approx(0.7));
  CHECK(g.noise.loading.row(1).squaredNorm() == doctest::Approx(1.0));
  CHECK((g.noise.loading.col(5).array() != 0.0).count() == 2);

  Eq4Params random;
  random.source_exponent = 0.0;
  const GeneratingProcess r = eq4_process(0, random);
  CHECK((r.noise.exponents.array() != 2.0).any());
}

TEST_CASE("datasets are reproducible and permuted consistently") {
  const GenSpec spec{6, 300, 77, GenMode::ChainGraph, {}};
  const Dataset a = generate_dataset(spec);
  const Dataset b = generate_dataset(spec);
  CHECK(a.data.values() == b.data.values());
  CHECK(a.truth.adjacency() == b.truth.adjacency());
  // x = A e with the relabelled truth.
  const Eigen::MatrixXd recon = mixing_from_adjacency(a.truth.adjacency()) * a.noise;
  const Eigen::MatrixXd centered = recon.colwise() - recon.rowwise().mean();
  CHECK((centered - a.data.values()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(generate_dataset({6, 300, 78, GenMode::ChainGraph, {}}).data.values() != a.data.values());

  const Dataset e = generate_dataset({5, 100, 1, GenMode::Eq4Example, {}});
  CHECK(e.truth.ordering() == BlockOrdering({{0, 1}, {2}, {3, 4}}));
  CHECK_THROWS_AS(generate_dataset({0, 100, 1, GenMode::Dag, {}}), InvalidInputError);
}

TEST_CASE("mode names round trip") {
  for (auto m : {GenMode::ChainGraph, GenMode::Dag, GenMode::Eq4Example}) CHECK(parse_gen_mode(to_string(m)) == m);
  CHECK_THROWS_AS(parse_gen_mode("tree"), InvalidInputError);
}
