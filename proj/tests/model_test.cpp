#include <doctest.h>

#include "glingam/errors.hpp"
#include "glingam/model.hpp"

using namespace glingam;

TEST_CASE("block ordering sorts blocks and rejects overlap") {
  const BlockOrdering o({{3, 1}, {0}, {2, 4}});
  CHECK(o[0] == IndexSet{1, 3});
  CHECK(o.members() == IndexSet{0, 1, 2, 3, 4});
  CHECK(o.is_partition_of(5));
  CHECK_FALSE(o.is_partition_of(6));
  CHECK(o.block_of() == std::vector<int>{1, 0, 2, 0, 2});
  CHECK_THROWS_AS(BlockOrdering({{0, 1}, {1}}), InvalidInputError);
  CHECK_THROWS_AS(BlockOrdering({{0}, {}}), InvalidInputError);

  BlockOrdering a(std::vector<IndexSet>{{0}});
  a.append(BlockOrdering({{2}, {1}}));
  CHECK(a == BlockOrdering({{0}, {2}, {1}}));
  CHECK(BlockOrdering::singletons(3) == BlockOrdering({{0}, {1}, {2}}));
}

TEST_CASE("chain graph model validation") {
  const BlockOrdering o({{0, 1}, {2}});
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 3);
  b(2, 0) = 0.5;
  b(1, 0) = 0.3;
  CHECK_NOTHROW(ChainGraphModel(b, o, Eigen::VectorXd::Ones(3)));
  CHECK(check_block_lower_triangular(b, o));

  Eigen::MatrixXd back = b;
  back(0, 2) = 0.1;
  CHECK_FALSE(check_block_lower_triangular(back, o));
  CHECK_THROWS_AS(ChainGraphModel(back, o, Eigen::VectorXd::Ones(3)), ModelInvalidError);

  Eigen::MatrixXd diag = b;
  diag(1, 1) = 0.2;
  CHECK_THROWS_AS(ChainGraphModel(diag, o, Eigen::VectorXd::Ones(3)), ModelInvalidError);
  CHECK_THROWS_AS(ChainGraphModel(b, o, Eigen::VectorXd::Zero(3)), ModelInvalidError);
  CHECK_THROWS_AS(ChainGraphModel(b, BlockOrdering({{0, 1}}), Eigen::VectorXd::Ones(3)), ModelInvalidError);
}

TEST_CASE("mixing matrix inverts I - B") {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 3);
  b(1, 0) = 0.8;
  b(2, 1) = -0.5;
  const Eigen::MatrixXd a = mixing_from_adjacency(b);
  CHECK(((Eigen::MatrixXd::Identity(3, 3) - b) * a - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(a(2, 0) == doctest::Approx(-0.4));

  Eigen::MatrixXd cyc = Eigen::MatrixXd::Zero(2, 2);
  cyc(0, 1) = 1.0;
  cyc(1, 0) = 1.0;
  CHECK_THROWS_AS(mixing_from_adjacency(cyc), ModelInvalidError);
}

TEST_CASE("simulate applies the mixing and centers") {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2, 2);
  b(1, 0) = 2.0;
  const ChainGraphModel m(b, BlockOrdering::singletons(2), Eigen::VectorXd::Ones(2));
  Eigen::MatrixXd e(2, 3);
  e << 1, 2, 3, 0, 0, 1;
  const DataMatrix x = simulate(m, e);
  CHECK(x.values()(0, 0) == doctest::Approx(-1.0));
  CHECK(x.values()(1, 2) == doctest::Approx(3.0 * 2 + 1 - (2 + 4 + 7) / 3.0));
}

TEST_CASE("relabel maps ids through the permutation") {
  const BlockOrdering o({{0, 1}, {2}});
  CHECK(relabel(o, {2, 0, 1}) == BlockOrdering({{0, 2}, {1}}));
}
