#include <doctest.h>

#include <limits>
#include <sstream>

#include "glingam/errors.hpp"
#include "glingam/io.hpp"

using namespace glingam;

TEST_CASE("csv parsing with and without a header") {
  std::istringstream with("a,b\n1,2\n3,4.5\n\n5,-6e-1\n");
  const Eigen::MatrixXd m = io::parse_csv(with);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 3);
  CHECK(m(1, 1) == 4.5);
  CHECK(m(1, 2) == -0.6);

  std::istringstream plain(" 1 , 2\n3,4\n");
  CHECK(io::parse_csv(plain).cols() == 2);
}

TEST_CASE("malformed csv is rejected") {
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(io::parse_csv(ragged), InvalidInputError);
  std::istringstream text("1,2\nx,4\n");
  CHECK_THROWS_AS(io::parse_csv(text), InvalidInputError);
  std::istringstream empty("h1,h2\n");
  CHECK_THROWS_AS(io::parse_csv(empty), InvalidInputError);
  CHECK_THROWS_AS(io::read_csv_file("/nonexistent/file.csv"), InvalidInputError);
}

TEST_CASE("written csv reads back bit-exactly") {
  Eigen::MatrixXd v(2, 3);
  v << 0.1, 1.0 / 3.0, -2.5e-17, std::numeric_limits<double>::max(), 7.0, -0.0;
  std::ostringstream out;
  io::write_csv(out, DataMatrix(v));
  CHECK(out.str().rfind("x0,x1\n", 0) == 0);
  std::istringstream in(out.str());
  CHECK(io::parse_csv(in) == v);
  CHECK(io::format_double(0.1) == "0.1");
}

TEST_CASE("model json round trip") {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 3);
  b(2, 0) = 0.25;
  b(2, 1) = -1.0 / 7.0;
  const ChainGraphModel m(b, BlockOrdering({{0, 1}, {2}}), Eigen::Vector3d(1.0, 0.5, 2.0));
  const auto j = io::model_to_json(m);
  CHECK(j["blocks"] == nlohmann::json::parse("[[0,1],[2]]"));
  const ChainGraphModel back = io::model_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.adjacency() == b);
  CHECK(back.ordering() == m.ordering());
  CHECK(back.noise_std() == m.noise_std());
  CHECK_THROWS_AS(io::model_from_json(nlohmann::json::parse("{\"blocks\":[[0]]}")), InvalidInputError);
}
