#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "glingam/matrix_core.hpp"
#include "glingam/model.hpp"

namespace glingam::io {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Comma-separated samples (rows) by variables (columns). A first line with
/// any non-numeric field is treated as a header. Returns variables x samples.
Eigen::MatrixXd parse_csv(std::istream& in);
Eigen::MatrixXd read_csv_file(const std::string& path);

/// Header x0,...,x{p-1}, then one line per sample.
void write_csv(std::ostream& out, const DataMatrix& data);

/// {"blocks": [[...]], "b": [[...]], "noise_std": [...]}; blocks are 0-based.
nlohmann::json model_to_json(const ChainGraphModel& model);
ChainGraphModel model_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

}  // namespace glingam::io
