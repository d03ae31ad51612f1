#include "glingam/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "glingam/errors.hpp"

namespace glingam::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  for (;;) {
    const auto comma = line.find(',');
    fields.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

bool parse_number(std::string_view field, double& value) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc() && ptr == field.data() + field.size() && !field.empty();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Eigen::MatrixXd parse_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t c = 0; c < fields.size(); ++c) numeric = numeric && parse_number(fields[c], row[c]);
    if (!numeric) {
      if (rows.empty() && width == 0) {
        width = fields.size();  // header
        continue;
      }
      throw InvalidInputError("non-numeric field on line " + std::to_string(line_no));
    }
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw InvalidInputError("line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                              " fields, expected " + std::to_string(width));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInputError("no data rows");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t s = 0; s < rows.size(); ++s)
    for (std::size_t v = 0; v < width; ++v)
      out(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(s)) = rows[s][v];
  return out;
}

Eigen::MatrixXd read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open input file '" + path + "'");
  return parse_csv(in);
}

void write_csv(std::ostream& out, const DataMatrix& data) {
  for (int v = 0; v < data.p(); ++v) out << (v ? "," : "") << 'x' << v;
  out << '\n';
  for (int s = 0; s < data.n(); ++s) {
    for (int v = 0; v < data.p(); ++v) out << (v ? "," : "") << format_double(data.values()(v, s));
    out << '\n';
  }
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInputError("matrix must be a JSON array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InvalidInputError("matrix rows have unequal lengths");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

nlohmann::json model_to_json(const ChainGraphModel& model) {
  nlohmann::json j;
  j["blocks"] = model.ordering().blocks();
  j["b"] = matrix_to_json(model.adjacency());
  j["noise_std"] = std::vector<double>(model.noise_std().data(), model.noise_std().data() + model.p());
  return j;
}

ChainGraphModel model_from_json(const nlohmann::json& j) {
  try {
    BlockOrdering ordering(j.at("blocks").get<std::vector<IndexSet>>());
    Eigen::MatrixXd b = matrix_from_json(j.at("b"));
    const auto sd = j.at("noise_std").get<std::vector<double>>();
    Eigen::VectorXd noise_std = Eigen::Map<const Eigen::VectorXd>(sd.data(), static_cast<Eigen::Index>(sd.size()));
    return ChainGraphModel(std::move(b), std::move(ordering), std::move(noise_std));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace glingam::io
