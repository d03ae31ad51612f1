#include "glingam/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "glingam/errors.hpp"

namespace glingam {

BlockOrdering::BlockOrdering(std::vector<IndexSet> blocks) {
  for (auto& block : blocks) append(std::move(block));
}

BlockOrdering BlockOrdering::singletons(int p) {
  BlockOrdering out;
  for (int i = 0; i < p; ++i) out.append({i});
  return out;
}

void BlockOrdering::append(IndexSet block) {
  if (block.empty()) throw InvalidInputError("blocks must be non-empty");
  std::sort(block.begin(), block.end());
  if (std::adjacent_find(block.begin(), block.end()) != block.end())
    throw InvalidInputError("block contains a repeated variable");
  for (const auto& existing : blocks_)
    for (int id : block)
      if (std::binary_search(existing.begin(), existing.end(), id))
        throw InvalidInputError("variable " + std::to_string(id) + " appears in two blocks");
  blocks_.push_back(std::move(block));
}

void BlockOrdering::append(const BlockOrdering& other) {
  for (const auto& block : other.blocks()) append(block);
}

IndexSet BlockOrdering::members() const {
  IndexSet out;
  for (const auto& block : blocks_) out.insert(out.end(), block.begin(), block.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool BlockOrdering::is_partition_of(int p) const {
  const IndexSet all = members();
  if (static_cast<int>(all.size()) != p) return false;
  for (int i = 0; i < p; ++i)
    if (all[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

std::vector<int> BlockOrdering::block_of() const {
  const IndexSet all = members();
  std::vector<int> out(all.empty() ? 0 : static_cast<std::size_t>(all.back()) + 1, -1);
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    for (int id : blocks_[b]) out[static_cast<std::size_t>(id)] = static_cast<int>(b);
  return out;
}

ChainGraphModel::ChainGraphModel(Eigen::MatrixXd adjacency, BlockOrdering ordering,
                                 Eigen::VectorXd noise_std)
    : adjacency_(std::move(adjacency)), ordering_(std::move(ordering)), noise_std_(std::move(noise_std)) {
  const auto p = adjacency_.rows();
  if (p < 1 || adjacency_.cols() != p) throw ModelInvalidError("adjacency must be square and non-empty");
  if (noise_std_.size() != p) throw ModelInvalidError("noise_std length does not match adjacency");
  if (!ordering_.is_partition_of(static_cast<int>(p)))
    throw ModelInvalidError("ordering does not partition the variables");
  if (!(noise_std_.array() > 0.0).all()) throw ModelInvalidError("noise standard deviations must be positive");
  if ((adjacency_.diagonal().array() != 0.0).any()) throw ModelInvalidError("adjacency diagonal must be zero");
  if (!check_block_lower_triangular(adjacency_, ordering_))
    throw ModelInvalidError("adjacency has an edge from a later block into an earlier one");
}

Eigen::MatrixXd mixing_from_adjacency(const Eigen::MatrixXd& b) {
  if (b.rows() != b.cols()) throw ModelInvalidError("adjacency must be square");
  const Eigen::MatrixXd i_minus_b = Eigen::MatrixXd::Identity(b.rows(), b.cols()) - b;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(i_minus_b);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw ModelInvalidError("I - B is singular");
  return lu.inverse();
}

DataMatrix simulate(const ChainGraphModel& model, const Eigen::MatrixXd& noise) {
  if (noise.rows() != model.p()) throw InvalidInputError("noise rows must equal the variable count");
  return center(mixing_from_adjacency(model.adjacency()) * noise);
}

bool check_block_lower_triangular(const Eigen::MatrixXd& b, const BlockOrdering& ordering) {
  const std::vector<int> level = ordering.block_of();
  if (b.rows() != b.cols() || !ordering.is_partition_of(static_cast<int>(b.rows())))
    throw InvalidInputError("adjacency and ordering dimensions disagree");
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      if (level[static_cast<std::size_t>(i)] < level[static_cast<std::size_t>(j)] && b(i, j) != 0.0) return false;
  return true;
}

BlockOrdering relabel(const BlockOrdering& ordering, const std::vector<int>& perm) {
  BlockOrdering out;
  for (const auto& block : ordering.blocks()) {
    IndexSet mapped;
    for (int id : block) mapped.push_back(perm.at(static_cast<std::size_t>(id)));
    out.append(std::move(mapped));
  }
  return out;
}

}  // namespace glingam
