#pragma once

#include <vector>

#include <Eigen/Dense>

#include "glingam/matrix_core.hpp"

namespace glingam {

/// Ordered list of disjoint, non-empty blocks of variable ids.
/// Each block is kept sorted ascending.
class BlockOrdering {
 public:
  BlockOrdering() = default;
  explicit BlockOrdering(std::vector<IndexSet> blocks);

  /// p singleton blocks in index order.
  static BlockOrdering singletons(int p);

  const std::vector<IndexSet>& blocks() const { return blocks_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  bool empty() const { return blocks_.empty(); }
  const IndexSet& operator[](int i) const { return blocks_[static_cast<std::size_t>(i)]; }

  void append(IndexSet block);
  void append(const BlockOrdering& other);

  /// All ids, sorted.
  IndexSet members() const;
  /// True iff the blocks cover exactly {0, ..., p-1}.
  bool is_partition_of(int p) const;
  /// block_of()[id] is the block index of `id`, or -1; size is max id + 1.
  std::vector<int> block_of() const;

  bool operator==(const BlockOrdering&) const = default;

 private:
  std::vector<IndexSet> blocks_;
};

/// x = B x + e with B block-lower-triangular under `ordering`.
/// Entry b(i, j) is the strength of x_j -> x_i.
class ChainGraphModel {
 public:
  /// Throws ModelInvalidError unless B is square with zero diagonal and
  /// respects the ordering, the ordering partitions 0..p-1, and every
  /// noise standard deviation is positive.
  ChainGraphModel(Eigen::MatrixXd adjacency, BlockOrdering ordering, Eigen::VectorXd noise_std);

  int p() const { return static_cast<int>(adjacency_.rows()); }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  const BlockOrdering& ordering() const { return ordering_; }
  const Eigen::VectorXd& noise_std() const { return noise_std_; }

 private:
  Eigen::MatrixXd adjacency_;
  BlockOrdering ordering_;
  Eigen::VectorXd noise_std_;
};

/// A = (I - B)^-1. Throws ModelInvalidError when I - B is singular.
Eigen::MatrixXd mixing_from_adjacency(const Eigen::MatrixXd& b);

/// X = A e, then centered.
DataMatrix simulate(const ChainGraphModel& model, const Eigen::MatrixXd& noise);

/// True iff b(i, j) == 0 whenever block(i) < block(j).
bool check_block_lower_triangular(const Eigen::MatrixXd& b, const BlockOrdering& ordering);

/// Relabels variables: new id of old variable v is perm[v].
BlockOrdering relabel(const BlockOrdering& ordering, const std::vector<int>& perm);

}  // namespace glingam
