#pragma once

#include <set>
#include <span>
#include <utility>
#include <vector>

#include "glingam/matrix_core.hpp"
#include "glingam/model.hpp"

namespace glingam {

/// (first, second): first belongs to a strictly earlier block than second.
using OrderedPair = std::pair<int, int>;

/// Accumulated precedence constraints between variables, plus the groups of
/// variables whose constraints formed a cycle and were merged.
///
/// Pairs internal to a merged group are dropped, so the relation on the
/// condensation (groups and remaining singletons) is acyclic.
class PairOrderList {
 public:
  const std::set<OrderedPair>& pairs() const { return pairs_; }
  /// Disjoint merged groups of two or more variables, sorted.
  const std::vector<IndexSet>& groups() const { return groups_; }
  bool empty() const { return pairs_.empty() && groups_.empty(); }

  /// Index into groups() of the group holding `id`, or -1.
  int group_of(int id) const;

  bool operator==(const PairOrderList&) const = default;

 private:
  friend PairOrderList merge_orders(PairOrderList k, std::span<const OrderedPair> new_pairs);

  std::set<OrderedPair> pairs_;
  std::vector<IndexSet> groups_;
};

/// Adds the new pairs and collapses every strongly connected component of the
/// resulting precedence graph into a merged group.
PairOrderList merge_orders(PairOrderList k, std::span<const OrderedPair> new_pairs);

/// Every (earlier-block member, later-block member) pair of the ordering.
std::vector<OrderedPair> extract_pairs(const BlockOrdering& blocks);

/// Blocks from the condensation of `k` over variables 0..p-1, in topological
/// order; incomparable blocks come in order of their smallest member.
BlockOrdering build_block_order(const PairOrderList& k, int p);

}  // namespace glingam
