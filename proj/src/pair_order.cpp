#include "glingam/pair_order.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "glingam/errors.hpp"

namespace glingam {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

// Tarjan's algorithm, iterative. Returns the component index of every node.
std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> frames;  // node, next edge
  int counter = 0;
  int components = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < adj[v].size()) {
        const int w = adj[v][next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      const int finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

}  // namespace

int PairOrderList::group_of(int id) const {
  for (std::size_t g = 0; g < groups_.size(); ++g)
    if (std::binary_search(groups_[g].begin(), groups_[g].end(), id)) return static_cast<int>(g);
  return -1;
}

PairOrderList merge_orders(PairOrderList k, std::span<const OrderedPair> new_pairs) {
  for (const auto& pr : new_pairs)
    if (pr.first != pr.second) k.pairs_.insert(pr);

  // Dense relabelling of every id that appears anywhere.
  std::map<int, int> dense;
  auto intern = [&](int id) { return dense.try_emplace(id, static_cast<int>(dense.size())).first->second; };
  for (const auto& [a, b] : k.pairs_) {
    intern(a);
    intern(b);
  }
  for (const auto& group : k.groups_)
    for (int id : group) intern(id);
  const int n = static_cast<int>(dense.size());

  DisjointSets sets(n);
  for (const auto& group : k.groups_)
    for (int id : group) sets.unite(dense[group.front()], dense[id]);

  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : k.pairs_) {
    const int ra = sets.find(dense[a]);
    const int rb = sets.find(dense[b]);
    if (ra != rb) adj[ra].push_back(rb);
  }
  const std::vector<int> comp = strongly_connected_components(adj);
  std::map<int, int> first_of_comp;
  for (int v = 0; v < n; ++v) {
    const int r = sets.find(v);
    auto [it, inserted] = first_of_comp.try_emplace(comp[r], r);
    if (!inserted) sets.unite(it->second, r);
  }

  std::map<int, IndexSet> classes;
  for (const auto& [id, d] : dense) classes[sets.find(d)].push_back(id);
  k.groups_.clear();
  for (auto& [root, members] : classes)
    if (members.size() > 1) k.groups_.push_back(std::move(members));
  std::sort(k.groups_.begin(), k.groups_.end());

  std::erase_if(k.pairs_, [&](const OrderedPair& pr) {
    return sets.find(dense[pr.first]) == sets.find(dense[pr.second]);
  });
  return k;
}

std::vector<OrderedPair> extract_pairs(const BlockOrdering& blocks) {
  std::vector<OrderedPair> out;
  for (int a = 0; a < blocks.size(); ++a)
    for (int b = a + 1; b < blocks.size(); ++b)
      for (int j1 : blocks[a])
        for (int j2 : blocks[b]) out.emplace_back(j1, j2);
  return out;
}

BlockOrdering build_block_order(const PairOrderList& k, int p) {
  auto check = [p](int id) {
    if (id < 0 || id >= p) throw InvalidInputError("variable id " + std::to_string(id) + " out of range");
  };
  // Node per merged group, then one per ungrouped variable.
  std::vector<int> node_of(static_cast<std::size_t>(p), -1);
  std::vector<IndexSet> nodes;
  for (const auto& group : k.groups()) {
    for (int id : group) {
      check(id);
      node_of[id] = static_cast<int>(nodes.size());
    }
    nodes.push_back(group);
  }
  for (int id = 0; id < p; ++id) {
    if (node_of[id] >= 0) continue;
    node_of[id] = static_cast<int>(nodes.size());
    nodes.push_back({id});
  }

  const std::size_t m = nodes.size();
  std::vector<std::set<int>> succ(m);
  std::vector<int> indegree(m, 0);
  for (const auto& [a, b] : k.pairs()) {
    check(a);
    check(b);
    const int na = node_of[a];
    const int nb = node_of[b];
    if (na == nb) throw std::logic_error("precedence pair inside a merged group");
    if (succ[na].insert(nb).second) ++indegree[nb];
  }

  // Kahn's algorithm keyed on the smallest member of each node.
  using Entry = std::pair<int, int>;  // smallest member, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t v = 0; v < m; ++v)
    if (indegree[v] == 0) ready.emplace(nodes[v].front(), static_cast<int>(v));
  BlockOrdering out;
  while (!ready.empty()) {
    const int v = ready.top().second;
    ready.pop();
    out.append(nodes[v]);
    for (int w : succ[v])
      if (--indegree[w] == 0) ready.emplace(nodes[w].front(), w);
  }
  if (out.size() != static_cast<int>(m)) throw std::logic_error("precedence relation still has a cycle");
  return out;
}

}  // namespace glingam
