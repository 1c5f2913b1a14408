#pragma once

#include <optional>
#include <string>
#include <vector>

namespace eichler {

// Undirected multigraph with vertex labels and an optional involution.
struct LabeledGraph {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> adj;  // adj[u][v] = number of edges u -- v
  std::vector<int> involution;        // empty when absent

  explicit LabeledGraph(int n = 0) : labels(n), adj(n, std::vector<int>(n, 0)) {}
  int size() const { return static_cast<int>(labels.size()); }
  void add_edge(int u, int v, int mult = 1);
  int edge_count() const;
};

// A label-, multiplicity- and involution-preserving bijection A -> B, if one exists.
std::optional<std::vector<int>> find_isomorphism(const LabeledGraph& A, const LabeledGraph& B);

}  // namespace eichler
