#include "eichler/graph_iso.hpp"

#include <algorithm>
#include <numeric>

namespace eichler {

void LabeledGraph::add_edge(int u, int v, int mult) {
  adj[u][v] += mult;
  if (u != v) adj[v][u] += mult;
}

int LabeledGraph::edge_count() const {
  int e = 0;
  for (int u = 0; u < size(); ++u)
    for (int v = u; v < size(); ++v) e += adj[u][v];
  return e;
}

namespace {

struct Search {
  const LabeledGraph& A;
  const LabeledGraph& B;
  std::vector<int> map, used, order;
  std::vector<std::vector<int>> degA, degB;

  bool compatible(int a, int b) const {
    if (A.labels[a] != B.labels[b] || degA[a] != degB[b]) return false;
    if (A.adj[a][a] != B.adj[b][b]) return false;
    for (int x = 0; x < A.size(); ++x)
      if (map[x] >= 0 && A.adj[a][x] != B.adj[b][map[x]]) return false;
    if (!A.involution.empty()) {
      int ia = A.involution[a], ib = B.involution[b];
      if (ia == a && ib != b) return false;
      if (ia != a && ib == b) return false;
      if (map[ia] >= 0 && map[ia] != ib) return false;
      if (used[ib] && !(ia == a || map[ia] == ib)) return false;
    }
    return true;
  }

  bool run(std::size_t k) {
    if (k == order.size()) return true;
    int a = order[k];
    if (map[a] >= 0) return run(k + 1);
    for (int b = 0; b < B.size(); ++b) {
      if (used[b] || !compatible(a, b)) continue;
      map[a] = b;
      used[b] = 1;
      int ia = A.involution.empty() ? a : A.involution[a];
      bool paired = false;
      if (ia != a && map[ia] < 0) {
        int ib = B.involution[b];
        if (used[ib] || !compatible(ia, ib)) {
          map[a] = -1;
          used[b] = 0;
          continue;
        }
        map[ia] = ib;
        used[ib] = 1;
        paired = true;
      }
      if (run(k + 1)) return true;
      if (paired) {
        used[map[ia]] = 0;
        map[ia] = -1;
      }
      map[a] = -1;
      used[b] = 0;
    }
    return false;
  }
};

std::vector<std::vector<int>> neighbour_degrees(const LabeledGraph& G) {
  std::vector<std::vector<int>> d(G.size());
  for (int u = 0; u < G.size(); ++u) {
    for (int v = 0; v < G.size(); ++v)
      for (int m = 0; m < G.adj[u][v]; ++m) d[u].push_back(v == u ? -1 : std::accumulate(G.adj[v].begin(), G.adj[v].end(), 0));
    std::sort(d[u].begin(), d[u].end());
  }
  return d;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const LabeledGraph& A, const LabeledGraph& B) {
  if (A.size() != B.size() || A.involution.empty() != B.involution.empty()) return std::nullopt;
  if (A.edge_count() != B.edge_count()) return std::nullopt;
  Search s{A, B, std::vector<int>(A.size(), -1), std::vector<int>(B.size(), 0), {}, neighbour_degrees(A),
           neighbour_degrees(B)};
  // Breadth-first order keeps the partial map connected, which prunes early.
  std::vector<int> seen(A.size(), 0);
  for (int r = 0; r < A.size(); ++r) {
    if (seen[r]) continue;
    std::vector<int> q{r};
    seen[r] = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
      s.order.push_back(q[i]);
      for (int v = 0; v < A.size(); ++v)
        if (A.adj[q[i]][v] && !seen[v]) {
          seen[v] = 1;
          q.push_back(v);
        }
    }
  }
  if (!s.run(0)) return std::nullopt;
  return s.map;
}

}  // namespace eichler
