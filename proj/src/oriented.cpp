#include "eichler/oriented.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "eichler/error.hpp"

namespace eichler {

bool c_epsilon_test(const SubgroupKernel& G) { return codomain_j(G) == j_invariant(G.E).frob(); }

Point OrientedPair::mu(const Point& P) const { return apply_iso(phi(P), u).frob(); }

namespace {

bool kernel_less(const Poly& a, const Poly& b) {
  for (int i = a.degree(); i >= 0; --i)
    if (!(a.coeff(i) == b.coeff(i))) return a.coeff(i) < b.coeff(i);
  return false;
}

struct Located {
  int pair;
  int twist;  // index into pairs[pair].twists
};

// Pairs and twists t with (E', G', m) ~ (E, G, t o mu) via some automorphism of E'.
std::vector<Located> locate(const std::vector<OrientedPair>& pairs, const Fq& j, const SubgroupKernel& G,
                            const Point T[2], const Point V[2]) {
  std::vector<Located> out;
  std::vector<Fq> auts;
  bool have_auts = false;
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
    const auto& pr = pairs[k];
    if (!(pr.j == j) || !pr.oriented) continue;
    if (!have_auts) {
      auts = isomorphisms(pr.E, pr.E);
      have_auts = true;
    }
    for (const Fq& rho : auts) {
      if (!(apply_iso(G.kernel_poly, rho) == pr.G.kernel_poly)) continue;
      Point w[2], v[2];
      for (int i = 0; i < 2; ++i) {
        w[i] = pr.mu(apply_iso(T[i], rho));
        v[i] = apply_iso(V[i], rho);
      }
      for (int t = 0; t < static_cast<int>(pr.twists.size()); ++t)
        if (v[0] == apply_iso(w[0], pr.twists[t]) && v[1] == apply_iso(w[1], pr.twists[t])) out.push_back({k, t});
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> OrientedGraph::edges() const {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < static_cast<int>(out.size()); ++u)
    for (int v : out[u])
      if (u <= v) e.emplace_back(u, v);
  std::sort(e.begin(), e.end());
  return e;
}

std::string OrientedGraph::label(int n) const {
  const auto& node = nodes[n];
  const auto& pr = pairs[node.pair];
  return node.id + ": j=" + pr.j.str() + "; G=" + pr.G.str();
}

OrientedGraph oriented_graph(const PrimeParams& params, int ell) {
  const i64 p = params.p, c = params.c, cp = params.cp();
  if (ell < 2 || !is_prime(static_cast<u64>(ell)) || ell == c || ell == p)
    throw Error(Errc::BadParams, "ell must be a prime different from c and p");
  if (kronecker(-cp, ell) != 1) throw Error(Errc::NotSplit, std::to_string(ell) + " does not split in Q(sqrt(-cp))");
  OrientedGraph g;
  g.params = params;
  g.ell = ell;
  const i64 n = p + 1;

  // Pairs up to automorphisms of E.
  for (const Fq& j : supersingular_js(p)) {
    Curve E = canonical_curve(j);
    auto auts = isomorphisms(E, E);
    std::vector<Poly> reps;
    std::optional<std::pair<Point, Point>> basis;
    for (const auto& G : order_c_kernels(E, static_cast<int>(c))) {
      bool seen = false;
      for (const Fq& rho : auts)
        for (const Poly& r : reps)
          if (apply_iso(G.kernel_poly, rho) == r) seen = true;
      if (seen) continue;
      reps.push_back(G.kernel_poly);
      if (!c_epsilon_test(G)) continue;
      ++g.c_epsilon_pairs;
      if (!basis) basis = torsion_basis(E, n);
      OrientedPair pr;
      pr.j = j;
      pr.E = E;
      pr.G = G;
      pr.phi = Isogeny(G);
      pr.P1 = basis->first;
      pr.P2 = basis->second;
      const Point minus1 = mul(E, pr.P1, -cp), minus2 = mul(E, pr.P2, -cp);
      for (const Fq& u : isomorphisms(pr.phi.codomain(), conjugate(E))) {
        pr.u = u;
        if (pr.mu(pr.mu(pr.P1)) == minus1 && pr.mu(pr.mu(pr.P2)) == minus2) {
          pr.oriented = true;
          break;
        }
      }
      if (!pr.oriented) continue;
      ++g.oriented_pairs;
      // Other orientations with the same kernel are rho o mu, rho an automorphism.
      for (const Fq& rho : auts) {
        auto nu = [&](const Point& P) { return apply_iso(pr.mu(P), rho); };
        if (nu(nu(pr.P1)) == minus1 && nu(nu(pr.P2)) == minus2) pr.twists.push_back(rho);
      }
      g.pairs.push_back(pr);
    }
  }

  // Nodes (pair, twist), merging twists that an automorphism fixing G conjugates into each other.
  std::map<std::pair<int, int>, int> node_of;
  std::vector<std::pair<int, int>> raw;
  for (int k = 0; k < static_cast<int>(g.pairs.size()); ++k) {
    const auto& pr = g.pairs[k];
    for (int t = 0; t < static_cast<int>(pr.twists.size()); ++t) {
      if (node_of.count({k, t})) continue;
      int id = static_cast<int>(raw.size());
      raw.emplace_back(k, t);
      Point T[2] = {pr.P1, pr.P2};
      Point V[2] = {apply_iso(pr.mu(pr.P1), pr.twists[t]), apply_iso(pr.mu(pr.P2), pr.twists[t])};
      node_of[{k, t}] = id;
      for (const auto& hit : locate(g.pairs, pr.j, pr.G, T, V))
        if (hit.pair == k) node_of[{k, hit.twist}] = id;
    }
  }
  auto find_node = [&](const std::vector<Located>& hits) -> std::optional<int> {
    if (hits.empty()) return std::nullopt;
    int v = node_of.at({hits[0].pair, hits[0].twist});
    for (const auto& h : hits)
      if (node_of.at({h.pair, h.twist}) != v) throw Error(Errc::InvalidKernel, "orientation located at two nodes");
    return v;
  };
  auto twisted = [&](int v, const Point& P) {
    const auto& pr = g.pairs[raw[v].first];
    return apply_iso(pr.mu(P), pr.twists[raw[v].second]);
  };
  // Surface: (1 + mu)/2 is integral, i.e. mu is trivial on E[2].
  std::vector<char> surface(raw.size());
  for (int v = 0; v < static_cast<int>(raw.size()); ++v) {
    const auto& pr = g.pairs[raw[v].first];
    Point h1 = mul(pr.E, pr.P1, n / 2), h2 = mul(pr.E, pr.P2, n / 2);
    surface[v] = twisted(v, h1) == h1 && twisted(v, h2) == h2;
  }

  // Galois conjugation (E, G, mu) -> (E^p, G^p, mu^p).
  std::vector<int> conj(raw.size(), -1);
  for (int v = 0; v < static_cast<int>(raw.size()); ++v) {
    const auto& pr = g.pairs[raw[v].first];
    SubgroupKernel Gp{conjugate(pr.E), pr.G.kernel_poly.frob(), pr.G.order};
    Point T[2] = {pr.P1.frob(), pr.P2.frob()};
    Point V[2] = {twisted(v, pr.P1).frob(), twisted(v, pr.P2).frob()};
    auto w = find_node(locate(g.pairs, pr.j.frob(), Gp, T, V));
    if (!w) throw Error(Errc::InvalidKernel, "Galois conjugate of (j=" + pr.j.str() + ", G=" + pr.G.str() +
                                                   ") is missing");
    conj[v] = *w;
  }

  // ell-isogenies, pushing G and mu forward.
  std::vector<std::vector<int>> out(raw.size());
  for (int v = 0; v < static_cast<int>(raw.size()); ++v) {
    const auto& pr = g.pairs[raw[v].first];
    for (const auto& H : order_c_kernels(pr.E, ell)) {
      Isogeny psi(H);
      Fq j2 = j_invariant(psi.codomain());
      Curve E2 = canonical_curve(j2);
      Fq u = isomorphisms(psi.codomain(), E2).at(0);
      SubgroupKernel G2 = apply_iso(psi.push(pr.G), u, E2);
      Point T[2] = {apply_iso(psi(pr.P1), u), apply_iso(psi(pr.P2), u)};
      Point V[2] = {apply_iso(psi(twisted(v, pr.P1)), u), apply_iso(psi(twisted(v, pr.P2)), u)};
      if (auto w = find_node(locate(g.pairs, j2, G2, T, V))) out[v].push_back(*w);
    }
    std::sort(out[v].begin(), out[v].end());
  }

  // Name nodes: surface before floor, then by j, kernel and twist; E<i> and its conjugate E<i>p.
  std::vector<int> order(raw.size());
  for (int v = 0; v < static_cast<int>(raw.size()); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& pa = g.pairs[raw[a].first];
    const auto& pb = g.pairs[raw[b].first];
    if (surface[a] != surface[b]) return surface[a] > surface[b];
    if (!(pa.j == pb.j)) return pa.j < pb.j;
    if (raw[a].first != raw[b].first) return kernel_less(pa.G.kernel_poly, pb.G.kernel_poly);
    return raw[a].second < raw[b].second;
  });
  std::vector<std::string> ids(raw.size());
  int next = 1;
  for (int v : order) {
    if (!ids[v].empty()) continue;
    ids[v] = "E" + std::to_string(next);
    if (conj[v] != v) ids[conj[v]] = "E" + std::to_string(next) + "p";
    ++next;
  }
  // Emit nodes in naming order.
  std::vector<int> pos(raw.size());
  std::vector<int> emit;
  for (int v : order)
    if (ids[v].back() != 'p') {
      emit.push_back(v);
      if (conj[v] != v) emit.push_back(conj[v]);
    }
  for (int i = 0; i < static_cast<int>(emit.size()); ++i) pos[emit[i]] = i;
  for (int v : emit) {
    g.nodes.push_back({raw[v].first, raw[v].second, ids[v], pos[conj[v]], surface[v] != 0});
    std::vector<int> o;
    for (int w : out[v]) o.push_back(pos[w]);
    std::sort(o.begin(), o.end());
    g.out.push_back(o);
  }

  g.symmetric = true;
  for (int a = 0; a < static_cast<int>(g.out.size()); ++a)
    for (int b : g.out[a]) {
      auto ca = std::count(g.out[a].begin(), g.out[a].end(), b);
      auto cb = std::count(g.out[b].begin(), g.out[b].end(), a);
      if (ca != cb) g.symmetric = false;
    }
  g.certified = 4 * cp * ell < n * n;
  return g;
}

std::string to_dot(const OrientedGraph& g) {
  std::string s = "graph oriented {\n";
  for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v)
    s += "  " + g.nodes[v].id + " [label=\"" + g.label(v) + "\"];\n";
  for (const auto& [a, b] : g.edges()) s += "  " + g.nodes[a].id + " -- " + g.nodes[b].id + ";\n";
  s += "}\n";
  return s;
}

}  // namespace eichler
