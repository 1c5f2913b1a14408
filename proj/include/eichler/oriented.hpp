#pragma once

#include <string>
#include <vector>

#include "eichler/ec.hpp"
#include "eichler/numth.hpp"

namespace eichler {

// True iff E/G has j-invariant j(E)^p.
bool c_epsilon_test(const SubgroupKernel& G);

// A level-c pair (E, G) on the canonical model of j, with the endomorphism
// mu = Frob_p o iota_u o phi_G of degree cp chosen so that mu^2 = -cp.
struct OrientedPair {
  Fq j;
  Curve E;
  SubgroupKernel G;
  Isogeny phi;
  Fq u;                 // iota_u : E/G -> E^p
  bool oriented = false;
  Point P1, P2;          // generators of E[p+1]
  std::vector<Fq> twists;  // automorphisms rho with (rho o mu)^2 = -cp; always contains +-1

  Point mu(const Point& P) const;
};

struct OrientedNode {
  int pair = 0;
  int twist = 0;  // index into the pair's twists
  std::string id;  // E<i> or E<i>p
  int conj = 0;    // index of the Galois-conjugate node
  bool surface = false;  // (1 + mu)/2 is integral
};

struct OrientedGraph {
  PrimeParams params;
  int ell = 0;
  std::vector<OrientedPair> pairs;
  std::vector<OrientedNode> nodes;
  std::vector<std::vector<int>> out;  // one entry per ell-isogeny landing on a node
  bool certified = false;             // test points separate distinct orientations
  bool symmetric = false;             // every edge has its dual
  int c_epsilon_pairs = 0;            // pairs passing the j-level test
  int oriented_pairs = 0;             // pairs passing mu^2 = -cp

  // Undirected edges (u <= v) with multiplicity, u -> v counted from u.
  std::vector<std::pair<int, int>> edges() const;
  std::string label(int node) const;
};

OrientedGraph oriented_graph(const PrimeParams& params, int ell);
std::string to_dot(const OrientedGraph& g);

}  // namespace eichler
