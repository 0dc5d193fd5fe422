#pragma once

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

#include "mcpower/scalar.hpp"

namespace mcpower {

// Planar rooted tree. Vertex 0 is the root; children are stored in planar
// (left-to-right) order; vertices are indexed in depth-first preorder.
struct PlanarTree {
  std::vector<std::vector<int>> children;

  int size() const { return static_cast<int>(children.size()); }
  // Nested-parentheses form, e.g. "(()())" for a root with two leaf children.
  static PlanarTree parse(const std::string& s);
  std::string str() const;
  std::vector<int> parents() const;
  std::vector<int> subtree_sizes() const;
  bool operator==(const PlanarTree& o) const { return children == o.children; }
};

// All planar rooted trees with n vertices (Catalan(n-1) many), stable order.
std::vector<PlanarTree> all_planar_trees(int n);

// Number of ways to schedule the vertices so that every vertex is applied
// before its parent: n! / prod_v |subtree(v)|.
mpz_class causal_orderings(const PlanarTree& T);
// The same count by brute force over all n! schedules (small trees only).
mpz_class causal_orderings_brute(const PlanarTree& T);

}  // namespace mcpower
