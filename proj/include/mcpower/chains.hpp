#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "mcpower/scalar.hpp"

namespace mcpower {

// Formal integer linear combination of cells, keyed by serialized cell name.
struct FormalChain {
  std::map<std::string, mpz_class> terms;

  void add(const std::string& cell, const mpz_class& c);
  FormalChain& operator+=(const FormalChain& o);
  FormalChain operator*(const mpz_class& c) const;
  bool is_zero() const;
  size_t size() const { return terms.size(); }
  std::string str() const;
};

// ---------------------------------------------------------------------------
// Associahedra.
//
// Cells of the d-th associahedron are planar rooted trees with d leaves whose
// internal vertices all have >= 2 children, serialized in nested-paren form
// with "()" for a leaf; the top cell is the d-leaf corolla, of dimension d-2.
// The boundary splits one internal vertex of arity a into an outer vertex of
// arity a-j+1 and an inner vertex of arity j inserted after the first i
// slots, with facet sign (-1)^{(a-i-j)j+i}; factors are ordered root-first in
// depth-first order, contributing the usual product-rule prefix signs.
// ---------------------------------------------------------------------------

std::string associahedron_top_cell(int d);
int associahedron_cell_dim(const std::string& cell);
FormalChain associahedron_boundary_cell(const std::string& cell);
FormalChain associahedron_boundary(const FormalChain& c);

// ---------------------------------------------------------------------------
// MWW strata.
//
// A boundary stratum of MWW_{d_1..d_r} is a tree of screens: large-scale
// vertices ('L', >= 2 children, each large or mid), mid-scale vertices ('M',
// slots grouped by color, each slot a marked point or a small-scale tree),
// and small-scale vertices ('S', >= 2 slots of one color).  The codimension
// is the number of large plus small vertices.  Mid slots with empty colors
// are identified away by the serialization, which only lists inhabited
// colors.
// ---------------------------------------------------------------------------

struct MwwNode {
  char kind = '*';  // 'L' large, 'M' mid, 'S' small, '*' marked point
  int color = 0;    // colors live on mid slots: '*' and 'S' carry one
  std::vector<MwwNode> ch;

  std::string str() const;
  bool operator==(const MwwNode& o) const { return str() == o.str(); }
};

// The interior stratum: a single mid vertex with d[k] points of color k+1.
MwwNode mww_interior(const std::vector<int>& d);
// All codimension-one degenerations of a stratum.
std::vector<MwwNode> mww_faces(const MwwNode& s);
// All strata of the given codimension, deduplicated and sorted.
std::vector<std::string> mww_strata(const std::vector<int>& d, int codim);

// Sign of the small-scale face of [MWW_{d_1..d_r}] bubbling j consecutive
// points of color k (0-based) after the first i, and of the mid-scale face
// with row matrix rows[i][k] (rows listed top to bottom).
int mww_type1_sign(const std::vector<int>& d, int k, int i, int j);
int mww_type2_sign(const std::vector<std::vector<int>>& rows);

// Signed codimension-one boundary of the fundamental chain.
FormalChain mww_boundary(const std::vector<int>& d);

}  // namespace mcpower
