#pragma once

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

#include "mcpower/scalar.hpp"

namespace mcpower {

// The six screen scales of a boundary stratum, plus the distinguished
// mid-scale vertex (written `mid*` in the text format).
enum class Scale { Large, MidStar, Mid, Small, SmallLarge, SmallMid, SmallSmall };

std::string scale_name(Scale s);

// Rooted planar tree whose vertices carry scale labels and whose slots are
// either marked points (leaves, optionally colored) or child screens.
// Vertex 0 is the root; vertices are indexed in depth-first preorder.
//
// Text format:  (scale slot...)  where slot = `leaf`, `leaf:<color>`, or a
// nested parenthesized vertex.  Example: (large (mid*) (mid (small-mid leaf leaf)))
struct DecoratedTree {
  struct Slot {
    bool is_leaf = false;
    int color = 0;   // only meaningful for leaves
    int child = -1;  // vertex index when !is_leaf
  };
  struct Vertex {
    Scale scale = Scale::Large;
    std::vector<Slot> slots;
  };
  std::vector<Vertex> verts;

  int size() const { return static_cast<int>(verts.size()); }
  std::vector<int> children(int v) const;
  int leaf_count(int v) const;
  std::vector<int> parents() const;
  int star() const;  // index of the mid* vertex, -1 if absent

  static DecoratedTree parse(const std::string& text);
  static DecoratedTree load(const std::string& path);
  std::string str() const;
};

// Checks the scale-decoration grammar for an SS-type boundary stratum:
// exactly one mid* vertex; large vertices have >= 2 screen children (large or
// mid scale, no marked points); mid* carries only small-scale screens; mid
// vertices have >= 1 slot, and carry small-large/small-mid towers only when
// they come after mid* in the planar order; small and small-small vertices
// have >= 2 slots with only same-kind screens; small-large vertices have
// >= 2 children, all small-large or small-mid; small-mid vertices have >= 1
// slot with only small-small screens.  Throws input_error on violation.
void validate_decorated(const DecoratedTree& T);

// Random valid decorated tree with at most max_edges finite edges.
DecoratedTree random_decorated_tree(std::mt19937_64& rng, int max_edges = 12);

// Smith normal form U*A*V = D with U, V unimodular and D diagonal with
// d_1 | d_2 | ... >= 0.
struct SmithResult {
  std::vector<std::vector<mpz_class>> D, U, V;
  int rank = 0;  // number of nonzero diagonal entries
  std::vector<mpz_class> invariants() const;
};
SmithResult smith_normal_form(std::vector<std::vector<mpz_class>> A);

// Determinant of a square integer matrix (fraction-free elimination).
mpz_class integer_determinant(std::vector<std::vector<mpz_class>> A);

// Analysis of the group of gluing parameters G_T and its nonnegative
// submonoid for a decorated boundary tree.  Edges are numbered by the
// postorder position of their child vertex (1-based); relation rows and
// generator data use that ordering.
struct MonoidReport {
  int edges = 0;
  int relations = 0;
  int rank = 0;           // rank of the group computed by Smith normal form
  int expected_rank = 0;  // count of vertices neither mid- nor small-mid-scale
  bool group_free = false;
  bool monoid_free = false;
  bool saturated = false;
  bool sharp = false;
  bool certified = false;  // a positive functional was found: sharpness is
                           // certified and membership tests are exact
  int candidate_box = 6;   // saturation candidates live in [-box, box]^rank
  int multiplier_bound = 6;
  std::vector<std::vector<mpz_class>> relation_rows;      // edge coordinates
  std::vector<std::vector<mpz_class>> generator_images;   // quotient coords, per edge
  std::vector<std::vector<mpz_class>> minimal_generators; // atoms of the monoid

  // e.g. "rank 3, free group, non-free monoid, saturated, sharp"
  std::string str() const;
};

// With full = false, only the group-level data (relations, rank, freeness,
// generator images) is computed; the cone scans for atoms, saturation and
// sharpness are skipped.
MonoidReport monoid_check(const DecoratedTree& T, bool full = true);

// True when the relation row `row` (edge coordinates) holds in G_T, i.e. the
// signed combination of edge generators it describes maps to zero.
bool relation_holds(const MonoidReport& rep, const std::vector<long>& row);

}  // namespace mcpower
