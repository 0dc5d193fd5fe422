#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mcpower/ainfty.hpp"
#include "mcpower/nilpoly.hpp"

namespace mcpower {

// Hochschild cochain of A with coefficients in k[q]/(q^{m+1}, p), stored as
// dense tables comp[j]: dim^j x dim for input lengths j = 0..max_len.
//
// degree is the cohomological degree |c|; an entry (j; t_1..t_j; out) may be
// nonzero only when deg[out] = |c| - j + deg[t_1] + .. + deg[t_j].
//
// exact_len records up to which input length the stored tables agree with the
// mathematically exact object (operations on truncated cochains can only be
// trusted on a prefix).  kFullSupport means the cochain vanishes identically
// beyond max_len, so every entry it determines is exact.
struct Cochain {
  static constexpr int kFullSupport = 1 << 20;

  const AInftyAlgebra* A = nullptr;
  long p = 0;
  int m = 0;
  int degree = 1;
  int max_len = 0;
  int exact_len = 0;
  std::vector<std::vector<NilPoly>> comp;

  Cochain() = default;
  Cochain(const AInftyAlgebra& alg, int deg_, int max_len_, int m_,
          int exact = kFullSupport);

  int dim() const { return A->dim(); }

  NilPoly& at(int j, long tuple, int out) { return comp[j][tuple * dim() + out]; }
  const NilPoly& at(int j, long tuple, int out) const {
    return comp[j][tuple * dim() + out];
  }

  // Value at an explicit input tuple; zero beyond max_len.
  NilPoly value(int j, const int* in, int out) const;

  bool is_zero(int up_to_len) const;
  bool equal(const Cochain& o, int up_to_len) const;

  // Whether the grading allows entry (j, tuple, out) to be nonzero.
  bool entry_allowed(int j, long tuple, int out) const;

  // Largest stored length with a nonzero table (-1 if identically zero).
  int support() const;

  // Cochain whose entries are the q^k-coefficients of this one.
  Cochain q_coefficient(int k) const;
  // This cochain multiplied by q^k.
  Cochain q_shifted(int k) const;
  // Same entries in a longer or shorter table.
  Cochain resized(int new_max_len) const;
  // Same entries over k[q]/(q^{new_m+1}, p); coefficients beyond are dropped.
  Cochain with_nilpotency(int new_m) const;
  // True if every entry lies in the ideal (q).
  bool in_ideal() const;

  std::string str(int up_to_len) const;
};

Cochain cc_add(const Cochain& a, const Cochain& b);
Cochain cc_sub(const Cochain& a, const Cochain& b);
Cochain cc_scale(const Cochain& a, long s);

// Hochschild differential as mu^1 of the cochain A-infinity ring, i.e.
// -d_C where
//
//   (d_C c)^d(a_1..a_d)
//     = - sum (-1)^{e_i ||c||} mu^{d-j+1}(a_1, .., c^j(a_{i+1}, ..), .., a_d)
//       + sum (-1)^{e_i + ||c||} c^{d-j+1}(a_1, .., mu^j(a_{i+1}, ..), .., a_d)
//
// with e_i = ||a_1|| + .. + ||a_i||.  Output stored for lengths 0..out_len.
Cochain cc_mu1(const Cochain& c, int out_len);

// Cochain operations mu^e_CC: for e >= 2, all ways of inserting the e
// cochains in order into mu of A,
//
//   sum (-1)^{sum_k e_{i_k} ||c_k||}
//       mu^{d - sum j + e}(a_1, .., c_1^{j_1}(..), .., c_e^{j_e}(..), .., a_d);
//
// e = 1 gives the differential cc_mu1.
Cochain cc_mu(const std::vector<const Cochain*>& cs, int out_len);

// Unsigned brace B(x; y_1..y_m): all ways of inserting y_1..y_m in order
// into x.  Valid as written when all reduced degrees involved are even or
// the coefficients are 2-torsion.
Cochain cc_brace(const Cochain& x, const std::vector<const Cochain*>& ys,
                 int out_len);

// Structure equation of the cochain A-infinity ring evaluated on explicit
// cochains (e = cs.size() inputs), up to output length out_len:
//   sum_{f,i} (-1)^{||c_1||+..+||c_i||} mu_CC(c_1, .., mu_CC(c_{i+1}, ..), ..).
// Returns violation descriptions (empty when the identity holds).
std::vector<std::string> check_cc_a_infinity(const std::vector<const Cochain*>& cs,
                                             int out_len);

// Tree-indexed p-th power operation: sum over rooted planar trees with p
// vertices of (number of causal orderings) * (iterated brace of c along the
// tree).  Requires p prime, coefficient characteristic p, odd degree unless
// p = 2, and c supplied up to length out_len + p - 1.
Cochain cc_xi(const Cochain& c, long prime, int out_len);

// Composition of the formal group:
//   (g1 * g2)^d = g2^d
//     + sum g1^{d - sum j + m}(.., g2^{j_1}(..), .., g2^{j_m}(..), ..),
// over m >= 0 ordered disjoint blocks (j_k >= 0).  Inputs must be degree-1
// cochains with coefficients in the ideal (q).  The result is stored up to
// out_len (default: the longer of the two input tables); note that lengths
// <= out_len of the product only ever read g2 at block sizes <= out_len,
// while g1 is read at all stored lengths.
Cochain cc_compose(const Cochain& g1, const Cochain& g2, int out_len = -1);

// n-fold composition g * (g * (.. * g)); n = 0 gives the zero cochain.
Cochain cc_power(const Cochain& g, int n, int out_len = -1);

// Inverse for the composition: the unique d with g * d = d * g = 0.
Cochain cc_inverse(const Cochain& g);

// Maurer-Cartan defect sum_{e>=1} mu^e_CC(g, .., g) of a degree-1 cochain
// with coefficients in the ideal.
Cochain cc_mc_defect(const Cochain& g, int out_len);
bool cc_mc_check(const Cochain& g, int up_to_len);

// Equivalence defect sum_{r,s} mu^{r+s+1}_CC(g^r, h, g2^s) - (g - g2) for a
// degree-0 homotopy h with coefficients in the ideal.
Cochain cc_equiv_defect(const Cochain& g, const Cochain& g2, const Cochain& h,
                        int out_len);

// Unital form of the equivalence equation: with g_u = e_CC + h (e_CC the
// length-0 unit cochain of a strictly unital algebra),
//   sum_{r,s} mu^{r+s+1}_CC(g^r, g_u, g2^s) = 0.
Cochain cc_equiv_defect_unital(const Cochain& g, const Cochain& g2,
                               const Cochain& h, int out_len);

// Solve the equivalence equation for g2 given g and h (fixed point; exact by
// nilpotency), storing the result up to length out_len.
Cochain cc_solve_equivalent(const Cochain& g, const Cochain& h, int out_len);

// Composition of the associated formal endomorphisms phi(g) = (id + g^1, g^d):
//   (phi1 o phi2)^d = sum_r sum_{s_1+..+s_r=d, s_k>=0} phi1^r(phi2^{s_1}(..), ..),
// returned again in gamma form (phi = id + gamma).  Independent of
// cc_compose as an implementation; the two agree.
Cochain phi_compose(const Cochain& g1, const Cochain& g2);

// --- random cochains and Maurer-Cartan sampling ---------------------------

using Rng = std::mt19937_64;

// Uniformly random degree-constrained cochain with constant (q^0)
// coefficients and support lengths 0..L.
Cochain random_cochain(const AInftyAlgebra& A, int degree, int L, int m, Rng& rng);

// Random cochain with coefficients in the ideal (q) (no constant terms).
Cochain random_ideal_cochain(const AInftyAlgebra& A, int degree, int L, int m,
                             Rng& rng);

// Random element of the kernel of cc_mu1 on cochains of the given degree with
// support <= L and constant coefficients (prime characteristic only).
Cochain random_cocycle(const AInftyAlgebra& A, int degree, int L, int m, Rng& rng);

// Random Maurer-Cartan element of CC(A) (x) q F_p[q]/q^{m+1}: the gauge
// image of 0 under a random degree-0 homotopy with support <= L.  The result
// is verified against cc_mc_check before being returned.
Cochain random_mc_cochain(const AInftyAlgebra& A, int L, int m, Rng& rng);

}  // namespace mcpower
