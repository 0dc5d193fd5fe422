#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcpower/nilpoly.hpp"
#include "mcpower/scalar.hpp"

namespace mcpower {

// Finite-dimensional A-infinity ring with operations mu^d stored as dense
// integer tables.  Sign convention for the structure equation:
//
//   0 = sum_{i,j} (-1)^{e_i} mu^{d-j+1}(a_1, .., a_i, mu^j(a_{i+1}, .., a_{i+j}), .., a_d)
//
// with e_i = ||a_1|| + .. + ||a_i|| and ||a|| = |a| - 1.  The differential is
// d(a) = -mu^1(a) and the product a1 * a2 = (-1)^{|a1|} mu^2(a1, a2).
struct AInftyAlgebra {
  std::string name;
  long p = 0;                          // coefficient modulus, 0 = integers
  std::vector<int> deg;                // degree of each basis element
  std::vector<long> unit;              // strict unit coefficients (empty: none)
  std::vector<std::vector<long>> mu;   // mu[d-1]: dense table dim^d x dim

  int dim() const { return static_cast<int>(deg.size()); }
  int arity() const { return static_cast<int>(mu.size()); }

  long red(long v) const {
    if (p == 0) return v;
    long r = v % p;
    return r < 0 ? r + p : r;
  }

  // Row index of an input tuple, most significant input first.
  long tuple_code(const int* in, int d) const {
    long code = 0;
    for (int i = 0; i < d; ++i) code = code * dim() + in[i];
    return code;
  }

  long mu_entry(int d, const int* in, int out) const {
    if (d < 1 || d > arity()) return 0;
    return mu[d - 1][tuple_code(in, d) * dim() + out];
  }
  void set_mu(int d, const std::vector<int>& in, int out, long coeff);
  void ensure_arity(int d);

  // Reduced degree of a basis element.
  int rdeg(int b) const { return deg[b] - 1; }

  static AInftyAlgebra exterior(long p);                // Lambda(a,b), |a|=|b|=1
  static AInftyAlgebra truncated_poly(long p, int k);   // F_p[a]/a^k, |a|=1
  static AInftyAlgebra interval(long p = 0);            // u, u~, v (Z if p = 0)
  static AInftyAlgebra registered(const std::string& name, long p);
  static AInftyAlgebra load_json(const std::string& path);
};

// Structure-equation violations up to input length dmax; empty means the
// tables satisfy the A-infinity equation there.
std::vector<std::string> check_a_infinity(const AInftyAlgebra& A, int dmax);

// Strict-unit axioms: mu^2(e,x) = x, mu^2(x,e) = (-1)^{|x|} x, and every
// mu^d with a unit slot vanishes for d >= 3.
std::vector<std::string> check_strict_unit(const AInftyAlgebra& A);

// A-infinity morphism F: A -> B given by dense tables f[d-1]: dim_A^d x dim_B.
struct AInftyMorphism {
  const AInftyAlgebra* src = nullptr;
  const AInftyAlgebra* dst = nullptr;
  std::vector<std::vector<long>> f;

  int arity() const { return static_cast<int>(f.size()); }
  long f_entry(int d, const int* in, int out) const {
    if (d < 1 || d > arity()) return 0;
    long code = 0;
    for (int i = 0; i < d; ++i) code = code * src->dim() + in[i];
    return f[d - 1][code * dst->dim() + out];
  }
  void ensure_arity(int d);
  void set_f(int d, const std::vector<int>& in, int out, long coeff);
};

// Homomorphism-equation violations up to input length dmax:
//   sum_r mu_B^r(F(..), .., F(..)) = sum_{i,j} (-1)^{e_i} F(.., mu_A^j(..), ..).
std::vector<std::string> check_a_infinity_morphism(const AInftyMorphism& F, int dmax);

// --- Maurer-Cartan theory with coefficients in q k[q]/q^{m+1} -------------
//
// Elements of A (x) (k 1 + N) are dense NilPoly vectors over the basis.

using AlgElt = std::vector<NilPoly>;

AlgElt alg_zero(const AInftyAlgebra& A, int m);
bool alg_is_zero(const AlgElt& x);

// mu^d evaluated at NilPoly-coefficient arguments.
AlgElt alg_mu(const AInftyAlgebra& A, const std::vector<const AlgElt*>& args);

// Maurer-Cartan defect sum_{d>=1} mu^d(g, .., g); g must lie in A (x) N.
AlgElt mc_defect(const AInftyAlgebra& A, const AlgElt& g);
bool mc_check(const AInftyAlgebra& A, const AlgElt& g);

// Defect of the equivalence equation driven by h:
//   sum_{r,s} mu^{r+s+1}(g^r, h, g2^s) - (g - g2).
AlgElt mc_equiv_defect(const AInftyAlgebra& A, const AlgElt& g, const AlgElt& g2,
                       const AlgElt& h);

// Unital form: g_unital = e + h must satisfy sum mu^{r+s+1}(g^r, e+h, g2^s) = 0.
AlgElt mc_equiv_defect_unital(const AInftyAlgebra& A, const AlgElt& g,
                              const AlgElt& g2, const AlgElt& h);

// Given g and a homotopy h in A^0 (x) N, produce the unique g2 with
// mc_equiv_defect(g, g2, h) = 0 (fixed-point iteration; exact since N is
// nilpotent).
AlgElt mc_solve_equivalent(const AInftyAlgebra& A, const AlgElt& g, const AlgElt& h);

// Pushforward of a Maurer-Cartan element along a morphism:
// F_*(g) = sum_d F^d(g, .., g).
AlgElt mc_pushforward(const AInftyMorphism& F, const AlgElt& g);

}  // namespace mcpower
