#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcpower/scalar.hpp"

namespace mcpower {

// A finite complex C over F_p with a Z/p-action: graded basis, differential
// d, and a degree-0 automorphism T generating the action.  Matrices use the
// column convention M[i][j] = coefficient of basis i in the image of basis j,
// entries reduced into [0, p).  The differential must be homogeneous of
// degree +1: following the source conventions, every complex is
// cohomologically graded, including the ones fed to the homology variant.
//
// t_max bounds the power of t (respectively s) retained when forming the
// Z/p-equivariant complex; negative means the default 2*dim + 4, which is
// enough for every stable-range statement since the theory is t-periodic
// above the degrees of C.
struct EquivariantComplex {
  std::string name;
  long p = 0;
  std::vector<long> deg;
  std::vector<std::vector<long>> d;
  std::vector<std::vector<long>> T;
  int t_max = -1;

  int dim() const { return static_cast<int>(deg.size()); }
  int t_truncation() const { return t_max >= 0 ? t_max : 2 * dim() + 4; }
  long min_deg() const;
  long max_deg() const;
};

// Validates and normalizes: p prime, square matrices of matching size, d
// homogeneous of degree +1 or -1, T of degree 0, d^2 = 0, T^p = id, Td = dT.
// Violations throw input_error.
EquivariantComplex make_equivariant(std::string name, long p,
                                    std::vector<long> deg,
                                    std::vector<std::vector<long>> d,
                                    std::vector<std::vector<long>> T,
                                    int t_max = -1);

// Same JSON envelope as algebra basis files ({name, p, degrees, terms}) with
// the differential given by the arity-1 "terms" entries, extended with a
// "T" block in the same {in, out, c} entry format, and an optional
// "t_truncation" integer.
EquivariantComplex load_equivariant_json(const std::string& path);

// Dimensions, per total degree, of the cohomology of the t-truncated complex
//   C[[t]] + theta C[[t]],  |t| = 2, |theta| = 1,
//   d(t^k c)       = t^k dc + theta t^k (Tc - c),
//   d(theta t^k c) = -theta t^k dc + t^{k+1} (c + Tc + ... + T^{p-1} c),
// where powers t^k with k > t_truncation() are set to zero (a quotient
// complex, so the truncated differential still squares to zero exactly).
// The map carries one entry per total degree that has at least one
// generator, including zero dimensions.
std::map<long, long> zp_cohomology(const EquivariantComplex& E);

// Homology variant (everything stays cohomologically graded, so this too is
// computed as cohomology of a complex whose differential raises total degree
// by 1): dimensions of the homology of
//   C[s] + sigma C[s],  |s| = -2, |sigma| = -1,
//   d(s^k c)       = s^k dc - sigma s^{k-1} (c + Tc + ... + T^{p-1} c),
//   d(sigma s^k c) = -sigma s^k dc - s^k (Tc - c),
// (the norm term drops at k = 0), truncated to s-powers <= t_truncation(),
// which here is a subcomplex.  The exponent on the final (Tc - c) term is
// s^k, not s^{k-1} as sometimes printed: s^k is
// the unique choice homogeneous of degree +1, it is what the standard small
// free resolution of Z/p yields, and it reproduces the free-module answer.
std::map<long, long> zp_homology(const EquivariantComplex& E);

// Truncation makes the reported dimensions exact only in a stable range of
// total degrees: at the top for cohomology (missing norm targets above
// t^t_max) and at the bottom for homology (missing sources below s^0 of the
// untruncated tail).  Dimensions strictly inside these bounds agree with the
// untruncated complex.
long zp_stable_degree_max(const EquivariantComplex& E);  // cohomology: valid m <= this
long zp_stable_degree_min(const EquivariantComplex& E);  // homology:   valid m >= this

// A scalar multiple of a power of t.  The exponent is stored doubled
// (t_num = 2 * power) so that the p = 2 half-integer powers t^{1/2} = theta
// share one representation: t_num odd encodes the theta-component.
struct TMonomial {
  long coeff = 0;
  long t_num = 0;  // coeff * t^{t_num / 2}
};

// Equivariant Euler class of a sum of weight-k_i representation lines:
// (k_1 ... k_d) t^d, reduced mod p when p > 0 and exact over Z when p == 0.
TMonomial equivariant_euler(const std::vector<long>& weights, long p);

// Coefficients translating the normalized total power operation into the
// classical Sq^i / P^i basis:
//   p = 2:  component i carries Sq^i(x) with coefficient 1 on t^{(|x|-i)/2};
//   p > 2:  component i carries P^i(x) with coefficient
//           (-1)^* ((p-1)/2)!^{|x|} (-1)^i on t^{(|x|-2i)(p-1)/2},
//           where * = |x|(|x|-1)/2 * (p-1)/2
// (theta-free part only; Bockstein companions are out of scope).  Keys are
// the component indices i with nonnegative t-exponent.
std::map<long, TMonomial> steenrod_constants(long p, long x_deg);

// Closed form of the surviving degree-3 component on a class of degree 3:
// x t^{3/2} for p = 2, and -((p-1)/2)! x t^{(3p-3)/2} for odd p.
TMonomial steenrod_h3(long p);

// Coefficient of t in the Bockstein of theta, evaluated in the rank-1
// trivial-coefficient model by lifting the equivariant differential to
// Z/p^2 and dividing the norm term by p.  Equals +1 for every prime.
long bockstein_theta_coefficient(long p);

// n! mod p (0 <= result < p); p must be positive.
long factorial_mod(long n, long p);

// Rank of a matrix over F_p (column convention irrelevant); rows may be
// ragged-free dense vectors.  Exposed for rank-oracle tests.
long matrix_rank_mod_p(std::vector<std::vector<long>> M, long p);

}  // namespace mcpower
