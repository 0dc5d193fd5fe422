#pragma once

#include <string>
#include <vector>

#include "mcpower/scalar.hpp"

namespace mcpower {

// ---------------------------------------------------------------------------
// Point counts of projective varieties over small prime fields.
//
// A system is a list of homogeneous integer polynomials in the coordinates
// x_0 .. x_{nvars-1} of P^{nvars-1}.  Counting enumerates one normalized
// representative per projective point: the first nonzero coordinate is
// scaled to 1, so representatives with leading index l have x_0 = ... =
// x_{l-1} = 0, x_l = 1 and the remaining coordinates free.
// ---------------------------------------------------------------------------

struct HomogeneousPoly {
  // parallel arrays: exps[t] lists one exponent per variable, coeff[t] the
  // integer coefficient of that monomial
  std::vector<std::vector<int>> exps;
  std::vector<long> coeffs;
};

struct ProjectiveSystem {
  std::string name;
  int nvars = 0;
  std::vector<HomogeneousPoly> polys;
};

// Validates shapes, homogeneity and 2 <= nvars, p prime <= 101; throws
// input_error otherwise.  The parallel counter is the production entry
// point; the serial one is the reference implementation it is checked
// against (and what the benchmark compares).
long count_projective_points(const ProjectiveSystem&, long p);
long count_projective_points_serial(const ProjectiveSystem&, long p);

// The registered genus-2 quartic space curve: the intersection of
// x0^2 + x1^2 + x2 x3 and x0 x1 + x2^2 + x3^2 in P^3.
ProjectiveSystem two_quadrics_curve();

// ---------------------------------------------------------------------------
// Eta products.
//
// For a list of levels l with sum divisible by 24, the expansion of
// q^{sum(l)/24} * prod_l prod_{n >= 1} (1 - q^{l n}) up to and including
// q^N, as the coefficient vector indexed by the exponent of q.  Each factor
// is expanded by the pentagonal number theorem and the sparse factors are
// convolved into the prefactor.
// ---------------------------------------------------------------------------

// coefficients of prod_{n >= 1} (1 - q^{level * n}) up to q^N
std::vector<long long> euler_factor_coeffs(long level, long N);

std::vector<long long> eta_product_coeffs(const std::vector<long>& levels,
                                          long N);

}  // namespace mcpower
