#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "mcpower/scalar.hpp"

namespace mcpower {

// ---------------------------------------------------------------------------
// Truncated power series over Q.
//
// QSeries holds a one-variable series sum_i c[i] z^i with every term of
// degree <= order kept; QSeries2 holds a two-variable series as a dense
// triangular array c[i][j] (the coefficient of x^i y^j) for i + j <= order.
// All operations truncate back to the common order, and mixing orders is an
// internal error: callers fix one working order up front.
// ---------------------------------------------------------------------------

struct QSeries {
  long order = 0;
  std::vector<mpq_class> c;  // size order + 1

  explicit QSeries(long ord = 0) : order(ord), c(ord + 1, mpq_class(0)) {}
};

struct QSeries2 {
  long order = 0;
  std::vector<std::vector<mpq_class>> c;  // c[i] has order + 1 - i entries

  explicit QSeries2(long ord = 0) : order(ord) {
    c.resize(ord + 1);
    for (long i = 0; i <= ord; ++i) c[i].assign(ord + 1 - i, mpq_class(0));
  }
  const mpq_class& at(long i, long j) const { return c[i][j]; }
  mpq_class& at(long i, long j) { return c[i][j]; }
};

QSeries qs_var(long order);                              // z
QSeries qs_add(const QSeries&, const QSeries&);
QSeries qs_sub(const QSeries&, const QSeries&);
QSeries qs_mul(const QSeries&, const QSeries&);
QSeries qs_scale(const mpq_class&, const QSeries&);
// outer(inner(z)); inner must have zero constant term
QSeries qs_compose(const QSeries& outer, const QSeries& inner);
// num / den with den(0) a unit
QSeries qs_div(const QSeries& num, const QSeries& den);
// reduces every coefficient into [0, p); a denominator divisible by p is an
// arith_error
QSeries qs_reduce_mod_p(const QSeries&, long p);

QSeries2 qs2_x(long order);
QSeries2 qs2_y(long order);
QSeries2 qs2_add(const QSeries2&, const QSeries2&);
QSeries2 qs2_sub(const QSeries2&, const QSeries2&);
QSeries2 qs2_mul(const QSeries2&, const QSeries2&);
QSeries2 qs2_scale(const mpq_class&, const QSeries2&);
// num / den with den(0,0) a unit
QSeries2 qs2_div(const QSeries2& num, const QSeries2& den);
QSeries2 qs2_reduce_mod_p(const QSeries2&, long p);

// ---------------------------------------------------------------------------
// Formal group laws.
//
// A law is a truncated two-variable series F(x, y) = x + y + higher order.
// fgl_verify checks the defining identities up to the truncation order and
// returns a list of human-readable violations (empty means the law passes):
// the unit axioms F(x, 0) = x and F(0, y) = y, commutativity, and
// associativity F(F(x, y), z) = F(x, F(y, z)) evaluated in three variables.
// ---------------------------------------------------------------------------

struct FormalGroupLaw {
  std::string name;
  QSeries2 F;

  long order() const { return F.order; }
};

FormalGroupLaw fgl_additive(long order);        // x + y
FormalGroupLaw fgl_multiplicative(long order);  // x + y + xy
FormalGroupLaw fgl_torus(long order);           // (x + y) / (1 - xy)

std::vector<std::string> fgl_verify(const FormalGroupLaw&);

// F(a(z), b(z)) for one-variable arguments without constant term
QSeries fgl_apply(const FormalGroupLaw&, const QSeries& a,
                      const QSeries& b);
// F(a(x), b(y)): substitutes each variable separately
QSeries2 fgl_apply2(const FormalGroupLaw&, const QSeries& a,
                        const QSeries& b);
// the multiplication-by-p series [p](z) = F(F(...F(z, z)..., z), z), computed
// exactly over Q and optionally reduced mod p at the end; requires
// order >= p + 1 so the z^p coefficient is visible
QSeries p_power_series(const FormalGroupLaw&, long p, bool reduce_mod_p);

// ---------------------------------------------------------------------------
// Elliptic curves in Weierstrass form and their formal groups.
// ---------------------------------------------------------------------------

struct WeierstrassCurve {
  mpz_class a1, a2, a3, a4, a6;

  mpz_class discriminant() const;
};

// Expansion of the group law in the parameter z = -x/y along the identity,
// via the recursive solution of w = z^3 + a1 z w + a2 z^2 w + a3 w^2 +
// a4 z w^2 + a6 w^3 and the chord construction.  Coefficients are proved
// integral along the way; a non-integral coefficient is an internal error.
// The curve must be nonsingular, and order is capped at 50.
FormalGroupLaw ec_formal_group(const WeierstrassCurve&, long order);

// |E(F_p)| by brute enumeration of the affine plane plus the point at
// infinity; p must be prime.
long ec_point_count(const WeierstrassCurve&, long p);

// Coefficient of z^p in [p](z) mod p, in [0, p).  Requires good reduction:
// p prime and p not dividing the discriminant.
long hasse_invariant(const WeierstrassCurve&, long p);

}  // namespace mcpower
