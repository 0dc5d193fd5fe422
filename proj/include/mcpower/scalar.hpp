#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcpower {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Bad user-supplied data (files, CLI arguments, out-of-contract parameters).
struct input_error : error {
  using error::error;
};
// Arithmetic that cannot proceed exactly (non-invertible reduction,
// unexpected denominator). Always fatal: silently reducing would corrupt
// downstream exact checks.
struct arith_error : error {
  using error::error;
};
// A structural invariant the library guarantees was violated; indicates a bug.
struct internal_error : error {
  using error::error;
};

enum class RingKind { Integers, Rationals, PrimeField, PrimePower, Adic };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// A coefficient ring: Z, Q, F_p, Z/p^k, or a truncation R[q]/q^{m+1} of a
// polynomial ring over one of these ("Adic", nilpotency m: any product of
// m+1 elements of the ideal (q) vanishes).
class Ring {
 public:
  RingKind kind = RingKind::Integers;
  long p = 0;          // PrimeField / PrimePower
  int k = 1;           // PrimePower exponent
  int nilpotency = 0;  // Adic
  RingPtr base;        // Adic
  mpz_class modulus;   // PrimeField / PrimePower: p^k

  static RingPtr integers();
  static RingPtr rationals();
  static RingPtr prime_field(long p);
  static RingPtr prime_power(long p, int k);
  static RingPtr adic(RingPtr base, int nilpotency);

  bool same(const RingPtr& o) const;
  std::string name() const;
};

class Scalar {
 public:
  RingPtr ring;
  mpz_class z;            // Integers / PrimeField / PrimePower (canonical 0..mod-1)
  mpq_class r;            // Rationals
  std::vector<Scalar> c;  // Adic: c[i] = coefficient of q^i, size nilpotency+1

  Scalar() = default;

  static Scalar zero(const RingPtr& R);
  static Scalar one(const RingPtr& R);
  static Scalar from_long(const RingPtr& R, long v);
  static Scalar from_mpz(const RingPtr& R, const mpz_class& v);
  static Scalar from_mpq(const RingPtr& R, const mpq_class& v);
  // Adic only: the ideal generator q.
  static Scalar q_gen(const RingPtr& R);

  bool is_zero() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar inverse() const;  // throws arith_error unless a unit
  Scalar pow(unsigned e) const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  std::string str() const;
};

// Canonical change of coefficient ring: Z -> anything, Q -> F_p when the
// denominator is invertible (throws arith_error otherwise), quotient maps
// between truncations, augmentation of an Adic ring, constant embedding into
// an Adic ring. Non-canonical requests throw input_error.
Scalar adic_reduce(const Scalar& x, const RingPtr& target);

// One-variable power series truncated at a fixed order (coefficients of
// q^0..q^{order-1}).
class TruncSeries {
 public:
  RingPtr ring;
  std::vector<Scalar> a;

  TruncSeries() = default;
  TruncSeries(const RingPtr& R, int order);
  static TruncSeries constant(const RingPtr& R, const Scalar& v, int order);
  static TruncSeries variable(const RingPtr& R, int order);

  int order() const { return static_cast<int>(a.size()); }
  const Scalar& operator[](int i) const { return a.at(i); }
  Scalar& operator[](int i) { return a.at(i); }

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator*(const TruncSeries& o) const;
  // exp of a series with zero constant term; requires the ring to be Q, or
  // F_p with order <= p.
  TruncSeries exp_of_nilpotent() const;
  bool operator==(const TruncSeries& o) const;
  std::string str() const;
};

// Multivariate Laurent polynomials with exact rational coefficients; terms
// are kept in lexicographic exponent order.
class LaurentPoly {
 public:
  std::vector<std::string> vars;
  std::map<std::vector<int>, mpq_class> terms;

  LaurentPoly() = default;
  explicit LaurentPoly(std::vector<std::string> variables) : vars(std::move(variables)) {}
  static LaurentPoly monomial(const std::vector<std::string>& variables,
                              const std::vector<int>& exps, const mpq_class& coeff);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly pow(unsigned m) const;
  mpq_class constant_term() const;
  std::string str() const;
};

// Constant term of W^m.
mpq_class laurent_power_constant_term(const LaurentPoly& W, unsigned m);

}  // namespace mcpower
