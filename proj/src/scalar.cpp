#include "mcpower/scalar.hpp"

#include <sstream>

namespace mcpower {

namespace {

mpz_class pow_z(long b, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

RingPtr Ring::integers() {
  auto R = std::make_shared<Ring>();
  R->kind = RingKind::Integers;
  return R;
}

RingPtr Ring::rationals() {
  auto R = std::make_shared<Ring>();
  R->kind = RingKind::Rationals;
  return R;
}

RingPtr Ring::prime_field(long p) {
  if (p < 2) throw input_error("prime_field: p must be a prime >= 2");
  auto R = std::make_shared<Ring>();
  R->kind = RingKind::PrimeField;
  R->p = p;
  R->modulus = p;
  return R;
}

RingPtr Ring::prime_power(long p, int k) {
  if (p < 2 || k < 1) throw input_error("prime_power: need p >= 2, k >= 1");
  auto R = std::make_shared<Ring>();
  R->kind = RingKind::PrimePower;
  R->p = p;
  R->k = k;
  R->modulus = pow_z(p, k);
  return R;
}

RingPtr Ring::adic(RingPtr base, int nilpotency) {
  if (!base) throw input_error("adic: null base ring");
  if (nilpotency < 1) throw input_error("adic: nilpotency must be >= 1");
  auto R = std::make_shared<Ring>();
  R->kind = RingKind::Adic;
  R->nilpotency = nilpotency;
  R->base = std::move(base);
  return R;
}

bool Ring::same(const RingPtr& o) const {
  if (!o) return false;
  if (kind != o->kind) return false;
  switch (kind) {
    case RingKind::Integers:
    case RingKind::Rationals:
      return true;
    case RingKind::PrimeField:
      return p == o->p;
    case RingKind::PrimePower:
      return p == o->p && k == o->k;
    case RingKind::Adic:
      return nilpotency == o->nilpotency && base->same(o->base);
  }
  return false;
}

std::string Ring::name() const {
  switch (kind) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Rationals:
      return "Q";
    case RingKind::PrimeField:
      return "F" + std::to_string(p);
    case RingKind::PrimePower:
      return "Z/" + std::to_string(p) + "^" + std::to_string(k);
    case RingKind::Adic:
      return base->name() + "[q]/q^" + std::to_string(nilpotency + 1);
  }
  return "?";
}

Scalar Scalar::zero(const RingPtr& R) {
  if (!R) throw internal_error("Scalar::zero: null ring");
  Scalar s;
  s.ring = R;
  if (R->kind == RingKind::Adic)
    s.c.assign(static_cast<size_t>(R->nilpotency) + 1, Scalar::zero(R->base));
  return s;
}

Scalar Scalar::one(const RingPtr& R) { return from_long(R, 1); }

Scalar Scalar::from_long(const RingPtr& R, long v) { return from_mpz(R, mpz_class(v)); }

Scalar Scalar::from_mpz(const RingPtr& R, const mpz_class& v) {
  Scalar s = zero(R);
  switch (R->kind) {
    case RingKind::Integers:
      s.z = v;
      break;
    case RingKind::Rationals:
      s.r = v;
      break;
    case RingKind::PrimeField:
    case RingKind::PrimePower: {
      mpz_class m = v % R->modulus;
      if (m < 0) m += R->modulus;
      s.z = m;
      break;
    }
    case RingKind::Adic:
      s.c[0] = from_mpz(R->base, v);
      break;
  }
  return s;
}

Scalar Scalar::from_mpq(const RingPtr& R, const mpq_class& v) {
  switch (R->kind) {
    case RingKind::Rationals: {
      Scalar s = zero(R);
      s.r = v;
      s.r.canonicalize();
      return s;
    }
    case RingKind::Integers: {
      mpq_class w = v;
      w.canonicalize();
      if (w.get_den() != 1)
        throw arith_error("from_mpq: non-integral value over Z: " + w.get_str());
      return from_mpz(R, w.get_num());
    }
    case RingKind::PrimeField:
    case RingKind::PrimePower: {
      mpq_class w = v;
      w.canonicalize();
      mpz_class den = w.get_den();
      if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(R->p)))
        throw arith_error("from_mpq: denominator " + den.get_str() + " divisible by " +
                          std::to_string(R->p));
      return from_mpz(R, w.get_num()) * from_mpz(R, den).inverse();
    }
    case RingKind::Adic: {
      Scalar s = zero(R);
      s.c[0] = from_mpq(R->base, v);
      return s;
    }
  }
  throw internal_error("from_mpq: unreachable");
}

Scalar Scalar::q_gen(const RingPtr& R) {
  if (!R || R->kind != RingKind::Adic) throw input_error("q_gen: ring is not a truncation");
  Scalar s = zero(R);
  s.c[1] = one(R->base);
  return s;
}

bool Scalar::is_zero() const {
  if (!ring) throw internal_error("Scalar::is_zero: null ring");
  switch (ring->kind) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::PrimePower:
      return z == 0;
    case RingKind::Rationals:
      return r == 0;
    case RingKind::Adic:
      for (const auto& x : c)
        if (!x.is_zero()) return false;
      return true;
  }
  return false;
}

namespace {
void require_same_ring(const Scalar& a, const Scalar& b, const char* op) {
  if (!a.ring || !b.ring || !a.ring->same(b.ring))
    throw internal_error(std::string("scalar ") + op + ": mismatched rings");
}
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_ring(*this, o, "+");
  Scalar s = zero(ring);
  switch (ring->kind) {
    case RingKind::Integers:
      s.z = z + o.z;
      break;
    case RingKind::Rationals:
      s.r = r + o.r;
      break;
    case RingKind::PrimeField:
    case RingKind::PrimePower: {
      s.z = z + o.z;
      if (s.z >= ring->modulus) s.z -= ring->modulus;
      break;
    }
    case RingKind::Adic:
      for (size_t i = 0; i < c.size(); ++i) s.c[i] = c[i] + o.c[i];
      break;
  }
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = zero(ring);
  switch (ring->kind) {
    case RingKind::Integers:
      s.z = -z;
      break;
    case RingKind::Rationals:
      s.r = -r;
      break;
    case RingKind::PrimeField:
    case RingKind::PrimePower:
      s.z = (z == 0) ? mpz_class(0) : mpz_class(ring->modulus - z);
      break;
    case RingKind::Adic:
      for (size_t i = 0; i < c.size(); ++i) s.c[i] = -c[i];
      break;
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_ring(*this, o, "*");
  Scalar s = zero(ring);
  switch (ring->kind) {
    case RingKind::Integers:
      s.z = z * o.z;
      break;
    case RingKind::Rationals:
      s.r = r * o.r;
      break;
    case RingKind::PrimeField:
    case RingKind::PrimePower:
      s.z = (z * o.z) % ring->modulus;
      break;
    case RingKind::Adic: {
      const int m = ring->nilpotency;
      for (int i = 0; i <= m; ++i) {
        if (c[i].is_zero()) continue;
        for (int j = 0; i + j <= m; ++j) {
          if (o.c[j].is_zero()) continue;
          s.c[i + j] = s.c[i + j] + c[i] * o.c[j];
        }
      }
      break;
    }
  }
  return s;
}

Scalar Scalar::inverse() const {
  switch (ring->kind) {
    case RingKind::Integers:
      if (z == 1 || z == -1) return *this;
      throw arith_error("inverse: " + z.get_str() + " is not a unit in Z");
    case RingKind::Rationals: {
      if (r == 0) throw arith_error("inverse: zero in Q");
      Scalar s = zero(ring);
      s.r = 1 / r;
      return s;
    }
    case RingKind::PrimeField:
    case RingKind::PrimePower: {
      Scalar s = zero(ring);
      if (mpz_invert(s.z.get_mpz_t(), z.get_mpz_t(), ring->modulus.get_mpz_t()) == 0)
        throw arith_error("inverse: " + z.get_str() + " is not a unit mod " +
                          ring->modulus.get_str());
      return s;
    }
    case RingKind::Adic: {
      // (u + n)^{-1} = u^{-1} sum (-u^{-1} n)^i, finite because n is nilpotent.
      Scalar u0 = c[0].inverse();
      Scalar n = *this;
      n.c[0] = Scalar::zero(ring->base);
      Scalar u0l = zero(ring);
      u0l.c[0] = u0;
      Scalar t = u0l * n;  // nilpotent part scaled
      Scalar acc = one(ring);
      Scalar power = one(ring);
      for (int i = 1; i <= ring->nilpotency; ++i) {
        power = power * t;
        acc = (i % 2 == 1) ? acc - power : acc + power;
      }
      return u0l * acc;
    }
  }
  throw internal_error("inverse: unreachable");
}

Scalar Scalar::pow(unsigned e) const {
  Scalar acc = one(ring);
  Scalar b = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * b;
    b = b * b;
    e >>= 1u;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  require_same_ring(*this, o, "==");
  return (*this - o).is_zero();
}

std::string Scalar::str() const {
  switch (ring->kind) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::PrimePower:
      return z.get_str();
    case RingKind::Rationals:
      return r.get_str();
    case RingKind::Adic: {
      std::ostringstream os;
      bool first = true;
      for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0)
          os << c[i].str();
        else {
          os << "(" << c[i].str() << ")*q";
          if (i > 1) os << "^" << i;
        }
      }
      if (first) os << "0";
      return os.str();
    }
  }
  return "?";
}

Scalar adic_reduce(const Scalar& x, const RingPtr& target) {
  if (!x.ring || !target) throw input_error("adic_reduce: null ring");
  const RingPtr& S = x.ring;
  if (S->same(target)) return x;

  if (S->kind == RingKind::Adic) {
    if (target->kind == RingKind::Adic) {
      if (target->nilpotency > S->nilpotency)
        throw input_error("adic_reduce: cannot extend a truncation (no canonical map)");
      Scalar out = Scalar::zero(target);
      for (int i = 0; i <= target->nilpotency; ++i) out.c[i] = adic_reduce(x.c[i], target->base);
      return out;
    }
    // Augmentation followed by reduction of the constant term.
    return adic_reduce(x.c[0], target);
  }

  if (target->kind == RingKind::Adic) {
    Scalar out = Scalar::zero(target);
    out.c[0] = adic_reduce(x, target->base);
    return out;
  }

  switch (S->kind) {
    case RingKind::Integers:
      return Scalar::from_mpz(target, x.z);
    case RingKind::Rationals:
      return Scalar::from_mpq(target, x.r);
    case RingKind::PrimeField:
      throw input_error("adic_reduce: no canonical map out of " + S->name());
    case RingKind::PrimePower: {
      if (target->kind == RingKind::PrimeField && target->p == S->p)
        return Scalar::from_mpz(target, x.z);
      if (target->kind == RingKind::PrimePower && target->p == S->p && target->k <= S->k)
        return Scalar::from_mpz(target, x.z);
      throw input_error("adic_reduce: no canonical map " + S->name() + " -> " + target->name());
    }
    default:
      throw input_error("adic_reduce: unsupported reduction");
  }
}

TruncSeries::TruncSeries(const RingPtr& R, int order) : ring(R) {
  if (order < 1) throw input_error("TruncSeries: order must be >= 1");
  a.assign(static_cast<size_t>(order), Scalar::zero(R));
}

TruncSeries TruncSeries::constant(const RingPtr& R, const Scalar& v, int order) {
  TruncSeries s(R, order);
  s.a[0] = v;
  return s;
}

TruncSeries TruncSeries::variable(const RingPtr& R, int order) {
  TruncSeries s(R, order);
  if (order < 2) throw input_error("TruncSeries::variable: order must be >= 2");
  s.a[1] = Scalar::one(R);
  return s;
}

namespace {
void require_compatible(const TruncSeries& x, const TruncSeries& y) {
  if (!x.ring->same(y.ring) || x.order() != y.order())
    throw input_error("TruncSeries: mismatched ring or order");
}
}  // namespace

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  require_compatible(*this, o);
  TruncSeries s(ring, order());
  for (int i = 0; i < order(); ++i) s.a[i] = a[i] + o.a[i];
  return s;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
  require_compatible(*this, o);
  TruncSeries s(ring, order());
  for (int i = 0; i < order(); ++i) s.a[i] = a[i] - o.a[i];
  return s;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  require_compatible(*this, o);
  TruncSeries s(ring, order());
  for (int i = 0; i < order(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j < order(); ++j) {
      if (o.a[j].is_zero()) continue;
      s.a[i + j] = s.a[i + j] + a[i] * o.a[j];
    }
  }
  return s;
}

TruncSeries TruncSeries::exp_of_nilpotent() const {
  if (!a[0].is_zero()) throw input_error("exp_of_nilpotent: nonzero constant term");
  const bool rational = ring->kind == RingKind::Rationals;
  const bool small_field = ring->kind == RingKind::PrimeField && order() <= ring->p;
  if (!rational && !small_field)
    throw input_error("exp_of_nilpotent: ring must contain Q or have order <= characteristic");
  TruncSeries acc = constant(ring, Scalar::one(ring), order());
  TruncSeries power = acc;
  mpz_class fact = 1;
  for (int n = 1; n < order(); ++n) {
    power = power * (*this);
    fact *= n;
    Scalar inv_fact = Scalar::from_mpz(ring, fact).inverse();
    TruncSeries term = power;
    for (int i = 0; i < order(); ++i) term.a[i] = term.a[i] * inv_fact;
    acc = acc + term;
  }
  return acc;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
  require_compatible(*this, o);
  for (int i = 0; i < order(); ++i)
    if (a[i] != o.a[i]) return false;
  return true;
}

std::string TruncSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < order(); ++i) {
    if (a[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << a[i].str() << ")";
    if (i == 1) os << "*q";
    if (i > 1) os << "*q^" << i;
  }
  if (first) os << "0";
  os << " + O(q^" << order() << ")";
  return os.str();
}

LaurentPoly LaurentPoly::monomial(const std::vector<std::string>& variables,
                                  const std::vector<int>& exps, const mpq_class& coeff) {
  if (variables.size() != exps.size())
    throw input_error("LaurentPoly::monomial: variable/exponent count mismatch");
  LaurentPoly P(variables);
  if (coeff != 0) P.terms[exps] = coeff;
  return P;
}

namespace {
void require_same_vars(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.vars != y.vars) throw input_error("LaurentPoly: mismatched variable lists");
}
}  // namespace

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  require_same_vars(*this, o);
  LaurentPoly s(vars);
  s.terms = terms;
  for (const auto& [e, v] : o.terms) {
    auto it = s.terms.find(e);
    if (it == s.terms.end())
      s.terms[e] = v;
    else {
      it->second += v;
      if (it->second == 0) s.terms.erase(it);
    }
  }
  return s;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  require_same_vars(*this, o);
  LaurentPoly s(vars);
  for (const auto& [e1, v1] : terms)
    for (const auto& [e2, v2] : o.terms) {
      std::vector<int> e(e1.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      auto it = s.terms.find(e);
      if (it == s.terms.end())
        s.terms[e] = v1 * v2;
      else {
        it->second += v1 * v2;
        if (it->second == 0) s.terms.erase(it);
      }
    }
  return s;
}

LaurentPoly LaurentPoly::pow(unsigned m) const {
  LaurentPoly acc = monomial(vars, std::vector<int>(vars.size(), 0), 1);
  LaurentPoly b = *this;
  while (m > 0) {
    if (m & 1u) acc = acc * b;
    b = b * b;
    m >>= 1u;
  }
  return acc;
}

mpq_class LaurentPoly::constant_term() const {
  auto it = terms.find(std::vector<int>(vars.size(), 0));
  return it == terms.end() ? mpq_class(0) : it->second;
}

std::string LaurentPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, v] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.get_str() << ")";
    for (size_t i = 0; i < vars.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << vars[i];
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

mpq_class laurent_power_constant_term(const LaurentPoly& W, unsigned m) {
  return W.pow(m).constant_term();
}

}  // namespace mcpower
