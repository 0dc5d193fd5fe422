#include "mcpower/fgl.hpp"

#include <algorithm>
#include <utility>

namespace mcpower {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_same_order(long a, long b, const char* where) {
  if (a != b)
    throw internal_error(std::string(where) + ": mixed truncation orders");
}

long mod_p_of(const mpq_class& q, long p) {
  mpz_class den = q.get_den() % p;
  if (den == 0) throw arith_error("denominator divisible by " + std::to_string(p));
  mpz_class num = q.get_num() % p;
  // Fermat inverse of the denominator
  long d = mpz_class(den % p).get_si();
  if (d < 0) d += p;
  long inv = 1, base = d, e = p - 2;
  while (e > 0) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  long n = mpz_class(num % p).get_si();
  if (n < 0) n += p;
  return n * inv % p;
}

// --- three-variable scratch series for the associativity check -------------

struct QSeries3 {
  long order = 0;
  std::vector<mpq_class> c;  // indexed by flat(i, j, k), i + j + k <= order

  explicit QSeries3(long ord) : order(ord) {
    const long n = (ord + 1) * (ord + 2) * (ord + 3) / 6;
    c.assign(n, mpq_class(0));
  }
  // flat index: monomials ordered by total degree, then lexicographically
  long flat(long i, long j, long k) const {
    const long d = i + j + k;
    const long base = d * (d + 1) * (d + 2) / 6;
    // within degree d: order by i, then j
    const long off = (d - i) * (d - i + 1) / 2 + (d - i - j);
    return base + off;
  }
  const mpq_class& at(long i, long j, long k) const { return c[flat(i, j, k)]; }
  mpq_class& at(long i, long j, long k) { return c[flat(i, j, k)]; }
};

QSeries3 qs3_mul(const QSeries3& A, const QSeries3& B) {
  QSeries3 R(A.order);
  const long N = A.order;
  for (long ia = 0; ia <= N; ++ia)
    for (long ja = 0; ja + ia <= N; ++ja)
      for (long ka = 0; ka + ja + ia <= N; ++ka) {
        const mpq_class& a = A.at(ia, ja, ka);
        if (a == 0) continue;
        const long rest = N - ia - ja - ka;
        for (long ib = 0; ib <= rest; ++ib)
          for (long jb = 0; jb + ib <= rest; ++jb)
            for (long kb = 0; kb + jb + ib <= rest; ++kb) {
              const mpq_class& b = B.at(ib, jb, kb);
              if (b == 0) continue;
              R.at(ia + ib, ja + jb, ka + kb) += a * b;
            }
      }
  return R;
}

QSeries3 qs3_var(long order, int which) {
  QSeries3 R(order);
  R.at(which == 0, which == 1, which == 2) = 1;
  return R;
}

// F(A, B) for three-variable arguments without constant term
QSeries3 qs3_apply(const QSeries2& F, const QSeries3& A,
                       const QSeries3& B) {
  const long N = F.order;
  QSeries3 R(N);
  // Horner in the first slot: R = sum_i A^i (sum_j F_{ij} B^j)
  std::vector<QSeries3> bpow;
  bpow.emplace_back(N);
  bpow[0].at(0, 0, 0) = 1;
  for (long j = 1; j <= N; ++j) bpow.push_back(qs3_mul(bpow.back(), B));
  for (long i = N; i >= 0; --i) {
    R = i == static_cast<long>(N) ? QSeries3(N) : qs3_mul(R, A);
    for (long j = 0; j + i <= N; ++j) {
      const mpq_class& f = F.at(i, j);
      if (f == 0) continue;
      for (std::size_t t = 0; t < R.c.size(); ++t)
        R.c[t] += f * bpow[j].c[t];
    }
  }
  return R;
}

}  // namespace

// --- one-variable series ----------------------------------------------------

QSeries qs_var(long order) {
  QSeries r(order);
  if (order >= 1) r.c[1] = 1;
  return r;
}

QSeries qs_add(const QSeries& a, const QSeries& b) {
  require_same_order(a.order, b.order, "qs_add");
  QSeries r(a.order);
  for (long i = 0; i <= a.order; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

QSeries qs_sub(const QSeries& a, const QSeries& b) {
  require_same_order(a.order, b.order, "qs_sub");
  QSeries r(a.order);
  for (long i = 0; i <= a.order; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

QSeries qs_mul(const QSeries& a, const QSeries& b) {
  require_same_order(a.order, b.order, "qs_mul");
  QSeries r(a.order);
  for (long i = 0; i <= a.order; ++i) {
    if (a.c[i] == 0) continue;
    for (long j = 0; i + j <= a.order; ++j) {
      if (b.c[j] == 0) continue;
      r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return r;
}

QSeries qs_scale(const mpq_class& s, const QSeries& a) {
  QSeries r(a.order);
  for (long i = 0; i <= a.order; ++i) r.c[i] = s * a.c[i];
  return r;
}

QSeries qs_compose(const QSeries& outer, const QSeries& inner) {
  require_same_order(outer.order, inner.order, "qs_compose");
  if (inner.c[0] != 0)
    throw input_error("qs_compose: inner series has a constant term");
  QSeries r(outer.order);
  for (long i = outer.order; i >= 0; --i) {
    r = qs_mul(r, inner);
    r.c[0] += outer.c[i];
  }
  return r;
}

QSeries qs_div(const QSeries& num, const QSeries& den) {
  require_same_order(num.order, den.order, "qs_div");
  if (den.c[0] == 0) throw input_error("qs_div: denominator is not a unit");
  QSeries q(num.order);
  std::vector<mpq_class> rem = num.c;
  for (long d = 0; d <= num.order; ++d) {
    q.c[d] = rem[d] / den.c[0];
    if (q.c[d] == 0) continue;
    for (long j = 0; d + j <= num.order; ++j) rem[d + j] -= q.c[d] * den.c[j];
  }
  return q;
}

QSeries qs_reduce_mod_p(const QSeries& a, long p) {
  if (!is_prime(p)) throw input_error("modulus must be prime");
  QSeries r(a.order);
  for (long i = 0; i <= a.order; ++i) r.c[i] = mod_p_of(a.c[i], p);
  return r;
}

// --- two-variable series ----------------------------------------------------

QSeries2 qs2_x(long order) {
  QSeries2 r(order);
  if (order >= 1) r.at(1, 0) = 1;
  return r;
}

QSeries2 qs2_y(long order) {
  QSeries2 r(order);
  if (order >= 1) r.at(0, 1) = 1;
  return r;
}

QSeries2 qs2_add(const QSeries2& a, const QSeries2& b) {
  require_same_order(a.order, b.order, "qs2_add");
  QSeries2 r(a.order);
  for (long i = 0; i <= a.order; ++i)
    for (long j = 0; i + j <= a.order; ++j)
      r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

QSeries2 qs2_sub(const QSeries2& a, const QSeries2& b) {
  require_same_order(a.order, b.order, "qs2_sub");
  QSeries2 r(a.order);
  for (long i = 0; i <= a.order; ++i)
    for (long j = 0; i + j <= a.order; ++j)
      r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

QSeries2 qs2_mul(const QSeries2& a, const QSeries2& b) {
  require_same_order(a.order, b.order, "qs2_mul");
  const long N = a.order;
  QSeries2 r(N);
  for (long ia = 0; ia <= N; ++ia)
    for (long ja = 0; ia + ja <= N; ++ja) {
      const mpq_class& av = a.at(ia, ja);
      if (av == 0) continue;
      const long rest = N - ia - ja;
      for (long ib = 0; ib <= rest; ++ib)
        for (long jb = 0; ib + jb <= rest; ++jb) {
          const mpq_class& bv = b.at(ib, jb);
          if (bv == 0) continue;
          r.at(ia + ib, ja + jb) += av * bv;
        }
    }
  return r;
}

QSeries2 qs2_scale(const mpq_class& s, const QSeries2& a) {
  QSeries2 r(a.order);
  for (long i = 0; i <= a.order; ++i)
    for (long j = 0; i + j <= a.order; ++j) r.at(i, j) = s * a.at(i, j);
  return r;
}

QSeries2 qs2_div(const QSeries2& num, const QSeries2& den) {
  require_same_order(num.order, den.order, "qs2_div");
  if (den.at(0, 0) == 0)
    throw input_error("qs2_div: denominator is not a unit");
  const long N = num.order;
  QSeries2 q(N), rem = num;
  // peel off one homogeneous layer of the quotient at a time
  for (long d = 0; d <= N; ++d)
    for (long i = 0; i <= d; ++i) {
      const long j = d - i;
      const mpq_class qc = rem.at(i, j) / den.at(0, 0);
      q.at(i, j) = qc;
      if (qc == 0) continue;
      for (long di = 0; i + di <= N; ++di)
        for (long dj = 0; i + di + j + dj <= N; ++dj)
          rem.at(i + di, j + dj) -= qc * den.at(di, dj);
    }
  return q;
}

QSeries2 qs2_reduce_mod_p(const QSeries2& a, long p) {
  if (!is_prime(p)) throw input_error("modulus must be prime");
  QSeries2 r(a.order);
  for (long i = 0; i <= a.order; ++i)
    for (long j = 0; i + j <= a.order; ++j) r.at(i, j) = mod_p_of(a.at(i, j), p);
  return r;
}

// --- formal group laws ------------------------------------------------------

FormalGroupLaw fgl_additive(long order) {
  if (order < 2) throw input_error("formal group law needs order >= 2");
  FormalGroupLaw L{"additive", qs2_add(qs2_x(order), qs2_y(order))};
  return L;
}

FormalGroupLaw fgl_multiplicative(long order) {
  if (order < 2) throw input_error("formal group law needs order >= 2");
  QSeries2 F = qs2_add(qs2_x(order), qs2_y(order));
  F = qs2_add(F, qs2_mul(qs2_x(order), qs2_y(order)));
  return FormalGroupLaw{"multiplicative", std::move(F)};
}

FormalGroupLaw fgl_torus(long order) {
  if (order < 2) throw input_error("formal group law needs order >= 2");
  const QSeries2 xy = qs2_mul(qs2_x(order), qs2_y(order));
  QSeries2 den(order);
  den.at(0, 0) = 1;
  den = qs2_sub(den, xy);
  return FormalGroupLaw{
      "torus", qs2_div(qs2_add(qs2_x(order), qs2_y(order)), den)};
}

std::vector<std::string> fgl_verify(const FormalGroupLaw& L) {
  const long N = L.order();
  if (N < 2) throw input_error("formal group law needs order >= 2");
  std::vector<std::string> bad;
  for (long i = 0; i <= N; ++i) {
    if (L.F.at(i, 0) != (i == 1 ? 1 : 0)) {
      bad.push_back("right unit fails at degree " + std::to_string(i));
      break;
    }
  }
  for (long j = 0; j <= N; ++j) {
    if (L.F.at(0, j) != (j == 1 ? 1 : 0)) {
      bad.push_back("left unit fails at degree " + std::to_string(j));
      break;
    }
  }
  for (long i = 0; i <= N && bad.size() < 8; ++i)
    for (long j = i + 1; i + j <= N; ++j)
      if (L.F.at(i, j) != L.F.at(j, i)) {
        bad.push_back("commutativity fails at (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
        i = N + 1;
        break;
      }
  const QSeries3 X = qs3_var(N, 0), Y = qs3_var(N, 1), Z = qs3_var(N, 2);
  const QSeries3 XY = qs3_apply(L.F, X, Y);
  const QSeries3 YZ = qs3_apply(L.F, Y, Z);
  const QSeries3 lhs = qs3_apply(L.F, XY, Z);
  const QSeries3 rhs = qs3_apply(L.F, X, YZ);
  for (std::size_t t = 0; t < lhs.c.size(); ++t)
    if (lhs.c[t] != rhs.c[t]) {
      bad.push_back("associativity fails within order " + std::to_string(N));
      break;
    }
  return bad;
}

QSeries fgl_apply(const FormalGroupLaw& L, const QSeries& a,
                      const QSeries& b) {
  const long N = L.order();
  require_same_order(a.order, N, "fgl_apply");
  require_same_order(b.order, N, "fgl_apply");
  if (a.c[0] != 0 || b.c[0] != 0)
    throw input_error("fgl_apply: arguments must vanish at zero");
  std::vector<QSeries> bpow;
  bpow.push_back(QSeries(N));
  bpow[0].c[0] = 1;
  for (long j = 1; j <= N; ++j) bpow.push_back(qs_mul(bpow.back(), b));
  QSeries r(N);
  for (long i = N; i >= 0; --i) {
    r = qs_mul(r, a);
    for (long j = 0; i + j <= N; ++j) {
      const mpq_class& f = L.F.at(i, j);
      if (f == 0) continue;
      for (long t = 0; t <= N; ++t) r.c[t] += f * bpow[j].c[t];
    }
  }
  return r;
}

QSeries2 fgl_apply2(const FormalGroupLaw& L, const QSeries& a,
                        const QSeries& b) {
  const long N = L.order();
  require_same_order(a.order, N, "fgl_apply2");
  require_same_order(b.order, N, "fgl_apply2");
  if (a.c[0] != 0 || b.c[0] != 0)
    throw input_error("fgl_apply2: arguments must vanish at zero");
  // lift a(x) and b(y) to two-variable series, then Horner as above
  QSeries2 A(N), B(N);
  for (long t = 0; t <= N; ++t) {
    A.at(t, 0) = a.c[t];
    B.at(0, t) = b.c[t];
  }
  std::vector<QSeries2> bpow;
  bpow.push_back(QSeries2(N));
  bpow[0].at(0, 0) = 1;
  for (long j = 1; j <= N; ++j) bpow.push_back(qs2_mul(bpow.back(), B));
  QSeries2 r(N);
  for (long i = N; i >= 0; --i) {
    r = qs2_mul(r, A);
    for (long j = 0; i + j <= N; ++j) {
      const mpq_class& f = L.F.at(i, j);
      if (f == 0) continue;
      for (long u = 0; u <= N; ++u)
        for (long v = 0; u + v <= N; ++v) r.at(u, v) += f * bpow[j].at(u, v);
    }
  }
  return r;
}

QSeries p_power_series(const FormalGroupLaw& L, long p,
                           bool reduce_mod_p) {
  if (!is_prime(p)) throw input_error("p must be prime");
  if (L.order() < p + 1)
    throw input_error("truncation order must be at least p + 1");
  QSeries z = qs_var(L.order()), r = z;
  for (long k = 2; k <= p; ++k) r = fgl_apply(L, r, z);
  return reduce_mod_p ? qs_reduce_mod_p(r, p) : r;
}

// --- elliptic curves --------------------------------------------------------

mpz_class WeierstrassCurve::discriminant() const {
  const mpz_class b2 = a1 * a1 + 4 * a2;
  const mpz_class b4 = 2 * a4 + a1 * a3;
  const mpz_class b6 = a3 * a3 + 4 * a6;
  const mpz_class b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 +
                       a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

FormalGroupLaw ec_formal_group(const WeierstrassCurve& E, long order) {
  if (order < 2 || order > 50)
    throw input_error("elliptic formal group order must be in [2, 50]");
  if (E.discriminant() == 0) throw input_error("curve is singular");
  const mpq_class a1(E.a1), a2(E.a2), a3(E.a3), a4(E.a4), a6(E.a6);
  const long N = order;
  const long M = N + 3;  // one-variable working order for w(z)

  // w(z) = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3, solved by
  // iteration from w = z^3; each pass extends the agreement by one order.
  QSeries z = qs_var(M), z2 = qs_mul(z, z), z3 = qs_mul(z2, z);
  QSeries w = z3;
  for (long pass = 0; pass <= M; ++pass) {
    QSeries w2 = qs_mul(w, w);
    QSeries next = z3;
    next = qs_add(next, qs_scale(a1, qs_mul(z, w)));
    next = qs_add(next, qs_scale(a2, qs_mul(z2, w)));
    next = qs_add(next, qs_scale(a3, w2));
    next = qs_add(next, qs_scale(a4, qs_mul(z, w2)));
    next = qs_add(next, qs_scale(a6, qs_mul(w2, w)));
    if (next.c == w.c) break;
    w = std::move(next);
  }

  // chord slope lambda(z1, z2) = (w(z2) - w(z1)) / (z2 - z1) as the divided
  // difference sum_n A_n (z1^{n-1} + z1^{n-2} z2 + ... + z2^{n-1})
  QSeries2 lam(N);
  for (long n = 1; n <= std::min(M, N + 1); ++n) {
    if (w.c[n] == 0) continue;
    for (long a = 0; a <= n - 1; ++a) {
      const long b = n - 1 - a;
      if (a + b <= N) lam.at(a, b) += w.c[n];
    }
  }
  // nu = w(z1) - lambda z1
  QSeries2 w1(N);
  for (long n = 0; n <= std::min(M, N); ++n) w1.at(n, 0) = w.c[n];
  const QSeries2 nu = qs2_sub(w1, qs2_mul(lam, qs2_x(N)));

  // substituting the chord w = lambda z + nu into the Weierstrass relation
  // leaves a cubic in z whose roots are z1, z2 and the third intersection;
  // the z^3 and z^2 coefficients give the root sum.
  const QSeries2 lam2 = qs2_mul(lam, lam);
  QSeries2 alpha(N);
  alpha.at(0, 0) = 1;
  alpha = qs2_add(alpha, qs2_scale(a2, lam));
  alpha = qs2_add(alpha, qs2_scale(a4, lam2));
  alpha = qs2_add(alpha, qs2_scale(a6, qs2_mul(lam2, lam)));
  QSeries2 beta = qs2_scale(a1, lam);
  beta = qs2_add(beta, qs2_scale(a2, nu));
  beta = qs2_add(beta, qs2_scale(a3, lam2));
  beta = qs2_add(beta, qs2_scale(2 * a4, qs2_mul(lam, nu)));
  beta = qs2_add(beta, qs2_scale(3 * a6, qs2_mul(lam2, nu)));
  QSeries2 z3rd = qs2_sub(
      qs2_sub(qs2_scale(-1, qs2_x(N)), qs2_y(N)), qs2_div(beta, alpha));

  // formal inverse i(z) = -z / (1 - a1 z - a3 w(z)), then F = i(z3rd)
  QSeries wN(N);
  for (long n = 0; n <= std::min(M, N); ++n) wN.c[n] = w.c[n];
  QSeries den(N);
  den.c[0] = 1;
  den = qs_sub(den, qs_scale(a1, qs_var(N)));
  den = qs_sub(den, qs_scale(a3, wN));
  const QSeries inv = qs_div(qs_scale(-1, qs_var(N)), den);

  // substitute the two-variable root into the one-variable inverse
  QSeries2 F(N);
  for (long i = N; i >= 0; --i) {
    F = qs2_mul(F, z3rd);
    F.at(0, 0) += inv.c[i];
  }

  for (long i = 0; i <= N; ++i)
    for (long j = 0; i + j <= N; ++j)
      if (F.at(i, j).get_den() != 1)
        throw internal_error(
            "elliptic formal group produced a non-integral coefficient");
  return FormalGroupLaw{"elliptic", std::move(F)};
}

long ec_point_count(const WeierstrassCurve& E, long p) {
  if (!is_prime(p)) throw input_error("p must be prime");
  auto red = [&](const mpz_class& a) {
    long r = mpz_class(a % p).get_si();
    return r < 0 ? r + p : r;
  };
  const long a1 = red(E.a1), a2 = red(E.a2), a3 = red(E.a3), a4 = red(E.a4),
             a6 = red(E.a6);
  long count = 1;  // point at infinity
  for (long x = 0; x < p; ++x) {
    const long rhs = ((x * x % p) * x % p + a2 * x % p * x % p + a4 * x % p +
                      a6) % p;
    for (long y = 0; y < p; ++y) {
      const long lhs = (y * y % p + a1 * x % p * y % p + a3 * y % p) % p;
      if (lhs == rhs) ++count;
    }
  }
  return count;
}

long hasse_invariant(const WeierstrassCurve& E, long p) {
  if (!is_prime(p)) throw input_error("p must be prime");
  if (E.discriminant() % p == 0)
    throw input_error("bad reduction at " + std::to_string(p));
  const FormalGroupLaw F = ec_formal_group(E, p + 1);
  const QSeries mp = p_power_series(F, p, /*reduce_mod_p=*/true);
  for (long i = 0; i < p; ++i)
    if (mp.c[i] != 0)
      throw internal_error("multiplication by p is not divisible enough");
  return mp.c[p].get_num().get_si();
}

}  // namespace mcpower
