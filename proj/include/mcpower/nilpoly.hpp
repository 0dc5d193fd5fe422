#pragma once

#include <array>
#include <string>

#include "mcpower/scalar.hpp"

namespace mcpower {

// Compact truncated polynomial \sum_k c_k q^k in Z[q]/(q^{m+1}, p), used as
// the coefficient object in the deformation-theory hot loops (p = 0 means
// integer coefficients).  Plain value type; all operations reduce mod p.
struct NilPoly {
  static constexpr int kMaxNil = 7;

  long p = 0;
  int m = 0;
  std::array<long, kMaxNil + 1> c{};

  NilPoly() = default;
  NilPoly(long p_, int m_) : p(p_), m(m_) {
    if (m_ < 0 || m_ > kMaxNil) throw input_error("NilPoly: nilpotency out of range");
  }

  static NilPoly constant(long p, int m, long v) {
    NilPoly r(p, m);
    r.c[0] = r.red(v);
    return r;
  }
  static NilPoly monomial(long p, int m, int k, long v) {
    NilPoly r(p, m);
    if (k < 0 || k > NilPoly::kMaxNil) throw input_error("NilPoly: bad exponent");
    if (k <= m) r.c[k] = r.red(v);
    return r;
  }

  long red(long v) const {
    if (p == 0) return v;
    long r = v % p;
    return r < 0 ? r + p : r;
  }

  bool is_zero() const {
    for (int k = 0; k <= m; ++k)
      if (c[k] != 0) return false;
    return true;
  }

  bool operator==(const NilPoly& o) const {
    for (int k = 0; k <= (m > o.m ? m : o.m); ++k)
      if ((k <= m ? c[k] : 0) != (k <= o.m ? o.c[k] : 0)) return false;
    return true;
  }

  NilPoly& operator+=(const NilPoly& o) {
    for (int k = 0; k <= m && k <= o.m; ++k) c[k] = red(c[k] + o.c[k]);
    return *this;
  }
  NilPoly& operator-=(const NilPoly& o) {
    for (int k = 0; k <= m && k <= o.m; ++k) c[k] = red(c[k] - o.c[k]);
    return *this;
  }
  NilPoly operator+(const NilPoly& o) const {
    NilPoly r = *this;
    r += o;
    return r;
  }
  NilPoly operator-(const NilPoly& o) const {
    NilPoly r = *this;
    r -= o;
    return r;
  }
  NilPoly operator-() const {
    NilPoly r = *this;
    for (int k = 0; k <= m; ++k) r.c[k] = red(-c[k]);
    return r;
  }
  NilPoly operator*(const NilPoly& o) const {
    NilPoly r(p, m);
    for (int i = 0; i <= m; ++i) {
      if (c[i] == 0) continue;
      for (int j = 0; i + j <= m && j <= o.m; ++j) {
        if (o.c[j] == 0) continue;
        r.c[i + j] = red(r.c[i + j] + c[i] * o.c[j]);
      }
    }
    return r;
  }
  NilPoly operator*(long v) const {
    NilPoly r(p, m);
    for (int k = 0; k <= m; ++k) r.c[k] = red(c[k] * red(v));
    return r;
  }

  // True when every coefficient of positive q-power vanishes.
  bool is_constant() const {
    for (int k = 1; k <= m; ++k)
      if (c[k] != 0) return false;
    return true;
  }
  // True when the constant coefficient vanishes (element of the adic ideal).
  bool in_ideal() const { return c[0] == 0; }

  // Smallest k with c[k] != 0, or m + 1 for the zero polynomial.
  int valuation() const {
    for (int k = 0; k <= m; ++k)
      if (c[k] != 0) return k;
    return m + 1;
  }

  // Coefficient of q^k as a standalone constant.
  NilPoly coefficient(int k) const {
    return constant(p, m, k >= 0 && k <= m ? c[k] : 0);
  }
  // Multiplication by q^k.
  NilPoly shifted(int k) const {
    NilPoly r(p, m);
    for (int i = 0; i + k <= m; ++i) r.c[i + k] = c[i];
    return r;
  }

  std::string str() const {
    std::string s;
    for (int k = 0; k <= m; ++k) {
      if (c[k] == 0) continue;
      if (!s.empty()) s += " + ";
      s += std::to_string(c[k]);
      if (k > 0) s += "*q^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }
};

}  // namespace mcpower
