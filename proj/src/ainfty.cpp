#include "mcpower/ainfty.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mcpower {

namespace {

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::string tuple_str(const std::vector<int>& t) {
  std::string s = "[";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + "]";
}

// Odometer over all length-d tuples of basis indices.
bool next_tuple(std::vector<int>& t, int dim) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < dim) return true;
    t[i] = 0;
  }
  return false;
}

}  // namespace

void AInftyAlgebra::ensure_arity(int d) {
  while (arity() < d) {
    int e = arity() + 1;
    mu.emplace_back(ipow(dim(), e) * dim(), 0L);
  }
}

void AInftyAlgebra::set_mu(int d, const std::vector<int>& in, int out, long coeff) {
  if (d < 1 || static_cast<int>(in.size()) != d)
    throw input_error("set_mu: arity mismatch");
  int want = 2 - d;
  for (int b : in) {
    if (b < 0 || b >= dim()) throw input_error("set_mu: basis index out of range");
    want += deg[b];
  }
  if (out < 0 || out >= dim()) throw input_error("set_mu: basis index out of range");
  if (coeff != 0 && deg[out] != want)
    throw input_error("set_mu: entry violates the grading of mu^" + std::to_string(d));
  ensure_arity(d);
  mu[d - 1][tuple_code(in.data(), d) * dim() + out] = red(coeff);
}

AInftyAlgebra AInftyAlgebra::exterior(long p) {
  // Basis 1, a, b, ab of the exterior ring on two degree-1 generators;
  // mu^2(x, y) = (-1)^{|x|} x y, mu^1 = 0.
  AInftyAlgebra A;
  A.name = "exterior";
  A.p = p;
  A.deg = {0, 1, 1, 2};
  A.unit = {1, 0, 0, 0};
  A.ensure_arity(2);
  for (int x = 0; x < 4; ++x) {
    A.set_mu(2, {0, x}, x, 1);
    if (x != 0) A.set_mu(2, {x, 0}, x, A.deg[x] % 2 == 0 ? 1 : -1);
  }
  A.set_mu(2, {1, 2}, 3, -1);  // (-1)^{|a|} a b
  A.set_mu(2, {2, 1}, 3, 1);   // (-1)^{|b|} b a = (-1)(-ab)
  return A;
}

AInftyAlgebra AInftyAlgebra::truncated_poly(long p, int k) {
  if (k < 2) throw input_error("truncated_poly: need k >= 2");
  AInftyAlgebra A;
  A.name = "truncpoly" + std::to_string(k);
  A.p = p;
  A.deg.resize(k);
  for (int i = 0; i < k; ++i) A.deg[i] = i;
  A.unit.assign(k, 0);
  A.unit[0] = 1;
  A.ensure_arity(2);
  for (int i = 0; i < k; ++i)
    for (int j = 0; i + j < k; ++j) A.set_mu(2, {i, j}, i + j, i % 2 == 0 ? 1 : -1);
  return A;
}

AInftyAlgebra AInftyAlgebra::interval(long p) {
  // u, u~ idempotent in degree 0, v in degree 1; d u = v, d u~ = -v, and the
  // differential is -mu^1.  Defined over Z; p > 0 reduces the coefficients.
  AInftyAlgebra A;
  A.name = "interval";
  A.p = p;
  A.deg = {0, 0, 1};
  A.unit = {1, 1, 0};
  A.ensure_arity(2);
  const int u = 0, ut = 1, v = 2;
  A.set_mu(1, {u}, v, -1);
  A.set_mu(1, {ut}, v, 1);
  A.set_mu(2, {u, u}, u, 1);
  A.set_mu(2, {ut, ut}, ut, 1);
  A.set_mu(2, {u, v}, v, 1);
  A.set_mu(2, {v, ut}, v, -1);  // (-1)^{|v|} v u~
  return A;
}

AInftyAlgebra AInftyAlgebra::registered(const std::string& name, long p) {
  if (name == "exterior") return exterior(p);
  if (name == "truncpoly2") return truncated_poly(p, 2);
  if (name == "truncpoly3") return truncated_poly(p, 3);
  if (name == "truncpoly4") return truncated_poly(p, 4);
  if (name == "interval") return interval(p);
  throw input_error("unknown algebra '" + name + "'");
}

AInftyAlgebra AInftyAlgebra::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error("invalid JSON in '" + path + "': " + e.what());
  }
  try {
    AInftyAlgebra A;
    A.name = j.value("name", "custom");
    A.p = j.value("p", 0L);
    if (A.p < 0) throw input_error("p must be >= 0");
    A.deg = j.at("degrees").get<std::vector<int>>();
    if (A.deg.empty()) throw input_error("empty basis");
    if (j.contains("unit")) {
      A.unit = j.at("unit").get<std::vector<long>>();
      if (A.unit.size() != A.deg.size()) throw input_error("unit length != dim");
    }
    for (const auto& t : j.at("terms")) {
      auto in_t = t.at("in").get<std::vector<int>>();
      A.set_mu(static_cast<int>(in_t.size()), in_t, t.at("out").get<int>(),
               t.at("c").get<long>());
    }
    return A;
  } catch (const input_error&) {
    throw;
  } catch (const std::exception& e) {
    throw input_error("bad algebra description in '" + path + "': " + e.what());
  }
}

std::vector<std::string> check_a_infinity(const AInftyAlgebra& A, int dmax) {
  std::vector<std::string> bad;
  const int n = A.dim();
  for (int d = 1; d <= dmax; ++d) {
    std::vector<int> t(d, 0);
    do {
      std::vector<long> acc(n, 0);
      // Reduced-degree prefix sums of the inputs.
      std::vector<int> pre(d + 1, 0);
      for (int i = 0; i < d; ++i) pre[i + 1] = pre[i] + A.rdeg(t[i]);
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i + j <= d; ++i) {
          long sign = pre[i] % 2 == 0 ? 1 : -1;
          for (int b = 0; b < n; ++b) {
            long inner = A.mu_entry(j, t.data() + i, b);
            if (inner == 0) continue;
            std::vector<int> outer;
            outer.insert(outer.end(), t.begin(), t.begin() + i);
            outer.push_back(b);
            outer.insert(outer.end(), t.begin() + i + j, t.end());
            for (int out = 0; out < n; ++out) {
              long o = A.mu_entry(d - j + 1, outer.data(), out);
              if (o) acc[out] += sign * inner * o;
            }
          }
        }
      for (int out = 0; out < n; ++out)
        if (A.red(acc[out]) != 0)
          bad.push_back("structure equation fails at d=" + std::to_string(d) +
                        " inputs " + tuple_str(t) + " basis " + std::to_string(out) +
                        ": " + std::to_string(A.red(acc[out])));
    } while (next_tuple(t, n));
  }
  return bad;
}

std::vector<std::string> check_strict_unit(const AInftyAlgebra& A) {
  std::vector<std::string> bad;
  if (A.unit.empty()) return bad;
  const int n = A.dim();
  for (int x = 0; x < n; ++x)
    for (int out = 0; out < n; ++out) {
      long left = 0, right = 0;
      for (int b = 0; b < n; ++b) {
        if (A.unit[b] == 0) continue;
        int lt[2] = {b, x}, rt[2] = {x, b};
        left += A.unit[b] * A.mu_entry(2, lt, out);
        right += A.unit[b] * A.mu_entry(2, rt, out);
      }
      long wl = (out == x) ? 1 : 0;
      long wr = (out == x) ? (A.deg[x] % 2 == 0 ? 1 : -1) : 0;
      if (A.red(left - wl) != 0)
        bad.push_back("mu^2(e, x) != x at basis " + std::to_string(x));
      if (A.red(right - wr) != 0)
        bad.push_back("mu^2(x, e) != (-1)^{|x|} x at basis " + std::to_string(x));
    }
  for (int d = 3; d <= A.arity(); ++d)
    for (int pos = 0; pos < d; ++pos) {
      std::vector<int> rest(d - 1, 0);
      do {
        for (int out = 0; out < n; ++out) {
          long acc = 0;
          for (int b = 0; b < n; ++b) {
            if (A.unit[b] == 0) continue;
            std::vector<int> full(rest.begin(), rest.begin() + pos);
            full.push_back(b);
            full.insert(full.end(), rest.begin() + pos, rest.end());
            acc += A.unit[b] * A.mu_entry(d, full.data(), out);
          }
          if (A.red(acc) != 0)
            bad.push_back("mu^" + std::to_string(d) + " with a unit slot at " +
                          std::to_string(pos) + " is nonzero");
        }
      } while (next_tuple(rest, n));
    }
  return bad;
}

void AInftyMorphism::ensure_arity(int d) {
  while (arity() < d) {
    int e = arity() + 1;
    f.emplace_back(ipow(src->dim(), e) * dst->dim(), 0L);
  }
}

void AInftyMorphism::set_f(int d, const std::vector<int>& in, int out, long coeff) {
  if (d < 1 || static_cast<int>(in.size()) != d)
    throw input_error("set_f: arity mismatch");
  int want = 1 - d;
  for (int b : in) want += src->deg[b];
  if (coeff != 0 && dst->deg[out] != want)
    throw input_error("set_f: entry violates the grading of F^" + std::to_string(d));
  ensure_arity(d);
  long code = 0;
  for (int i = 0; i < d; ++i) code = code * src->dim() + in[i];
  f[d - 1][code * dst->dim() + out] = dst->red(coeff);
}

namespace {

// LHS of the homomorphism equation: collect all compositions
// mu_B^r(F^{s_1}(..), .., F^{s_r}(..)) over ordered compositions of d.
void morphism_lhs_rec(const AInftyMorphism& F, const std::vector<int>& t, int from,
                      std::vector<int>& blocks, std::vector<long>& acc) {
  const AInftyAlgebra& B = *F.dst;
  int d = static_cast<int>(t.size());
  if (from == d) {
    int r = static_cast<int>(blocks.size());
    if (r < 1 || r > B.arity()) return;
    // Sum over intermediate basis elements of each block image.
    std::vector<int> mid(r, 0);
    do {
      long coeff = 1;
      int pos = 0;
      for (int k = 0; k < r && coeff != 0; ++k) {
        coeff *= F.f_entry(blocks[k], t.data() + pos, mid[k]);
        pos += blocks[k];
      }
      if (coeff == 0) continue;
      for (int out = 0; out < B.dim(); ++out) {
        long o = B.mu_entry(r, mid.data(), out);
        if (o) acc[out] += coeff * o;
      }
    } while (next_tuple(mid, B.dim()));
    return;
  }
  for (int s = 1; from + s <= d; ++s) {
    blocks.push_back(s);
    morphism_lhs_rec(F, t, from + s, blocks, acc);
    blocks.pop_back();
  }
}

}  // namespace

std::vector<std::string> check_a_infinity_morphism(const AInftyMorphism& F, int dmax) {
  std::vector<std::string> bad;
  const AInftyAlgebra& A = *F.src;
  const AInftyAlgebra& B = *F.dst;
  for (int d = 1; d <= dmax; ++d) {
    std::vector<int> t(d, 0);
    do {
      std::vector<long> lhs(B.dim(), 0), rhs(B.dim(), 0);
      std::vector<int> blocks;
      morphism_lhs_rec(F, t, 0, blocks, lhs);
      std::vector<int> pre(d + 1, 0);
      for (int i = 0; i < d; ++i) pre[i + 1] = pre[i] + A.rdeg(t[i]);
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i + j <= d; ++i) {
          long sign = pre[i] % 2 == 0 ? 1 : -1;
          for (int b = 0; b < A.dim(); ++b) {
            long inner = A.mu_entry(j, t.data() + i, b);
            if (inner == 0) continue;
            std::vector<int> outer;
            outer.insert(outer.end(), t.begin(), t.begin() + i);
            outer.push_back(b);
            outer.insert(outer.end(), t.begin() + i + j, t.end());
            for (int out = 0; out < B.dim(); ++out) {
              long o = F.f_entry(d - j + 1, outer.data(), out);
              if (o) rhs[out] += sign * inner * o;
            }
          }
        }
      for (int out = 0; out < B.dim(); ++out)
        if (B.red(lhs[out] - rhs[out]) != 0)
          bad.push_back("homomorphism equation fails at d=" + std::to_string(d) +
                        " inputs " + tuple_str(t) + " basis " + std::to_string(out));
    } while (next_tuple(t, A.dim()));
  }
  return bad;
}

AlgElt alg_zero(const AInftyAlgebra& A, int m) {
  return AlgElt(A.dim(), NilPoly(A.p, m));
}

bool alg_is_zero(const AlgElt& x) {
  for (const NilPoly& v : x)
    if (!v.is_zero()) return false;
  return true;
}

AlgElt alg_mu(const AInftyAlgebra& A, const std::vector<const AlgElt*>& args) {
  if (args.empty()) throw input_error("alg_mu: need at least one argument");
  const int m = (*args[0])[0].m;
  AlgElt out = alg_zero(A, m);
  const int d = static_cast<int>(args.size());
  if (d > A.arity()) return out;
  std::vector<int> t(d, 0);
  do {
    NilPoly prod = NilPoly::constant(A.p, m, 1);
    bool zero = false;
    for (int i = 0; i < d && !zero; ++i) {
      const NilPoly& v = (*args[i])[t[i]];
      if (v.is_zero()) {
        zero = true;
        break;
      }
      prod = prod * v;
    }
    if (zero || prod.is_zero()) continue;
    for (int b = 0; b < A.dim(); ++b) {
      long c = A.mu_entry(d, t.data(), b);
      if (c) out[b] += prod * c;
    }
  } while (next_tuple(t, A.dim()));
  return out;
}

AlgElt mc_defect(const AInftyAlgebra& A, const AlgElt& g) {
  for (const NilPoly& v : g)
    if (!v.in_ideal())
      throw input_error("Maurer-Cartan element must lie in the adic ideal");
  const int m = g[0].m;
  AlgElt out = alg_zero(A, m);
  for (int d = 1; d <= A.arity(); ++d) {
    std::vector<const AlgElt*> args(d, &g);
    AlgElt term = alg_mu(A, args);
    for (int b = 0; b < A.dim(); ++b) out[b] += term[b];
  }
  return out;
}

bool mc_check(const AInftyAlgebra& A, const AlgElt& g) {
  return alg_is_zero(mc_defect(A, g));
}

AlgElt mc_equiv_defect(const AInftyAlgebra& A, const AlgElt& g, const AlgElt& g2,
                       const AlgElt& h) {
  const int m = g[0].m;
  AlgElt out = alg_zero(A, m);
  for (int r = 0; r + 1 <= A.arity(); ++r)
    for (int s = 0; r + s + 1 <= A.arity(); ++s) {
      std::vector<const AlgElt*> args;
      for (int i = 0; i < r; ++i) args.push_back(&g);
      args.push_back(&h);
      for (int i = 0; i < s; ++i) args.push_back(&g2);
      AlgElt term = alg_mu(A, args);
      for (int b = 0; b < A.dim(); ++b) out[b] += term[b];
    }
  for (int b = 0; b < A.dim(); ++b) out[b] -= g[b] - g2[b];
  return out;
}

AlgElt mc_equiv_defect_unital(const AInftyAlgebra& A, const AlgElt& g,
                              const AlgElt& g2, const AlgElt& h) {
  if (A.unit.empty()) throw input_error("unital equivalence needs a strict unit");
  const int m = g[0].m;
  AlgElt gu = h;
  for (int b = 0; b < A.dim(); ++b)
    gu[b] += NilPoly::constant(A.p, m, A.unit[b]);
  AlgElt out = alg_zero(A, m);
  for (int r = 0; r + 1 <= A.arity(); ++r)
    for (int s = 0; r + s + 1 <= A.arity(); ++s) {
      std::vector<const AlgElt*> args;
      for (int i = 0; i < r; ++i) args.push_back(&g);
      args.push_back(&gu);
      for (int i = 0; i < s; ++i) args.push_back(&g2);
      AlgElt term = alg_mu(A, args);
      for (int b = 0; b < A.dim(); ++b) out[b] += term[b];
    }
  return out;
}

AlgElt mc_solve_equivalent(const AInftyAlgebra& A, const AlgElt& g, const AlgElt& h) {
  for (const NilPoly& v : h)
    if (!v.in_ideal()) throw input_error("homotopy must lie in the adic ideal");
  const int m = g[0].m;
  AlgElt g2 = g;
  for (int it = 0; it <= m; ++it) {
    AlgElt next = g;
    for (int r = 0; r + 1 <= A.arity(); ++r)
      for (int s = 0; r + s + 1 <= A.arity(); ++s) {
        std::vector<const AlgElt*> args;
        for (int i = 0; i < r; ++i) args.push_back(&g);
        args.push_back(&h);
        for (int i = 0; i < s; ++i) args.push_back(&g2);
        AlgElt term = alg_mu(A, args);
        for (int b = 0; b < A.dim(); ++b) next[b] -= term[b];
      }
    g2 = next;
  }
  return g2;
}

AlgElt mc_pushforward(const AInftyMorphism& F, const AlgElt& g) {
  const AInftyAlgebra& A = *F.src;
  const AInftyAlgebra& B = *F.dst;
  const int m = g[0].m;
  AlgElt out = alg_zero(B, m);
  for (int d = 1; d <= F.arity(); ++d) {
    std::vector<int> t(d, 0);
    do {
      NilPoly prod = NilPoly::constant(A.p, m, 1);
      bool zero = false;
      for (int i = 0; i < d; ++i) {
        if (g[t[i]].is_zero()) {
          zero = true;
          break;
        }
        prod = prod * g[t[i]];
      }
      if (zero || prod.is_zero()) continue;
      for (int b = 0; b < B.dim(); ++b) {
        long c = F.f_entry(d, t.data(), b);
        if (c) out[b] += prod * c;
      }
    } while (next_tuple(t, A.dim()));
  }
  return out;
}

}  // namespace mcpower
