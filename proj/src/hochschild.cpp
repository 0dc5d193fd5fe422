#include "mcpower/hochschild.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "mcpower/signs.hpp"
#include "mcpower/trees.hpp"

namespace mcpower {

namespace {

long ipow_l(int b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int parity(long x) { return static_cast<int>(x & 1); }

void decode_tuple(long code, int d, int n, std::vector<int>& t) {
  t.resize(d);
  for (int i = d - 1; i >= 0; --i) {
    t[i] = static_cast<int>(code % n);
    code /= n;
  }
}

void prefix_reduced(const AInftyAlgebra& A, const std::vector<int>& t,
                    std::vector<int>& pre) {
  pre.assign(t.size() + 1, 0);
  for (size_t i = 0; i < t.size(); ++i) pre[i + 1] = pre[i] + A.deg[t[i]] - 1;
}

// Exactness of a sum/elementwise combination.
int combine_exact(int a, int b) { return std::min(a, b); }

}  // namespace

// --- Cochain ----------------------------------------------------------------

Cochain::Cochain(const AInftyAlgebra& alg, int deg_, int max_len_, int m_,
                 int exact)
    : A(&alg), p(alg.p), m(m_), degree(deg_), max_len(max_len_) {
  if (max_len_ < 0) throw input_error("cochain length bound must be >= 0");
  if (m_ < 0 || m_ > NilPoly::kMaxNil)
    throw input_error("nilpotency order out of range");
  exact_len = (exact == kFullSupport)
                  ? kFullSupport
                  : std::max(-1, std::min(exact, max_len_));
  comp.resize(static_cast<size_t>(max_len) + 1);
  long sz = 1;
  for (int j = 0; j <= max_len; ++j) {
    comp[j].assign(static_cast<size_t>(sz) * dim(), NilPoly(p, m));
    sz *= dim();
  }
}

NilPoly Cochain::value(int j, const int* in, int out) const {
  if (j < 0 || j > max_len) return NilPoly(p, m);
  long code = 0;
  for (int i = 0; i < j; ++i) code = code * dim() + in[i];
  return comp[j][code * dim() + out];
}

bool Cochain::is_zero(int up_to_len) const {
  for (int j = 0; j <= std::min(up_to_len, max_len); ++j)
    for (const NilPoly& v : comp[j])
      if (!v.is_zero()) return false;
  return true;
}

bool Cochain::equal(const Cochain& o, int up_to_len) const {
  if (A != o.A) return false;
  const int top = std::min(up_to_len, std::max(max_len, o.max_len));
  for (int j = 0; j <= top; ++j) {
    const long sz = ipow_l(dim(), j) * dim();
    for (long idx = 0; idx < sz; ++idx) {
      const NilPoly x = (j <= max_len) ? comp[j][idx] : NilPoly(p, m);
      const NilPoly y = (j <= o.max_len) ? o.comp[j][idx] : NilPoly(o.p, o.m);
      if (!(x == y)) return false;
    }
  }
  return true;
}

bool Cochain::entry_allowed(int j, long tuple, int out) const {
  long s = degree - j;
  for (int i = 0; i < j; ++i) {
    s += A->deg[tuple % dim()];
    tuple /= dim();
  }
  return A->deg[out] == s;
}

int Cochain::support() const {
  for (int j = max_len; j >= 0; --j)
    for (const NilPoly& v : comp[j])
      if (!v.is_zero()) return j;
  return -1;
}

Cochain Cochain::q_coefficient(int k) const {
  Cochain r(*A, degree, max_len, m, exact_len);
  for (int j = 0; j <= max_len; ++j)
    for (size_t i = 0; i < comp[j].size(); ++i)
      r.comp[j][i] = comp[j][i].coefficient(k);
  return r;
}

Cochain Cochain::q_shifted(int k) const {
  Cochain r(*A, degree, max_len, m, exact_len);
  for (int j = 0; j <= max_len; ++j)
    for (size_t i = 0; i < comp[j].size(); ++i)
      r.comp[j][i] = comp[j][i].shifted(k);
  return r;
}

Cochain Cochain::resized(int new_max_len) const {
  int ex;
  if (exact_len == kFullSupport)
    ex = (support() <= new_max_len) ? kFullSupport : new_max_len;
  else
    ex = std::min(exact_len, new_max_len);
  Cochain r(*A, degree, new_max_len, m, ex);
  for (int j = 0; j <= std::min(max_len, new_max_len); ++j) r.comp[j] = comp[j];
  return r;
}

Cochain Cochain::with_nilpotency(int new_m) const {
  Cochain r(*A, degree, max_len, new_m, exact_len);
  for (int j = 0; j <= max_len; ++j)
    for (size_t i = 0; i < comp[j].size(); ++i) {
      NilPoly v(p, new_m);
      for (int k = 0; k <= std::min(m, new_m); ++k) v.c[k] = comp[j][i].c[k];
      r.comp[j][i] = v;
    }
  return r;
}

bool Cochain::in_ideal() const {
  for (int j = 0; j <= max_len; ++j)
    for (const NilPoly& v : comp[j])
      if (!v.in_ideal()) return false;
  return true;
}

std::string Cochain::str(int up_to_len) const {
  std::ostringstream os;
  std::vector<int> t;
  for (int j = 0; j <= std::min(up_to_len, max_len); ++j) {
    const long rows = ipow_l(dim(), j);
    for (long code = 0; code < rows; ++code)
      for (int o = 0; o < dim(); ++o) {
        const NilPoly& v = comp[j][code * dim() + o];
        if (v.is_zero()) continue;
        decode_tuple(code, j, dim(), t);
        os << "c^" << j << "(";
        for (int i = 0; i < j; ++i) os << (i ? "," : "") << t[i];
        os << ") -> " << o << ": " << v.str() << "\n";
      }
  }
  return os.str();
}

// --- elementwise operations -------------------------------------------------

namespace {

void require_matching(const Cochain& a, const Cochain& b, const char* what) {
  if (a.A != b.A || a.degree != b.degree || a.m != b.m || a.p != b.p)
    throw input_error(std::string(what) +
                      ": cochains must match in algebra, degree and coefficients");
}

}  // namespace

Cochain cc_add(const Cochain& a, const Cochain& b) {
  require_matching(a, b, "cc_add");
  const int W = std::max(a.max_len, b.max_len);
  int exact = combine_exact(a.exact_len, b.exact_len);
  if (exact != Cochain::kFullSupport) exact = std::min(exact, W);
  Cochain r(*a.A, a.degree, W, a.m, exact);
  for (int j = 0; j <= W; ++j)
    for (size_t i = 0; i < r.comp[j].size(); ++i) {
      NilPoly v(a.p, a.m);
      if (j <= a.max_len) v += a.comp[j][i];
      if (j <= b.max_len) v += b.comp[j][i];
      r.comp[j][i] = v;
    }
  return r;
}

Cochain cc_sub(const Cochain& a, const Cochain& b) {
  return cc_add(a, cc_scale(b, -1));
}

Cochain cc_scale(const Cochain& a, long s) {
  Cochain r(*a.A, a.degree, a.max_len, a.m, a.exact_len);
  for (int j = 0; j <= a.max_len; ++j)
    for (size_t i = 0; i < a.comp[j].size(); ++i) r.comp[j][i] = a.comp[j][i] * s;
  return r;
}

// --- differential -----------------------------------------------------------

Cochain cc_mu1(const Cochain& c, int out_len) {
  const AInftyAlgebra& A = *c.A;
  const int n = A.dim();
  const int m = c.m;
  const int rc = parity(reduced_degree(c.degree));
  int exact;
  if (c.exact_len == Cochain::kFullSupport) {
    const long sb = std::max(c.support(), 0) + A.arity() - 1;
    exact = (sb <= out_len) ? Cochain::kFullSupport : out_len;
  } else {
    exact = std::min(out_len, c.exact_len);
  }
  Cochain out(A, c.degree + 1, out_len, m, exact);
  std::vector<int> t, pre, outer;
  for (int d = 0; d <= out_len; ++d) {
    const long rows = ipow_l(n, d);
    for (long code = 0; code < rows; ++code) {
      decode_tuple(code, d, n, t);
      prefix_reduced(A, t, pre);
      NilPoly* row = &out.comp[d][code * n];
      // + sum (-1)^{e_i ||c||} mu^{d-j+1}(a_1, .., c^j(..), .., a_d)
      for (int j = 0; j <= std::min(d, c.max_len); ++j)
        for (int i = 0; i + j <= d; ++i) {
          const int r = d - j + 1;
          if (r > A.arity()) continue;
          const int sgn = (rc && parity(pre[i])) ? -1 : 1;
          for (int b = 0; b < n; ++b) {
            const NilPoly cv = c.value(j, t.data() + i, b);
            if (cv.is_zero()) continue;
            outer.clear();
            outer.insert(outer.end(), t.begin(), t.begin() + i);
            outer.push_back(b);
            outer.insert(outer.end(), t.begin() + i + j, t.end());
            for (int o = 0; o < n; ++o) {
              const long mc = A.mu_entry(r, outer.data(), o);
              if (mc != 0) row[o] += cv * (sgn * mc);
            }
          }
        }
      // - sum (-1)^{e_i + ||c||} c^{d-j+1}(a_1, .., mu^j(..), .., a_d)
      for (int j = 1; j <= std::min(d, A.arity()); ++j)
        for (int i = 0; i + j <= d; ++i) {
          const int r = d - j + 1;
          if (r > c.max_len) continue;
          const int sgn = parity(pre[i] + rc) ? 1 : -1;
          for (int b = 0; b < n; ++b) {
            const long mc = A.mu_entry(j, t.data() + i, b);
            if (mc == 0) continue;
            outer.clear();
            outer.insert(outer.end(), t.begin(), t.begin() + i);
            outer.push_back(b);
            outer.insert(outer.end(), t.begin() + i + j, t.end());
            for (int o = 0; o < n; ++o) {
              const NilPoly cv = c.value(r, outer.data(), o);
              if (!cv.is_zero()) row[o] += cv * (sgn * mc);
            }
          }
        }
    }
  }
  return out;
}

// --- insertion operations ---------------------------------------------------

namespace {

// Shared recursion for the insertion operations: scan the d inputs left to
// right; at each step either pass one plain input through to the outer
// operation or consume a block with the next cochain of `blocks`.  The outer
// operation is mu of A (cc_mu, with insertion signs) or a fixed cochain
// (cc_brace, unsigned).
struct InsertCtx {
  const AInftyAlgebra* A = nullptr;
  const std::vector<const Cochain*>* blocks = nullptr;
  const Cochain* outer_cochain = nullptr;  // null: outer operation is mu of A
  bool with_signs = false;
  int d = 0;
  int n = 0;
  int outer_cap = 0;  // max outer arity (A.arity() or outer_cochain->max_len)
  const std::vector<int>* t = nullptr;
  const std::vector<int>* pre = nullptr;
  std::vector<NilPoly>* acc = nullptr;
  std::vector<int> outer;
  std::vector<int> block_parity;
};

void insert_rec(InsertCtx& C, size_t k, int pos, int sgn, const NilPoly& prod) {
  const size_t e = C.blocks->size();
  if (static_cast<long>(C.outer.size()) + static_cast<long>(e - k) > C.outer_cap)
    return;
  if (k == e) {
    if (static_cast<long>(C.outer.size()) + (C.d - pos) > C.outer_cap) return;
    const size_t save = C.outer.size();
    for (int q = pos; q < C.d; ++q) C.outer.push_back((*C.t)[q]);
    const int r = static_cast<int>(C.outer.size());
    if (C.outer_cochain != nullptr) {
      for (int o = 0; o < C.n; ++o) {
        const NilPoly v = C.outer_cochain->value(r, C.outer.data(), o);
        if (!v.is_zero()) (*C.acc)[o] += prod * v * sgn;
      }
    } else {
      for (int o = 0; o < C.n; ++o) {
        const long mc = C.A->mu_entry(r, C.outer.data(), o);
        if (mc != 0) (*C.acc)[o] += prod * (sgn * mc);
      }
    }
    C.outer.resize(save);
    return;
  }
  if (pos < C.d) {
    C.outer.push_back((*C.t)[pos]);
    insert_rec(C, k, pos + 1, sgn, prod);
    C.outer.pop_back();
  }
  const Cochain& ck = *(*C.blocks)[k];
  int s2 = sgn;
  if (C.with_signs && C.block_parity[k] && parity((*C.pre)[pos])) s2 = -sgn;
  for (int j = 0; pos + j <= C.d && j <= ck.max_len; ++j)
    for (int b = 0; b < C.n; ++b) {
      const NilPoly cv = ck.value(j, C.t->data() + pos, b);
      if (cv.is_zero()) continue;
      const NilPoly pr2 = prod * cv;
      if (pr2.is_zero()) continue;
      C.outer.push_back(b);
      insert_rec(C, k + 1, pos + j, s2, pr2);
      C.outer.pop_back();
    }
}

void run_insertions(InsertCtx& C, Cochain& out, int out_len) {
  const int n = C.n;
  std::vector<int> t, pre;
  std::vector<NilPoly> acc(n, NilPoly(out.p, out.m));
  for (int d = 0; d <= out_len; ++d) {
    const long rows = ipow_l(n, d);
    for (long code = 0; code < rows; ++code) {
      decode_tuple(code, d, n, t);
      prefix_reduced(*C.A, t, pre);
      std::fill(acc.begin(), acc.end(), NilPoly(out.p, out.m));
      C.d = d;
      C.t = &t;
      C.pre = &pre;
      C.acc = &acc;
      insert_rec(C, 0, 0, 1, NilPoly::constant(out.p, out.m, 1));
      NilPoly* row = &out.comp[d][code * n];
      for (int o = 0; o < n; ++o)
        if (!acc[o].is_zero()) row[o] += acc[o];
    }
  }
}

void require_same_family(const std::vector<const Cochain*>& cs, const char* what) {
  if (cs.empty()) throw input_error(std::string(what) + ": needs cochains");
  for (const Cochain* c : cs)
    if (c->A != cs[0]->A || c->m != cs[0]->m || c->p != cs[0]->p)
      throw input_error(std::string(what) +
                        ": cochains must share algebra and coefficients");
}

}  // namespace

Cochain cc_mu(const std::vector<const Cochain*>& cs, int out_len) {
  require_same_family(cs, "cc_mu");
  if (cs.size() == 1) return cc_mu1(*cs[0], out_len);
  const AInftyAlgebra& A = *cs[0]->A;
  const int e = static_cast<int>(cs.size());
  int deg = 2 - e;
  for (const Cochain* c : cs) deg += c->degree;
  bool all_full = true;
  int exact = out_len;
  for (const Cochain* c : cs)
    if (c->exact_len != Cochain::kFullSupport) {
      all_full = false;
      exact = combine_exact(exact, c->exact_len);
    }
  if (all_full) {
    long sb = A.arity() - e;
    for (const Cochain* c : cs) sb += std::max(c->support(), 0);
    exact = (sb <= out_len) ? Cochain::kFullSupport : out_len;
  }
  Cochain out(A, deg, out_len, cs[0]->m, exact);
  if (e > A.arity()) return out;  // outer arity is at least e
  InsertCtx C;
  C.A = &A;
  C.blocks = &cs;
  C.outer_cochain = nullptr;
  C.with_signs = true;
  C.n = A.dim();
  C.outer_cap = A.arity();
  C.block_parity.resize(e);
  for (int k = 0; k < e; ++k)
    C.block_parity[k] = parity(reduced_degree(cs[k]->degree));
  run_insertions(C, out, out_len);
  return out;
}

Cochain cc_brace(const Cochain& x, const std::vector<const Cochain*>& ys,
                 int out_len) {
  if (ys.empty()) return x.resized(out_len);
  std::vector<const Cochain*> all = ys;
  all.push_back(&x);
  require_same_family(all, "cc_brace");
  const AInftyAlgebra& A = *x.A;
  const int e = static_cast<int>(ys.size());
  int deg = x.degree;
  for (const Cochain* y : ys) deg += y->degree - 1;
  bool all_full = x.exact_len == Cochain::kFullSupport;
  int exact = (x.exact_len == Cochain::kFullSupport)
                  ? out_len
                  : std::min(out_len, x.exact_len - e);
  for (const Cochain* y : ys)
    if (y->exact_len != Cochain::kFullSupport) {
      all_full = false;
      exact = combine_exact(exact, y->exact_len);
    }
  if (all_full) {
    long sb = x.support();
    for (const Cochain* y : ys) sb += std::max(y->support(), 0) - 1;
    exact = (sb <= out_len) ? Cochain::kFullSupport : out_len;
  }
  Cochain out(A, deg, out_len, x.m, exact);
  InsertCtx C;
  C.A = &A;
  C.blocks = &ys;
  C.outer_cochain = &x;
  C.with_signs = false;
  C.n = A.dim();
  C.outer_cap = x.max_len;
  C.block_parity.assign(e, 0);
  run_insertions(C, out, out_len);
  return out;
}

// --- structure equation of the cochain ring ----------------------------------

std::vector<std::string> check_cc_a_infinity(const std::vector<const Cochain*>& cs,
                                             int out_len) {
  require_same_family(cs, "check_cc_a_infinity");
  const AInftyAlgebra& A = *cs[0]->A;
  const int e = static_cast<int>(cs.size());
  int degsum = 0;
  for (const Cochain* c : cs) degsum += c->degree;
  Cochain defect(A, 3 - e + degsum, out_len, cs[0]->m);
  for (int f = 1; f <= e; ++f)
    for (int i = 0; i + f <= e; ++i) {
      std::vector<const Cochain*> blk(cs.begin() + i, cs.begin() + i + f);
      const Cochain inner = cc_mu(blk, out_len);
      std::vector<const Cochain*> olist;
      for (int k = 0; k < i; ++k) olist.push_back(cs[k]);
      olist.push_back(&inner);
      for (int k = i + f; k < e; ++k) olist.push_back(cs[k]);
      Cochain term = cc_mu(olist, out_len);
      long sg = 0;
      for (int k = 0; k < i; ++k) sg += reduced_degree(cs[k]->degree);
      defect = cc_add(defect, parity(sg) ? cc_scale(term, -1) : term);
    }
  std::vector<std::string> bad;
  const int n = A.dim();
  const int top = std::min(out_len, defect.exact_len);
  std::vector<int> t;
  for (int d = 0; d <= top && bad.size() < 20; ++d) {
    const long rows = ipow_l(n, d);
    for (long code = 0; code < rows && bad.size() < 20; ++code)
      for (int o = 0; o < n; ++o) {
        const NilPoly& v = defect.comp[d][code * n + o];
        if (v.is_zero()) continue;
        decode_tuple(code, d, n, t);
        std::ostringstream os;
        os << "cochain structure equation fails at length " << d << " inputs [";
        for (int i = 0; i < d; ++i) os << (i ? " " : "") << t[i];
        os << "] basis " << o << ": " << v.str();
        bad.push_back(os.str());
      }
  }
  return bad;
}

// --- tree-indexed power operation --------------------------------------------

namespace {

Cochain xi_tree_op(const Cochain& c, const PlanarTree& T, int v, int out_len) {
  std::vector<Cochain> kids;
  kids.reserve(T.children[v].size());
  for (int ch : T.children[v]) kids.push_back(xi_tree_op(c, T, ch, out_len));
  if (kids.empty()) return c.resized(out_len);
  std::vector<const Cochain*> ys;
  ys.reserve(kids.size());
  for (const Cochain& k : kids) ys.push_back(&k);
  return cc_brace(c, ys, out_len);
}

}  // namespace

Cochain cc_xi(const Cochain& c, long prime, int out_len) {
  const AInftyAlgebra& A = *c.A;
  if (prime < 2) throw input_error("power operation needs a prime p >= 2");
  for (long f = 2; f * f <= prime; ++f)
    if (prime % f == 0) throw input_error("power operation needs p prime");
  if (c.p != prime)
    throw input_error("power operation needs coefficients of characteristic p");
  if (prime != 2 && ((c.degree % 2) + 2) % 2 != 1)
    throw input_error("power operation needs odd cochain degree for odd p");
  if (c.max_len < out_len + static_cast<int>(prime) - 1)
    throw input_error("power operation needs the cochain up to length out_len + p - 1");
  const int deg_out =
      static_cast<int>(prime) * c.degree - (static_cast<int>(prime) - 1);
  Cochain out(A, deg_out, out_len, c.m);
  for (const PlanarTree& T : all_planar_trees(static_cast<int>(prime))) {
    const long w = static_cast<long>(
        mpz_fdiv_ui(causal_orderings(T).get_mpz_t(), static_cast<unsigned long>(prime)));
    if (w == 0) continue;
    Cochain op = xi_tree_op(c, T, 0, out_len);
    out = cc_add(out, w == 1 ? op : cc_scale(op, w));
  }
  return out;
}

// --- composition (the formal group law on cochains) --------------------------

namespace {

int compose_exact(const Cochain& g1, const Cochain& g2, int W) {
  constexpr int kF = Cochain::kFullSupport;
  const int mb = std::max(0, g1.m - 1);
  if (g1.exact_len == kF && g2.exact_len == kF) {
    const long s1 = g1.support(), s2 = g2.support();
    long bound;
    if (s1 < 0)
      bound = s2;
    else
      bound = std::max<long>(s2, s1 + static_cast<long>(mb) * std::max<long>(0, s2 - 1));
    return bound <= W ? kF : W;
  }
  const long e1 = (g1.exact_len == kF) ? kF : static_cast<long>(g1.exact_len) - mb;
  const long ex = std::min<long>({static_cast<long>(W),
                                  static_cast<long>(g2.exact_len), e1});
  return static_cast<int>(std::max<long>(ex, -1));
}

void require_composable(const Cochain& g1, const Cochain& g2, const char* what) {
  if (g1.A != g2.A || g1.m != g2.m || g1.p != g2.p)
    throw input_error(std::string(what) + ": mismatched cochains");
  if (g1.degree != 1 || g2.degree != 1)
    throw input_error(std::string(what) + ": inputs must be degree-1 cochains");
  if (!g1.in_ideal() || !g2.in_ideal())
    throw input_error(std::string(what) + ": inputs must lie in the ideal (q)");
}

struct ComposeRec {
  const Cochain* g1 = nullptr;
  const Cochain* g2 = nullptr;
  int d = 0, n = 0, m = 0, s1 = 0, s2 = 0;
  const std::vector<int>* t = nullptr;
  std::vector<NilPoly>* acc = nullptr;
  std::vector<int> outer;

  void rec(int pos, const NilPoly& prod) {
    if (static_cast<int>(outer.size()) > s1) return;
    if (pos == d) {
      const int r = static_cast<int>(outer.size());
      for (int o = 0; o < n; ++o) {
        const NilPoly v = g1->value(r, outer.data(), o);
        if (!v.is_zero()) (*acc)[o] += prod * v;
      }
      // fall through: trailing length-0 blocks are still allowed
    }
    if (pos < d) {
      outer.push_back((*t)[pos]);
      rec(pos + 1, prod);
      outer.pop_back();
    }
    const int jmax = std::min(d - pos, s2);
    for (int j = 0; j <= jmax; ++j)
      for (int b = 0; b < n; ++b) {
        const NilPoly cv = g2->value(j, t->data() + pos, b);
        if (cv.is_zero()) continue;
        const NilPoly pr2 = prod * cv;
        if (pr2.is_zero()) continue;
        if (pr2.valuation() + 1 > m) continue;  // outer g1 value adds >= 1
        outer.push_back(b);
        rec(pos + j, pr2);
        outer.pop_back();
      }
  }
};

}  // namespace

Cochain cc_compose(const Cochain& g1, const Cochain& g2, int out_len) {
  require_composable(g1, g2, "cc_compose");
  const AInftyAlgebra& A = *g1.A;
  const int n = A.dim();
  const int W = out_len >= 0 ? out_len : std::max(g1.max_len, g2.max_len);
  Cochain out = g2.resized(W);
  out.exact_len = compose_exact(g1, g2, W);
  const int S1 = g1.support();
  if (S1 < 0) return out;  // g1 = 0: the composition is g2
  ComposeRec R;
  R.g1 = &g1;
  R.g2 = &g2;
  R.n = n;
  R.m = g1.m;
  R.s1 = S1;
  R.s2 = g2.support();
  std::vector<int> t;
  std::vector<NilPoly> acc(n, NilPoly(g1.p, g1.m));
  for (int d = 0; d <= W; ++d) {
    const long rows = ipow_l(n, d);
    for (long code = 0; code < rows; ++code) {
      decode_tuple(code, d, n, t);
      std::fill(acc.begin(), acc.end(), NilPoly(g1.p, g1.m));
      R.d = d;
      R.t = &t;
      R.acc = &acc;
      R.rec(0, NilPoly::constant(g1.p, g1.m, 1));
      NilPoly* row = &out.comp[d][code * n];
      for (int o = 0; o < n; ++o)
        if (!acc[o].is_zero()) row[o] += acc[o];
    }
  }
  return out;
}

Cochain cc_power(const Cochain& g, int nfold, int out_len) {
  if (nfold < 0) throw input_error("cc_power needs n >= 0");
  const int W = out_len >= 0 ? out_len : g.max_len;
  if (nfold == 0) return Cochain(*g.A, 1, W, g.m);
  Cochain acc = (W == g.max_len) ? g : g.resized(W);
  for (int i = 1; i < nfold; ++i) acc = cc_compose(g, acc, W);
  return acc;
}

Cochain cc_inverse(const Cochain& g) {
  Cochain inv(*g.A, 1, g.max_len, g.m);
  for (int it = 0; it <= g.m; ++it) inv = cc_sub(inv, cc_compose(g, inv));
  return inv;
}

// --- Maurer-Cartan and equivalences on cochains -------------------------------

Cochain cc_mc_defect(const Cochain& g, int out_len) {
  if (g.degree != 1)
    throw input_error("Maurer-Cartan element must be a degree-1 cochain");
  if (!g.in_ideal())
    throw input_error("Maurer-Cartan element must lie in the ideal (q)");
  Cochain defect = cc_mu1(g, out_len);
  const int emax = std::min(g.m, g.A->arity());
  std::vector<const Cochain*> list;
  for (int e = 2; e <= emax; ++e) {
    list.assign(e, &g);
    defect = cc_add(defect, cc_mu(list, out_len));
  }
  return defect;
}

bool cc_mc_check(const Cochain& g, int up_to_len) {
  return cc_mc_defect(g, up_to_len).is_zero(up_to_len);
}

namespace {

void require_homotopy(const Cochain& h, const char* what) {
  if (h.degree != 0)
    throw input_error(std::string(what) + ": homotopy must be a degree-0 cochain");
  if (!h.in_ideal())
    throw input_error(std::string(what) + ": homotopy must lie in the ideal (q)");
}

}  // namespace

Cochain cc_equiv_defect(const Cochain& g, const Cochain& g2, const Cochain& h,
                        int out_len) {
  require_composable(g, g2, "cc_equiv_defect");
  require_homotopy(h, "cc_equiv_defect");
  Cochain defect = cc_sub(g2.resized(out_len), g.resized(out_len));
  const int emax = std::min(g.m, g.A->arity());
  for (int e = 1; e <= emax; ++e)
    for (int r = 0; r < e; ++r) {
      const int s = e - 1 - r;
      std::vector<const Cochain*> list;
      list.insert(list.end(), r, &g);
      list.push_back(&h);
      list.insert(list.end(), s, &g2);
      defect = cc_add(defect, cc_mu(list, out_len));
    }
  return defect;
}

Cochain cc_equiv_defect_unital(const Cochain& g, const Cochain& g2,
                               const Cochain& h, int out_len) {
  require_composable(g, g2, "cc_equiv_defect_unital");
  require_homotopy(h, "cc_equiv_defect_unital");
  const AInftyAlgebra& A = *g.A;
  if (A.unit.empty())
    throw input_error("unital equivalence criterion needs a unital algebra");
  Cochain gu = h;
  for (int b = 0; b < A.dim(); ++b)
    if (A.unit[b] != 0)
      gu.comp[0][b] += NilPoly::constant(h.p, h.m, A.unit[b]);
  Cochain defect(A, 1, out_len, g.m);
  const int emax = std::min(g.m + 1, A.arity());
  for (int e = 1; e <= emax; ++e)
    for (int r = 0; r < e; ++r) {
      const int s = e - 1 - r;
      std::vector<const Cochain*> list;
      list.insert(list.end(), r, &g);
      list.push_back(&gu);
      list.insert(list.end(), s, &g2);
      defect = cc_add(defect, cc_mu(list, out_len));
    }
  return defect;
}

Cochain cc_solve_equivalent(const Cochain& g, const Cochain& h, int out_len) {
  if (g.degree != 1 || !g.in_ideal())
    throw input_error("cc_solve_equivalent: g must be a degree-1 cochain in (q)");
  require_homotopy(h, "cc_solve_equivalent");
  if (g.A != h.A || g.m != h.m || g.p != h.p)
    throw input_error("cc_solve_equivalent: mismatched cochains");
  const int emax = std::min(g.m, g.A->arity());
  Cochain g2 = g.resized(out_len);
  for (int it = 0; it <= g.m; ++it) {
    Cochain next = g.resized(out_len);
    for (int e = 1; e <= emax; ++e)
      for (int r = 0; r < e; ++r) {
        const int s = e - 1 - r;
        std::vector<const Cochain*> list;
        list.insert(list.end(), r, &g);
        list.push_back(&h);
        list.insert(list.end(), s, &g2);
        next = cc_sub(next, cc_mu(list, out_len));
      }
    g2 = next;
  }
  return g2;
}

// --- composition of the associated endomorphisms ------------------------------

namespace {

struct PhiRec {
  const Cochain* g1 = nullptr;
  const Cochain* g2 = nullptr;
  int d = 0, n = 0, cap = 0, s2 = 0;
  const std::vector<int>* t = nullptr;
  std::vector<NilPoly>* acc = nullptr;
  std::vector<int> outer;

  void rec(int pos, const NilPoly& prod) {
    if (static_cast<int>(outer.size()) > cap) return;
    if (pos == d) {
      const int r = static_cast<int>(outer.size());
      for (int o = 0; o < n; ++o) {
        NilPoly tot = g1->value(r, outer.data(), o);
        if (r == 1 && outer[0] == o)
          tot += NilPoly::constant(g1->p, g1->m, 1);  // identity part of phi1
        if (!tot.is_zero()) (*acc)[o] += prod * tot;
      }
      // fall through: trailing length-0 blocks are still allowed
    }
    const int smax = std::min(d - pos, std::max(s2, 1));
    for (int s = 0; s <= smax; ++s)
      for (int b = 0; b < n; ++b) {
        NilPoly bv = g2->value(s, t->data() + pos, b);
        if (s == 1 && b == (*t)[pos])
          bv += NilPoly::constant(g2->p, g2->m, 1);  // identity part of phi2
        if (bv.is_zero()) continue;
        const NilPoly pr2 = prod * bv;
        if (pr2.is_zero()) continue;
        outer.push_back(b);
        rec(pos + s, pr2);
        outer.pop_back();
      }
  }
};

}  // namespace

Cochain phi_compose(const Cochain& g1, const Cochain& g2) {
  require_composable(g1, g2, "phi_compose");
  const AInftyAlgebra& A = *g1.A;
  const int n = A.dim();
  const int W = std::max(g1.max_len, g2.max_len);
  Cochain out(A, 1, W, g1.m, compose_exact(g1, g2, W));
  PhiRec R;
  R.g1 = &g1;
  R.g2 = &g2;
  R.n = n;
  R.cap = std::max(g1.support(), 1);
  R.s2 = g2.support();
  std::vector<int> t;
  std::vector<NilPoly> acc(n, NilPoly(g1.p, g1.m));
  for (int d = 0; d <= W; ++d) {
    const long rows = ipow_l(n, d);
    for (long code = 0; code < rows; ++code) {
      decode_tuple(code, d, n, t);
      std::fill(acc.begin(), acc.end(), NilPoly(g1.p, g1.m));
      R.d = d;
      R.t = &t;
      R.acc = &acc;
      R.rec(0, NilPoly::constant(g1.p, g1.m, 1));
      NilPoly* row = &out.comp[d][code * n];
      for (int o = 0; o < n; ++o)
        if (!acc[o].is_zero()) row[o] += acc[o];
    }
  }
  // phi = id + gamma: remove the identity of the composite
  for (int a = 0; a < n; ++a)
    out.comp[1][a * n + a] -= NilPoly::constant(g1.p, g1.m, 1);
  return out;
}

// --- random cochains ----------------------------------------------------------

namespace {

long random_entry(long p, Rng& rng) {
  if (p > 0) {
    std::uniform_int_distribution<long> du(0, p - 1);
    return du(rng);
  }
  std::uniform_int_distribution<long> du(-2, 2);
  return du(rng);
}

// Basis of the kernel of M x = 0 over F_p (rows normalized to 0..p-1).
std::vector<std::vector<long>> kernel_mod_p(std::vector<std::vector<long>> M,
                                            int cols, long p) {
  const int rows = static_cast<int>(M.size());
  std::vector<int> pivot_row_of_col(cols, -1);
  int r = 0;
  auto mod_inv = [p](long a) {
    long res = 1, base = ((a % p) + p) % p, e = p - 2;
    while (e > 0) {
      if (e & 1) res = res * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return res;
  };
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (M[i][c] % p != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(M[r], M[pr]);
    const long inv = mod_inv(M[r][c]);
    for (int j = c; j < cols; ++j) M[r][j] = M[r][j] * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c] % p == 0) continue;
      const long f = M[i][c] % p;
      for (int j = c; j < cols; ++j)
        M[i][j] = ((M[i][j] - f * M[r][j]) % p + p) % p;
    }
    pivot_row_of_col[c] = r;
    ++r;
  }
  std::vector<std::vector<long>> basis;
  for (int c = 0; c < cols; ++c) {
    if (pivot_row_of_col[c] >= 0) continue;
    std::vector<long> v(cols, 0);
    v[c] = 1;
    for (int c2 = 0; c2 < cols; ++c2) {
      const int pr = pivot_row_of_col[c2];
      if (pr >= 0) v[c2] = (p - M[pr][c] % p) % p;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

struct EntryRef {
  int j;
  long code;
  int out;
};

std::vector<EntryRef> allowed_entries(const AInftyAlgebra& A, int degree, int L) {
  std::vector<EntryRef> es;
  Cochain probe(A, degree, L, 0);
  for (int j = 0; j <= L; ++j) {
    const long rows = ipow_l(A.dim(), j);
    for (long code = 0; code < rows; ++code)
      for (int b = 0; b < A.dim(); ++b)
        if (probe.entry_allowed(j, code, b)) es.push_back({j, code, b});
  }
  return es;
}

}  // namespace

Cochain random_cochain(const AInftyAlgebra& A, int degree, int L, int m, Rng& rng) {
  Cochain c(A, degree, L, m);
  for (const EntryRef& e : allowed_entries(A, degree, L)) {
    const long v = random_entry(A.p, rng);
    if (v != 0) c.at(e.j, e.code, e.out) = NilPoly::constant(A.p, m, v);
  }
  return c;
}

Cochain random_ideal_cochain(const AInftyAlgebra& A, int degree, int L, int m,
                             Rng& rng) {
  Cochain c(A, degree, L, m);
  for (const EntryRef& e : allowed_entries(A, degree, L)) {
    NilPoly v(A.p, m);
    for (int k = 1; k <= m; ++k)
      v += NilPoly::monomial(A.p, m, k, random_entry(A.p, rng));
    if (!v.is_zero()) c.at(e.j, e.code, e.out) = v;
  }
  return c;
}

Cochain random_cocycle(const AInftyAlgebra& A, int degree, int L, int m, Rng& rng) {
  if (A.p < 2)
    throw input_error("cocycle sampling needs prime-field coefficients");
  const std::vector<EntryRef> es = allowed_entries(A, degree, L);
  const int cols = static_cast<int>(es.size());
  const int out_len = L + A.arity() - 1;
  // flattened row index over all (j, tuple, out) with j <= out_len
  std::vector<long> offs(out_len + 2, 0);
  for (int j = 0; j <= out_len; ++j) offs[j + 1] = offs[j] + ipow_l(A.dim(), j);
  const long nrows = offs[out_len + 1] * A.dim();
  std::vector<std::vector<long>> M(nrows, std::vector<long>(cols, 0));
  for (int k = 0; k < cols; ++k) {
    Cochain basis(A, degree, L, 0);
    basis.at(es[k].j, es[k].code, es[k].out) = NilPoly::constant(A.p, 0, 1);
    const Cochain d1 = cc_mu1(basis, out_len);
    for (int j = 0; j <= out_len; ++j) {
      const long rows = ipow_l(A.dim(), j);
      for (long code = 0; code < rows; ++code)
        for (int o = 0; o < A.dim(); ++o) {
          const long v = d1.comp[j][code * A.dim() + o].c[0];
          if (v != 0) M[(offs[j] + code) * A.dim() + o][k] = v;
        }
    }
  }
  const std::vector<std::vector<long>> basis = kernel_mod_p(std::move(M), cols, A.p);
  Cochain c(A, degree, L, m);
  for (const std::vector<long>& v : basis) {
    const long coeff = random_entry(A.p, rng);
    if (coeff == 0) continue;
    for (int k = 0; k < cols; ++k)
      if (v[k] != 0)
        c.at(es[k].j, es[k].code, es[k].out) +=
            NilPoly::constant(A.p, m, v[k] * coeff);
  }
  return c;
}

Cochain random_mc_cochain(const AInftyAlgebra& A, int L, int m, Rng& rng) {
  if (A.p < 2)
    throw input_error("Maurer-Cartan sampling needs prime-field coefficients");
  const int a = std::max(A.arity(), 2);
  const int W = m * (L + a - 2) + 1;
  const Cochain h = random_ideal_cochain(A, 0, L, m, rng);
  const Cochain zero(A, 1, W, m);
  Cochain g = cc_solve_equivalent(zero, h, W);
  // Gauge image of 0: the q^k-part has support at most k(L + a - 2) + 1 <= W,
  // so the stored table is the whole cochain.
  g.exact_len = Cochain::kFullSupport;
  if (!cc_mc_check(g, W))
    throw arith_error("gauge image failed the Maurer-Cartan check");
  return g;
}

}  // namespace mcpower
