#include "mcpower/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace mcpower {

std::string scale_name(Scale s) {
  switch (s) {
    case Scale::Large: return "large";
    case Scale::MidStar: return "mid*";
    case Scale::Mid: return "mid";
    case Scale::Small: return "small";
    case Scale::SmallLarge: return "small-large";
    case Scale::SmallMid: return "small-mid";
    case Scale::SmallSmall: return "small-small";
  }
  return "?";
}

static Scale scale_from_name(const std::string& w) {
  if (w == "large") return Scale::Large;
  if (w == "mid*") return Scale::MidStar;
  if (w == "mid") return Scale::Mid;
  if (w == "small") return Scale::Small;
  if (w == "small-large") return Scale::SmallLarge;
  if (w == "small-mid") return Scale::SmallMid;
  if (w == "small-small") return Scale::SmallSmall;
  throw input_error("decorated tree: unknown scale '" + w + "'");
}

std::vector<int> DecoratedTree::children(int v) const {
  std::vector<int> out;
  for (const Slot& s : verts[v].slots)
    if (!s.is_leaf) out.push_back(s.child);
  return out;
}

int DecoratedTree::leaf_count(int v) const {
  int n = 0;
  for (const Slot& s : verts[v].slots) n += s.is_leaf ? 1 : 0;
  return n;
}

std::vector<int> DecoratedTree::parents() const {
  std::vector<int> par(verts.size(), -1);
  for (int v = 0; v < size(); ++v)
    for (int c : children(v)) par[c] = v;
  return par;
}

int DecoratedTree::star() const {
  for (int v = 0; v < size(); ++v)
    if (verts[v].scale == Scale::MidStar) return v;
  return -1;
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> toks;
  size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == '(' || ch == ')') {
      toks.emplace_back(1, ch);
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
           text[j] != '(' && text[j] != ')')
      ++j;
    toks.push_back(text.substr(i, j - i));
    i = j;
  }
  return toks;
}

int parse_vertex(const std::vector<std::string>& toks, size_t& pos, DecoratedTree& T) {
  if (pos >= toks.size() || toks[pos] != "(")
    throw input_error("decorated tree: expected '('");
  ++pos;
  if (pos >= toks.size() || toks[pos] == "(" || toks[pos] == ")")
    throw input_error("decorated tree: missing scale label");
  Scale sc = scale_from_name(toks[pos]);
  ++pos;
  int v = T.size();
  T.verts.push_back({sc, {}});
  while (pos < toks.size() && toks[pos] != ")") {
    if (toks[pos] == "(") {
      int c = parse_vertex(toks, pos, T);
      T.verts[v].slots.push_back({false, 0, c});
    } else {
      const std::string& w = toks[pos];
      if (w.rfind("leaf", 0) != 0)
        throw input_error("decorated tree: unexpected token '" + w + "'");
      int color = 0;
      if (w.size() > 4) {
        if (w[4] != ':' || w.size() == 5)
          throw input_error("decorated tree: bad leaf token '" + w + "'");
        color = std::stoi(w.substr(5));
      }
      T.verts[v].slots.push_back({true, color, -1});
      ++pos;
    }
  }
  if (pos >= toks.size()) throw input_error("decorated tree: unbalanced '('");
  ++pos;
  return v;
}

}  // namespace

DecoratedTree DecoratedTree::parse(const std::string& text) {
  std::vector<std::string> toks = tokenize(text);
  size_t pos = 0;
  DecoratedTree T;
  parse_vertex(toks, pos, T);
  if (pos != toks.size()) throw input_error("decorated tree: trailing tokens");
  return T;
}

DecoratedTree DecoratedTree::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open tree file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string DecoratedTree::str() const {
  std::string out;
  std::function<void(int)> rec = [&](int v) {
    out += '(';
    out += scale_name(verts[v].scale);
    for (const Slot& s : verts[v].slots) {
      out += ' ';
      if (s.is_leaf) {
        out += "leaf";
        if (s.color != 0) out += ":" + std::to_string(s.color);
      } else {
        rec(s.child);
      }
    }
    out += ')';
  };
  rec(0);
  return out;
}

void validate_decorated(const DecoratedTree& T) {
  if (T.size() == 0) throw input_error("decorated tree: empty");
  int stars = 0;
  for (int v = 0; v < T.size(); ++v)
    if (T.verts[v].scale == Scale::MidStar) ++stars;
  if (stars != 1)
    throw input_error("decorated tree: exactly one mid* vertex required");
  int star = T.star();
  Scale rs = T.verts[0].scale;
  if (rs != Scale::Large && rs != Scale::MidStar)
    throw input_error("decorated tree: root must be large or mid*");

  auto child_scale = [&](int c) { return T.verts[c].scale; };
  for (int v = 0; v < T.size(); ++v) {
    const auto& vert = T.verts[v];
    std::vector<int> kids = T.children(v);
    int nleaf = T.leaf_count(v);
    int nslots = static_cast<int>(vert.slots.size());
    switch (vert.scale) {
      case Scale::Large: {
        if (nleaf > 0)
          throw input_error("decorated tree: large vertex carries a marked point");
        if (static_cast<int>(kids.size()) < 2)
          throw input_error("decorated tree: large vertex needs >= 2 screens");
        for (int c : kids) {
          Scale cs = child_scale(c);
          if (cs != Scale::Large && cs != Scale::Mid && cs != Scale::MidStar)
            throw input_error("decorated tree: large vertex has a " + scale_name(cs) +
                              " child");
        }
        break;
      }
      case Scale::MidStar: {
        for (int c : kids)
          if (child_scale(c) != Scale::Small)
            throw input_error("decorated tree: mid* carries only small screens");
        break;
      }
      case Scale::Mid: {
        if (nslots < 1)
          throw input_error("decorated tree: mid vertex needs >= 1 slot");
        bool tower = false;
        for (int c : kids) {
          Scale cs = child_scale(c);
          if (cs == Scale::SmallLarge || cs == Scale::SmallMid)
            tower = true;
          else if (cs != Scale::Small)
            throw input_error("decorated tree: mid vertex has a " + scale_name(cs) +
                              " child");
        }
        if (tower && v < star)
          throw input_error(
              "decorated tree: small-large/small-mid tower before the distinguished "
              "vertex");
        break;
      }
      case Scale::Small:
      case Scale::SmallSmall: {
        if (nslots < 2)
          throw input_error("decorated tree: " + scale_name(vert.scale) +
                            " vertex needs >= 2 slots");
        for (int c : kids)
          if (child_scale(c) != vert.scale)
            throw input_error("decorated tree: " + scale_name(vert.scale) +
                              " vertex has a " + scale_name(child_scale(c)) + " child");
        break;
      }
      case Scale::SmallLarge: {
        if (nleaf > 0)
          throw input_error("decorated tree: small-large vertex carries a marked point");
        if (static_cast<int>(kids.size()) < 2)
          throw input_error("decorated tree: small-large vertex needs >= 2 screens");
        for (int c : kids) {
          Scale cs = child_scale(c);
          if (cs != Scale::SmallLarge && cs != Scale::SmallMid)
            throw input_error("decorated tree: small-large vertex has a " +
                              scale_name(cs) + " child");
        }
        break;
      }
      case Scale::SmallMid: {
        if (nslots < 1)
          throw input_error("decorated tree: small-mid vertex needs >= 1 slot");
        for (int c : kids)
          if (child_scale(c) != Scale::SmallSmall)
            throw input_error("decorated tree: small-mid vertex has a " +
                              scale_name(child_scale(c)) + " child");
        break;
      }
    }
  }
}

namespace {

struct TreeGen {
  DecoratedTree T;
  std::mt19937_64& rng;
  int budget;  // remaining vertices allowed
  bool star_done = false;

  explicit TreeGen(std::mt19937_64& r, int b) : rng(r), budget(b) {}

  bool chance(double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  int alloc(Scale s) {
    T.verts.push_back({s, {}});
    --budget;
    return T.size() - 1;
  }
  void leaf(int v) { T.verts[v].slots.push_back({true, 0, -1}); }
  void attach(int v, int c) { T.verts[v].slots.push_back({false, 0, c}); }

  int gen_small(int depth) {
    int v = alloc(Scale::Small);
    if (depth < 1 && budget >= 1 && chance(0.25)) {
      attach(v, gen_small(depth + 1));
      leaf(v);
    } else {
      leaf(v);
      leaf(v);
    }
    return v;
  }

  int gen_small_small(int depth) {
    int v = alloc(Scale::SmallSmall);
    if (depth < 1 && budget >= 1 && chance(0.2)) {
      attach(v, gen_small_small(depth + 1));
      leaf(v);
    } else {
      leaf(v);
      leaf(v);
    }
    return v;
  }

  int gen_small_mid() {
    int v = alloc(Scale::SmallMid);
    if (budget >= 1 && chance(0.25)) {
      attach(v, gen_small_small(0));
    } else {
      leaf(v);
      if (chance(0.4)) leaf(v);
    }
    return v;
  }

  int gen_small_large(int depth) {
    int v = alloc(Scale::SmallLarge);
    int k = 2;
    for (int i = 0; i < k; ++i) {
      if (depth < 1 && budget >= 4 && chance(0.1))
        attach(v, gen_small_large(depth + 1));
      else
        attach(v, gen_small_mid());
    }
    return v;
  }

  int gen_mid() {
    int v = alloc(Scale::Mid);
    bool tower = star_done && budget >= 1 && chance(0.5);
    if (tower) {
      if (budget >= 3 && chance(0.5))
        attach(v, gen_small_large(0));
      else
        attach(v, gen_small_mid());
      if (chance(0.3)) leaf(v);
    } else {
      leaf(v);
      if (budget >= 1 && chance(0.3)) attach(v, gen_small(0));
      if (chance(0.3)) leaf(v);
    }
    return v;
  }

  int gen_mid_star() {
    int v = alloc(Scale::MidStar);
    star_done = true;
    if (budget >= 1 && chance(0.3)) attach(v, gen_small(0));
    return v;
  }

  int gen_large(bool must_star, int depth) {
    int v = alloc(Scale::Large);
    int k = 2 + ((budget >= 4 && chance(0.3)) ? 1 : 0);
    int star_at = must_star ? pick(k) : -1;
    for (int i = 0; i < k; ++i) {
      if (i == star_at) {
        if (depth < 2 && budget >= 4 && chance(0.25))
          attach(v, gen_large(true, depth + 1));
        else
          attach(v, gen_mid_star());
      } else {
        if (depth < 2 && budget >= 5 && chance(0.2))
          attach(v, gen_large(false, depth + 1));
        else
          attach(v, gen_mid());
      }
    }
    return v;
  }
};

}  // namespace

DecoratedTree random_decorated_tree(std::mt19937_64& rng, int max_edges) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    TreeGen gen(rng, max_edges + 1);
    gen.gen_large(true, 0);
    if (gen.T.size() - 1 > max_edges) continue;
    try {
      validate_decorated(gen.T);
    } catch (const input_error&) {
      continue;
    }
    return gen.T;
  }
  throw internal_error("random_decorated_tree: generation failed");
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<mpz_class>> identity_matrix(int n) {
  std::vector<std::vector<mpz_class>> I(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

}  // namespace

std::vector<mpz_class> SmithResult::invariants() const {
  std::vector<mpz_class> out;
  for (size_t i = 0; i < D.size() && i < (D.empty() ? 0 : D[0].size()); ++i)
    if (D[i][i] != 0) out.push_back(D[i][i]);
  return out;
}

SmithResult smith_normal_form(std::vector<std::vector<mpz_class>> A) {
  const int m = static_cast<int>(A.size());
  const int k = m ? static_cast<int>(A[0].size()) : 0;
  SmithResult R;
  R.U = identity_matrix(m);
  R.V = identity_matrix(k);
  if (m == 0 || k == 0) {
    R.D = A;
    R.rank = 0;
    return R;
  }

  auto row_swap = [&](int a, int b) {
    if (a == b) return;
    std::swap(A[a], A[b]);
    std::swap(R.U[a], R.U[b]);
  };
  auto col_swap = [&](int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m; ++i) std::swap(A[i][a], A[i][b]);
    for (int i = 0; i < k; ++i) std::swap(R.V[i][a], R.V[i][b]);
  };
  auto row_sub = [&](int i, int t, const mpz_class& q) {
    for (int j = 0; j < k; ++j) A[i][j] -= q * A[t][j];
    for (int j = 0; j < m; ++j) R.U[i][j] -= q * R.U[t][j];
  };
  auto col_sub = [&](int j, int t, const mpz_class& q) {
    for (int i = 0; i < m; ++i) A[i][j] -= q * A[i][t];
    for (int i = 0; i < k; ++i) R.V[i][j] -= q * R.V[i][t];
  };
  auto col_add = [&](int j, int t) {
    for (int i = 0; i < m; ++i) A[i][j] += A[i][t];
    for (int i = 0; i < k; ++i) R.V[i][j] += R.V[i][t];
  };
  auto row_negate = [&](int i) {
    for (int j = 0; j < k; ++j) A[i][j] = -A[i][j];
    for (int j = 0; j < m; ++j) R.U[i][j] = -R.U[i][j];
  };

  auto diagonalize_from = [&](int t0) {
    for (int t = t0; t < m && t < k; ++t) {
      // Pick the nonzero entry of smallest magnitude as pivot.
      int pi = -1, pj = -1;
      for (int i = t; i < m; ++i)
        for (int j = t; j < k; ++j)
          if (A[i][j] != 0 &&
              (pi < 0 || cmp(abs(A[i][j]), abs(A[pi][pj])) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi < 0) return;
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = false;
      while (!clean) {
        clean = true;
        for (int i = t + 1; i < m; ++i) {
          if (A[i][t] == 0) continue;
          mpz_class q = A[i][t] / A[t][t];
          row_sub(i, t, q);
          if (A[i][t] != 0) {
            row_swap(t, i);
            clean = false;
          }
        }
        for (int j = t + 1; j < k; ++j) {
          if (A[t][j] == 0) continue;
          mpz_class q = A[t][j] / A[t][t];
          col_sub(j, t, q);
          if (A[t][j] != 0) {
            col_swap(t, j);
            clean = false;
          }
        }
      }
    }
  };

  diagonalize_from(0);
  // Enforce the divisibility chain d_i | d_{i+1}.
  bool again = true;
  while (again) {
    again = false;
    for (int i = 0; i + 1 < m && i + 1 < k; ++i) {
      if (A[i][i] == 0) continue;
      if (A[i + 1][i + 1] % A[i][i] != 0) {
        col_add(i, i + 1);
        diagonalize_from(i);
        again = true;
        break;
      }
    }
  }
  for (int i = 0; i < m && i < k; ++i)
    if (A[i][i] < 0) row_negate(i);

  R.D = A;
  for (int i = 0; i < m && i < k; ++i)
    if (A[i][i] != 0) ++R.rank;
  return R;
}

mpz_class integer_determinant(std::vector<std::vector<mpz_class>> A) {
  const int n = static_cast<int>(A.size());
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != n)
      throw input_error("integer_determinant: matrix not square");
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (int t = 0; t + 1 < n; ++t) {
    int piv = -1;
    for (int i = t; i < n; ++i)
      if (A[i][t] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != t) {
      std::swap(A[piv], A[t]);
      sign = -sign;
    }
    for (int i = t + 1; i < n; ++i) {
      for (int j = t + 1; j < n; ++j) {
        mpz_class num = A[t][t] * A[i][j] - A[i][t] * A[t][j];
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        A[i][j] = q;
      }
      A[i][t] = 0;
    }
    prev = A[t][t];
  }
  return sign * A[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Monoid analysis
// ---------------------------------------------------------------------------

namespace {

using Vec = std::vector<long>;

long dot(const Vec& a, const Vec& b) {
  long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const Vec& a) {
  for (long x : a)
    if (x != 0) return false;
  return true;
}

Vec sub_scaled(const Vec& a, const Vec& b, long c) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - c * b[i];
  return r;
}

// Decides membership of x in the monoid generated by `gens`.  When a strictly
// positive functional phi is available (phi . g >= 1 for every generator) the
// answer is exact: each generator copy consumes at least one unit of phi, so
// multiplicities are bounded by phi(x).  Without phi, multiplicities are
// capped at `cap` per generator and the result is only a bounded search.
struct MemberOracle {
  const std::vector<Vec>& gens;
  const Vec* phi = nullptr;  // null -> bounded mode
  long cap = 6;
  std::map<std::pair<int, Vec>, bool> memo;

  bool member(const Vec& x) {
    Vec r = x;
    return rec(0, r);
  }

  bool rec(int idx, const Vec& r) {
    if (is_zero(r)) return true;
    if (idx == static_cast<int>(gens.size())) return false;
    if (phi) {
      long p = dot(*phi, r);
      if (p <= 0) return false;  // nonzero monoid elements have phi >= 1
    }
    auto key = std::make_pair(idx, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long cmax;
    if (phi) {
      long p = dot(*phi, r);
      long pg = dot(*phi, gens[idx]);
      cmax = p / pg;
    } else {
      cmax = cap;
    }
    bool ok = false;
    for (long c = 0; c <= cmax && !ok; ++c)
      ok = rec(idx + 1, sub_scaled(r, gens[idx], c));
    memo[key] = ok;
    return ok;
  }
};

// Perceptron iteration for a functional phi with phi . g >= 1 for all g.
bool positive_functional(const std::vector<Vec>& gens, int dim, Vec& phi) {
  phi.assign(dim, 0);
  for (int iter = 0; iter < 10000; ++iter) {
    bool fixed = true;
    for (const Vec& g : gens)
      if (dot(phi, g) <= 0) {
        for (int i = 0; i < dim; ++i) phi[i] += g[i];
        fixed = false;
        break;
      }
    if (fixed) return true;
  }
  return false;
}

// All nonzero monoid elements expressible with total multiplicity <= total.
void enumerate_sums(const std::vector<Vec>& gens, int idx, int remaining, Vec acc,
                    std::set<Vec>& out) {
  if (idx == static_cast<int>(gens.size())) {
    if (!is_zero(acc)) out.insert(acc);
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    enumerate_sums(gens, idx + 1, remaining - c, acc, out);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += gens[idx][i];
  }
}

}  // namespace

MonoidReport monoid_check(const DecoratedTree& T, bool full) {
  validate_decorated(T);
  const int n = T.size();
  MonoidReport rep;
  const int E = n - 1;
  rep.edges = E;

  // Edge numbering: postorder position of the child vertex (1-based in the
  // text output; 0-based indices internally).
  std::vector<int> post_of(n, -1);
  {
    int ctr = 0;
    std::function<void(int)> rec = [&](int v) {
      for (int c : T.children(v)) rec(c);
      post_of[v] = ctr++;
    };
    rec(0);
  }
  std::vector<int> par = T.parents();
  std::vector<int> depth(n, 0);
  for (int v = 1; v < n; ++v) depth[v] = depth[par[v]] + 1;
  auto lca = [&](int a, int b) {
    while (a != b) {
      if (depth[a] >= depth[b])
        a = par[a];
      else
        b = par[b];
    }
    return a;
  };

  const int star = T.star();
  for (int v = 0; v < n; ++v) {
    Scale s = T.verts[v].scale;
    if (s == Scale::Mid) {
      // Path relation: scales agree after gluing, so the signed path sum
      // from the distinguished vertex vanishes.
      std::vector<mpz_class> row(E, 0);
      int l = lca(star, v);
      for (int x = star; x != l; x = par[x]) row[post_of[x]] += 1;
      for (int x = v; x != l; x = par[x]) row[post_of[x]] -= 1;
      rep.relation_rows.push_back(row);
    } else if (s == Scale::SmallMid) {
      // Turning-point relation g_{v+} + g_{v-} = 0 with v+ the highest
      // vertex on the path from the distinguished vertex.
      std::vector<mpz_class> row(E, 0);
      int l = lca(star, v);
      for (int x = star; x != l; x = par[x]) row[post_of[x]] += 2;
      for (int x = v; x != l; x = par[x]) row[post_of[x]] -= 1;
      rep.relation_rows.push_back(row);
    }
  }
  rep.relations = static_cast<int>(rep.relation_rows.size());

  for (int v = 0; v < n; ++v) {
    Scale s = T.verts[v].scale;
    if (s != Scale::Mid && s != Scale::MidStar && s != Scale::SmallMid)
      ++rep.expected_rank;
  }

  if (E == 0) {
    rep.rank = 0;
    rep.group_free = true;
    rep.monoid_free = true;
    rep.saturated = true;
    rep.sharp = true;
    rep.certified = true;
    return rep;
  }

  if (rep.relation_rows.empty()) {
    rep.rank = E;
    rep.group_free = true;
    for (int j = 0; j < E; ++j) {
      std::vector<mpz_class> img(E, 0);
      img[j] = 1;
      rep.generator_images.push_back(img);
    }
  } else {
    SmithResult S = smith_normal_form(rep.relation_rows);
    rep.rank = E - S.rank;
    rep.group_free = true;
    for (const mpz_class& d : S.invariants())
      if (d != 1) rep.group_free = false;
    if (rep.group_free) {
      // Quotient coordinates y = V^T x: the lattice of relations becomes the
      // span of the first `S.rank` coordinate axes, so the image of edge
      // generator j is row j of V restricted to the remaining columns.
      for (int j = 0; j < E; ++j) {
        std::vector<mpz_class> img;
        for (int c = S.rank; c < E; ++c) img.push_back(S.V[j][c]);
        rep.generator_images.push_back(img);
      }
    }
  }

  if (!rep.group_free || !full) return rep;

  // Distinct nonzero generator images, as machine integers.
  std::vector<Vec> gens;
  for (const auto& img : rep.generator_images) {
    Vec v(rep.rank);
    bool nz = false;
    for (int i = 0; i < rep.rank; ++i) {
      if (!img[i].fits_slong_p())
        throw internal_error("monoid_check: generator image out of range");
      v[i] = img[i].get_si();
      nz = nz || v[i] != 0;
    }
    if (nz && std::find(gens.begin(), gens.end(), v) == gens.end())
      gens.push_back(v);
  }

  if (rep.rank == 0 || gens.empty()) {
    rep.monoid_free = gens.empty();
    rep.saturated = true;
    rep.sharp = gens.empty();
    rep.certified = true;
    return rep;
  }

  Vec phi;
  rep.certified = positive_functional(gens, rep.rank, phi);
  MemberOracle oracle{gens, rep.certified ? &phi : nullptr, rep.multiplier_bound, {}};

  // Sharpness: a strictly positive functional is a certificate.  Otherwise
  // search small monoid elements g and test whether -g is also reachable.
  if (rep.certified) {
    rep.sharp = true;
  } else {
    rep.sharp = true;
    std::set<Vec> sums;
    enumerate_sums(gens, 0, rep.multiplier_bound, Vec(rep.rank, 0), sums);
    for (const Vec& s : sums) {
      Vec neg(rep.rank);
      for (int i = 0; i < rep.rank; ++i) neg[i] = -s[i];
      if (oracle.member(neg)) {
        rep.sharp = false;
        break;
      }
    }
  }

  // Atoms: generator images that do not split as (image + nonzero element).
  std::vector<Vec> atoms;
  for (const Vec& v : gens) {
    bool reducible = false;
    for (const Vec& u : gens) {
      Vec r = sub_scaled(v, u, 1);
      if (is_zero(r)) continue;
      if (oracle.member(r)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) atoms.push_back(v);
  }
  for (const Vec& a : atoms) {
    std::vector<mpz_class> row;
    for (long x : a) row.emplace_back(x);
    rep.minimal_generators.push_back(row);
  }
  {
    SmithResult SA = smith_normal_form(rep.minimal_generators);
    rep.monoid_free = SA.rank == static_cast<int>(atoms.size());
  }

  // Saturation within the candidate box: if a multiple of g lies in the
  // monoid, g itself must.  The box shrinks with the rank to keep the scan
  // at desk scale.
  int B = 6;
  if (rep.rank == 4) B = 3;
  if (rep.rank == 5 || rep.rank == 6) B = 2;
  if (rep.rank > 6) B = 1;
  rep.candidate_box = B;
  rep.saturated = true;
  Vec g(rep.rank, -B);
  for (;;) {
    if (!is_zero(g) && !oracle.member(g)) {
      for (int mlt = 2; mlt <= rep.multiplier_bound && rep.saturated; ++mlt) {
        Vec mg(rep.rank);
        for (int i = 0; i < rep.rank; ++i) mg[i] = mlt * g[i];
        if (oracle.member(mg)) rep.saturated = false;
      }
      if (!rep.saturated) break;
    }
    int i = 0;
    while (i < rep.rank && g[i] == B) {
      g[i] = -B;
      ++i;
    }
    if (i == rep.rank) break;
    ++g[i];
  }

  return rep;
}

bool relation_holds(const MonoidReport& rep, const std::vector<long>& row) {
  if (!rep.group_free || static_cast<int>(row.size()) != rep.edges) return false;
  std::vector<mpz_class> acc(rep.rank, 0);
  for (int e = 0; e < rep.edges; ++e)
    for (int i = 0; i < rep.rank; ++i)
      acc[i] += row[e] * rep.generator_images[e][i];
  for (const mpz_class& x : acc)
    if (x != 0) return false;
  return true;
}

std::string MonoidReport::str() const {
  std::ostringstream os;
  os << "rank " << rank;
  if (group_free && monoid_free)
    os << ", free";
  else if (group_free)
    os << ", free group, non-free monoid";
  else
    os << ", group has torsion";
  os << (saturated ? ", saturated" : ", not saturated");
  os << (sharp ? ", sharp" : ", not sharp");
  return os.str();
}

}  // namespace mcpower
