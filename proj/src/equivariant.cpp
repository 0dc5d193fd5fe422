#include "mcpower/equivariant.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>
#include <utility>

#include "json.hpp"

namespace mcpower {

namespace {

long reduce(long v, long p) {
  long r = v % p;
  return r < 0 ? r + p : r;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

using Mat = std::vector<std::vector<long>>;

Mat mat_identity(int n) {
  Mat I(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

Mat mat_mul(const Mat& A, const Mat& B, long p) {
  const int n = static_cast<int>(A.size());
  Mat C(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (A[i][k] == 0) continue;
      for (int j = 0; j < n; ++j)
        C[i][j] = reduce(C[i][j] + A[i][k] * B[k][j], p);
    }
  return C;
}

bool mat_is_zero(const Mat& A) {
  for (const auto& row : A)
    for (long v : row)
      if (v != 0) return false;
  return true;
}

// Norm element 1 + T + ... + T^{p-1} as a matrix mod p.
Mat norm_matrix(const EquivariantComplex& E) {
  const int n = E.dim();
  Mat N(n, std::vector<long>(n, 0));
  Mat P = mat_identity(n);
  for (long a = 0; a < E.p; ++a) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) N[i][j] = reduce(N[i][j] + P[i][j], E.p);
    if (a + 1 < E.p) P = mat_mul(E.T, P, E.p);
  }
  return N;
}

long pow_mod(long b, long e, long p) {
  long r = 1 % p;
  b = reduce(b, p);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

// Generator of the truncated equivariant complex: eps marks the theta
// (cohomology) or sigma (homology) companion copy of C.
struct Gen {
  int eps;
  int k;
  int i;
};

struct TruncatedComplex {
  std::map<long, std::vector<Gen>> gens;  // total degree -> generators
  std::map<std::tuple<int, int, int>, int> index;
  int slot(int eps, int k, int i) const {
    return index.at(std::make_tuple(eps, k, i));
  }
};

TruncatedComplex enumerate_generators(const EquivariantComplex& E,
                                      bool homological) {
  TruncatedComplex X;
  const int K = E.t_truncation();
  for (int eps = 0; eps <= 1; ++eps)
    for (int k = 0; k <= K; ++k)
      for (int i = 0; i < E.dim(); ++i) {
        long m = homological ? E.deg[i] - 2 * k - eps : E.deg[i] + 2 * k + eps;
        auto& list = X.gens[m];
        X.index[std::make_tuple(eps, k, i)] = static_cast<int>(list.size());
        list.push_back(Gen{eps, k, i});
      }
  return X;
}

// Dimensions per degree from generator counts and differential ranks.  The
// differential maps degree m to m + step (step = +1 cochain, -1 chain).
std::map<long, long> dims_from_ranks(const TruncatedComplex& X,
                                     const std::map<long, long>& rank_out,
                                     int step) {
  std::map<long, long> dims;
  for (const auto& [m, list] : X.gens) {
    long out = rank_out.count(m) ? rank_out.at(m) : 0;
    long in = rank_out.count(m - step) ? rank_out.at(m - step) : 0;
    dims[m] = static_cast<long>(list.size()) - out - in;
  }
  return dims;
}

}  // namespace

long EquivariantComplex::min_deg() const {
  return *std::min_element(deg.begin(), deg.end());
}

long EquivariantComplex::max_deg() const {
  return *std::max_element(deg.begin(), deg.end());
}

long matrix_rank_mod_p(std::vector<std::vector<long>> M, long p) {
  if (M.empty()) return 0;
  const int rows = static_cast<int>(M.size());
  const int cols = static_cast<int>(M[0].size());
  for (auto& row : M)
    for (auto& v : row) v = reduce(v, p);
  long rank = 0;
  int lead = 0;
  for (int col = 0; col < cols && lead < rows; ++col) {
    int pivot = -1;
    for (int r = lead; r < rows; ++r)
      if (M[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(M[pivot], M[lead]);
    long inv = pow_mod(M[lead][col], p - 2, p);
    for (int c = col; c < cols; ++c) M[lead][c] = M[lead][c] * inv % p;
    for (int r = 0; r < rows; ++r) {
      if (r == lead || M[r][col] == 0) continue;
      long f = M[r][col];
      for (int c = col; c < cols; ++c)
        M[r][c] = reduce(M[r][c] - f * M[lead][c], p);
    }
    ++lead;
    ++rank;
  }
  return rank;
}

EquivariantComplex make_equivariant(std::string name, long p,
                                    std::vector<long> deg,
                                    std::vector<std::vector<long>> d,
                                    std::vector<std::vector<long>> T,
                                    int t_max) {
  if (!is_prime(p)) throw input_error("equivariant: p must be prime");
  const int n = static_cast<int>(deg.size());
  if (n == 0) throw input_error("equivariant: empty basis");
  auto check_shape = [&](const Mat& M, const char* what) {
    if (static_cast<int>(M.size()) != n)
      throw input_error(std::string("equivariant: ") + what + " has " +
                        std::to_string(M.size()) + " rows, expected " +
                        std::to_string(n));
    for (const auto& row : M)
      if (static_cast<int>(row.size()) != n)
        throw input_error(std::string("equivariant: ragged ") + what +
                          " matrix");
  };
  check_shape(d, "differential");
  check_shape(T, "action");
  for (auto& row : d)
    for (auto& v : row) v = reduce(v, p);
  for (auto& row : T)
    for (auto& v : row) v = reduce(v, p);

  EquivariantComplex E;
  E.name = std::move(name);
  E.p = p;
  E.deg = std::move(deg);
  E.d = std::move(d);
  E.T = std::move(T);
  E.t_max = t_max;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (E.d[i][j] != 0 && E.deg[i] != E.deg[j] + 1)
        throw input_error(
            "equivariant: differential entry must raise degree by 1");
      if (E.T[i][j] != 0 && E.deg[i] != E.deg[j])
        throw input_error("equivariant: action entry violates the grading");
    }

  if (!mat_is_zero(mat_mul(E.d, E.d, p)))
    throw input_error("equivariant: d^2 != 0");
  Mat Tp = mat_identity(n);
  for (long a = 0; a < p; ++a) Tp = mat_mul(E.T, Tp, p);
  if (Tp != mat_identity(n))
    throw input_error("equivariant: T^p != identity");
  if (mat_mul(E.T, E.d, p) != mat_mul(E.d, E.T, p))
    throw input_error("equivariant: T does not commute with d");
  return E;
}

EquivariantComplex load_equivariant_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error("invalid JSON in '" + path + "': " + e.what());
  }
  try {
    std::string name = j.value("name", "custom");
    long p = j.value("p", 0L);
    auto deg = j.at("degrees").get<std::vector<long>>();
    const int n = static_cast<int>(deg.size());
    if (n == 0) throw input_error("empty basis");
    std::vector<std::vector<long>> d(n, std::vector<long>(n, 0)),
        T(n, std::vector<long>(n, 0));
    auto fill = [&](const nlohmann::json& entries, Mat& M, const char* what) {
      for (const auto& t : entries) {
        auto in_t = t.at("in").get<std::vector<int>>();
        if (in_t.size() != 1)
          throw input_error(std::string(what) + " entry must have one input");
        int src = in_t[0];
        int out = t.at("out").get<int>();
        if (src < 0 || src >= n || out < 0 || out >= n)
          throw input_error(std::string(what) + " entry index out of range");
        M[out][src] = t.at("c").get<long>();
      }
    };
    if (j.contains("terms")) fill(j.at("terms"), d, "differential");
    if (j.contains("T")) fill(j.at("T"), T, "action");
    else
      for (int i = 0; i < n; ++i) T[i][i] = 1;
    int t_max = j.value("t_truncation", -1);
    return make_equivariant(std::move(name), p, std::move(deg), std::move(d),
                            std::move(T), t_max);
  } catch (const input_error&) {
    throw;
  } catch (const std::exception& e) {
    throw input_error("bad complex description in '" + path + "': " +
                      e.what());
  }
}

std::map<long, long> zp_cohomology(const EquivariantComplex& E) {
  const long p = E.p;
  const int n = E.dim();
  const int K = E.t_truncation();
  const Mat N = norm_matrix(E);
  TruncatedComplex X = enumerate_generators(E, /*homological=*/false);

  // Rank of d restricted to each total degree.  Columns are the degree-m
  // generators; rows the degree-(m+1) generators.
  std::map<long, long> rank_out;
  for (const auto& [m, src] : X.gens) {
    auto it = X.gens.find(m + 1);
    if (it == X.gens.end()) continue;
    const auto& dst = it->second;
    Mat D(dst.size(), std::vector<long>(src.size(), 0));
    for (int c = 0; c < static_cast<int>(src.size()); ++c) {
      const Gen& g = src[c];
      if (g.eps == 0) {
        // d(t^k c) = t^k dc + theta t^k (Tc - c)
        for (int i = 0; i < n; ++i) {
          if (E.d[i][g.i] != 0)
            D[X.slot(0, g.k, i)][c] =
                reduce(D[X.slot(0, g.k, i)][c] + E.d[i][g.i], p);
          long tw = reduce(E.T[i][g.i] - (i == g.i ? 1 : 0), p);
          if (tw != 0)
            D[X.slot(1, g.k, i)][c] = reduce(D[X.slot(1, g.k, i)][c] + tw, p);
        }
      } else {
        // d(theta t^k c) = -theta t^k dc + t^{k+1} Nc
        for (int i = 0; i < n; ++i) {
          if (E.d[i][g.i] != 0)
            D[X.slot(1, g.k, i)][c] =
                reduce(D[X.slot(1, g.k, i)][c] - E.d[i][g.i], p);
          if (g.k + 1 <= K && N[i][g.i] != 0)
            D[X.slot(0, g.k + 1, i)][c] =
                reduce(D[X.slot(0, g.k + 1, i)][c] + N[i][g.i], p);
        }
      }
    }
    rank_out[m] = matrix_rank_mod_p(std::move(D), p);
  }
  return dims_from_ranks(X, rank_out, +1);
}

std::map<long, long> zp_homology(const EquivariantComplex& E) {
  const long p = E.p;
  const int n = E.dim();
  const Mat N = norm_matrix(E);
  TruncatedComplex X = enumerate_generators(E, /*homological=*/true);

  // The total differential still raises total degree by 1; s-powers never
  // increase, so the k <= t_truncation() span is a subcomplex.
  std::map<long, long> rank_out;
  for (const auto& [m, src] : X.gens) {
    auto it = X.gens.find(m + 1);
    if (it == X.gens.end()) continue;
    const auto& dst = it->second;
    Mat D(dst.size(), std::vector<long>(src.size(), 0));
    for (int c = 0; c < static_cast<int>(src.size()); ++c) {
      const Gen& g = src[c];
      if (g.eps == 0) {
        // d(s^k c) = s^k dc - sigma s^{k-1} Nc   (norm term drops at k = 0)
        for (int i = 0; i < n; ++i) {
          if (E.d[i][g.i] != 0)
            D[X.slot(0, g.k, i)][c] =
                reduce(D[X.slot(0, g.k, i)][c] + E.d[i][g.i], p);
          if (g.k >= 1 && N[i][g.i] != 0)
            D[X.slot(1, g.k - 1, i)][c] =
                reduce(D[X.slot(1, g.k - 1, i)][c] - N[i][g.i], p);
        }
      } else {
        // d(sigma s^k c) = -sigma s^k dc - s^k (Tc - c)
        for (int i = 0; i < n; ++i) {
          if (E.d[i][g.i] != 0)
            D[X.slot(1, g.k, i)][c] =
                reduce(D[X.slot(1, g.k, i)][c] - E.d[i][g.i], p);
          long tw = reduce(E.T[i][g.i] - (i == g.i ? 1 : 0), p);
          if (tw != 0)
            D[X.slot(0, g.k, i)][c] = reduce(D[X.slot(0, g.k, i)][c] - tw, p);
        }
      }
    }
    rank_out[m] = matrix_rank_mod_p(std::move(D), p);
  }
  return dims_from_ranks(X, rank_out, +1);
}

long zp_stable_degree_max(const EquivariantComplex& E) {
  return 2 * static_cast<long>(E.t_truncation()) + E.min_deg() - 1;
}

long zp_stable_degree_min(const EquivariantComplex& E) {
  return E.max_deg() - 2 * static_cast<long>(E.t_truncation());
}

TMonomial equivariant_euler(const std::vector<long>& weights, long p) {
  TMonomial m;
  m.t_num = 2 * static_cast<long>(weights.size());
  long c = 1;
  for (long w : weights) {
    c *= w;
    if (p > 0) c = reduce(c, p);
  }
  m.coeff = c;
  if (m.coeff == 0) m.t_num = 0;
  return m;
}

long factorial_mod(long n, long p) {
  if (p <= 0) throw input_error("factorial_mod: p must be positive");
  long r = 1 % p;
  for (long k = 2; k <= n; ++k) r = r * k % p;
  return r;
}

std::map<long, TMonomial> steenrod_constants(long p, long x_deg) {
  if (!is_prime(p)) throw input_error("steenrod_constants: p must be prime");
  if (x_deg < 0) throw input_error("steenrod_constants: negative degree");
  std::map<long, TMonomial> out;
  if (p == 2) {
    for (long i = 0; i <= x_deg; ++i) out[i] = TMonomial{1, x_deg - i};
    return out;
  }
  const long h = (p - 1) / 2;
  // (-1)^*, * = |x|(|x|-1)/2 * (p-1)/2, evaluated as a parity.
  long star = (x_deg * (x_deg - 1) / 2 % 2) * (h % 2) % 2;
  long lead = pow_mod(factorial_mod(h, p), x_deg, p);
  if (star) lead = reduce(-lead, p);
  for (long i = 0; 2 * i <= x_deg; ++i) {
    long c = i % 2 == 0 ? lead : reduce(-lead, p);
    out[i] = TMonomial{c, (x_deg - 2 * i) * (p - 1)};
  }
  return out;
}

TMonomial steenrod_h3(long p) {
  if (!is_prime(p)) throw input_error("steenrod_h3: p must be prime");
  if (p == 2) return TMonomial{1, 3};
  return TMonomial{reduce(-factorial_mod((p - 1) / 2, p), p), 3 * (p - 1)};
}

long bockstein_theta_coefficient(long p) {
  if (!is_prime(p)) throw input_error("bockstein: p must be prime");
  // Rank-1 trivial-coefficient model over Z/p^2: the lifted equivariant
  // differential sends theta to t times the norm of 1, and the Bockstein is
  // that coefficient divided by p.
  const long p2 = p * p;
  long norm = 0;
  for (long a = 0; a < p; ++a) norm = (norm + 1) % p2;
  if (norm % p != 0)
    throw internal_error("bockstein: norm not divisible by p");
  return (norm / p) % p;
}

}  // namespace mcpower
