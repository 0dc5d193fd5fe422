#include "mcpower/arith.hpp"

#include <algorithm>
#include <numeric>

namespace mcpower {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void validate(const ProjectiveSystem& S, long p) {
  if (S.nvars < 2) throw input_error("projective system needs >= 2 variables");
  if (!is_prime(p) || p > 101)
    throw input_error("point counts need a prime p <= 101");
  for (const auto& f : S.polys) {
    if (f.exps.size() != f.coeffs.size() || f.exps.empty())
      throw input_error("polynomial with mismatched or empty term lists");
    long deg = -1;
    for (const auto& e : f.exps) {
      if (static_cast<int>(e.size()) != S.nvars)
        throw input_error("monomial exponent list has the wrong length");
      long d = 0;
      for (int x : e) {
        if (x < 0) throw input_error("negative exponent");
        d += x;
      }
      if (deg < 0) deg = d;
      if (d != deg) throw input_error("polynomial is not homogeneous");
    }
  }
}

// evaluate f at a point mod p; coordinates are in [0, p)
long eval_poly(const HomogeneousPoly& f, const std::vector<long>& x, long p) {
  long acc = 0;
  for (std::size_t t = 0; t < f.coeffs.size(); ++t) {
    long term = ((f.coeffs[t] % p) + p) % p;
    if (term == 0) continue;
    const auto& e = f.exps[t];
    for (std::size_t v = 0; v < e.size() && term != 0; ++v)
      for (int k = 0; k < e[v]; ++k) term = term * x[v] % p;
    acc = (acc + term) % p;
  }
  return acc;
}

bool on_variety(const ProjectiveSystem& S, const std::vector<long>& x, long p) {
  for (const auto& f : S.polys)
    if (eval_poly(f, x, p) != 0) return false;
  return true;
}

// count the points of the stratum with leading coordinate `lead`, with the
// first free coordinate pinned to `first` (callers parallelize over `first`)
long count_stratum_slice(const ProjectiveSystem& S, long p, int lead,
                         long first) {
  const int n = S.nvars;
  std::vector<long> x(n, 0);
  x[lead] = 1;
  const int free0 = lead + 1;
  if (free0 >= n) return first == 0 && on_variety(S, x, p) ? 1 : 0;
  x[free0] = first;
  // odometer over the remaining free coordinates
  long count = 0;
  const int rest = n - free0 - 1;
  long total = 1;
  for (int i = 0; i < rest; ++i) total *= p;
  for (long it = 0; it < total; ++it) {
    long v = it;
    for (int i = 0; i < rest; ++i) {
      x[free0 + 1 + i] = v % p;
      v /= p;
    }
    if (on_variety(S, x, p)) ++count;
  }
  return count;
}

}  // namespace

long count_projective_points_serial(const ProjectiveSystem& S, long p) {
  validate(S, p);
  long count = 0;
  for (int lead = 0; lead < S.nvars; ++lead) {
    const long firsts = lead + 1 < S.nvars ? p : 1;
    for (long first = 0; first < firsts; ++first)
      count += count_stratum_slice(S, p, lead, first);
  }
  return count;
}

long count_projective_points(const ProjectiveSystem& S, long p) {
  validate(S, p);
  // flatten (leading index, first free coordinate) pairs into one task list
  std::vector<std::pair<int, long>> tasks;
  for (int lead = 0; lead < S.nvars; ++lead) {
    const long firsts = lead + 1 < S.nvars ? p : 1;
    for (long first = 0; first < firsts; ++first) tasks.emplace_back(lead, first);
  }
  long count = 0;
  const long ntasks = static_cast<long>(tasks.size());
#pragma omp parallel for reduction(+ : count)
  for (long i = 0; i < ntasks; ++i)
    count += count_stratum_slice(S, p, tasks[i].first, tasks[i].second);
  return count;
}

ProjectiveSystem two_quadrics_curve() {
  ProjectiveSystem S;
  S.name = "two-quadrics";
  S.nvars = 4;
  HomogeneousPoly q1;  // x0^2 + x1^2 + x2 x3
  q1.exps = {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 1, 1}};
  q1.coeffs = {1, 1, 1};
  HomogeneousPoly q2;  // x0 x1 + x2^2 + x3^2
  q2.exps = {{1, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}};
  q2.coeffs = {1, 1, 1};
  S.polys = {q1, q2};
  return S;
}

std::vector<long long> euler_factor_coeffs(long level, long N) {
  if (level < 1) throw input_error("eta level must be positive");
  if (N < 0 || N > 10000) throw input_error("eta expansion capped at q^10000");
  std::vector<long long> c(N + 1, 0);
  c[0] = 1;
  // prod (1 - q^{level n}) = sum_k (-1)^k q^{level k (3k - 1) / 2}
  for (long k = 1;; ++k) {
    const long e1 = level * k * (3 * k - 1) / 2;
    const long e2 = level * k * (3 * k + 1) / 2;
    if (e1 > N && e2 > N) break;
    const long long s = k % 2 == 0 ? 1 : -1;
    if (e1 <= N) c[e1] += s;
    if (e2 <= N) c[e2] += s;
  }
  return c;
}

std::vector<long long> eta_product_coeffs(const std::vector<long>& levels,
                                          long N) {
  if (levels.empty()) throw input_error("eta product needs at least one level");
  if (N < 0 || N > 10000) throw input_error("eta expansion capped at q^10000");
  const long lsum = std::accumulate(levels.begin(), levels.end(), 0L);
  if (lsum % 24 != 0)
    throw input_error("eta levels must sum to a multiple of 24");
  const long pre = lsum / 24;  // exponent of the q prefactor
  std::vector<long long> acc(N + 1, 0);
  if (pre <= N) acc[pre] = 1;
  for (long level : levels) {
    const auto f = euler_factor_coeffs(level, N);
    std::vector<long long> next(N + 1, 0);
    for (long e = 0; e <= N; ++e) {
      if (f[e] == 0) continue;  // pentagonal factors are very sparse
      for (long a = 0; a + e <= N; ++a)
        if (acc[a] != 0) next[a + e] += f[e] * acc[a];
    }
    acc.swap(next);
  }
  return acc;
}

}  // namespace mcpower
