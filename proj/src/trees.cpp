#include "mcpower/trees.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace mcpower {

PlanarTree PlanarTree::parse(const std::string& s) {
  PlanarTree T;
  std::vector<int> stack;
  for (char ch : s) {
    if (ch == ' ' || ch == '\t' || ch == '\n') continue;
    if (ch == '(') {
      int v = T.size();
      T.children.emplace_back();
      if (!stack.empty()) T.children[stack.back()].push_back(v);
      stack.push_back(v);
    } else if (ch == ')') {
      if (stack.empty()) throw input_error("tree parse: unbalanced ')'");
      stack.pop_back();
    } else {
      throw input_error(std::string("tree parse: unexpected character '") + ch + "'");
    }
  }
  if (!stack.empty()) throw input_error("tree parse: unbalanced '('");
  if (T.size() == 0) throw input_error("tree parse: empty tree");
  return T;
}

std::string PlanarTree::str() const {
  std::string out;
  std::function<void(int)> rec = [&](int v) {
    out += '(';
    for (int c : children[v]) rec(c);
    out += ')';
  };
  rec(0);
  return out;
}

std::vector<int> PlanarTree::parents() const {
  std::vector<int> par(children.size(), -1);
  for (int v = 0; v < size(); ++v)
    for (int c : children[v]) par[c] = v;
  return par;
}

std::vector<int> PlanarTree::subtree_sizes() const {
  std::vector<int> sz(children.size(), 1);
  for (int v = size() - 1; v >= 0; --v)
    for (int c : children[v]) sz[v] += sz[c];
  return sz;
}

namespace {

// Append to `out` all trees obtainable by distributing n vertices as a forest
// under an existing root callback.
void forests(int n, const std::function<void(const std::vector<PlanarTree>&)>& emit,
             std::vector<PlanarTree>& acc) {
  if (n == 0) {
    emit(acc);
    return;
  }
  for (int first = 1; first <= n; ++first) {
    for (const PlanarTree& T : all_planar_trees(first)) {
      acc.push_back(T);
      forests(n - first, emit, acc);
      acc.pop_back();
    }
  }
}

PlanarTree assemble(const std::vector<PlanarTree>& subtrees) {
  PlanarTree T;
  T.children.emplace_back();
  for (const PlanarTree& S : subtrees) {
    int base = T.size();
    T.children[0].push_back(base);
    for (int v = 0; v < S.size(); ++v) {
      T.children.emplace_back();
      for (int c : S.children[v]) T.children[base + v].push_back(base + c);
    }
  }
  return T;
}

}  // namespace

std::vector<PlanarTree> all_planar_trees(int n) {
  if (n < 1) throw input_error("all_planar_trees: n must be >= 1");
  std::vector<PlanarTree> out;
  std::vector<PlanarTree> acc;
  forests(n - 1, [&](const std::vector<PlanarTree>& subtrees) { out.push_back(assemble(subtrees)); },
          acc);
  return out;
}

mpz_class causal_orderings(const PlanarTree& T) {
  mpz_class num;
  mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(T.size()));
  for (int s : T.subtree_sizes()) num /= s;
  return num;
}

mpz_class causal_orderings_brute(const PlanarTree& T) {
  const int n = T.size();
  std::vector<int> par = T.parents();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class count = 0;
  do {
    // perm[v] = the step at which vertex v is applied; need perm[v] < perm[parent].
    bool ok = true;
    for (int v = 1; v < n && ok; ++v) ok = perm[v] < perm[par[v]];
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace mcpower
