#pragma once

#include <vector>

namespace mcpower {

// Centralized sign conventions. Every Koszul-type sign in the library is
// produced here so the conventions live in one place:
//   reduced degree        ||a|| = |a| - 1
//   prefix weight         maltese(i) = ||a_1|| + ... + ||a_i||
//   structure-map sign    (-1)^{maltese(i)} for inserting mu^j after slot i
//   insertion sign        (-1)^{maltese(i) * ||c||} for inserting a cochain
//   operadic corner sign  (-1)^{(d-1)|a_1| + (d-2)|a_2| + ... + |a_{d-1}|}

inline int reduced_degree(int degree) { return degree - 1; }

// +1 or -1 according to the parity of e (e may be negative).
inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : ((e % 2 == 1 || e % 2 == -1) ? -1 : 1); }

// Prefix sums of reduced degrees: maltese[i] = ||a_1|| + ... + ||a_i||,
// with maltese[0] = 0.
inline std::vector<int> maltese_prefix(const std::vector<int>& degrees) {
  std::vector<int> m(degrees.size() + 1, 0);
  for (size_t i = 0; i < degrees.size(); ++i) m[i + 1] = m[i] + reduced_degree(degrees[i]);
  return m;
}

// Sign of the inner-insertion term of the structure-map relations:
// mu(a_1, ..., mu(a_{i+1}, ..., a_{i+j}), ..., a_d) carries (-1)^{maltese(i)}.
inline int structure_insertion_sign(const std::vector<int>& maltese, int i) {
  return sign_pow(maltese[static_cast<size_t>(i)]);
}

// Sign for inserting a cochain of reduced degree rc after slot i.
inline int cochain_insertion_sign(const std::vector<int>& maltese, int i, int rc) {
  return sign_pow(static_cast<long>(maltese[static_cast<size_t>(i)]) * rc);
}

// Sign relating the operadic top-cell orientation to the structure maps:
// (-1)^{(d-1)|a_1| + (d-2)|a_2| + ... + |a_{d-1}|}.
inline int operad_corner_sign(const std::vector<int>& degrees) {
  long e = 0;
  const long d = static_cast<long>(degrees.size());
  for (long i = 0; i < d; ++i) e += (d - 1 - i) * degrees[static_cast<size_t>(i)];
  return sign_pow(e);
}

// Associahedron facet sign: the face with the inner vertex eating inputs
// i+1..i+j carries (-1)^{(d-i-j)j + i}.
inline int associahedron_facet_sign(int d, int i, int j) {
  return sign_pow(static_cast<long>(d - i - j) * j + i);
}

}  // namespace mcpower
