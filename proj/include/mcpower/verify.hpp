#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Shared verification layer: every top-level claim of the library is
// packaged as a suite of individually reported checks.  The CLI and the
// acceptance runner are both thin printers over these reports.
//
// Reports are deterministic: fixed RNG seeds, no timestamps, rows emitted
// in a stable order (sorted by id within each suite).

namespace mcpower {

struct CheckRow {
  std::string id;     // stable, sortable identifier, e.g. "c01.p07"
  std::string check;  // the statement being verified, with its inputs
  std::string want;   // expected value, printed exactly
  std::string got;    // observed value, printed exactly
  bool pass = false;
};

struct SuiteReport {
  std::string suite;  // machine name, e.g. "fano-table"
  std::string title;  // one-line description
  std::vector<CheckRow> rows;

  bool ok() const;
  std::size_t passed() const;
};

// ---------------------------------------------------------------------------
// The twelve full-verification suites, in canonical order (k = 1..12):
//   1  blown-up quadric QXi table via quantum periods
//   2  the same table from eta-product coefficients
//   3  point counts of the genus-one two-quadrics curve mod p
//   4  Frobenius traces and Hasse invariants of the conductor-15 curve
//   5  closed forms and two-route agreement for the threefold QXi values
//   6  Hochschild p-th power lemma: (qc)^{.p} = Xi_p(c) q^p
//   7  group axioms for the gauge composition on Maurer-Cartan elements
//   8  associahedron / moduli-stratum combinatorics
//   9  gluing-monoid invariants of decorated trees
//  10  Z/p-equivariant cohomology: point, free orbit, Euler classes
//  11  quantum power-operation fixtures (low-degree evaluation)
//  12  formal group laws: verification and p-series
//
// Library exceptions propagate to the caller: the CLI maps them to exit
// codes, the acceptance runner reports them as criterion failures.
SuiteReport verify_criterion(int k);
std::vector<SuiteReport> verify_all();

// ---------------------------------------------------------------------------
// Parameterized single-topic reports used by the CLI subcommands.

// A-infinity structure equations and strict unit, for one registered
// algebra name ("exterior", "truncpoly2", ..., "interval"), one family
// alias ("T1", "T2", "T3"), or "all".
SuiteReport report_check_ainfty(const std::string& algebra, long p, int order);
// Same checks for an algebra loaded from a JSON basis file.
SuiteReport report_check_ainfty_file(const std::string& path, int order);

// p-th gauge power of qc against Xi_p(c) q^p on the named algebra or
// family alias, componentwise to the given length.
SuiteReport report_mc_power(const std::string& algebra, long p, int len);

// Tree-level ingredients of Xi_p: causal-ordering counts against brute
// force on all planar trees with at most max_vertices vertices, plus the
// power lemma at p = 2, 3 on the exterior algebra.
SuiteReport report_xi_trees(int max_vertices);

// Associahedron boundaries to the given top dimension plus the
// moduli-stratum counts (codimension-one faces and vertex counts).
SuiteReport report_operads(int order);

// Gluing-monoid report for one decorated-tree file.
SuiteReport report_monoid_tree(const std::string& path);

// Equivariant suite with the Wilson-quotient bound made explicit.
SuiteReport report_equivariant(long p_max);

// Formal-group-law suite: torus law verified to the given order, p-series
// classified for primes <= p_max.
SuiteReport report_fgl(long p_max, long order);

// The QXi table of the blown-up quadric for primes <= p_max, each entry
// cross-checked against the eta-product coefficient.
SuiteReport report_fano_table(long p_max);

// Point count of the two-quadrics curve at one prime, or at every good
// prime <= 41.
SuiteReport report_point_count(long p);
SuiteReport report_point_count_all();

// eta-product coefficients to order n, checked at prime exponents.
SuiteReport report_eta(int n);

}  // namespace mcpower
