#pragma once

// Quantum-Steenrod layer for monotone symplectic manifolds: registered Fano
// threefold models with their quantum periods, the mod-p endomorphism scalar
// on H^3 computed from the period by two independent routes, the covariantly
// constant extension of an endomorphism through the small quantum connection,
// and the low-(q-)degree quantum Steenrod formula evaluated against a
// user-supplied table of Gromov-Witten invariants.

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mcpower {

// ---------------------------------------------------------------------------
// Registered threefold models.
//
// Each model is a Fano threefold whose odd cohomology is concentrated in
// degree 3, together with (a) the eigenvalue lambda of quantum multiplication
// by c_1 on H^3 and (b) the closed form of its normalized quantum period
//   e^{-lambda q} Pi = sum_m P_m q^m.
// The registered data:
//   TwoQuadrics  intersection of two quadrics in P^5:
//                lambda = 0,   P_{2d} = (2d)!^2 / (d!)^6, odd m vanish.
//   Cubic        cubic threefold in P^4:
//                lambda = 0,   P_{2d} = (3d)! / (d!)^5, odd m vanish.
//   Quartic      quartic threefold in P^4:
//                lambda = -24, P_m = (4m)! / (m!)^5.
//   Blowup12     bidegree-(1,2) hypersurface in P^1 x P^3 (blowup of P^3
//                along an elliptic curve):
//                lambda = -1,  P_m = sum_{d1+2d2=m} m! / (d1!^2 d2!^4).
enum class FanoModel { TwoQuadrics, Cubic, Quartic, Blowup12 };

const char* fano_model_name(FanoModel model);
FanoModel fano_model_from_name(const std::string& name);  // input_error if unknown
long fano_lambda(FanoModel model);

// Coefficients P_0 .. P_N of the normalized quantum period e^{-lambda q} Pi,
// exact rationals.  Requires 0 <= N <= 64.
std::vector<mpq_class> quantum_period(FanoModel model, long N);

// The scalar by which the tree-power endomorphism acts on H^3 of the model,
// computed mod p.  Two routes are evaluated internally:
//   (a)  -lambda^{p-1}/(p-1)!
//          + sum_{2<=d<=p-1} (-1)^{d-1} lambda^{p-1-d}/(p-1-d)! c_d,
//        where c_d are the coefficients of the unnormalized period Pi
//        (reconstructed as c_d = sum_k lambda^k/k! P_{d-k}; the scheme is
//        checked via c_0 = 1 and c_1 = 0), and
//   (b)  minus the q^{p-1}-coefficient of e^{-lambda q} Pi.
// For odd p the two agree as exact rationals and the computation fails with
// internal_error otherwise.  For p = 2 (admitted for Blowup12 only, where
// the value is defined) they agree mod 2, and route (b) is returned.
// The final reduction mod p is the only one performed; a denominator
// divisible by p raises arith_error.  Result is in [0, p).
long qxi_threefold(FanoModel model, long p);

struct QxiRoutes {
  mpq_class explicit_sum;  // route (a)
  mpq_class period_coeff;  // route (b)
  long value = 0;          // common reduction mod p, in [0, p)
};
QxiRoutes qxi_threefold_routes(FanoModel model, long p);

// ---------------------------------------------------------------------------
// Covariantly constant endomorphisms of the small quantum connection.

using QMat = std::vector<std::vector<mpq_class>>;

// Quantum multiplication by the degree-2 reference class, as a matrix series
// A[0] + A[1] q + A[2] q^2 + ... acting on a chosen basis of cohomology.
// A[0] is the cup-product block and must be nilpotent (cup by a positive-
// degree class on a finite-dimensional graded space always is).
struct QuantumAction {
  std::vector<QMat> A;
};

// Endomorphism series Phi = sum_{k,i} comp[k][i] q^k t^{-i}; comp[k] lists
// the t^0, t^{-1}, ... layers of the q^k coefficient.
struct TEndomorphism {
  std::vector<std::vector<QMat>> comp;
};

// Solves t q d/dq Phi + [action, Phi] = 0 order by order in q, starting from
// the q^0 term phi0, up to and including q^order.  phi0 must commute with
// A[0] (input_error otherwise), and A[0] must be nilpotent (input_error).
// The solution is unique: writing Phi^(k) = sum_i X_i t^{-i}, the t^{+1}
// component of the equation forces X_0 = 0 for k >= 1, and each further
// layer is determined by
//   X_{i+1} = -(1/k) ( [A_0, X_i] + sum_{j>=1} [A_j, Phi^(k-j)_i] ).
// The computed series is re-checked termwise against the equation before
// returning (internal_error on residual).
TEndomorphism flat_endomorphism_solve(const QuantumAction& action,
                                      const QMat& phi0, long order);

// ---------------------------------------------------------------------------
// Low-degree quantum Steenrod evaluation from a Gromov-Witten table.
//
// The table is user-supplied data (this library does no curve counting).
// It stores a basis of cohomology classes with degrees, the integrals over
// the fundamental class, cup products, a Kunneth-diagonal list of dual basis
// pairs, the curve classes with their symplectic and Chern degrees, and the
// invariant values themselves, keyed by curve class and insertion multiset
// (each insertion is a psi-power and a class label).  Entries are permitted
// when the number of insertions is >= 3, or for any number of insertions
// when 0 < omega.A < p; the loader rejects anything else.  Invariants absent
// from the table are treated as zero; referencing an undeclared class label
// is an input_error.

struct GWEntry {
  std::string curve_class;
  long omega = 0;  // omega . A
  long c1 = 0;     // c_1 . A
  std::vector<std::pair<long, std::string>> insertions;  // (psi power, class)
  mpq_class value;
};

struct GWTable {
  std::string name;
  long p = 0;    // the prime
  long dim = 0;  // real dimension of the manifold
  std::map<std::string, long> class_deg;
  std::map<std::string, mpq_class> integrals;  // absent = 0
  // cup[{a,b}] = expansion of a*b; loader completes the transpose with the
  // Koszul sign (-1)^{|a||b|}.
  std::map<std::pair<std::string, std::string>,
           std::vector<std::pair<std::string, mpq_class>>>
      cup;
  std::vector<std::pair<std::string, std::string>> dual_pairs;  // (e_k, dual)
  std::map<std::string, std::pair<long, long>> curve_classes;   // A -> (omega, c1)
  std::vector<GWEntry> gw;
};

// One monomial of the total power operation applied to the input class:
// coefficient c on class `label` at t^{t_num/2} (t_num doubled, odd = theta,
// matching TMonomial in equivariant.hpp).
struct StTerm {
  long t_num = 0;
  std::string label;
  mpq_class c;
};

// The input datum: the class x the power operation is applied to, the class
// y it is integrated against, and the expansion of the classical total power
// operation St_p(x) (components of degree deg(class) + t_num = p deg(x)).
struct SteenrodInput {
  std::string x;
  std::string y;
  std::vector<StTerm> terms;
};

// Result of the four-term evaluation of int_X y QSt_p(x):
//   by_q     (q-degree, t_num) -> coefficient mod p, q-degree 0 = classical;
//   pairing  t_num -> coefficient mod p summed over q (the q = 1
//            specialization, legitimate since only finitely many classes
//            contribute in the window);
//   qxi_pairing  the normalized extraction: the theta-component for p = 2,
//            and ((p-1)/2)!^{-1} times the t^{(p-1)/2}-component for p > 2.
struct QstResult {
  std::map<std::pair<long, long>, long> by_q;
  std::map<long, long> pairing;
  long qxi_pairing = 0;
};

// Evaluates the four-term low-degree display
//   int y St_p(x)
//   - t^{-1} sum_{0<omega.A<p} q^{omega.A} < y, (1+t^{-1}psi)^{-1} St_p(x) >_{2,A}
//   + t^{-2} sum_{0<omega.A<p} q^{omega.A} < (1-t^{-1}psi)^{-1} y St_p(x) >_{1,A}
//   - t^{-3} sum_{omega.A0, omega.A1 > 0, omega.(A0+A1) < p} sum_k q^{...}
//       < y, (1+t^{-1}psi)^{-1} St_p(x) e_k >_{2,A0}
//       < (1-t^{-1}psi)^{-1} e_k^dual >_{1,A1}
// over F_p[t, theta], with exact rational accumulation and a single final
// reduction mod p (arith_error if a denominator is divisible by p).
// Negative t-powers must cancel in the exact accumulation; a nonzero
// negative-power coefficient signals an inconsistent table (input_error).
// With indecomposable_only set, only the two middle terms are evaluated
// (the per-class localization form for holomorphically indecomposable
// classes); the classical term and the double sum are skipped.
// When deg(x) = 1 (and the classical term is included), the result is
// checked against the degree-one identity QXi_p(x) = x (input_error on
// violation).
QstResult qst_low_degree(const GWTable& table, const SteenrodInput& input,
                         bool indecomposable_only = false);

// JSON loaders.  parse_gw_table consumes the document text; load_gw_table
// reads a file.  Schema (all values exact: integers or "a/b" strings):
//   { "name": ..., "p": ..., "dim": ...,
//     "classes": [{"label": ..., "deg": ...}, ...],
//     "integrals": {label: value, ...},
//     "cup": [{"a": ..., "b": ..., "out": [{"class": ..., "c": ...}]}, ...],
//     "dual_pairs": [[e, e_dual], ...],
//     "x": label, "y": label,
//     "st_terms": [{"t_num": ..., "class": ..., "c": ...}, ...],
//     "gw": [{"class": A, "omega_dot_A": ..., "c1_A": ...,
//             "insertions": [{"psi": ..., "class": ...}, ...],
//             "value": ...}, ...] }
std::pair<GWTable, SteenrodInput> parse_gw_table(const std::string& json_text);
std::pair<GWTable, SteenrodInput> load_gw_table(const std::string& path);

// The two bundled example tables (identical content ships as files under
// fixtures/): a two-point psi-descendant on the line class of the P^2
// factor of T^2 x P^2 at p = 2, and the two ruling classes of the
// P^1 x P^1 factor of T^2 x P^1 x P^1 at p = 3.
const char* gw_fixture_t2cp2_p2();
const char* gw_fixture_t2p1p1_p3();

}  // namespace mcpower
