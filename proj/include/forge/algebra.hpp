#pragma once

#include <complex>
#include <map>
#include <vector>

#include "forge/errors.hpp"

namespace forge::algebra {

using Cx = std::complex<double>;
using CxVec = std::vector<Cx>;

// Exponent vector of a monomial; length equals the ambient dimension n.
using MIdx = std::vector<int>;

// Shift vector c in C^n (the displacement of z |-> z+c).
using Shift = CxVec;

int total_degree(const MIdx& e);

// Graded lexicographic order: total degree first, then plain lex.
// Fixed once so every serialized polynomial is deterministic.
struct GradedLex {
  bool operator()(const MIdx& a, const MIdx& b) const;
};

// Sparse multivariate polynomial over complex double coefficients.
// Invariants: every key has length n; no stored coefficient at or below
// tau_coef = 1e-14 * (largest coefficient magnitude); all values finite.
struct MPoly {
  int n = 0;
  std::map<MIdx, Cx, GradedLex> terms;
};

// Direction d with d.c = 0 used to build c-periodic polynomials H(sum d_i z_i).
struct PeriodicDirection {
  CxVec d;
  Cx pairing;  // the bilinear value d.c at construction time (must be 0)
};

// Accumulator for polynomial sums that tracks, per output monomial, the
// largest single contribution ever added. finalize() drops any cell whose
// final magnitude is at or below 1e-14 of that peak: after catastrophic
// cancellation the remainder is rounding noise, and keeping it would pollute
// exact structural identities (periodic fixed points, symbolic zeros).
// Sums run in long double so the drop threshold is honest.
class PolyAccum {
 public:
  explicit PolyAccum(int n) : n_(n) {}
  void add_term(const MIdx& e, std::complex<long double> v);
  void add_term(const MIdx& e, Cx v);
  void add(const MPoly& p);
  void add_scaled(const MPoly& p, Cx s);
  MPoly finalize() const;
  int dim() const { return n_; }

 private:
  struct Cell {
    std::complex<long double> sum{0.0L, 0.0L};
    double peak = 0.0;
  };
  int n_ = 0;
  std::map<MIdx, Cell, GradedLex> cells_;
};

// Constructors.
MPoly poly_zero(int n);
MPoly poly_const(int n, Cx v);
MPoly poly_monomial(int n, const MIdx& e, Cx coef);
MPoly poly_linear(const CxVec& coeffs, Cx constant = Cx(0.0));

// Queries.
bool poly_is_zero(const MPoly& p);
bool poly_is_const(const MPoly& p);
Cx poly_const_term(const MPoly& p);
int poly_total_degree(const MPoly& p);  // 0 for the zero polynomial
double poly_max_abs(const MPoly& p);

// Arithmetic. All results pass through PolyAccum normalization.
MPoly poly_add(const MPoly& x, const MPoly& y);
MPoly poly_sub(const MPoly& x, const MPoly& y);
MPoly poly_neg(const MPoly& x);
MPoly poly_scale(const MPoly& x, Cx s);
MPoly poly_mul(const MPoly& x, const MPoly& y);
MPoly poly_pow(const MPoly& x, int k);

// Evaluation at a point (long double accumulation, deterministic term order).
Cx poly_eval(const MPoly& p, const CxVec& z);

// Taylor shift: returns q with q(z) = p(z+c). Source terms are accumulated
// per total-degree class so that rounding junk from one (large) degree layer
// cannot swallow true small coefficients contributed by another layer.
MPoly poly_shift(const MPoly& p, const Shift& c);

// Formal partial derivative along a 1-based axis.
MPoly poly_partial(const MPoly& p, int axis);

// Canonical total order on polynomials (dimension, then termwise graded-lex
// walk, then coefficient by real/imag part). Used to sort ExpPoly terms.
int mpoly_cmp(const MPoly& x, const MPoly& y);

// Coefficientwise comparison relative to the larger of the two max-|coef|
// scales. tol = 0 demands exact equality (same support, identical values).
bool poly_approx_equal(const MPoly& x, const MPoly& y, double tol);

// The linear form s = sum d_i z_i.
MPoly direction_form(const CxVec& d);

// H(s) = sum_k coeffs[k] s^k with s = sum d_i z_i. Demands d.c == 0 exactly
// (PeriodicityViolation otherwise); the result is then a bit-exact fixed
// point of poly_shift(., c).
MPoly make_periodic(const CxVec& d, const Shift& c, const CxVec& coeffs);

// Structured direction with d.c = 0 bit-exact: d_i = c_j, d_j = -c_i over the
// first two usable axes, zeros elsewhere. Needs n >= 2 and c != 0.
CxVec orthogonal_direction(const Shift& c);

}  // namespace forge::algebra
