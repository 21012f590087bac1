#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "forge/algebra.hpp"

namespace forge::expfun {

using algebra::Cx;
using algebra::CxVec;
using algebra::MPoly;
using algebra::Shift;

// One summand Q(z) e^{h(z)}. After normalization the exponent carries no
// constant term (it is folded into the coefficient) and coef is not zero.
struct ExpTerm {
  MPoly coef;
  MPoly expo;
};

// Finite sum of ExpTerms, closed under +, *, shift and d/dz_i.
// Canonical form: exponents pairwise distinct (up to tau_expo), terms sorted
// by (expo, coef) under mpoly_cmp.
struct ExpPoly {
  int n = 0;
  std::vector<ExpTerm> terms;
};

// A nonzero complex number e^{logmag + i*phase}, phase in (-pi, pi].
struct LogValue {
  double logmag = 0.0;
  double phase = 0.0;
};

struct EvalResult {
  Cx value{0.0, 0.0};
  LogValue log{};               // logmag = -inf encodes an exact zero
  bool total_overflow = false;  // |value| exceeded double range; log is still valid
};

struct ZeroCheckConfig {
  std::uint64_t seed = 12345;
  int n_samples = 64;
  double tol = 1e-9;     // tau_res, relative to the largest single term
  double radius = 1.5;   // polydisc radius for sampling
};

struct ZeroCertificate {
  bool is_zero = false;
  bool symbolic = false;  // true when normalization emptied the expression
  double max_rel_residual = 0.0;
  std::optional<CxVec> witness;
};

// Constructors.
ExpPoly ep_zero(int n);
ExpPoly ep_const(int n, Cx v);
ExpPoly ep_from_poly(const MPoly& q);        // q * e^0
ExpPoly ep_exp(const MPoly& h);              // 1 * e^h, normalized
ExpPoly ep_term(const MPoly& q, const MPoly& h);

bool ep_is_empty(const ExpPoly& x);

// Canonical form: strips exponent constants into coefficients (OverflowInFold
// if |Re const| > 700), merges exponent-equal terms (tau_expo = 1e-10 absolute
// per exponent coefficient) through a cancellation-aware accumulator, drops
// vanished coefficients, sorts terms.
ExpPoly ep_normalize(const ExpPoly& x);

// Ring operations; every result is normalized.
ExpPoly ep_add(const ExpPoly& x, const ExpPoly& y);
ExpPoly ep_sub(const ExpPoly& x, const ExpPoly& y);
ExpPoly ep_neg(const ExpPoly& x);
ExpPoly ep_scale(const ExpPoly& x, Cx s);
ExpPoly ep_mul(const ExpPoly& x, const ExpPoly& y);

// f(z) -> f(z+c), termwise on coefficients and exponents.
ExpPoly ep_shift(const ExpPoly& x, const Shift& c);

// d/dz_axis, 1-based axis: Q e^h -> (dQ + Q dh) e^h.
ExpPoly ep_partial(const ExpPoly& x, int axis);

// Log-domain evaluation: per-term log magnitude log|Q| + Re h and phase
// arg Q + Im h, combined against the dominant term so no intermediate e^h
// overflows while the final value is representable.
EvalResult ep_eval(const ExpPoly& x, const CxVec& z);

// Largest single-term log magnitude at z (-inf if every term vanishes there).
// This is the cancellation-aware scale for relative residuals.
double ep_max_term_logmag(const ExpPoly& x, const CxVec& z);

// For a single term with constant coefficient: halves the exponent and takes
// the principal square root of the coefficient. NotSingleExponential otherwise.
ExpPoly ep_halve_exponent(const ExpPoly& x);

// Symbolic-first zero test: empty normal form is a symbolic certificate;
// otherwise sampled evaluation against the largest-term scale.
ZeroCertificate ep_is_zero(const ExpPoly& x, const ZeroCheckConfig& cfg = {});

// Max total degree among exponents (0 for empty or purely polynomial input).
int ep_structural_degree(const ExpPoly& x);

// Uniform draw from the closed polydisc of the given radius (per-coordinate
// r*sqrt(U)*e^{2*pi*i*V}); bit-deterministic across platforms for a seed.
CxVec sample_polydisc(int n, double radius, std::mt19937_64& rng);

// Uniform double in [0,1) from the top 53 bits of the generator.
double uniform01(std::mt19937_64& rng);

}  // namespace forge::expfun
