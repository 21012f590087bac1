#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "forge/expfun.hpp"

namespace forge::equations {

using algebra::Cx;
using algebra::CxVec;
using algebra::MPoly;
using algebra::Shift;
using expfun::ExpPoly;
using expfun::ZeroCheckConfig;

// a f(z)^2 + b P(z)^2 (a1 f(z+c) + a0 f(z))^2 = Q(z) e^{g(z)}
struct BinomialDiff {
  Cx a, b;
  MPoly P, Q, g;
  Cx a1, a0;
  Shift c;
};

// a f(z+c)^2 + b P(z)^2 (df/dz_axis)^2 = Q(z) e^{g(z)}
struct PDDE {
  Cx a, b;
  MPoly P, Q, g;
  Shift c;
  int axis = 1;  // 1-based
};

// a f^2 + 2 w f G + b G^2 = e^g with G = g1 f(z+c) + g2 f(z)
struct Trinomial {
  Cx a, b, omega, g1, g2;
  MPoly g;
  Shift c;
};

// sqrt(a) f + sign_b sqrt(b) G = sign_rhs e^{g/2}, same G as Trinomial.
struct LinearReduced {
  Cx a, b, g1, g2;
  MPoly g;
  Shift c;
  int sign_b = 1;
  int sign_rhs = 1;
};

using EquationSpec = std::variant<BinomialDiff, PDDE, Trinomial, LinearReduced>;

int spec_dim(const EquationSpec& eq);

// Roots of the quadratic in the trinomial factorization. With
// mu = sqrt(a)*sqrt(b) (componentwise principal roots, not sqrt(ab)):
//   w1 = (-w + sqrt(w^2 - ab)) / mu,  w2 = (-w - sqrt(w^2 - ab)) / mu,
// so w1*w2 = 1 and a F^2 + 2 w F G + b G^2
//          = (sqrt(a) F - w1 sqrt(b) G)(sqrt(a) F - w2 sqrt(b) G)
// hold for every complex a, b with ab != 0.
struct OmegaRoots {
  Cx w1, w2;
  bool degenerate = false;  // w^2 == ab, a single repeated root
  bool omega_zero = false;
};

OmegaRoots omega_roots(Cx a, Cx b, Cx omega);

// Scalar check of the factorization identity at given F, G. Returns the
// relative gap |lhs - rhs| / max(|a F^2|, |2 w F G|, |b G^2|).
double factor_gap(Cx a, Cx b, Cx omega, Cx F, Cx G);

// Sampled version for exponential-polynomial F, G: evaluates both sides of
// the identity at cfg.n_samples polydisc points and returns the worst
// relative gap.
double factor_check(Cx a, Cx b, Cx omega, const ExpPoly& F, const ExpPoly& G,
                    const ZeroCheckConfig& cfg = {});

struct ResidualParts {
  ExpPoly residual;               // sum of the pieces
  std::vector<ExpPoly> pieces;    // individual sides/terms, for scale tracking
};

// Residual of a candidate f (and the equation's own data) as an ExpPoly.
ResidualParts residual(const EquationSpec& eq, const ExpPoly& f);

struct VerificationReport {
  bool symbolic_zero = false;
  double max_rel_residual = 0.0;
  int n_points = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> branch_labels;  // filled by callers that enumerate branches
  std::optional<CxVec> witness;            // populated when the residual exceeds tol
};

// Symbolic-first verification. The relative scale at each sample point is the
// largest single-term magnitude across all residual pieces, so that an exact
// cancellation of huge terms still counts as zero.
VerificationReport verify(const EquationSpec& eq, const ExpPoly& f,
                          const ZeroCheckConfig& cfg = {});

struct Certificate {
  int p = 0;  // deg P
  int q = 0;  // deg Q
  std::string parity;
};

struct Verdict {
  enum class Kind { SolutionFamilyExists, NoFiniteOrderSolution, OutOfScope };
  Kind kind = Kind::OutOfScope;
  std::string reason;
  std::optional<Certificate> certificate;
};

// Classifies an equation by the published existence results. The nonconstant-P
// arms report the published verdicts; they are not re-derived here.
Verdict diagnose(const EquationSpec& eq);

std::string verdict_kind_name(Verdict::Kind k);

}  // namespace forge::equations
