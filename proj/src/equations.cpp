#include "forge/equations.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "forge/errors.hpp"

namespace forge::equations {

namespace {

using expfun::EvalResult;
using expfun::ep_add;
using expfun::ep_eval;
using expfun::ep_exp;
using expfun::ep_from_poly;
using expfun::ep_halve_exponent;
using expfun::ep_max_term_logmag;
using expfun::ep_mul;
using expfun::ep_neg;
using expfun::ep_normalize;
using expfun::ep_partial;
using expfun::ep_scale;
using expfun::ep_shift;
using expfun::ep_term;

const double kInf = std::numeric_limits<double>::infinity();

ExpPoly square(const ExpPoly& x) { return ep_mul(x, x); }

}  // namespace

int spec_dim(const EquationSpec& eq) {
  return std::visit([](const auto& e) { return e.g.n; }, eq);
}

OmegaRoots omega_roots(Cx a, Cx b, Cx omega) {
  if (a * b == Cx(0.0, 0.0)) throw ZeroProduct("omega_roots: a*b must be nonzero");
  OmegaRoots r;
  r.omega_zero = (omega == Cx(0.0, 0.0));
  const Cx mu = std::sqrt(a) * std::sqrt(b);
  const Cx disc2 = omega * omega - a * b;
  if (disc2 == Cx(0.0, 0.0)) {
    r.degenerate = true;
    r.w1 = r.w2 = -omega / mu;
    return r;
  }
  const Cx disc = std::sqrt(disc2);
  r.w1 = (-omega + disc) / mu;
  r.w2 = (-omega - disc) / mu;
  return r;
}

double factor_gap(Cx a, Cx b, Cx omega, Cx F, Cx G) {
  if (omega * omega == a * b)
    throw DegenerateRoots("factor_gap: omega^2 == ab collapses the factorization");
  const OmegaRoots r = omega_roots(a, b, omega);
  const Cx sa = std::sqrt(a);
  const Cx sb = std::sqrt(b);
  const Cx lhs = a * F * F + 2.0 * omega * F * G + b * G * G;
  const Cx rhs = (sa * F - r.w1 * sb * G) * (sa * F - r.w2 * sb * G);
  const double scale = std::max({std::abs(a * F * F), std::abs(2.0 * omega * F * G),
                                 std::abs(b * G * G), DBL_MIN});
  return std::abs(lhs - rhs) / scale;
}

double factor_check(Cx a, Cx b, Cx omega, const ExpPoly& F, const ExpPoly& G,
                    const ZeroCheckConfig& cfg) {
  if (omega * omega == a * b)
    throw DegenerateRoots("factor_check: omega^2 == ab collapses the factorization");
  if (F.n != G.n) throw MalformedInput("factor_check: dimension mismatch");
  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  for (int s = 0; s < cfg.n_samples; ++s) {
    const CxVec z = expfun::sample_polydisc(F.n, cfg.radius, rng);
    const Cx fv = ep_eval(F, z).value;
    const Cx gv = ep_eval(G, z).value;
    worst = std::max(worst, factor_gap(a, b, omega, fv, gv));
  }
  return worst;
}

ResidualParts residual(const EquationSpec& eq, const ExpPoly& f) {
  ResidualParts out;

  if (const auto* e = std::get_if<BinomialDiff>(&eq)) {
    const ExpPoly fc = ep_shift(f, e->c);
    const ExpPoly S = ep_add(ep_scale(fc, e->a1), ep_scale(f, e->a0));
    const ExpPoly P2 = ep_from_poly(algebra::poly_mul(e->P, e->P));
    out.pieces.push_back(ep_scale(square(f), e->a));
    out.pieces.push_back(ep_scale(ep_mul(P2, square(S)), e->b));
    out.pieces.push_back(ep_neg(ep_mul(ep_from_poly(e->Q), ep_exp(e->g))));
  } else if (const auto* e = std::get_if<PDDE>(&eq)) {
    const ExpPoly fc = ep_shift(f, e->c);
    const ExpPoly df = ep_partial(f, e->axis);
    const ExpPoly P2 = ep_from_poly(algebra::poly_mul(e->P, e->P));
    out.pieces.push_back(ep_scale(square(fc), e->a));
    out.pieces.push_back(ep_scale(ep_mul(P2, square(df)), e->b));
    out.pieces.push_back(ep_neg(ep_mul(ep_from_poly(e->Q), ep_exp(e->g))));
  } else if (const auto* e = std::get_if<Trinomial>(&eq)) {
    const ExpPoly fc = ep_shift(f, e->c);
    const ExpPoly G = ep_add(ep_scale(fc, e->g1), ep_scale(f, e->g2));
    out.pieces.push_back(ep_scale(square(f), e->a));
    out.pieces.push_back(ep_scale(ep_mul(f, G), 2.0 * e->omega));
    out.pieces.push_back(ep_scale(square(G), e->b));
    out.pieces.push_back(ep_neg(ep_exp(e->g)));
  } else if (const auto* e = std::get_if<LinearReduced>(&eq)) {
    const ExpPoly fc = ep_shift(f, e->c);
    const ExpPoly G = ep_add(ep_scale(fc, e->g1), ep_scale(f, e->g2));
    out.pieces.push_back(ep_scale(f, std::sqrt(e->a)));
    out.pieces.push_back(ep_scale(G, static_cast<double>(e->sign_b) * std::sqrt(e->b)));
    out.pieces.push_back(
        ep_scale(ep_halve_exponent(ep_exp(e->g)), Cx(-static_cast<double>(e->sign_rhs), 0.0)));
  } else {
    throw MalformedInput("residual: unknown equation kind");
  }

  ExpPoly acc = expfun::ep_zero(spec_dim(eq));
  for (const ExpPoly& p : out.pieces) acc = ep_add(acc, p);
  out.residual = acc;
  return out;
}

VerificationReport verify(const EquationSpec& eq, const ExpPoly& f, const ZeroCheckConfig& cfg) {
  const ResidualParts parts = residual(eq, f);

  VerificationReport rep;
  rep.seed = cfg.seed;
  if (parts.residual.terms.empty()) {
    rep.symbolic_zero = true;
    return rep;
  }

  std::mt19937_64 rng(cfg.seed);
  const int n = spec_dim(eq);
  double worst = 0.0;
  CxVec worst_z;
  for (int s = 0; s < cfg.n_samples; ++s) {
    const CxVec z = expfun::sample_polydisc(n, cfg.radius, rng);
    double scale = -kInf;
    for (const ExpPoly& p : parts.pieces) scale = std::max(scale, ep_max_term_logmag(p, z));
    if (scale == -kInf) continue;
    const EvalResult ev = ep_eval(parts.residual, z);
    const double rel = (ev.log.logmag == -kInf) ? 0.0 : std::exp(ev.log.logmag - scale);
    if (rel > worst) {
      worst = rel;
      worst_z = z;
    }
    ++rep.n_points;
  }
  rep.max_rel_residual = worst;
  if (worst > cfg.tol && !worst_z.empty()) rep.witness = worst_z;
  return rep;
}

Verdict diagnose(const EquationSpec& eq) {
  Verdict v;

  if (const auto* e = std::get_if<BinomialDiff>(&eq)) {
    if (e->a1 == Cx(0.0, 0.0)) {
      v.kind = Verdict::Kind::OutOfScope;
      v.reason = "a1 = 0 removes the shift term; not a difference equation";
      return v;
    }
    const int degP = algebra::poly_total_degree(e->P);
    if (degP >= 1) {
      v.kind = Verdict::Kind::NoFiniteOrderSolution;
      if (e->a1 == Cx(1.0, 0.0) && e->a0 == Cx(-1.0, 0.0)) {
        v.reason = "th-2.1: pure difference with nonconstant P admits no finite-order "
                   "transcendental entire solution";
        Certificate cert;
        cert.p = degP;
        cert.q = algebra::poly_total_degree(e->Q);
        cert.parity = "2p+q-1=q has no integer solution (forces p=1/2)";
        v.certificate = cert;
      } else {
        v.reason = "th-2.1: P must reduce to a non-zero constant";
      }
      return v;
    }
    v.kind = Verdict::Kind::SolutionFamilyExists;
    if (e->g.n == 1 && e->a0 == Cx(0.0, 0.0) && algebra::poly_is_const(e->Q) &&
        algebra::poly_is_zero(e->g)) {
      v.reason = "thm-1.1: one-variable shifted binomial with constant right side";
    } else {
      v.reason = "th-2.1: constant-P binomial difference family";
    }
    return v;
  }

  if (const auto* e = std::get_if<PDDE>(&eq)) {
    const int degP = algebra::poly_total_degree(e->P);
    if (degP >= 1) {
      v.kind = Verdict::Kind::NoFiniteOrderSolution;
      v.reason = "th-2.2: nonconstant P rules out finite-order transcendental entire solutions";
      return v;
    }
    v.kind = Verdict::Kind::SolutionFamilyExists;
    v.reason = "th-2.2: constant-P shift/derivative family";
    return v;
  }

  if (const auto* e = std::get_if<Trinomial>(&eq)) {
    if (e->g1 == Cx(0.0, 0.0)) {
      v.kind = Verdict::Kind::OutOfScope;
      v.reason = "g1 = 0 removes the shift from G; not a difference trinomial";
      return v;
    }
    const Cx d = e->omega * e->omega - e->a * e->b;
    const double dscale = std::max(std::abs(e->a * e->b), std::abs(e->omega) * std::abs(e->omega));
    if (std::abs(d) <= 1e-12 * dscale) {
      v.kind = Verdict::Kind::SolutionFamilyExists;
      v.reason = "remark-3.5: omega^2 = ab collapses the trinomial to a perfect square";
      return v;
    }
    v.kind = Verdict::Kind::SolutionFamilyExists;
    v.reason = (e->omega == Cx(0.0, 0.0)) ? "th-2.4: omega = 0 trinomial family"
                                          : "th-2.3: general trinomial family";
    return v;
  }

  v.kind = Verdict::Kind::SolutionFamilyExists;
  v.reason = "remark-3.5: linear reduction always admits the homogeneous+particular family";
  return v;
}

std::string verdict_kind_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::SolutionFamilyExists: return "SolutionFamilyExists";
    case Verdict::Kind::NoFiniteOrderSolution: return "NoFiniteOrderSolution";
    case Verdict::Kind::OutOfScope: return "OutOfScope";
  }
  return "OutOfScope";
}

}  // namespace forge::equations
