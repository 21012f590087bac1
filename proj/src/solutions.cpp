#include "forge/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "forge/errors.hpp"

namespace forge::solutions {

namespace {

using algebra::MIdx;
using algebra::poly_add;
using algebra::poly_const;
using algebra::poly_eval;
using algebra::poly_is_zero;
using algebra::poly_linear;
using algebra::poly_mul;
using algebra::poly_scale;
using algebra::poly_shift;
using algebra::poly_zero;
using equations::BinomialDiff;
using equations::LinearReduced;
using equations::PDDE;
using equations::Trinomial;
using expfun::ep_add;
using expfun::ep_exp;
using expfun::ep_from_poly;
using expfun::ep_halve_exponent;
using expfun::ep_is_zero;
using expfun::ep_mul;
using expfun::ep_normalize;
using expfun::ep_partial;
using expfun::ep_scale;
using expfun::ep_shift;
using expfun::ep_sub;
using expfun::ep_term;
using expfun::ExpTerm;

constexpr double kPi = std::numbers::pi;

Cx guarded_exp(Cx w, const char* what) {
  if (std::abs(w.real()) > 700.0)
    throw OverflowInFold(std::string(what) + ": |Re| > 700 in a constant exponential");
  return std::exp(w);
}

int checked_axis(int axis, int n, const char* who) {
  if (axis < 1 || axis > n)
    throw MalformedInput(std::string(who) + ": axis " + std::to_string(axis) +
                         " out of range for dimension " + std::to_string(n));
  return axis;
}

CxVec checked_linear(const CxVec& v, int n, const char* who) {
  if (static_cast<int>(v.size()) != n)
    throw MalformedInput(std::string(who) + ": linear coefficient count does not match dimension");
  return v;
}

int checked_pm(const Branch& b) {
  const int pm = bget(b, "pm", 1);
  if (pm != 1 && pm != -1) throw MalformedInput("branch key pm must be +1 or -1");
  return pm;
}

Shift negated(const Shift& c) {
  Shift m(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) m[i] = -c[i];
  return m;
}

void require_exact_period(const MPoly& q, const Shift& c, const char* who) {
  if (!algebra::poly_approx_equal(poly_shift(q, c), q, 0.0))
    throw PeriodicityViolation(std::string(who) + " is not an exact fixed point of the shift");
}

// The two linear factors of the trinomial quadratic. With principal roots
// mu = sqrt(a)*sqrt(b), w1*w2 = 1 and the factorization holds identically.
Cx prefactor_beta(Cx w1, Cx w2, Cx xi, Cx sa) { return (w2 * xi * xi - w1) / (xi * sa * (w2 - w1)); }

Cx side_target_X(Cx sa, Cx sb, Cx g1, Cx g2, Cx w1, Cx w2, Cx xi2) {
  const Cx A1 = w1 * g2 * sb - sa;
  const Cx A2 = w2 * g2 * sb - sa;
  return (A1 - A2 * xi2) / (g1 * sb * (w2 * xi2 - w1));
}

Cx shift_multiplier_R(Cx sa, Cx sb, Cx g1, Cx g2, Cx w) { return (sa - g2 * sb * w) / (g1 * sb * w); }

Constructed trinomial_single(const char* tag, Cx a, Cx b, Cx omega, Cx g1, Cx g2, Cx w1, Cx w2,
                             Cx xi, int axis, const CxVec& L0, const PeriodicSpec& Hspec, Cx Bconst,
                             int k, const Shift& c, const Branch& branch) {
  const int n = static_cast<int>(c.size());
  checked_axis(axis, n, tag);
  if (xi == Cx(0.0, 0.0)) throw ZeroXi(std::string(tag) + ": xi must be nonzero");

  const Cx sa = std::sqrt(a);
  const Cx sb = std::sqrt(b);
  const Cx xi2 = xi * xi;
  const Cx den = w2 * xi2 - w1;
  if (std::abs(den) <= 1e-14 * (std::abs(w2 * xi2) + std::abs(w1)))
    throw BranchDegenerate(std::string(tag) + ": w2*xi^2 - w1 vanishes; prefactor undefined");

  const Cx X = side_target_X(sa, sb, g1, g2, w1, w2, xi2);
  if (X == Cx(0.0, 0.0))
    throw ZeroTarget(std::string(tag) + ": side-condition target e^{L(c)/2} would be zero");

  const Cx v = 2.0 * std::log(X) + Cx(0.0, 4.0 * kPi * static_cast<double>(k));
  const MPoly L = linear_with_pairing(v, c, axis, L0);
  const MPoly H = realize_periodic(Hspec, c, n);
  const Cx beta = prefactor_beta(w1, w2, xi, sa);

  MPoly gpoly = poly_add(poly_add(L, H), poly_const(n, Bconst));
  const ExpPoly f = ep_term(poly_const(n, beta), poly_scale(gpoly, Cx(0.5, 0.0)));

  const Cx Ehalf = guarded_exp(v * 0.5, tag);

  Constructed out;
  out.bundle.f = f;
  out.bundle.g = gpoly;
  out.bundle.theorem = tag;
  out.bundle.branch = branch;
  out.bundle.derived = {{"w1", w1},
                        {"w2", w2},
                        {"xi", xi},
                        {"X", X},
                        {"beta", beta},
                        {"Lc", v},
                        {"E_half", Ehalf},
                        {"side_condition_residual", Cx(std::abs(X - Ehalf) / std::abs(X), 0.0)}};
  out.equation = Trinomial{a, b, omega, g1, g2, gpoly, c};
  return out;
}

Constructed trinomial_two(const char* tag, Cx a, Cx b, Cx omega, Cx g1, Cx g2, Cx w1, Cx w2,
                          int axis1, int axis2, const CxVec& L10, const CxVec& L20,
                          const PeriodicSpec& H1spec, const PeriodicSpec& H2spec, Cx D1, Cx D2,
                          int k1, int k2, const Shift& c, const Branch& branch) {
  const int n = static_cast<int>(c.size());
  checked_axis(axis1, n, tag);
  checked_axis(axis2, n, tag);

  const Cx sa = std::sqrt(a);
  const Cx sb = std::sqrt(b);
  const Cx T1 = shift_multiplier_R(sa, sb, g1, g2, w2);
  const Cx T2 = shift_multiplier_R(sa, sb, g1, g2, w1);
  if (T1 == Cx(0.0, 0.0) || T2 == Cx(0.0, 0.0))
    throw ZeroTarget(std::string(tag) + ": a shift-multiplier target vanishes");

  const Cx v1 = std::log(T1) + Cx(0.0, 2.0 * kPi * static_cast<double>(k1));
  const Cx v2 = std::log(T2) + Cx(0.0, 2.0 * kPi * static_cast<double>(k2));
  const MPoly L1 = linear_with_pairing(v1, c, axis1, L10);
  const MPoly L2 = linear_with_pairing(v2, c, axis2, L20);
  const MPoly H1 = realize_periodic(H1spec, c, n);
  const MPoly H2 = realize_periodic(H2spec, c, n);

  if (algebra::poly_approx_equal(poly_add(L1, H1), poly_add(L2, H2), 1e-12))
    throw BranchDegenerate(std::string(tag) +
                           ": the two exponents coincide; family degenerates to one exponential");

  const Cx denom = sa * (w2 - w1);
  const MPoly h1 = poly_add(poly_add(L1, H1), poly_const(n, D1));
  const MPoly h2 = poly_add(poly_add(L2, H2), poly_const(n, D2));

  ExpPoly f{n, {}};
  f.terms.push_back({poly_const(n, w2 / denom), h1});
  f.terms.push_back({poly_const(n, -w1 / denom), h2});
  f = ep_normalize(f);

  MPoly gpoly = poly_add(h1, h2);

  Constructed out;
  out.bundle.f = f;
  out.bundle.g = gpoly;
  out.bundle.theorem = tag;
  out.bundle.branch = branch;
  out.bundle.derived = {{"w1", w1},   {"w2", w2},   {"E1", T1},
                        {"E2", T2},   {"Lc1", v1},  {"Lc2", v2}};
  out.equation = Trinomial{a, b, omega, g1, g2, gpoly, c};
  return out;
}

}  // namespace

int bget(const Branch& b, const std::string& key, int fallback) {
  auto it = b.find(key);
  return it == b.end() ? fallback : it->second;
}

std::string branch_label(const Branch& b) {
  if (b.empty()) return "base";
  std::string s;
  for (const auto& [k, v] : b) {
    if (!s.empty()) s += ',';
    s += k + "=" + std::to_string(v);
  }
  return s;
}

MPoly realize_periodic(const PeriodicSpec& spec, const Shift& c, int n) {
  if (spec.d.empty() || spec.coeffs.empty()) return poly_zero(n);
  if (static_cast<int>(spec.d.size()) != n)
    throw MalformedInput("periodic direction dimension does not match the shift");
  return algebra::make_periodic(spec.d, c, spec.coeffs);
}

MPoly linear_with_pairing(Cx v, const Shift& c, int axis, const CxVec& L0) {
  const int n = static_cast<int>(c.size());
  checked_axis(axis, n, "linear_with_pairing");
  CxVec coeffs(static_cast<std::size_t>(n), Cx(0.0, 0.0));
  if (!L0.empty()) {
    checked_linear(L0, n, "linear_with_pairing");
    Cx pair(0.0, 0.0);
    for (int i = 0; i < n; ++i) pair += L0[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
    if (pair != Cx(0.0, 0.0))
      throw ConstraintViolated("base linear part must pair to zero with the shift, got " +
                               std::to_string(pair.real()) + "+" + std::to_string(pair.imag()) +
                               "i");
    coeffs = L0;
  }
  const Cx ca = c[static_cast<std::size_t>(axis - 1)];
  if (ca == Cx(0.0, 0.0))
    throw DenominatorZero("linear_with_pairing: shift component on the chosen axis is zero");
  coeffs[static_cast<std::size_t>(axis - 1)] += v / ca;
  return poly_linear(coeffs);
}

Constructed construct_thm21_i(const Thm21iParams& p, const Branch& branch) {
  const int n = static_cast<int>(p.c.size());
  if (n == 0) throw MalformedInput("th-2.1(i): empty shift");
  if (p.a == Cx(0.0, 0.0) || p.b == Cx(0.0, 0.0))
    throw ZeroProduct("th-2.1(i): a and b must be nonzero");
  checked_linear(p.L1, n, "th-2.1(i) L1");
  checked_linear(p.L2, n, "th-2.1(i) L2");
  if (p.Q1.n != n || p.Q2.n != n) throw MalformedInput("th-2.1(i): Q dimension mismatch");
  if (poly_is_zero(p.Q1) || poly_is_zero(p.Q2))
    throw ZeroProduct("th-2.1(i): Q1 and Q2 must be nonzero");
  require_exact_period(p.Q1, p.c, "th-2.1(i) Q1");
  require_exact_period(p.Q2, p.c, "th-2.1(i) Q2");

  const MPoly psi1 = realize_periodic(p.psi1, p.c, n);
  const MPoly psi2 = realize_periodic(p.psi2, p.c, n);
  const MPoly L1p = poly_linear(p.L1);
  const MPoly L2p = poly_linear(p.L2);
  const Cx Lc1 = poly_eval(L1p, p.c);
  const Cx Lc2 = poly_eval(L2p, p.c);
  const Cx E1 = guarded_exp(Lc1, "th-2.1(i) e^{L1(c)}");
  const Cx E2 = guarded_exp(Lc2, "th-2.1(i) e^{L2(c)}");
  const Cx half = (Lc1 + Lc2) * 0.5;

  const int variant = bget(branch, "variant", 0);
  const int pm = checked_pm(branch);
  const Cx sa = std::sqrt(p.a);
  const Cx sb = std::sqrt(p.b);

  Cx a0_used, A, P;
  if (variant == 0) {
    // The printed formula: P from a0 +- a1 e^{(L1(c)+L2(c))/2}, a0 as given.
    a0_used = p.a0;
    const Cx Ehalf = guarded_exp(half, "th-2.1(i) e^{half}");
    A = p.a0 + static_cast<double>(pm) * p.a1 * Ehalf;
    if (std::abs(A) <= 1e-14 * (std::abs(p.a0) + std::abs(p.a1 * Ehalf)))
      throw BranchDegenerate("th-2.1(i): a0 +- a1 e^{(L1(c)+L2(c))/2} = 0; P undefined");
    P = sa / (Cx(0.0, 1.0) * sb * A);
  } else if (variant == 1) {
    // The a0 that actually kills both squared terms: a0 = -a1 (E1+E2)/2.
    if (std::abs(E1 - E2) <= 1e-12 * (std::abs(E1) + std::abs(E2)))
      throw BranchDegenerate("th-2.1(i): e^{L1(c)} = e^{L2(c)}; derived branch degenerates");
    a0_used = -p.a1 * (E1 + E2) * 0.5;
    A = p.a1 * (E1 - E2) * 0.5;
    P = static_cast<double>(pm) * sa / (Cx(0.0, 1.0) * sb * A);
  } else {
    throw MalformedInput("th-2.1(i): branch key variant must be 0 (stated) or 1 (derived)");
  }

  ExpPoly f{n, {}};
  f.terms.push_back({p.Q1, poly_add(poly_add(L1p, psi1), poly_const(n, p.k1))});
  f.terms.push_back({p.Q2, poly_add(poly_add(L2p, psi2), poly_const(n, p.k2))});
  f = ep_scale(ep_normalize(f), 1.0 / (2.0 * sa));

  MPoly g = poly_add(poly_add(poly_add(L1p, L2p), poly_add(psi1, psi2)),
                     poly_const(n, p.k1 + p.k2));

  Constructed out;
  out.bundle.f = f;
  out.bundle.g = g;
  out.bundle.theorem = "th-2.1(i)";
  out.bundle.branch = {{"variant", variant}, {"pm", pm}};
  out.bundle.derived = {{"E1", E1},
                        {"E2", E2},
                        {"half_sum_Lc", half},
                        {"A", A},
                        {"P", P},
                        {"a0", a0_used},
                        {"compat_gap", a0_used + p.a1 * (E1 + E2) * 0.5}};
  out.equation = BinomialDiff{p.a,         p.b, poly_const(n, P), poly_mul(p.Q1, p.Q2),
                              g,           p.a1, a0_used,          p.c};
  return out;
}

Constructed construct_thm21_ii(const Thm21iiParams& p, const Branch& branch) {
  const int n = static_cast<int>(p.c.size());
  if (n == 0) throw MalformedInput("th-2.1(ii): empty shift");
  if (p.a == Cx(0.0, 0.0) || p.b == Cx(0.0, 0.0))
    throw ZeroProduct("th-2.1(ii): a and b must be nonzero");
  if (p.P == Cx(0.0, 0.0)) throw ZeroProduct("th-2.1(ii): P must be a nonzero constant");
  checked_linear(p.L21, n, "th-2.1(ii) L21");
  const ExpPoly beta = ep_normalize(p.beta);
  if (beta.terms.empty()) throw ZeroProduct("th-2.1(ii): beta must be nonzero");
  if (beta.n != n) throw MalformedInput("th-2.1(ii): beta dimension mismatch");

  const MPoly L21p = poly_linear(p.L21);
  const Cx Lc = poly_eval(L21p, p.c);
  const Cx E = guarded_exp(Lc, "th-2.1(ii) e^{L21(c)}");
  const Cx EB = guarded_exp(p.B, "th-2.1(ii) e^{B}");

  const ExpPoly beta_c = ep_shift(beta, p.c);
  const ExpPoly W = ep_add(ep_scale(beta_c, p.a1 * E), ep_scale(beta, p.a0));
  const ExpPoly bracket =
      ep_add(ep_scale(ep_mul(beta, beta), p.a), ep_scale(ep_mul(W, W), p.b * p.P * p.P));

  MPoly Qpoly;
  if (p.Q.has_value()) {
    if (p.Q->n != n) throw MalformedInput("th-2.1(ii): Q dimension mismatch");
    const auto cert = ep_is_zero(ep_sub(bracket, ep_scale(ep_from_poly(*p.Q), EB)));
    if (!cert.is_zero)
      throw ConstraintViolated("th-2.1(ii): beta constraint violated, max rel residual " +
                               std::to_string(cert.max_rel_residual));
    Qpoly = *p.Q;
  } else {
    if (bracket.terms.empty())
      throw ZeroProduct("th-2.1(ii): beta solves the homogeneous equation; Q would vanish");
    if (bracket.terms.size() != 1 || !poly_is_zero(bracket.terms.front().expo))
      throw ConstraintViolated(
          "th-2.1(ii): the beta constraint does not reduce to a polynomial right side");
    Qpoly = poly_scale(bracket.terms.front().coef, 1.0 / EB);
  }

  // The printed constraint omits the e^{L21(c)} factor on the shifted beta;
  // report how far that form is from the one that actually closes.
  const ExpPoly Wp = ep_add(ep_scale(beta_c, p.a1), ep_scale(beta, p.a0));
  const ExpPoly bracket_printed =
      ep_add(ep_scale(ep_mul(beta, beta), p.a), ep_scale(ep_mul(Wp, Wp), p.b * p.P * p.P));
  const auto printed_gap = ep_is_zero(ep_sub(bracket, bracket_printed));

  const ExpPoly f = ep_mul(beta, ep_exp(L21p));
  const MPoly g = poly_add(poly_scale(L21p, Cx(2.0, 0.0)), poly_const(n, p.B));

  Constructed out;
  out.bundle.f = f;
  out.bundle.g = g;
  out.bundle.theorem = "th-2.1(ii)";
  out.bundle.branch = branch;
  out.bundle.derived = {{"Lc", Lc},
                        {"E", E},
                        {"printed_constraint_gap", Cx(printed_gap.max_rel_residual, 0.0)}};
  out.equation = BinomialDiff{p.a, p.b, poly_const(n, p.P), Qpoly, g, p.a1, p.a0, p.c};
  return out;
}

Constructed construct_thm22_i(const Thm22iParams& p, const Branch& branch) {
  const int n = static_cast<int>(p.c.size());
  if (n == 0) throw MalformedInput("th-2.2(i): empty shift");
  checked_axis(p.axis, n, "th-2.2(i)");
  if (p.a == Cx(0.0, 0.0) || p.b == Cx(0.0, 0.0))
    throw ZeroProduct("th-2.2(i): a and b must be nonzero");
  checked_linear(p.h1c, n, "th-2.2(i) h1");
  checked_linear(p.h2c, n, "th-2.2(i) h2");
  if (p.alpha1 * p.alpha2 == Cx(0.0, 0.0))
    throw ZeroProduct("th-2.2(i): alpha1 and alpha2 must be nonzero");

  const Cx ai = p.h1c[static_cast<std::size_t>(p.axis - 1)];
  const Cx bi = p.h2c[static_cast<std::size_t>(p.axis - 1)];
  if (ai == Cx(0.0, 0.0) || bi == Cx(0.0, 0.0))
    throw MalformedInput("th-2.2(i): h1 and h2 need nonzero coefficients on the chosen axis");

  const MPoly L1p = poly_linear(p.h1c);
  const MPoly L2p = poly_linear(p.h2c);
  const Cx Lc1 = poly_eval(L1p, p.c);
  const Cx Lc2 = poly_eval(L2p, p.c);
  const Cx u1 = ai * guarded_exp(-Lc1, "th-2.2(i) e^{-h1(c)}");
  const Cx u2 = bi * guarded_exp(-Lc2, "th-2.2(i) e^{-h2(c)}");
  const double uscale = std::max(std::abs(u1), std::abs(u2));
  const double pairing = std::abs(u1 + u2) / uscale;
  if (pairing > 1e-9) {
    if (std::abs(u1 - u2) / uscale <= 1e-9)
      throw BranchDegenerate("th-2.2(i): pairing holds with the + sign and collapses Q to zero");
    throw ConstraintViolated("th-2.2(i): a_i e^{-h1(c)} + b_i e^{-h2(c)} != 0, rel gap " +
                             std::to_string(pairing));
  }

  const int pm = checked_pm(branch);
  const Cx sa = std::sqrt(p.a);
  const Cx sb = std::sqrt(p.b);
  const Cx E1 = guarded_exp(Lc1, "th-2.2(i) e^{h1(c)}");
  const Cx E2 = guarded_exp(Lc2, "th-2.2(i) e^{h2(c)}");
  const Cx P = static_cast<double>(pm) * sa * E1 / (Cx(0.0, 1.0) * sb * ai);
  const Cx Qv = p.alpha1 * p.alpha2;

  ExpPoly f{n, {}};
  f.terms.push_back({poly_const(n, p.alpha1 / (2.0 * sa)), poly_add(L1p, poly_const(n, p.r1 - Lc1))});
  f.terms.push_back({poly_const(n, p.alpha2 / (2.0 * sa)), poly_add(L2p, poly_const(n, p.r2 - Lc2))});
  f = ep_normalize(f);

  const MPoly g = poly_add(poly_add(L1p, L2p), poly_const(n, p.r1 + p.r2));

  Constructed out;
  out.bundle.f = f;
  out.bundle.g = g;
  out.bundle.theorem = "th-2.2(i)";
  out.bundle.branch = {{"pm", pm}};
  out.bundle.derived = {{"E1", E1},
                        {"E2", E2},
                        {"P", P},
                        {"Q", Qv},
                        {"statement_lhs", guarded_exp(Lc1 - Lc2, "th-2.2(i) statement")},
                        {"statement_rhs", -ai / bi},
                        {"proof_condition_residual", Cx(pairing, 0.0)}};
  out.equation = PDDE{p.a, p.b, poly_const(n, P), poly_const(n, Qv), g, p.c, p.axis};
  return out;
}

Constructed construct_thm22_ii(const Thm22iiParams& p, const Branch& branch) {
  const int n = static_cast<int>(p.c.size());
  if (n == 0) throw MalformedInput("th-2.2(ii): empty shift");
  checked_axis(p.axis, n, "th-2.2(ii)");
  if (p.a == Cx(0.0, 0.0) || p.b == Cx(0.0, 0.0))
    throw ZeroProduct("th-2.2(ii): a and b must be nonzero");
  if (p.P == Cx(0.0, 0.0)) throw ZeroProduct("th-2.2(ii): P must be a nonzero constant");
  checked_linear(p.L1, n, "th-2.2(ii) L1");
  const ExpPoly gamma = ep_normalize(p.gamma);
  if (gamma.terms.empty()) throw ZeroProduct("th-2.2(ii): gamma must be nonzero");
  if (gamma.n != n) throw MalformedInput("th-2.2(ii): gamma dimension mismatch");

  const MPoly L1p = poly_linear(p.L1);
  const Cx Lc1 = poly_eval(L1p, p.c);
  const MPoly H = realize_periodic(p.H, p.c, n);

  // dH/dz_axis = d_axis * H'(s); realize H' from the shifted-down coefficients.
  PeriodicSpec Hd;
  if (!p.H.d.empty() && p.H.coeffs.size() > 1) {
    Hd.d = p.H.d;
    Hd.coeffs.resize(p.H.coeffs.size() - 1);
    for (std::size_t j = 0; j + 1 < p.H.coeffs.size(); ++j)
      Hd.coeffs[j] = static_cast<double>(j + 1) * p.H.coeffs[j + 1];
  }
  const MPoly Hprime = realize_periodic(Hd, p.c, n);
  const Cx xi_i = p.L1[static_cast<std::size_t>(p.axis - 1)];
  const Cx di = p.H.d.empty() ? Cx(0.0, 0.0) : p.H.d[static_cast<std::size_t>(p.axis - 1)];
  const MPoly factor = poly_add(poly_const(n, xi_i), poly_scale(Hprime, di));

  const Shift mc = negated(p.c);
  const ExpPoly gamma_mc = ep_shift(gamma, mc);
  const ExpPoly dgamma_mc = ep_shift(ep_partial(gamma, p.axis), mc);
  const ExpPoly W = ep_add(dgamma_mc, ep_mul(ep_from_poly(factor), gamma_mc));

  const Cx Em2 = guarded_exp(-2.0 * Lc1, "th-2.2(ii) e^{-2L1(c)}");
  const ExpPoly bracket =
      ep_add(ep_scale(ep_mul(gamma, gamma), p.a), ep_scale(ep_mul(W, W), p.b * p.P * p.P * Em2));

  const Cx Er5 = guarded_exp(p.r5, "th-2.2(ii) e^{r5}");
  MPoly Qpoly;
  if (p.Q.has_value()) {
    if (p.Q->n != n) throw MalformedInput("th-2.2(ii): Q dimension mismatch");
    const auto cert = ep_is_zero(ep_sub(bracket, ep_scale(ep_from_poly(*p.Q), Er5)));
    if (!cert.is_zero)
      throw ConstraintViolated("th-2.2(ii): gamma constraint violated, max rel residual " +
                               std::to_string(cert.max_rel_residual));
    Qpoly = *p.Q;
  } else {
    if (bracket.terms.empty())
      throw ZeroProduct("th-2.2(ii): gamma solves the homogeneous equation; Q would vanish");
    if (bracket.terms.size() != 1 || !poly_is_zero(bracket.terms.front().expo))
      throw ConstraintViolated(
          "th-2.2(ii): the gamma constraint does not reduce to a polynomial right side");
    Qpoly = poly_scale(bracket.terms.front().coef, 1.0 / Er5);
  }

  const ExpPoly f =
      ep_mul(gamma_mc, ep_exp(poly_add(poly_add(L1p, H), poly_const(n, -Lc1))));
  const MPoly g =
      poly_add(poly_scale(poly_add(L1p, H), Cx(2.0, 0.0)), poly_const(n, p.r5));

  Constructed out;
  out.bundle.f = f;
  out.bundle.g = g;
  out.bundle.theorem = "th-2.2(ii)";
  out.bundle.branch = branch;
  out.bundle.derived = {{"Lc1", Lc1}, {"E_minus2Lc1", Em2}};
  out.equation = PDDE{p.a, p.b, poly_const(n, p.P), Qpoly, g, p.c, p.axis};
  return out;
}

Constructed construct_thm23_i(const Thm23iParams& p, const Branch& branch) {
  const auto roots = equations::omega_roots(p.a, p.b, p.omega);
  if (roots.omega_zero) throw DegenerateOmega("th-2.3: omega = 0 is the th-2.4 regime");
  if (roots.degenerate) throw DegenerateOmega("th-2.3: omega^2 = ab is the remark-3.5 regime");
  if (p.g1 == Cx(0.0, 0.0) || p.g2 == Cx(0.0, 0.0))
    throw ZeroProduct("th-2.3: g1 and g2 must be nonzero");
  const int swap = bget(branch, "swap", 0);
  const int k = bget(branch, "k", 0);
  const Cx w1 = swap ? roots.w2 : roots.w1;
  const Cx w2 = swap ? roots.w1 : roots.w2;
  Branch eff = {{"swap", swap}, {"k", k}};
  return trinomial_single("th-2.3(i)", p.a, p.b, p.omega, p.g1, p.g2, w1, w2, p.xi, p.axis, p.L0,
                          p.H, p.B3, k, p.c, eff);
}

Constructed construct_thm23_ii(const Thm23iiParams& p, const Branch& branch) {
  const auto roots = equations::omega_roots(p.a, p.b, p.omega);
  if (roots.omega_zero) throw DegenerateOmega("th-2.3: omega = 0 is the th-2.4 regime");
  if (roots.degenerate) throw DegenerateOmega("th-2.3: omega^2 = ab is the remark-3.5 regime");
  if (p.g1 == Cx(0.0, 0.0) || p.g2 == Cx(0.0, 0.0))
    throw ZeroProduct("th-2.3: g1 and g2 must be nonzero");
  const int swap = bget(branch, "swap", 0);
  const int k1 = bget(branch, "k1", 0);
  const int k2 = bget(branch, "k2", 0);
  const Cx w1 = swap ? roots.w2 : roots.w1;
  const Cx w2 = swap ? roots.w1 : roots.w2;
  Branch eff = {{"swap", swap}, {"k1", k1}, {"k2", k2}};
  return trinomial_two("th-2.3(ii)", p.a, p.b, p.omega, p.g1, p.g2, w1, w2, p.axis1, p.axis2,
                       p.L10, p.L20, p.H1, p.H2, p.D1, p.D2, k1, k2, p.c, eff);
}

Constructed construct_thm24_i(const Thm24iParams& p, const Branch& branch) {
  if (p.a * p.b == Cx(0.0, 0.0)) throw ZeroProduct("th-2.4: ab must be nonzero");
  if (p.g1 == Cx(0.0, 0.0)) throw ZeroProduct("th-2.4: g1 must be nonzero");
  const int swap = bget(branch, "swap", 0);
  const int k = bget(branch, "k", 0);
  const Cx w1 = swap ? Cx(0.0, 1.0) : Cx(0.0, -1.0);
  const Cx w2 = swap ? Cx(0.0, -1.0) : Cx(0.0, 1.0);
  Branch eff = {{"swap", swap}, {"k", k}};
  return trinomial_single("th-2.4(i)", p.a, p.b, Cx(0.0, 0.0), p.g1, p.g2, w1, w2, p.xi, p.axis,
                          p.L0, p.H, p.A, k, p.c, eff);
}

Constructed construct_thm24_ii(const Thm24iiParams& p, const Branch& branch) {
  if (p.a * p.b == Cx(0.0, 0.0)) throw ZeroProduct("th-2.4: ab must be nonzero");
  if (p.g1 == Cx(0.0, 0.0)) throw ZeroProduct("th-2.4: g1 must be nonzero");
  const int swap = bget(branch, "swap", 0);
  const int k1 = bget(branch, "k1", 0);
  const int k2 = bget(branch, "k2", 0);
  const Cx w1 = swap ? Cx(0.0, 1.0) : Cx(0.0, -1.0);
  const Cx w2 = swap ? Cx(0.0, -1.0) : Cx(0.0, 1.0);
  Branch eff = {{"swap", swap}, {"k1", k1}, {"k2", k2}};
  return trinomial_two("th-2.4(ii)", p.a, p.b, Cx(0.0, 0.0), p.g1, p.g2, w1, w2, p.axis1, p.axis2,
                       p.L10, p.L20, p.H1, p.H2, p.B1, p.B2, k1, k2, p.c, eff);
}

Constructed construct_remark35(const Remark35Params& p, const Branch& branch) {
  const int n = static_cast<int>(p.c.size());
  if (n == 0) throw MalformedInput("remark-3.5: empty shift");
  if (p.a == Cx(0.0, 0.0) || p.b == Cx(0.0, 0.0))
    throw ZeroProduct("remark-3.5: a and b must be nonzero");
  if (p.g1 == Cx(0.0, 0.0) || p.g2 == Cx(0.0, 0.0))
    throw ZeroProduct("remark-3.5: g1 and g2 must be nonzero");
  if ((p.sign_b != 1 && p.sign_b != -1) || (p.sign_rhs != 1 && p.sign_rhs != -1))
    throw MalformedInput("remark-3.5: sign_b and sign_rhs must be +1 or -1");
  checked_linear(p.ell, n, "remark-3.5 ell");

  const MPoly ellp = poly_linear(p.ell);
  if (poly_eval(ellp, p.c) != Cx(1.0, 0.0))
    throw MalformedInput("remark-3.5: ell(c) must equal 1 exactly");

  const Cx sa = std::sqrt(p.a);
  const Cx sb = std::sqrt(p.b);
  const double sbd = static_cast<double>(p.sign_b);
  const int khomog = bget(branch, "k", 0);

  MPoly gpoly;
  Cx D;
  Cx Ehalf(0.0, 0.0);
  Cx Lc(0.0, 0.0);
  if (p.case_no == 1) {
    gpoly = poly_const(n, p.g_const);
    D = sa + sbd * sb * (p.g1 + p.g2);
  } else if (p.case_no == 2) {
    if (p.g_periodic.n != n) throw MalformedInput("remark-3.5: g dimension mismatch");
    require_exact_period(p.g_periodic, p.c, "remark-3.5 g");
    gpoly = p.g_periodic;
    D = sa + sbd * sb * (p.g1 + p.g2);
  } else if (p.case_no == 3) {
    checked_linear(p.L, n, "remark-3.5 L");
    const MPoly Lp = poly_linear(p.L);
    Lc = poly_eval(Lp, p.c);
    Ehalf = guarded_exp(Lc * 0.5, "remark-3.5 e^{L(c)/2}");
    const MPoly H1 = realize_periodic(p.H1, p.c, n);
    gpoly = poly_add(poly_add(Lp, H1), poly_const(n, p.B));
    D = sa + sbd * sb * (p.g2 + p.g1 * Ehalf);
  } else {
    throw MalformedInput("remark-3.5: case must be 1, 2, or 3");
  }

  const double dscale =
      std::abs(sa) + std::abs(sb) * (std::abs(p.g1) * std::max(1.0, std::abs(Ehalf)) + std::abs(p.g2));
  if (std::abs(D) <= 1e-12 * dscale)
    throw DenominatorZero("remark-3.5: particular-solution denominator vanishes");

  const ExpPoly f_p =
      ep_scale(ep_halve_exponent(ep_exp(gpoly)), static_cast<double>(p.sign_rhs) / D);

  ExpPoly f_h = expfun::ep_zero(n);
  Cx K(0.0, 0.0), LogK(0.0, 0.0);
  if (p.pi_kind != PiKind::Zero) {
    K = -(sa + sbd * p.g2 * sb) / (sbd * p.g1 * sb);
    if (K == Cx(0.0, 0.0))
      throw ZeroTarget("remark-3.5: the homogeneous shift multiplier K vanishes");
    LogK = std::log(K) + Cx(0.0, 2.0 * kPi * static_cast<double>(khomog));
    const MPoly base = poly_scale(ellp, LogK);
    const MPoly tpi = poly_scale(ellp, Cx(0.0, 2.0 * kPi));
    switch (p.pi_kind) {
      case PiKind::One:
        f_h = ep_exp(base);
        break;
      case PiKind::Sin: {
        ExpPoly t{n, {}};
        t.terms.push_back({poly_const(n, Cx(0.0, -0.5)), poly_add(base, tpi)});
        t.terms.push_back({poly_const(n, Cx(0.0, 0.5)), poly_sub(base, tpi)});
        f_h = ep_normalize(t);
        break;
      }
      case PiKind::Cos: {
        ExpPoly t{n, {}};
        t.terms.push_back({poly_const(n, Cx(0.5, 0.0)), poly_add(base, tpi)});
        t.terms.push_back({poly_const(n, Cx(0.5, 0.0)), poly_sub(base, tpi)});
        f_h = ep_normalize(t);
        break;
      }
      case PiKind::Custom: {
        if (!p.pi_custom.has_value())
          throw MalformedInput("remark-3.5: pi_kind is custom but no pi was supplied");
        if (p.pi_custom->n != n) throw MalformedInput("remark-3.5: pi dimension mismatch");
        const auto cert = ep_is_zero(ep_sub(ep_shift(*p.pi_custom, p.c), *p.pi_custom));
        if (!cert.is_zero && cert.max_rel_residual > 1e-10)
          throw PeriodicityViolation("remark-3.5: supplied pi is not c-periodic");
        f_h = ep_mul(*p.pi_custom, ep_exp(base));
        break;
      }
      case PiKind::Zero:
        break;
    }
  }

  Constructed out;
  out.bundle.f = ep_add(f_h, f_p);
  out.bundle.g = gpoly;
  out.bundle.theorem = "remark-3.5 case " + std::to_string(p.case_no);
  out.bundle.branch = {{"k", khomog}};
  out.bundle.derived = {{"D", D}};
  if (p.pi_kind != PiKind::Zero) {
    out.bundle.derived["K"] = K;
    out.bundle.derived["LogK"] = LogK;
  }
  if (p.case_no == 3) {
    out.bundle.derived["Lc"] = Lc;
    out.bundle.derived["E_half"] = Ehalf;
  }
  out.equation = LinearReduced{p.a, p.b, p.g1, p.g2, gpoly, p.c, p.sign_b, p.sign_rhs};
  return out;
}

Constructed construct_thm11(const Thm11Params& p, const Branch& branch) {
  if (p.q == Cx(0.0, 0.0)) throw ZeroProduct("thm-1.1: q must be nonzero");
  if (p.c == Cx(0.0, 0.0)) throw DenominatorZero("thm-1.1: c must be nonzero");
  const int pm = checked_pm(branch);

  const Cx A = Cx(4.0 * p.k + 1.0, 0.0) * kPi / (2.0 * p.c);
  const Cx sq = std::sqrt(p.q);
  const Cx iA = Cx(0.0, 1.0) * A;
  const Cx iB = Cx(0.0, 1.0) * p.B;

  ExpPoly f{1, {}};
  f.terms.push_back({poly_const(1, sq * Cx(0.0, -0.5)), poly_linear({iA}, iB)});
  f.terms.push_back({poly_const(1, sq * Cx(0.0, 0.5)), poly_linear({-iA}, -iB)});
  f = ep_normalize(f);

  Constructed out;
  out.bundle.f = f;
  out.bundle.g = poly_zero(1);
  out.bundle.theorem = "thm-1.1";
  out.bundle.branch = {{"pm", pm}};
  out.bundle.derived = {{"A", A}, {"Ac", A * p.c}, {"q", p.q}};
  out.equation = BinomialDiff{Cx(1.0, 0.0),
                              Cx(1.0, 0.0),
                              poly_const(1, Cx(static_cast<double>(pm), 0.0)),
                              poly_const(1, p.q),
                              poly_zero(1),
                              Cx(1.0, 0.0),
                              Cx(0.0, 0.0),
                              {p.c}};
  return out;
}

Constructed construct_saleeby(const SaleebyParams& p) {
  const int n = p.h.n;
  if (n == 0) throw MalformedInput("saleeby-m2: h has no variables");
  const MPoly ih = poly_scale(p.h, Cx(0.0, 1.0));
  const MPoly mih = poly_scale(p.h, Cx(0.0, -1.0));

  ExpPoly f{n, {}};
  f.terms.push_back({poly_const(n, Cx(0.5, 0.0)), ih});
  f.terms.push_back({poly_const(n, Cx(0.5, 0.0)), mih});
  f = ep_normalize(f);

  ExpPoly partner{n, {}};
  partner.terms.push_back({poly_const(n, Cx(0.0, -0.5)), ih});
  partner.terms.push_back({poly_const(n, Cx(0.0, 0.5)), mih});
  partner = ep_normalize(partner);

  Constructed out;
  out.bundle.f = f;
  out.bundle.g = poly_zero(n);
  out.bundle.theorem = "saleeby-m2";
  out.partner = partner;

  // One variable and linear h: cos(h + pi/2) = -sin h, so the pair solves the
  // shifted binomial equation with c = pi/(2A).
  if (n == 1 && algebra::poly_total_degree(p.h) == 1) {
    const MIdx key{1};
    const Cx A = p.h.terms.at(key);
    const Cx cshift = kPi / (2.0 * A);
    out.bundle.derived = {{"A", A}, {"c", cshift}};
    out.equation = BinomialDiff{Cx(1.0, 0.0),
                                Cx(1.0, 0.0),
                                poly_const(1, Cx(1.0, 0.0)),
                                poly_const(1, Cx(1.0, 0.0)),
                                poly_zero(1),
                                Cx(1.0, 0.0),
                                Cx(0.0, 0.0),
                                {cshift}};
  }
  return out;
}

ConstraintSolveResult solve_xi(Cx a, Cx b, Cx omega, Cx g1, Cx g2, Cx Lc) {
  const auto roots = equations::omega_roots(a, b, omega);
  if (roots.degenerate || roots.omega_zero)
    throw DegenerateOmega("solve_xi: needs omega^2 distinct from 0 and ab");
  if (g1 == Cx(0.0, 0.0)) throw ZeroProduct("solve_xi: g1 must be nonzero");

  const Cx sa = std::sqrt(a);
  const Cx sb = std::sqrt(b);
  const Cx E = guarded_exp(Lc * 0.5, "solve_xi e^{Lc/2}");
  const Cx A1 = roots.w1 * g2 * sb - sa;
  const Cx A2 = roots.w2 * g2 * sb - sa;
  const Cx num = A1 + E * g1 * sb * roots.w1;
  const Cx den = A2 + E * g1 * sb * roots.w2;
  if (std::abs(den) <= 1e-14 * (std::abs(A2) + std::abs(E * g1 * sb * roots.w2)))
    throw NoSolution("solve_xi: the linear-fractional relation degenerates");
  if (std::abs(num) <= 1e-14 * (std::abs(A1) + std::abs(E * g1 * sb * roots.w1)))
    throw ZeroXi("solve_xi: the relation forces xi = 0");

  const Cx xi2 = num / den;
  const Cx xi = std::sqrt(xi2);
  const Cx X = side_target_X(sa, sb, g1, g2, roots.w1, roots.w2, xi2);

  ConstraintSolveResult r;
  r.value = xi;
  r.branch_index = 0;
  r.residual_of_constraint = std::abs(X - E) / std::abs(E);
  return r;
}

std::vector<ConstraintSolveResult> solve_linear_exponent(Cx target, const Shift& c, int k_min,
                                                         int k_max) {
  if (target == Cx(0.0, 0.0)) throw ZeroTarget("solve_linear_exponent: target must be nonzero");
  if (k_min > k_max) throw MalformedInput("solve_linear_exponent: empty k range");
  int axis = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] != Cx(0.0, 0.0)) {
      axis = static_cast<int>(j) + 1;
      break;
    }
  }
  if (axis == 0) throw DenominatorZero("solve_linear_exponent: shift is zero");

  std::vector<ConstraintSolveResult> out;
  const Cx logt = std::log(target);
  for (int k = k_min; k <= k_max; ++k) {
    const Cx v = logt + Cx(0.0, 2.0 * kPi * static_cast<double>(k));
    MPoly L = linear_with_pairing(v, c, axis, {});
    const Cx Lc = poly_eval(L, c);
    ConstraintSolveResult r;
    r.branch_index = k;
    r.residual_of_constraint = std::abs(target * guarded_exp(-Lc, "solve_linear_exponent") - 1.0);
    r.value = std::move(L);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace forge::solutions
