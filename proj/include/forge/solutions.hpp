#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "forge/equations.hpp"

namespace forge::solutions {

using algebra::Cx;
using algebra::CxVec;
using algebra::MPoly;
using algebra::Shift;
using expfun::ExpPoly;

// A branch record: sign and logarithm-sheet choices left open by the source
// formulas. Keys in use: "pm" (+1/-1), "variant" (0 stated / 1 derived),
// "swap" (0/1, root ordering), "k"/"k1"/"k2" (log sheets).
using Branch = std::map<std::string, int>;

int bget(const Branch& b, const std::string& key, int fallback);
std::string branch_label(const Branch& b);  // "k=0,pm=1"; "base" when empty

// A c-periodic polynomial H(d.z) given by the coefficients of powers of
// s = d.z (coeffs[k] multiplies s^k). Realized through make_periodic, which
// enforces d.c = 0. An empty d means H = 0.
struct PeriodicSpec {
  CxVec d;
  CxVec coeffs;
};

MPoly realize_periodic(const PeriodicSpec& spec, const Shift& c, int n);

struct SolutionBundle {
  ExpPoly f;
  MPoly g;
  std::map<std::string, Cx> derived;
  std::string theorem;
  Branch branch;
};

struct Constructed {
  SolutionBundle bundle;
  std::optional<equations::EquationSpec> equation;
  std::optional<ExpPoly> partner;  // the sine mate of a cosine solution
};

// ---- Parameter records, one per constructor arm ----

struct Thm21iParams {
  Shift c;
  Cx a, b, a1, a0;
  CxVec L1, L2;  // linear coefficient vectors
  PeriodicSpec psi1, psi2;
  Cx k1, k2;
  MPoly Q1, Q2;  // c-periodic, validated exactly
};

struct Thm21iiParams {
  Shift c;
  Cx a, b, a1, a0, P, B;
  CxVec L21;
  ExpPoly beta;
  std::optional<MPoly> Q;  // absent: derived from the beta constraint
};

struct Thm22iParams {
  Shift c;
  int axis = 1;
  Cx a, b;
  CxVec h1c, h2c;  // linear coefficients of h1, h2
  Cx r1, r2;       // constant terms of h1, h2
  Cx alpha1, alpha2;
};

struct Thm22iiParams {
  Shift c;
  int axis = 1;
  Cx a, b, P, r5;
  ExpPoly gamma;
  CxVec L1;
  PeriodicSpec H;
  std::optional<MPoly> Q;  // absent: derived from the gamma constraint
};

struct Thm23iParams {
  Shift c;
  Cx a, b, omega, g1, g2, xi;
  int axis = 1;  // axis receiving the solved part of L
  CxVec L0;      // base linear part, must pair to zero with c
  PeriodicSpec H;
  Cx B3;
};

struct Thm23iiParams {
  Shift c;
  Cx a, b, omega, g1, g2;
  int axis1 = 1, axis2 = 1;
  CxVec L10, L20;
  PeriodicSpec H1, H2;
  Cx D1, D2;
};

struct Thm24iParams {
  Shift c;
  Cx a, b, g1, g2, xi;
  int axis = 1;
  CxVec L0;
  PeriodicSpec H;
  Cx A;
};

struct Thm24iiParams {
  Shift c;
  Cx a, b, g1, g2;
  int axis1 = 1, axis2 = 1;
  CxVec L10, L20;
  PeriodicSpec H1, H2;
  Cx B1, B2;
};

// pi_kind: the c-periodic transcendental factor of the homogeneous part.
enum class PiKind { Zero, One, Sin, Cos, Custom };

struct Remark35Params {
  Shift c;
  Cx a, b, g1, g2;
  int sign_b = 1, sign_rhs = 1;
  CxVec ell;  // linear functional with ell(c) = 1 exactly
  PiKind pi_kind = PiKind::Sin;
  std::optional<ExpPoly> pi_custom;  // used when pi_kind == Custom
  int case_no = 2;                   // 1: constant g; 2: c-periodic g; 3: g = L+H1+B
  Cx g_const;                        // case 1
  MPoly g_periodic;                  // case 2, exact shift fixed point
  CxVec L;                           // case 3
  PeriodicSpec H1;                   // case 3
  Cx B;                              // case 3
};

struct Thm11Params {
  Cx q, c, B;
  int k = 0;
};

struct SaleebyParams {
  MPoly h;
};

// ---- Constructors ----
// Each returns the bundle plus the equation it solves; every validation
// failure throws a ForgeError subtype named in the header comments.

Constructed construct_thm21_i(const Thm21iParams& p, const Branch& branch);
Constructed construct_thm21_ii(const Thm21iiParams& p, const Branch& branch);
Constructed construct_thm22_i(const Thm22iParams& p, const Branch& branch);
Constructed construct_thm22_ii(const Thm22iiParams& p, const Branch& branch);
Constructed construct_thm23_i(const Thm23iParams& p, const Branch& branch);
Constructed construct_thm23_ii(const Thm23iiParams& p, const Branch& branch);
Constructed construct_thm24_i(const Thm24iParams& p, const Branch& branch);
Constructed construct_thm24_ii(const Thm24iiParams& p, const Branch& branch);
Constructed construct_remark35(const Remark35Params& p, const Branch& branch);
Constructed construct_thm11(const Thm11Params& p, const Branch& branch);
Constructed construct_saleeby(const SaleebyParams& p);

// ---- Side-condition solvers ----

struct ConstraintSolveResult {
  std::variant<Cx, MPoly> value;
  int branch_index = 0;
  double residual_of_constraint = 0.0;
};

// Solves the single-exponential side condition e^{Lc/2} = X(xi) for xi
// (principal square root of the solved xi^2). Back-substitution residual is
// |X(xi) - e^{Lc/2}| / |e^{Lc/2}|.
ConstraintSolveResult solve_xi(Cx a, Cx b, Cx omega, Cx g1, Cx g2, Cx Lc);

// For each k in [k_min, k_max], a linear form L with L(c) = log(target)+2*pi*i*k,
// placed along the first axis with a nonzero shift component. Residual is
// |target*e^{-L(c)} - 1|.
std::vector<ConstraintSolveResult> solve_linear_exponent(Cx target, const Shift& c,
                                                         int k_min, int k_max);

// Internal form shared with the constructors: base linear part L0 (must pair
// to zero with c) plus (v / c_axis) on the given 1-based axis, so L(c) = v.
MPoly linear_with_pairing(Cx v, const Shift& c, int axis, const CxVec& L0);

}  // namespace forge::solutions
