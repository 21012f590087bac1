#include "forge/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <variant>

#include "forge/errors.hpp"

namespace forge::fixtures {

namespace {

using algebra::Cx;
using algebra::CxVec;
using algebra::make_periodic;
using algebra::MPoly;
using algebra::poly_add;
using algebra::poly_approx_equal;
using algebra::poly_const;
using algebra::poly_linear;
using algebra::poly_mul;
using algebra::poly_scale;
using algebra::poly_shift;
using algebra::Shift;
using expfun::ep_add;
using expfun::ep_from_poly;
using expfun::ep_is_zero;
using expfun::ep_mul;
using expfun::ep_structural_degree;
using expfun::ep_sub;
using expfun::ZeroCheckConfig;
using solutions::PeriodicSpec;

constexpr double kPi = std::numbers::pi;

std::string cxs(Cx v) {
  return "(" + std::to_string(v.real()) + ", " + std::to_string(v.imag()) + ")";
}

CxVec power_coeffs(int k) {
  CxVec v(static_cast<std::size_t>(k) + 1, Cx(0.0, 0.0));
  v.back() = Cx(1.0, 0.0);
  return v;
}

CheckFn derived_is(const std::string& key, Cx expected, double tol) {
  return [key, expected, tol](const Constructed& c) -> std::optional<std::string> {
    auto it = c.bundle.derived.find(key);
    if (it == c.bundle.derived.end()) return "derived value \"" + key + "\" missing";
    const double scale = std::max(1.0, std::abs(expected));
    if (std::abs(it->second - expected) > tol * scale)
      return key + " = " + cxs(it->second) + ", expected " + cxs(expected);
    return std::nullopt;
  };
}

CheckFn derived_below(const std::string& key, double bound) {
  return [key, bound](const Constructed& c) -> std::optional<std::string> {
    auto it = c.bundle.derived.find(key);
    if (it == c.bundle.derived.end()) return "derived value \"" + key + "\" missing";
    if (std::abs(it->second) > bound)
      return key + " = " + cxs(it->second) + " exceeds " + std::to_string(bound);
    return std::nullopt;
  };
}

CheckFn structural_is(int expected) {
  return [expected](const Constructed& c) -> std::optional<std::string> {
    const int got = ep_structural_degree(c.bundle.f);
    if (got != expected)
      return "structural order " + std::to_string(got) + ", expected " + std::to_string(expected);
    return std::nullopt;
  };
}

CheckFn g_shift_fixed() {
  return [](const Constructed& c) -> std::optional<std::string> {
    if (!c.equation.has_value()) return "equation missing";
    const Shift* cs = nullptr;
    if (const auto* e = std::get_if<equations::LinearReduced>(&*c.equation)) cs = &e->c;
    if (cs == nullptr) return "not a linear-reduced equation";
    if (!poly_approx_equal(poly_shift(c.bundle.g, *cs), c.bundle.g, 0.0))
      return "g is not an exact fixed point of the shift";
    return std::nullopt;
  };
}

Fixture make_thm11() {
  Fixture fx;
  fx.id = "thm11-sine";
  fx.citation =
      "thm-1.1: f(z)^2 + f(z + c)^2 = q with c = pi/2, solved by f(z) = sqrt(q) sin(Az + B), "
      "A = (4k+1)pi/(2c)";
  fx.constructor_arm = "thm-1.1";
  fx.equation_arm = "binomial-diff";
  fx.tol = 1e-9;
  fx.expect_symbolic = true;
  fx.branches = {{{"pm", 1}}, {{"pm", -1}}};
  fx.build = [](const Branch& br) {
    solutions::Thm11Params p;
    p.q = Cx(1.0, 0.0);
    p.c = Cx(kPi / 2.0, 0.0);
    p.B = Cx(0.0, 0.0);
    p.k = 0;
    return solutions::construct_thm11(p, br);
  };
  fx.checks = {{"A equals 1", derived_is("A", Cx(1.0, 0.0), 1e-12)}};
  return fx;
}

Fixture make_saleeby() {
  Fixture fx;
  fx.id = "saleeby-m2";
  fx.citation =
      "saleeby-m2: f^2 + g^2 = 1 in C^2 with f = cos(h), g = sin(h), h = z1^2 z2 entire";
  fx.constructor_arm = "saleeby-m2";
  fx.equation_arm = "";
  fx.tol = 1e-9;
  fx.expect_symbolic = true;
  fx.pair_identity = true;
  fx.build = [](const Branch&) {
    solutions::SaleebyParams p;
    p.h = algebra::poly_monomial(2, {2, 1}, Cx(1.0, 0.0));
    return solutions::construct_saleeby(p);
  };
  return fx;
}

Fixture make_binomial_1() {
  Fixture fx;
  fx.id = "ex-binomial-1";
  fx.citation =
      "th-2.1(i) worked example: c = (2,-1,3), a = 7, b = 1, a1 = sqrt(3), a0 = 5; "
      "order max{10,7} = 10 and constant exponent e^{(4+i)+pi/2}";
  fx.constructor_arm = "th-2.1(i)";
  fx.equation_arm = "binomial-diff";
  fx.tol = 1e-8;
  fx.branches = {{{"variant", 0}, {"pm", 1}},
                 {{"variant", 0}, {"pm", -1}},
                 {{"variant", 1}, {"pm", 1}},
                 {{"variant", 1}, {"pm", -1}}};
  fx.build = [](const Branch& br) {
    solutions::Thm21iParams p;
    p.c = {Cx(2.0, 0.0), Cx(-1.0, 0.0), Cx(3.0, 0.0)};
    p.a = Cx(7.0, 0.0);
    p.b = Cx(1.0, 0.0);
    p.a1 = Cx(std::sqrt(3.0), 0.0);
    p.a0 = Cx(5.0, 0.0);
    p.L1 = {Cx(3.0, 0.0), Cx(0.0, 1.0), Cx(kPi, 0.0)};
    p.L2 = {Cx(1.0, 0.0), Cx(2.0 * kPi, 0.0), Cx(0.0, 1.0)};
    const CxVec dpsi = {Cx(1.0, 0.0), Cx(2.0, 3.0), Cx(0.0, 1.0)};
    p.psi1 = PeriodicSpec{dpsi, power_coeffs(10)};
    p.psi2 = PeriodicSpec{dpsi, power_coeffs(7)};
    p.k1 = Cx(0.0, std::sqrt(3.0) * kPi / 7.0);
    p.k2 = Cx(std::sqrt(7.0) * kPi / 11.0, 0.0);
    const CxVec dq = {Cx(2.0, 0.0), Cx(1.0, 0.0), Cx(-1.0, 0.0)};
    p.Q1 = poly_add(poly_linear({Cx(4.0, 0.0), Cx(2.0, 0.0), Cx(-2.0, 0.0)}, Cx(0.0, kPi / 12.0)),
                    make_periodic(dq, p.c, power_coeffs(5)));
    p.Q2 = poly_add(poly_linear({Cx(5.0, 0.0), Cx(1.0, 0.0), Cx(-3.0, 0.0)}, Cx(0.0, kPi / 13.0)),
                    make_periodic(dq, p.c, power_coeffs(8)));
    return solutions::construct_thm21_i(p, br);
  };
  fx.checks = {
      {"constant exponent (4+i)+pi/2",
       derived_is("half_sum_Lc", Cx(4.0 + kPi / 2.0, 1.0), 1e-12)},
      {"structural order 10", structural_is(10)},
  };
  return fx;
}

Fixture make_binomial_2() {
  Fixture fx;
  fx.id = "ex-binomial-2";
  fx.citation =
      "th-2.1(i) worked example: c = (5,-2,3), a = 13, b = 1, a1 = sqrt(5), a0 = sqrt(7)/2; "
      "order max{13,5} = 13";
  fx.constructor_arm = "th-2.1(i)";
  fx.equation_arm = "binomial-diff";
  fx.tol = 1e-8;
  fx.branches = {{{"variant", 0}, {"pm", 1}},
                 {{"variant", 0}, {"pm", -1}},
                 {{"variant", 1}, {"pm", 1}},
                 {{"variant", 1}, {"pm", -1}}};
  fx.build = [](const Branch& br) {
    solutions::Thm21iParams p;
    p.c = {Cx(5.0, 0.0), Cx(-2.0, 0.0), Cx(3.0, 0.0)};
    p.a = Cx(13.0, 0.0);
    p.b = Cx(1.0, 0.0);
    p.a1 = Cx(std::sqrt(5.0), 0.0);
    p.a0 = Cx(std::sqrt(7.0) / 2.0, 0.0);
    p.L1 = {Cx(2.0, 0.0), Cx(1.0, 0.0), Cx(0.0, -1.0)};
    p.L2 = {Cx(3.0, 0.0), Cx(0.0, 1.0), Cx(-2.0, 0.0)};
    const CxVec dpsi = {Cx(3.0, 0.0), Cx(6.0, 0.0), Cx(-1.0, 0.0)};
    p.psi1 = PeriodicSpec{dpsi, power_coeffs(13)};
    p.psi2 = PeriodicSpec{dpsi, power_coeffs(5)};
    p.k1 = Cx(0.0, std::sqrt(5.0) * kPi / 2.0);
    p.k2 = Cx(0.0, std::sqrt(7.0) * kPi / 5.0);
    const CxVec dq = {Cx(1.0, 0.0), Cx(1.0, 0.0), Cx(-1.0, 0.0)};
    p.Q1 = poly_add(poly_linear({Cx(4.0, 0.0), Cx(1.0, 0.0), Cx(-6.0, 0.0)}, Cx(0.0, kPi / 4.0)),
                    make_periodic(dq, p.c, power_coeffs(7)));
    p.Q2 = poly_add(poly_linear({Cx(6.0, 0.0), Cx(3.0, 0.0), Cx(-8.0, 0.0)}, Cx(0.0, kPi / 9.0)),
                    make_periodic(dq, p.c, power_coeffs(6)));
    return solutions::construct_thm21_i(p, br);
  };
  fx.checks = {
      {"constant exponent 8.5-2.5i", derived_is("half_sum_Lc", Cx(8.5, -2.5), 1e-12)},
      {"structural order 13", structural_is(13)},
  };
  return fx;
}

Fixture make_th21_ii() {
  Fixture fx;
  fx.id = "th21-ii-beta";
  fx.citation =
      "th-2.1(ii): f = beta(z) e^{L21(z)} with beta = z1 + z2; the right side is derived from "
      "the beta constraint (the shifted beta carries the e^{L21(c)} factor)";
  fx.constructor_arm = "th-2.1(ii)";
  fx.equation_arm = "binomial-diff";
  fx.tol = 1e-9;
  fx.build = [](const Branch& br) {
    solutions::Thm21iiParams p;
    p.c = {Cx(1.0, 0.0), Cx(-1.0, 0.0)};
    p.a = Cx(2.0, 0.0);
    p.b = Cx(3.0, 0.0);
    p.a1 = Cx(1.0, 0.0);
    p.a0 = Cx(1.0, 0.0);
    p.P = Cx(1.0, 0.0);
    p.B = Cx(0.0, kPi / 7.0);
    p.L21 = {Cx(0.4, 0.3), Cx(0.1, -0.2)};
    p.beta = ep_from_poly(poly_linear({Cx(1.0, 0.0), Cx(1.0, 0.0)}));
    return solutions::construct_thm21_ii(p, br);
  };
  fx.checks = {
      {"derived Q matches [2+3(1+E)^2] beta^2 e^{-B}",
       [](const Constructed& c) -> std::optional<std::string> {
         const auto* eq = std::get_if<equations::BinomialDiff>(&*c.equation);
         if (eq == nullptr) return "equation missing";
         const Cx E = std::exp(Cx(0.3, 0.5));
         const Cx one(1.0, 0.0);
         const Cx scale =
             (Cx(2.0, 0.0) + Cx(3.0, 0.0) * (one + E) * (one + E)) * std::exp(Cx(0.0, -kPi / 7.0));
         const MPoly beta = poly_linear({Cx(1.0, 0.0), Cx(1.0, 0.0)});
         const MPoly expect = poly_scale(poly_mul(beta, beta), scale);
         if (!poly_approx_equal(eq->Q, expect, 1e-10)) return "derived Q mismatch";
         return std::nullopt;
       }},
      {"printed form differs when e^{L21(c)} != 1",
       [](const Constructed& c) -> std::optional<std::string> {
         auto it = c.bundle.derived.find("printed_constraint_gap");
         if (it == c.bundle.derived.end()) return "gap missing";
         if (std::abs(it->second) < 1e-6) return "expected a visible gap, got " + cxs(it->second);
         return std::nullopt;
       }},
  };
  return fx;
}

Fixture make_th22_i() {
  Fixture fx;
  fx.id = "th22-i-sine";
  fx.citation =
      "th-2.2(i): f(z + pi)^2 + P^2 f'(z)^2 = 1 in one variable, solved by f = -cos z from the "
      "paired exponents h1 = iz, h2 = -iz";
  fx.constructor_arm = "th-2.2(i)";
  fx.equation_arm = "pdde";
  fx.tol = 1e-9;
  fx.branches = {{{"pm", 1}}, {{"pm", -1}}};
  fx.build = [](const Branch& br) {
    solutions::Thm22iParams p;
    p.c = {Cx(kPi, 0.0)};
    p.axis = 1;
    p.a = Cx(1.0, 0.0);
    p.b = Cx(1.0, 0.0);
    p.h1c = {Cx(0.0, 1.0)};
    p.h2c = {Cx(0.0, -1.0)};
    p.r1 = Cx(0.0, 0.0);
    p.r2 = Cx(0.0, 0.0);
    p.alpha1 = Cx(1.0, 0.0);
    p.alpha2 = Cx(1.0, 0.0);
    return solutions::construct_thm22_i(p, br);
  };
  fx.checks = {
      {"P^2 equals 1",
       [](const Constructed& c) -> std::optional<std::string> {
         auto it = c.bundle.derived.find("P");
         if (it == c.bundle.derived.end()) return "derived P missing";
         const Cx p2 = it->second * it->second;
         if (std::abs(p2 - Cx(1.0, 0.0)) > 1e-10) return "P^2 = " + cxs(p2);
         return std::nullopt;
       }},
      {"pairing condition holds", derived_below("proof_condition_residual", 1e-12)},
  };
  return fx;
}

Fixture make_th22_ii() {
  Fixture fx;
  fx.id = "th22-ii-gamma";
  fx.citation =
      "th-2.2(ii): f = gamma(z-c) e^{L1 + H - L1(c)} with gamma = z2, H = (z1+z2)^2; the "
      "derivative factor is xi_i + d_i H'(s)";
  fx.constructor_arm = "th-2.2(ii)";
  fx.equation_arm = "pdde";
  fx.tol = 1e-9;
  fx.build = [](const Branch& br) {
    solutions::Thm22iiParams p;
    p.c = {Cx(1.0, 0.0), Cx(-1.0, 0.0)};
    p.axis = 1;
    p.a = Cx(1.0, 0.0);
    p.b = Cx(1.0, 0.0);
    p.P = Cx(1.0, 0.0);
    p.r5 = Cx(0.0, 0.0);
    p.gamma = ep_from_poly(poly_linear({Cx(0.0, 0.0), Cx(1.0, 0.0)}));
    p.L1 = {Cx(0.0, kPi), Cx(0.0, kPi)};
    p.H = PeriodicSpec{{Cx(1.0, 0.0), Cx(1.0, 0.0)}, power_coeffs(2)};
    return solutions::construct_thm22_ii(p, br);
  };
  fx.checks = {
      {"derived Q matches z2^2 + (pi i + 2(z1+z2))^2 (z2+1)^2",
       [](const Constructed& c) -> std::optional<std::string> {
         const auto* eq = std::get_if<equations::PDDE>(&*c.equation);
         if (eq == nullptr) return "equation missing";
         const MPoly t = poly_linear({Cx(2.0, 0.0), Cx(2.0, 0.0)}, Cx(0.0, kPi));
         const MPoly z2 = poly_linear({Cx(0.0, 0.0), Cx(1.0, 0.0)});
         const MPoly z2p1 = poly_linear({Cx(0.0, 0.0), Cx(1.0, 0.0)}, Cx(1.0, 0.0));
         const MPoly expect =
             poly_add(poly_mul(z2, z2), poly_mul(poly_mul(t, t), poly_mul(z2p1, z2p1)));
         if (!poly_approx_equal(eq->Q, expect, 1e-10)) return "derived Q mismatch";
         return std::nullopt;
       }},
  };
  return fx;
}

Fixture make_trinomial_1() {
  Fixture fx;
  fx.id = "ex-trinomial-1";
  fx.citation =
      "th-2.3(i) worked example: a = 2, b = 3, omega = 4, c = (5,2,-3), G = 5 f(z+c) - 3 f(z), "
      "xi = sqrt(2)";
  fx.constructor_arm = "th-2.3(i)";
  fx.equation_arm = "trinomial";
  fx.tol = 1e-8;
  fx.branches = {{{"swap", 0}, {"k", 0}}, {{"swap", 1}, {"k", 0}}};
  fx.build = [](const Branch& br) {
    solutions::Thm23iParams p;
    p.c = {Cx(5.0, 0.0), Cx(2.0, 0.0), Cx(-3.0, 0.0)};
    p.a = Cx(2.0, 0.0);
    p.b = Cx(3.0, 0.0);
    p.omega = Cx(4.0, 0.0);
    p.g1 = Cx(5.0, 0.0);
    p.g2 = Cx(-3.0, 0.0);
    p.xi = Cx(std::sqrt(2.0), 0.0);
    p.axis = 2;
    p.L0 = {Cx(3.0, 0.0), Cx(0.0, 0.0), Cx(5.0, 0.0)};
    p.H = PeriodicSpec{{Cx(4.0, 0.0), Cx(-1.0, 0.0), Cx(6.0, 0.0)}, power_coeffs(3)};
    p.B3 = Cx(0.0, 5.0 * kPi / 6.0);
    return solutions::construct_thm23_i(p, br);
  };
  fx.checks = {
      {"X matches the printed side-condition value",
       [](const Constructed& c) -> std::optional<std::string> {
         const int swap = solutions::bget(c.bundle.branch, "swap", 0);
         const double s10 = std::sqrt(10.0);
         const Cx expect = swap ? Cx((10.0 - 9.0 * s10) / (5.0 * (4.0 - 3.0 * s10)), 0.0)
                                : Cx((10.0 + 9.0 * s10) / (5.0 * (4.0 + 3.0 * s10)), 0.0);
         auto it = c.bundle.derived.find("X");
         if (it == c.bundle.derived.end()) return "derived X missing";
         if (std::abs(it->second - expect) > 1e-10 * std::abs(expect))
           return "X = " + cxs(it->second) + ", expected " + cxs(expect);
         return std::nullopt;
       }},
      {"side condition closes", derived_below("side_condition_residual", 1e-12)},
  };
  return fx;
}

Fixture make_trinomial_2() {
  Fixture fx;
  fx.id = "ex-trinomial-2";
  fx.citation =
      "th-2.3(ii) worked example: a = 3, b = 1, omega = 5, c = (2,-3,1), G = 3 f(z+c) - 2 f(z), "
      "two-exponential family";
  fx.constructor_arm = "th-2.3(ii)";
  fx.equation_arm = "trinomial";
  fx.tol = 1e-8;
  fx.branches = {{{"swap", 0}, {"k1", 0}, {"k2", 0}}, {{"swap", 1}, {"k1", 0}, {"k2", 0}}};
  fx.build = [](const Branch& br) {
    solutions::Thm23iiParams p;
    p.c = {Cx(2.0, 0.0), Cx(-3.0, 0.0), Cx(1.0, 0.0)};
    p.a = Cx(3.0, 0.0);
    p.b = Cx(1.0, 0.0);
    p.omega = Cx(5.0, 0.0);
    p.g1 = Cx(3.0, 0.0);
    p.g2 = Cx(-2.0, 0.0);
    p.axis1 = 3;
    p.axis2 = 2;
    p.L10 = {Cx(6.0, 0.0), Cx(4.0, 0.0), Cx(0.0, 0.0)};
    p.L20 = {Cx(5.0, 0.0), Cx(0.0, 0.0), Cx(-10.0, 0.0)};
    const CxVec d = {Cx(5.0, 0.0), Cx(4.0, 0.0), Cx(2.0, 0.0)};
    p.H1 = PeriodicSpec{d, power_coeffs(3)};
    p.H2 = PeriodicSpec{d, power_coeffs(2)};
    p.D1 = Cx(0.0, 7.0 * kPi / 8.0);
    p.D2 = Cx(0.0, 13.0 * kPi / 11.0);
    return solutions::construct_thm23_ii(p, br);
  };
  fx.checks = {
      {"shift multipliers match the printed values",
       [](const Constructed& c) -> std::optional<std::string> {
         const int swap = solutions::bget(c.bundle.branch, "swap", 0);
         const double s22 = std::sqrt(22.0);
         const Cx plus((7.0 + 2.0 * s22) / (3.0 * (5.0 + s22)), 0.0);
         const Cx minus((7.0 - 2.0 * s22) / (3.0 * (5.0 - s22)), 0.0);
         const Cx e1 = swap ? minus : plus;
         const Cx e2 = swap ? plus : minus;
         auto i1 = c.bundle.derived.find("E1");
         auto i2 = c.bundle.derived.find("E2");
         if (i1 == c.bundle.derived.end() || i2 == c.bundle.derived.end())
           return "derived E1/E2 missing";
         if (std::abs(i1->second - e1) > 1e-10 * std::abs(e1)) return "E1 = " + cxs(i1->second);
         if (std::abs(i2->second - e2) > 1e-10 * std::abs(e2)) return "E2 = " + cxs(i2->second);
         return std::nullopt;
       }},
      {"g constant term equals 181 pi i / 88",
       [](const Constructed& c) -> std::optional<std::string> {
         const Cx got = algebra::poly_const_term(c.bundle.g);
         const Cx expect(0.0, 181.0 * kPi / 88.0);
         if (std::abs(got - expect) > 1e-12 * std::abs(expect))
           return "g(0) = " + cxs(got) + ", expected " + cxs(expect);
         return std::nullopt;
       }},
      {"structural order 3", structural_is(3)},
  };
  return fx;
}

Fixture make_th24_i() {
  Fixture fx;
  fx.id = "th24-i-xi";
  fx.citation =
      "th-2.4(i): omega = 0 trinomial, roots pinned to (-i, +i); single exponential with "
      "prefactor (xi^2 + 1)/(2 xi sqrt(a))";
  fx.constructor_arm = "th-2.4(i)";
  fx.equation_arm = "trinomial";
  fx.tol = 1e-9;
  fx.branches = {{{"swap", 0}, {"k", 0}}, {{"swap", 1}, {"k", 0}}};
  fx.build = [](const Branch& br) {
    solutions::Thm24iParams p;
    p.c = {Cx(1.0, 0.0), Cx(-1.0, 0.0)};
    p.a = Cx(4.0, 0.0);
    p.b = Cx(9.0, 0.0);
    p.g1 = Cx(2.0, 0.0);
    p.g2 = Cx(1.0, 0.0);
    p.xi = Cx(2.0, 0.0);
    p.axis = 1;
    p.L0 = {};
    p.H = PeriodicSpec{{Cx(1.0, 0.0), Cx(1.0, 0.0)}, power_coeffs(2)};
    p.A = Cx(0.0, kPi / 5.0);
    return solutions::construct_thm24_i(p, br);
  };
  fx.checks = {{"side condition closes", derived_below("side_condition_residual", 1e-12)}};
  return fx;
}

Fixture make_th24_ii() {
  Fixture fx;
  fx.id = "th24-ii-pair";
  fx.citation =
      "th-2.4(ii): omega = 0 trinomial two-exponential family; the paired shift multipliers "
      "satisfy E1 E2 = 1";
  fx.constructor_arm = "th-2.4(ii)";
  fx.equation_arm = "trinomial";
  fx.tol = 1e-9;
  fx.branches = {{{"swap", 0}, {"k1", 0}, {"k2", 0}}, {{"swap", 1}, {"k1", 0}, {"k2", 0}}};
  fx.build = [](const Branch& br) {
    solutions::Thm24iiParams p;
    p.c = {Cx(1.0, 0.0), Cx(-1.0, 0.0)};
    p.a = Cx(1.0, 0.0);
    p.b = Cx(1.0, 0.0);
    p.g1 = Cx(1.0, 0.0);
    p.g2 = Cx(0.0, 0.0);
    p.axis1 = 1;
    p.axis2 = 1;
    p.L10 = {};
    p.L20 = {};
    p.H1 = PeriodicSpec{};
    p.H2 = PeriodicSpec{{Cx(1.0, 0.0), Cx(1.0, 0.0)}, power_coeffs(3)};
    p.B1 = Cx(0.0, kPi / 7.0);
    p.B2 = Cx(0.0, 0.0);
    return solutions::construct_thm24_ii(p, br);
  };
  fx.checks = {
      {"E1 E2 equals 1",
       [](const Constructed& c) -> std::optional<std::string> {
         auto i1 = c.bundle.derived.find("E1");
         auto i2 = c.bundle.derived.find("E2");
         if (i1 == c.bundle.derived.end() || i2 == c.bundle.derived.end())
           return "derived E1/E2 missing";
         const Cx prod = i1->second * i2->second;
         if (std::abs(prod - Cx(1.0, 0.0)) > 1e-12) return "E1 E2 = " + cxs(prod);
         return std::nullopt;
       }},
  };
  return fx;
}

solutions::Remark35Params rem35_case2_base() {
  solutions::Remark35Params p;
  p.c = {Cx(1.0, 0.0), Cx(-1.0, 0.0)};
  p.ell = {Cx(1.0, 0.0), Cx(0.0, 0.0)};
  p.case_no = 2;
  p.pi_kind = solutions::PiKind::Sin;
  CxVec coeffs = {Cx(0.0, kPi / 6.0), Cx(1.0, 0.0), Cx(1.0, 0.0)};
  p.g_periodic = make_periodic({Cx(1.0, 0.0), Cx(1.0, 0.0)}, p.c, coeffs);
  return p;
}

Fixture make_rem35_case2(char tag, Cx a, Cx b, int sb, Cx g1, Cx g2, int sr, Cx expectK,
                         Cx expectD, const std::string& displayed) {
  Fixture fx;
  fx.id = std::string("rem35-case2-") + tag;
  fx.citation = "remark-3.5 case 2 example: " + displayed +
                ", c-periodic g, pi = sin(2 pi ell(z)), ell(c) = 1";
  fx.constructor_arm = "remark-3.5 case 2";
  fx.equation_arm = "linear-reduced";
  fx.tol = 1e-9;
  fx.branches = {{{"k", 0}}};
  fx.build = [a, b, sb, g1, g2, sr](const Branch& br) {
    solutions::Remark35Params p = rem35_case2_base();
    p.a = a;
    p.b = b;
    p.sign_b = sb;
    p.g1 = g1;
    p.g2 = g2;
    p.sign_rhs = sr;
    return solutions::construct_remark35(p, br);
  };
  fx.checks = {
      {"homogeneous multiplier K", derived_is("K", expectK, 1e-10)},
      {"particular denominator D", derived_is("D", expectD, 1e-10)},
      {"g is an exact shift fixed point", g_shift_fixed()},
  };
  return fx;
}

Fixture make_rem35_case1() {
  Fixture fx;
  fx.id = "rem35-case1";
  fx.citation =
      "remark-3.5 case 1: constant g, pi = cos(2 pi ell(z)); homogeneous plus constant "
      "particular solution";
  fx.constructor_arm = "remark-3.5 case 1";
  fx.equation_arm = "linear-reduced";
  fx.tol = 1e-9;
  fx.branches = {{{"k", 0}}};
  fx.build = [](const Branch& br) {
    solutions::Remark35Params p = rem35_case2_base();
    p.a = Cx(9.0, 0.0);
    p.b = Cx(4.0, 0.0);
    p.sign_b = 1;
    p.g1 = Cx(std::sqrt(3.0), 0.0);
    p.g2 = Cx(std::sqrt(5.0), 0.0);
    p.sign_rhs = 1;
    p.case_no = 1;
    p.g_const = Cx(0.0, kPi / 3.0);
    p.pi_kind = solutions::PiKind::Cos;
    return solutions::construct_remark35(p, br);
  };
  fx.checks = {
      {"particular denominator D",
       derived_is("D", Cx(3.0 + 2.0 * (std::sqrt(3.0) + std::sqrt(5.0)), 0.0), 1e-10)},
  };
  return fx;
}

Fixture make_rem35_case3() {
  Fixture fx;
  fx.id = "rem35-case3";
  fx.citation =
      "remark-3.5 case 3: g = L(z) + H(z) + B with linear L; the denominator picks up the "
      "e^{L(c)/2} factor";
  fx.constructor_arm = "remark-3.5 case 3";
  fx.equation_arm = "linear-reduced";
  fx.tol = 1e-9;
  fx.branches = {{{"k", 0}}};
  fx.build = [](const Branch& br) {
    solutions::Remark35Params p = rem35_case2_base();
    p.a = Cx(9.0, 0.0);
    p.b = Cx(4.0, 0.0);
    p.sign_b = 1;
    p.g1 = Cx(std::sqrt(3.0), 0.0);
    p.g2 = Cx(std::sqrt(5.0), 0.0);
    p.sign_rhs = 1;
    p.case_no = 3;
    p.L = {Cx(0.3, 0.1), Cx(0.0, 0.0)};
    p.H1 = PeriodicSpec{{Cx(1.0, 0.0), Cx(1.0, 0.0)}, power_coeffs(2)};
    p.B = Cx(0.0, kPi / 6.0);
    p.pi_kind = solutions::PiKind::One;
    return solutions::construct_remark35(p, br);
  };
  fx.checks = {
      {"E_half equals e^{L(c)/2}", derived_is("E_half", std::exp(Cx(0.15, 0.05)), 1e-12)},
  };
  return fx;
}

std::vector<Fixture> build_registry() {
  std::vector<Fixture> r;
  r.push_back(make_thm11());
  r.push_back(make_saleeby());
  r.push_back(make_binomial_1());
  r.push_back(make_binomial_2());
  r.push_back(make_th21_ii());
  r.push_back(make_th22_i());
  r.push_back(make_th22_ii());
  r.push_back(make_trinomial_1());
  r.push_back(make_trinomial_2());
  r.push_back(make_th24_i());
  r.push_back(make_th24_ii());

  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0), s7 = std::sqrt(7.0);
  const double s11 = std::sqrt(11.0), s21 = std::sqrt(21.0), s33 = std::sqrt(33.0);
  r.push_back(make_rem35_case2(
      'a', Cx(9.0, 0.0), Cx(4.0, 0.0), 1, Cx(s3, 0.0), Cx(s5, 0.0), 1,
      Cx(-(3.0 + 2.0 * s5) / (2.0 * s3), 0.0), Cx(3.0 + 2.0 * (s3 + s5), 0.0),
      "3 f(z) + 2(sqrt(3) f(z+c) + sqrt(5) f(z)) = e^{g/2}"));
  r.push_back(make_rem35_case2(
      'b', Cx(7.0, 0.0), Cx(3.0, 0.0), 1, Cx(2.0, 0.0), Cx(-1.0, 0.0), -1,
      Cx(-(s7 - s3) / (2.0 * s3), 0.0), Cx(s7 + s3, 0.0),
      "sqrt(7) f(z) + sqrt(3)(2 f(z+c) - f(z)) = -e^{g/2}"));
  r.push_back(make_rem35_case2(
      'c', Cx(5.0, 0.0), Cx(2.0, 0.0), -1, Cx(3.0, 0.0), Cx(-2.0, 0.0), 1,
      Cx((s5 + 2.0 * s2) / (3.0 * s2), 0.0), Cx(s5 - s2, 0.0),
      "sqrt(5) f(z) - sqrt(2)(3 f(z+c) - 2 f(z)) = e^{g/2}"));
  r.push_back(make_rem35_case2(
      'd', Cx(2.0, 0.0), Cx(3.0, 0.0), -1, Cx(s7, 0.0), Cx(s11, 0.0), -1,
      Cx((s2 - s33) / s21, 0.0), Cx(s2 - s3 * (s7 + s11), 0.0),
      "sqrt(2) f(z) - sqrt(3)(sqrt(7) f(z+c) + sqrt(11) f(z)) = -e^{g/2}"));
  r.push_back(make_rem35_case1());
  r.push_back(make_rem35_case3());
  return r;
}

}  // namespace

const std::vector<Fixture>& registry() {
  static const std::vector<Fixture> r = build_registry();
  return r;
}

const Fixture* find(const std::string& id) {
  for (const auto& fx : registry())
    if (fx.id == id) return &fx;
  return nullptr;
}

FixtureResult run_fixture(const Fixture& fx, const RunOverrides& ov) {
  FixtureResult result;
  result.id = fx.id;
  result.citation = fx.citation;

  ZeroCheckConfig cfg;
  cfg.seed = ov.seed.value_or(20240901ULL);
  cfg.n_samples = ov.samples.value_or(200);
  cfg.radius = ov.radius.value_or(1.5);
  cfg.tol = ov.tol.value_or(fx.tol);

  std::vector<Branch> branches = fx.branches;
  if (branches.empty()) branches.push_back({});
  if (ov.branch_index.has_value()) {
    const int idx = *ov.branch_index;
    if (idx < 0 || idx >= static_cast<int>(branches.size()))
      throw MalformedInput("branch index " + std::to_string(idx) + " out of range for fixture " +
                           fx.id);
    branches = {branches[static_cast<std::size_t>(idx)]};
  }

  bool all_checks_ok = true;
  bool any_pass_symbolic = false;
  int best_row = -1;

  for (const Branch& br : branches) {
    BranchRow row;
    row.label = solutions::branch_label(br);
    equations::VerificationReport rep;
    rep.seed = cfg.seed;
    Constructed built;
    try {
      built = fx.build(br);
      row.built = true;
    } catch (const ForgeError& e) {
      row.build_error = e.what();
      result.rows.push_back(std::move(row));
      continue;
    }
    row.label = solutions::branch_label(built.bundle.branch.empty() ? br : built.bundle.branch);

    if (fx.pair_identity && built.partner.has_value()) {
      const int n = built.bundle.f.n;
      const expfun::ExpPoly lhs =
          ep_sub(ep_add(ep_mul(built.bundle.f, built.bundle.f),
                        ep_mul(*built.partner, *built.partner)),
                 ep_from_poly(poly_const(n, Cx(1.0, 0.0))));
      const auto cert = ep_is_zero(lhs, cfg);
      rep.symbolic_zero = cert.symbolic;
      rep.max_rel_residual = cert.max_rel_residual;
      rep.n_points = cfg.n_samples;
      rep.witness = cert.witness;
    } else if (built.equation.has_value()) {
      rep = equations::verify(*built.equation, built.bundle.f, cfg);
    } else {
      row.check_failures.push_back("fixture produced neither an equation nor a partner");
      all_checks_ok = false;
      result.rows.push_back(std::move(row));
      continue;
    }

    row.symbolic = rep.symbolic_zero;
    row.max_rel = rep.max_rel_residual;
    row.verified = rep.symbolic_zero || rep.max_rel_residual <= cfg.tol;

    for (const auto& [name, check] : fx.checks) {
      std::optional<std::string> msg;
      try {
        msg = check(built);
      } catch (const std::exception& e) {
        msg = std::string("check threw: ") + e.what();
      }
      if (msg.has_value()) {
        row.check_failures.push_back(name + ": " + *msg);
        all_checks_ok = false;
      }
    }

    if (row.verified && row.symbolic) any_pass_symbolic = true;
    const int here = static_cast<int>(result.rows.size());
    if (row.verified) {
      if (best_row < 0 || !result.rows[static_cast<std::size_t>(best_row)].verified ||
          row.max_rel < result.rows[static_cast<std::size_t>(best_row)].max_rel)
        best_row = here;
      result.best = rep;
    } else if (best_row < 0) {
      best_row = here;
      result.best = rep;
    }
    result.rows.push_back(std::move(row));
  }

  bool any_verified = false;
  for (const auto& row : result.rows) any_verified = any_verified || row.verified;

  result.pass = any_verified && all_checks_ok && (!fx.expect_symbolic || any_pass_symbolic);
  result.best.branch_labels.clear();
  for (const auto& row : result.rows) result.best.branch_labels.push_back(row.label);
  return result;
}

std::vector<std::string> constructor_arms_covered() {
  std::set<std::string> s;
  for (const auto& fx : registry()) s.insert(fx.constructor_arm);
  return {s.begin(), s.end()};
}

std::vector<std::string> equation_arms_covered() {
  std::set<std::string> s;
  for (const auto& fx : registry())
    if (!fx.equation_arm.empty()) s.insert(fx.equation_arm);
  return {s.begin(), s.end()};
}

}  // namespace forge::fixtures
