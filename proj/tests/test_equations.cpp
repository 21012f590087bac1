#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "forge/equations.hpp"
#include "oracles.hpp"

using namespace forge::equations;
using forge::algebra::Cx;
using forge::algebra::CxVec;
using forge::algebra::MPoly;
using forge::algebra::Shift;
using forge::expfun::ExpPoly;
using forge::expfun::ep_eval;
using forge::expfun::sample_polydisc;
using oracles::crand;
using oracles::ep_value_direct;

namespace {

Cx direct_lhs_minus_rhs(const EquationSpec& eq, const ExpPoly& f, const CxVec& z) {
  using forge::algebra::poly_eval;
  if (const auto* e = std::get_if<BinomialDiff>(&eq)) {
    const Cx fv = ep_value_direct(f, z);
    const Cx fc = ep_value_direct(f, oracles::vec_add(z, e->c));
    const Cx S = e->a1 * fc + e->a0 * fv;
    const Cx P = poly_eval(e->P, z);
    return e->a * fv * fv + e->b * P * P * S * S -
           poly_eval(e->Q, z) * std::exp(poly_eval(e->g, z));
  }
  if (const auto* e = std::get_if<PDDE>(&eq)) {
    const Cx fc = ep_value_direct(f, oracles::vec_add(z, e->c));
    const Cx df = oracles::fd_partial(f, e->axis, z);
    const Cx P = poly_eval(e->P, z);
    return e->a * fc * fc + e->b * P * P * df * df -
           poly_eval(e->Q, z) * std::exp(poly_eval(e->g, z));
  }
  if (const auto* e = std::get_if<Trinomial>(&eq)) {
    const Cx fv = ep_value_direct(f, z);
    const Cx fc = ep_value_direct(f, oracles::vec_add(z, e->c));
    const Cx G = e->g1 * fc + e->g2 * fv;
    return e->a * fv * fv + 2.0 * e->omega * fv * G + e->b * G * G -
           std::exp(poly_eval(e->g, z));
  }
  const auto& lr = std::get<LinearReduced>(eq);
  const Cx fv = ep_value_direct(f, z);
  const Cx fc = ep_value_direct(f, oracles::vec_add(z, lr.c));
  const Cx G = lr.g1 * fc + lr.g2 * fv;
  return std::sqrt(lr.a) * fv + static_cast<double>(lr.sign_b) * std::sqrt(lr.b) * G -
         static_cast<double>(lr.sign_rhs) * std::exp(poly_eval(lr.g, z) / 2.0);
}

ExpPoly sine_f() {
  // (e^{iz} - e^{-iz}) / (2i)
  ExpPoly f{1, {}};
  f.terms.push_back({forge::algebra::poly_const(1, Cx(0.0, -0.5)),
                     forge::algebra::poly_linear({Cx(0.0, 1.0)})});
  f.terms.push_back({forge::algebra::poly_const(1, Cx(0.0, 0.5)),
                     forge::algebra::poly_linear({Cx(0.0, -1.0)})});
  return forge::expfun::ep_normalize(f);
}

BinomialDiff sine_equation() {
  BinomialDiff eq;
  eq.a = Cx(1.0);
  eq.b = Cx(1.0);
  eq.P = forge::algebra::poly_const(1, Cx(1.0));
  eq.Q = forge::algebra::poly_const(1, Cx(1.0));
  eq.g = forge::algebra::poly_zero(1);
  eq.a1 = Cx(1.0);
  eq.a0 = Cx(0.0);
  eq.c = {Cx(std::acos(-1.0) / 2.0)};
  return eq;
}

}  // namespace

TEST_CASE("omega roots: closed forms, product one, stated sum") {
  const OmegaRoots r0 = omega_roots(Cx(1.0), Cx(1.0), Cx(0.0));
  CHECK(r0.omega_zero);
  CHECK_FALSE(r0.degenerate);
  CHECK(std::abs(r0.w1 - Cx(0.0, 1.0)) <= 1e-15);
  CHECK(std::abs(r0.w2 - Cx(0.0, -1.0)) <= 1e-15);

  const OmegaRoots r = omega_roots(Cx(2.0), Cx(3.0), Cx(4.0));
  const double s6 = std::sqrt(6.0), s10 = std::sqrt(10.0);
  CHECK(std::abs(r.w1 - Cx((-4.0 + s10) / s6)) <= 1e-14);
  CHECK(std::abs(r.w2 - Cx((-4.0 - s10) / s6)) <= 1e-14);
  CHECK(std::abs(r.w1 * r.w2 - Cx(1.0)) <= 1e-14);
  CHECK(std::abs(r.w1 + r.w2 + Cx(8.0) / Cx(s6)) <= 1e-14);

  const OmegaRoots deg = omega_roots(Cx(1.0), Cx(1.0), Cx(1.0));
  CHECK(deg.degenerate);
  CHECK(std::abs(deg.w1 - deg.w2) <= 1e-15);
  CHECK(std::abs(deg.w1 + Cx(1.0)) <= 1e-15);

  CHECK_THROWS_AS(omega_roots(Cx(0.0), Cx(1.0), Cx(1.0)), forge::ZeroProduct);
  CHECK_THROWS_AS(omega_roots(Cx(1.0), Cx(0.0), Cx(1.0)), forge::ZeroProduct);
}

TEST_CASE("factorization identity holds for random complex data") {
  std::mt19937_64 rng(41);
  int done = 0;
  while (done < 200) {
    const Cx a = crand(rng, 2.0), b = crand(rng, 2.0), w = crand(rng, 2.0);
    if (std::abs(a) < 0.1 || std::abs(b) < 0.1) continue;
    if (std::abs(w * w - a * b) < 1e-6) continue;
    const Cx F = crand(rng, 2.0), G = crand(rng, 2.0);
    CHECK(factor_gap(a, b, w, F, G) <= 1e-12);
    const OmegaRoots r = omega_roots(a, b, w);
    CHECK(std::abs(r.w1 * r.w2 - Cx(1.0)) <= 1e-12);
    const Cx mu = std::sqrt(a) * std::sqrt(b);
    CHECK(std::abs(r.w1 + r.w2 + 2.0 * w / mu) <= 1e-12 * (1.0 + std::abs(2.0 * w / mu)));
    ++done;
  }
}

TEST_CASE("sampled factorization check on exponential polynomials") {
  std::mt19937_64 rng(43);
  const ExpPoly F = oracles::random_exppoly(rng, 2, 1, 1, 2);
  const ExpPoly G = oracles::random_exppoly(rng, 2, 1, 1, 2);
  CHECK(factor_check(Cx(2.0), Cx(3.0), Cx(4.0), F, G) <= 1e-10);
  CHECK(factor_check(Cx(1.0, 1.0), Cx(0.5, -2.0), Cx(0.0), F, G) <= 1e-10);
  CHECK_THROWS_AS(factor_check(Cx(1.0), Cx(1.0), Cx(1.0), F, G), forge::DegenerateRoots);
}

TEST_CASE("residual assembly matches direct pointwise computation") {
  std::mt19937_64 rng(47);

  for (int it = 0; it < 8; ++it) {
    const int n = 1 + static_cast<int>(forge::expfun::uniform01(rng) * 2);
    const ExpPoly f = oracles::random_exppoly(rng, n, 1, 1, 2);
    const Shift c = oracles::crand_vec(rng, n, 0.5);
    const MPoly P = oracles::random_poly(rng, n, 1, 2);
    const MPoly Q = oracles::random_poly(rng, n, 1, 2);
    const MPoly g = oracles::random_poly(rng, n, 1, 2, 0.3);

    BinomialDiff bd{crand(rng), crand(rng), P, Q, g, crand(rng), crand(rng), c};
    const ResidualParts rb = residual(EquationSpec{bd}, f);
    CHECK_FALSE(rb.pieces.empty());

    Trinomial tri{crand(rng), crand(rng), crand(rng), crand(rng), crand(rng), g, c};
    const ResidualParts rt = residual(EquationSpec{tri}, f);

    PDDE pd{crand(rng), crand(rng), P, Q, g, c, 1 + static_cast<int>(
                                                       forge::expfun::uniform01(rng) * n)};
    const ResidualParts rp = residual(EquationSpec{pd}, f);

    LinearReduced lr{Cx(2.0, 1.0), Cx(1.0, -0.5), crand(rng), crand(rng), g, c,
                     (it % 2 == 0) ? 1 : -1, (it % 3 == 0) ? -1 : 1};
    const ResidualParts rl = residual(EquationSpec{lr}, f);

    for (int s = 0; s < 6; ++s) {
      const CxVec z = sample_polydisc(n, 0.8, rng);
      const Cx vb = ep_eval(rb.residual, z).value;
      const Cx db = direct_lhs_minus_rhs(EquationSpec{bd}, f, z);
      CHECK(std::abs(vb - db) <= 1e-10 * (1.0 + std::abs(db)));

      const Cx vt = ep_eval(rt.residual, z).value;
      const Cx dt = direct_lhs_minus_rhs(EquationSpec{tri}, f, z);
      CHECK(std::abs(vt - dt) <= 1e-10 * (1.0 + std::abs(dt)));

      // the PDDE oracle differentiates by central differences
      const Cx vp = ep_eval(rp.residual, z).value;
      const Cx dp = direct_lhs_minus_rhs(EquationSpec{pd}, f, z);
      CHECK(std::abs(vp - dp) <= 5e-6 * (1.0 + std::abs(dp)));

      const Cx vl = ep_eval(rl.residual, z).value;
      const Cx dl = direct_lhs_minus_rhs(EquationSpec{lr}, f, z);
      CHECK(std::abs(vl - dl) <= 1e-10 * (1.0 + std::abs(dl)));
    }
  }
}

TEST_CASE("verification: symbolic zero for the sine pair") {
  const BinomialDiff eq = sine_equation();
  const VerificationReport rep = verify(EquationSpec{eq}, sine_f());
  CHECK(rep.symbolic_zero);
  CHECK(rep.max_rel_residual == 0.0);
  CHECK_FALSE(rep.witness.has_value());
}

TEST_CASE("verification: perturbed candidate fails with a witness") {
  const BinomialDiff eq = sine_equation();
  ExpPoly f = sine_f();
  ExpPoly bump = forge::expfun::ep_term(forge::algebra::poly_const(1, Cx(1e-5)),
                                        forge::algebra::poly_linear({Cx(0.0, 1.0)}));
  f = forge::expfun::ep_add(f, bump);
  forge::expfun::ZeroCheckConfig cfg;
  cfg.tol = 1e-9;
  const VerificationReport rep = verify(EquationSpec{eq}, f, cfg);
  CHECK_FALSE(rep.symbolic_zero);
  CHECK(rep.max_rel_residual > 1e-9);
  REQUIRE(rep.witness.has_value());
  // the witness really does expose the residual
  const ResidualParts parts = residual(EquationSpec{eq}, f);
  CHECK(std::abs(ep_eval(parts.residual, *rep.witness).value) > 0.0);
}

TEST_CASE("verification: the empty candidate is refused when Q e^g is nonzero") {
  const BinomialDiff eq = sine_equation();
  const VerificationReport rep = verify(EquationSpec{eq}, forge::expfun::ep_zero(1));
  CHECK_FALSE(rep.symbolic_zero);
  CHECK(rep.max_rel_residual == doctest::Approx(1.0));
  CHECK(rep.witness.has_value());
}

TEST_CASE("diagnosis: nonconstant P with the pure difference pair yields the parity certificate") {
  BinomialDiff eq = sine_equation();
  eq.P = forge::algebra::poly_linear({Cx(1.0)});  // P = z
  eq.a1 = Cx(1.0);
  eq.a0 = Cx(-1.0);
  eq.Q = forge::algebra::poly_monomial(1, forge::algebra::MIdx{3}, Cx(2.0));
  const Verdict v = diagnose(EquationSpec{eq});
  CHECK(v.kind == Verdict::Kind::NoFiniteOrderSolution);
  REQUIRE(v.certificate.has_value());
  CHECK(v.certificate->p == 1);
  CHECK(v.certificate->q == 3);
  CHECK(v.certificate->parity.find("p=1/2") != std::string::npos);

  // other coefficient pairs: same verdict, no certificate claimed
  eq.a1 = Cx(2.0);
  const Verdict v2 = diagnose(EquationSpec{eq});
  CHECK(v2.kind == Verdict::Kind::NoFiniteOrderSolution);
  CHECK_FALSE(v2.certificate.has_value());
}

TEST_CASE("diagnosis: remaining arms") {
  BinomialDiff eq = sine_equation();
  const Verdict ok = diagnose(EquationSpec{eq});
  CHECK(ok.kind == Verdict::Kind::SolutionFamilyExists);
  CHECK(ok.reason.find("thm-1.1") != std::string::npos);

  eq.a0 = Cx(1.0);
  CHECK(diagnose(EquationSpec{eq}).reason.find("th-2.1") != std::string::npos);

  eq.a1 = Cx(0.0);
  CHECK(diagnose(EquationSpec{eq}).kind == Verdict::Kind::OutOfScope);

  PDDE pd{Cx(1.0), Cx(1.0), forge::algebra::poly_linear({Cx(1.0), Cx(0.0)}),
          forge::algebra::poly_const(2, Cx(1.0)), forge::algebra::poly_zero(2),
          {Cx(1.0), Cx(0.0)}, 1};
  CHECK(diagnose(EquationSpec{pd}).kind == Verdict::Kind::NoFiniteOrderSolution);
  pd.P = forge::algebra::poly_const(2, Cx(3.0));
  CHECK(diagnose(EquationSpec{pd}).kind == Verdict::Kind::SolutionFamilyExists);

  Trinomial tri{Cx(1.0), Cx(1.0), Cx(2.0), Cx(1.0), Cx(1.0),
                forge::algebra::poly_zero(1), {Cx(1.0)}};
  CHECK(diagnose(EquationSpec{tri}).reason.find("th-2.3") != std::string::npos);
  tri.omega = Cx(0.0);
  CHECK(diagnose(EquationSpec{tri}).reason.find("th-2.4") != std::string::npos);
  tri.omega = Cx(1.0);
  CHECK(diagnose(EquationSpec{tri}).reason.find("remark-3.5") != std::string::npos);
  tri.g1 = Cx(0.0);
  CHECK(diagnose(EquationSpec{tri}).kind == Verdict::Kind::OutOfScope);

  LinearReduced lr{Cx(1.0), Cx(1.0), Cx(1.0), Cx(1.0), forge::algebra::poly_zero(1),
                   {Cx(1.0)}, 1, 1};
  CHECK(diagnose(EquationSpec{lr}).kind == Verdict::Kind::SolutionFamilyExists);
}

TEST_CASE("dimension accessor covers every equation kind") {
  CHECK(spec_dim(EquationSpec{sine_equation()}) == 1);
  PDDE pd{Cx(1.0), Cx(1.0), forge::algebra::poly_const(3, Cx(1.0)),
          forge::algebra::poly_const(3, Cx(1.0)), forge::algebra::poly_zero(3),
          {Cx(1.0), Cx(0.0), Cx(0.0)}, 2};
  CHECK(spec_dim(EquationSpec{pd}) == 3);
  Trinomial tri{Cx(1.0), Cx(1.0), Cx(0.0), Cx(1.0), Cx(0.0),
                forge::algebra::poly_zero(2), {Cx(1.0), Cx(1.0)}};
  CHECK(spec_dim(EquationSpec{tri}) == 2);
  LinearReduced lr{Cx(1.0), Cx(1.0), Cx(1.0), Cx(1.0), forge::algebra::poly_zero(1),
                   {Cx(1.0)}, -1, 1};
  CHECK(spec_dim(EquationSpec{lr}) == 1);
}
