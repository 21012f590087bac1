#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "forge/expfun.hpp"
#include "oracles.hpp"

using namespace forge::expfun;
using forge::algebra::Cx;
using forge::algebra::CxVec;
using forge::algebra::MIdx;
using forge::algebra::MPoly;
using forge::algebra::Shift;
using oracles::crand_vec;
using oracles::ep_value_direct;

namespace {

MPoly lin1(Cx a, Cx b = Cx(0.0)) { return forge::algebra::poly_linear({a}, b); }

}  // namespace

TEST_CASE("normalization folds exponent constants into coefficients") {
  // 2 e^{z+5} -> (2 e^5) e^{z}
  const ExpPoly f = ep_term(forge::algebra::poly_const(1, Cx(2.0)), lin1(Cx(1.0), Cx(5.0)));
  REQUIRE(f.terms.size() == 1);
  CHECK(f.terms[0].expo.terms.count(MIdx{0}) == 0);
  const Cx c = forge::algebra::poly_const_term(f.terms[0].coef);
  CHECK(std::abs(c - 2.0 * std::exp(5.0)) <= 1e-12 * std::abs(c));

  CHECK_THROWS_AS(ep_exp(lin1(Cx(1.0), Cx(800.0))), forge::OverflowInFold);
  CHECK_THROWS_AS(ep_exp(lin1(Cx(1.0), Cx(-800.0))), forge::OverflowInFold);
}

TEST_CASE("normalization merges exponent-equal terms and cancels exact opposites") {
  const ExpPoly ez = ep_exp(lin1(Cx(1.0)));
  const ExpPoly sum = ep_add(ez, ep_scale(ez, Cx(2.0)));
  REQUIRE(sum.terms.size() == 1);
  CHECK(forge::algebra::poly_const_term(sum.terms[0].coef) == Cx(3.0));

  CHECK(ep_is_empty(ep_sub(ez, ez)));
  CHECK(ep_is_empty(ep_zero(2)));
  CHECK_FALSE(ep_is_empty(ez));
}

TEST_CASE("exponent clustering tolerance is absolute per coefficient") {
  const ExpPoly a = ep_exp(lin1(Cx(1.0)));
  const ExpPoly b = ep_exp(lin1(Cx(1.0 + 1e-12)));
  const ExpPoly c = ep_exp(lin1(Cx(1.0 + 1e-3)));
  CHECK(ep_add(a, b).terms.size() == 1);  // within tau_expo, one class
  CHECK(ep_add(a, c).terms.size() == 2);  // distinct exponents stay apart
}

TEST_CASE("product expands like a ring: (e^a+e^b)(e^a-e^b) = e^2a - e^2b") {
  const ExpPoly ea = ep_exp(lin1(Cx(1.0)));
  const ExpPoly eb = ep_exp(lin1(Cx(2.0)));
  const ExpPoly prod = ep_mul(ep_add(ea, eb), ep_sub(ea, eb));
  const ExpPoly want = ep_sub(ep_exp(lin1(Cx(2.0))), ep_exp(lin1(Cx(4.0))));
  CHECK(ep_is_empty(ep_sub(prod, want)));
}

TEST_CASE("arithmetic matches direct evaluation on random draws") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    const int n = 1 + static_cast<int>(uniform01(rng) * 2);
    const ExpPoly f = oracles::random_exppoly(rng, n, 2, 2, 3);
    const ExpPoly g = oracles::random_exppoly(rng, n, 2, 2, 2);
    const CxVec z = sample_polydisc(n, 1.0, rng);
    const Cx fv = ep_value_direct(f, z);
    const Cx gv = ep_value_direct(g, z);

    const Cx sum = ep_eval(ep_add(f, g), z).value;
    CHECK(std::abs(sum - (fv + gv)) <= 1e-10 * (1.0 + std::abs(fv) + std::abs(gv)));

    const Cx prod = ep_eval(ep_mul(f, g), z).value;
    CHECK(std::abs(prod - fv * gv) <= 1e-9 * (1.0 + std::abs(fv) * std::abs(gv)));

    const Cx sc = ep_eval(ep_scale(f, Cx(0.0, 2.0)), z).value;
    CHECK(std::abs(sc - Cx(0.0, 2.0) * fv) <= 1e-10 * (1.0 + std::abs(fv)));
  }
}

TEST_CASE("shift matches direct substitution on random draws") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + static_cast<int>(uniform01(rng) * 2);
    const ExpPoly f = oracles::random_exppoly(rng, n, 2, 2, 3);
    const Shift c = crand_vec(rng, n, 0.7);
    const ExpPoly fs = ep_shift(f, c);
    const CxVec z = sample_polydisc(n, 1.0, rng);
    const Cx direct = ep_value_direct(f, oracles::vec_add(z, c));
    const Cx shifted = ep_eval(fs, z).value;
    CHECK(std::abs(direct - shifted) <= 1e-11 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("partial derivative matches central differences") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 60; ++it) {
    const int n = 1 + static_cast<int>(uniform01(rng) * 2);
    const ExpPoly f = oracles::random_exppoly(rng, n, 2, 2, 3);
    const int axis = 1 + static_cast<int>(uniform01(rng) * n);
    const ExpPoly df = ep_partial(f, axis);
    const CxVec z = sample_polydisc(n, 0.8, rng);
    const Cx exact = ep_eval(df, z).value;
    const Cx approx = oracles::fd_partial(f, axis, z);
    CHECK(std::abs(exact - approx) <= 1e-6 * (1.0 + std::abs(exact)));
  }
  // product rule shape: d/dz (z e^{z^2}) = (1 + 2 z^2) e^{z^2}
  const MPoly zsq = forge::algebra::poly_monomial(1, MIdx{2}, Cx(1.0));
  const ExpPoly f = ep_term(lin1(Cx(1.0)), zsq);
  const ExpPoly df = ep_partial(f, 1);
  REQUIRE(df.terms.size() == 1);
  const MPoly want =
      forge::algebra::poly_add(forge::algebra::poly_const(1, Cx(1.0)),
                               forge::algebra::poly_monomial(1, MIdx{2}, Cx(2.0)));
  CHECK(forge::algebra::poly_approx_equal(df.terms[0].coef, want, 0.0));
}

TEST_CASE("log-domain evaluation survives astronomically large exponents") {
  // e^{1000 z} at z = 1: value overflows double, the log does not.
  const ExpPoly f = ep_exp(lin1(Cx(1000.0)));
  const EvalResult r = ep_eval(f, {Cx(1.0)});
  CHECK(r.total_overflow);
  CHECK(r.value == Cx(0.0, 0.0));
  CHECK(r.log.logmag == doctest::Approx(1000.0));

  // far below the subnormal floor the value flushes to zero, log stays exact
  const EvalResult tiny = ep_eval(f, {Cx(-1.0)});
  CHECK_FALSE(tiny.total_overflow);
  CHECK(tiny.value == Cx(0.0, 0.0));
  CHECK(tiny.log.logmag == doctest::Approx(-1000.0));

  // representable range round-trips
  const EvalResult mid = ep_eval(f, {Cx(0.002)});
  CHECK(std::abs(mid.value - std::exp(Cx(2.0))) <= 1e-12 * std::abs(mid.value));

  // dominant-term cancellation: e^{1000 z} - e^{1000 z} + 1 evaluates to 1
  const ExpPoly g = ep_add(ep_sub(f, f), ep_const(1, Cx(1.0)));
  const EvalResult one = ep_eval(g, {Cx(1.0)});
  CHECK(std::abs(one.value - Cx(1.0)) <= 1e-12);

  CHECK(ep_eval(ep_zero(1), {Cx(0.5)}).log.logmag == -std::numeric_limits<double>::infinity());
}

TEST_CASE("largest single-term log magnitude tracks the dominant term") {
  const ExpPoly f = ep_add(ep_exp(lin1(Cx(3.0))), ep_exp(lin1(Cx(-2.0))));
  CHECK(ep_max_term_logmag(f, {Cx(2.0)}) == doctest::Approx(6.0));
  CHECK(ep_max_term_logmag(ep_zero(1), {Cx(1.0)}) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("halved exponents take the principal square root of the coefficient") {
  const ExpPoly e2z = ep_term(forge::algebra::poly_const(1, Cx(4.0)), lin1(Cx(2.0)));
  const ExpPoly h = ep_halve_exponent(e2z);
  REQUIRE(h.terms.size() == 1);
  CHECK(forge::algebra::poly_const_term(h.terms[0].coef) == Cx(2.0));
  CHECK(forge::algebra::poly_approx_equal(h.terms[0].expo, lin1(Cx(1.0)), 0.0));

  // principal branch: sqrt(-1) = i, not -i
  const ExpPoly neg = ep_term(forge::algebra::poly_const(1, Cx(-1.0)), lin1(Cx(2.0)));
  const Cx root = forge::algebra::poly_const_term(ep_halve_exponent(neg).terms[0].coef);
  CHECK(std::abs(root - Cx(0.0, 1.0)) <= 1e-15);

  const ExpPoly two = ep_add(ep_exp(lin1(Cx(1.0))), ep_exp(lin1(Cx(2.0))));
  CHECK_THROWS_AS(ep_halve_exponent(two), forge::NotSingleExponential);
  const ExpPoly polycoef = ep_term(lin1(Cx(1.0)), lin1(Cx(2.0)));
  CHECK_THROWS_AS(ep_halve_exponent(polycoef), forge::NotSingleExponential);
  CHECK_THROWS_AS(ep_halve_exponent(ep_zero(1)), forge::NotSingleExponential);
}

TEST_CASE("zero test: symbolic certificates and sampled witnesses") {
  const ExpPoly ez = ep_exp(lin1(Cx(1.0)));

  const ZeroCertificate empty = ep_is_zero(ep_zero(3));
  CHECK(empty.is_zero);
  CHECK(empty.symbolic);

  // (e^z + 1)(e^z - 1) - (e^{2z} - 1) collapses during normalization
  const ExpPoly one = ep_const(1, Cx(1.0));
  const ExpPoly lhs = ep_mul(ep_add(ez, one), ep_sub(ez, one));
  const ExpPoly rhs = ep_sub(ep_exp(lin1(Cx(2.0))), one);
  const ZeroCertificate collapsed = ep_is_zero(ep_sub(lhs, rhs));
  CHECK(collapsed.is_zero);
  CHECK(collapsed.symbolic);

  const ZeroCertificate nz = ep_is_zero(ez);
  CHECK_FALSE(nz.is_zero);
  CHECK_FALSE(nz.symbolic);
  REQUIRE(nz.witness.has_value());
  CHECK(nz.witness->size() == 1);
  CHECK(nz.max_rel_residual > 1e-9);

  // numerically zero but not symbolically empty: coefficient below any sample
  ExpPoly small = ez;
  small.terms[0].coef = forge::algebra::poly_const(1, Cx(1e-30));
  ExpPoly mix = small;
  mix.terms.push_back(ep_exp(lin1(Cx(0.5, 0.5))).terms[0]);
  mix.terms.back().coef = forge::algebra::poly_const(1, Cx(1.0));
  mix = ep_normalize(mix);
  const ZeroCertificate rel = ep_is_zero(ep_sub(mix, mix));
  CHECK(rel.is_zero);
}

TEST_CASE("structural degree is the max exponent total degree") {
  CHECK(ep_structural_degree(ep_zero(2)) == 0);
  CHECK(ep_structural_degree(ep_from_poly(lin1(Cx(1.0)))) == 0);
  const MPoly zsq = forge::algebra::poly_monomial(1, MIdx{2}, Cx(1.0));
  const ExpPoly f = ep_exp(zsq);
  CHECK(ep_structural_degree(f) == 2);
  CHECK(ep_structural_degree(ep_mul(f, ep_exp(lin1(Cx(1.0))))) == 2);
  CHECK(ep_structural_degree(ep_add(f, ep_exp(forge::algebra::poly_monomial(
                                            1, MIdx{3}, Cx(1.0))))) == 3);
}

TEST_CASE("polydisc sampling is deterministic and in range") {
  std::mt19937_64 a(99), b(99);
  const CxVec za = sample_polydisc(3, 1.5, a);
  const CxVec zb = sample_polydisc(3, 1.5, b);
  REQUIRE(za.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(za[i] == zb[i]);
    CHECK(std::abs(za[i]) <= 1.5 + 1e-12);
  }
  std::mt19937_64 c(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(c);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
