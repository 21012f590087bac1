// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Each criterion is self-contained and prints enough detail to audit a FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "forge/equations.hpp"
#include "forge/fixtures.hpp"
#include "forge/growth.hpp"
#include "forge/solutions.hpp"
#include "oracles.hpp"

using forge::algebra::Cx;
using forge::algebra::CxVec;
using forge::algebra::MPoly;
using forge::algebra::Shift;
using forge::expfun::ExpPoly;

namespace {

int g_failures = 0;

void criterion(int k, bool pass, const std::string& detail) {
  std::printf("CRITERION %d %s: %s\n", k, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

forge::fixtures::FixtureResult run_named(const std::string& id) {
  const auto* fx = forge::fixtures::find(id);
  if (fx == nullptr) throw forge::MalformedInput("no fixture " + id);
  return forge::fixtures::run_fixture(*fx);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return std::string(buf);
}

// ---- 1: the classical sine identity, symbolically, fast ----
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    const auto res = run_named("thm11-sine");
    const double dt = seconds_since(t0);
    pass = res.pass && res.best.symbolic_zero && dt < 0.1;
    detail = "thm11-sine symbolic_zero=" + std::string(res.best.symbolic_zero ? "true" : "false") +
             fmt(", %.4f s (budget 0.1 s)", dt);
  } catch (const std::exception& e) {
    detail = std::string("threw: ") + e.what();
  }
  criterion(1, pass, detail);
}

// ---- 2: the quadratic-form factorization identity on 1000 draws ----
void criterion_2() {
  std::mt19937_64 rng(20240902);
  int done = 0, bad = 0;
  double worst_gap = 0.0, worst_prod = 0.0, worst_sum = 0.0;
  while (done < 1000) {
    const Cx a = oracles::crand(rng, 2.0);
    const Cx b = oracles::crand(rng, 2.0);
    const Cx w = oracles::crand(rng, 2.0);
    if (std::abs(a) < 0.05 || std::abs(b) < 0.05) continue;
    if (std::abs(w * w - a * b) < 1e-6) continue;
    const Cx F = oracles::crand(rng, 2.0);
    const Cx G = oracles::crand(rng, 2.0);

    const double gap = forge::equations::factor_gap(a, b, w, F, G);
    const auto roots = forge::equations::omega_roots(a, b, w);
    const double prod = std::abs(roots.w1 * roots.w2 - Cx(1.0));
    const Cx mu = std::sqrt(a) * std::sqrt(b);
    const Cx target = -2.0 * w / mu;
    const double sum = std::abs(roots.w1 + roots.w2 - target) / (1.0 + std::abs(target));

    worst_gap = std::max(worst_gap, gap);
    worst_prod = std::max(worst_prod, prod);
    worst_sum = std::max(worst_sum, sum);
    if (gap > 1e-12 || prod > 1e-12 || sum > 1e-12) ++bad;
    ++done;
  }
  criterion(2, bad == 0,
            fmt("1000 draws; worst factor gap %.2e, worst |w1 w2 - 1| %.2e, worst root-sum gap "
                "%.2e (all vs 1e-12)",
                worst_gap, worst_prod, worst_sum));
}

// ---- 3: the first worked binomial example ----
void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    const auto res = run_named("ex-binomial-1");
    const double dt = seconds_since(t0);

    const auto* fx = forge::fixtures::find("ex-binomial-1");
    const auto built = fx->build(fx->branches.front());
    const Cx half = built.bundle.derived.at("half_sum_Lc");
    const Cx printed(4.0 + std::numbers::pi / 2.0, 1.0);
    const double cgap = std::abs(half - printed);

    pass = res.pass && res.best.max_rel_residual <= 1e-8 && cgap <= 1e-12 && dt < 5.0;
    detail = fmt("residual %.2e (vs 1e-8), exponent-constant gap %.2e (vs 1e-12), %.2f s "
                 "(budget 5 s)",
                 res.best.max_rel_residual, cgap, dt);
  } catch (const std::exception& e) {
    detail = std::string("threw: ") + e.what();
  }
  criterion(3, pass, detail);
}

// ---- 4: both worked trinomial examples ----
void criterion_4() {
  bool pass = true;
  std::string detail;
  for (const char* id : {"ex-trinomial-1", "ex-trinomial-2"}) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto res = run_named(id);
      const double dt = seconds_since(t0);
      const bool ok = res.pass && res.best.max_rel_residual <= 1e-8 && dt < 5.0;
      pass = pass && ok;
      if (!detail.empty()) detail += "; ";
      detail += std::string(id) + fmt(" residual %.2e, %.2f s", res.best.max_rel_residual, dt);
    } catch (const std::exception& e) {
      pass = false;
      detail += std::string(id) + " threw: " + e.what();
    }
  }
  criterion(4, pass, detail + " (each vs 1e-8 and 5 s)");
}

// ---- 5: structural orders of the worked examples, numeric slopes on synthetics ----
void criterion_5() {
  bool pass = true;
  std::string detail;
  try {
    const auto* fx1 = forge::fixtures::find("ex-binomial-1");
    const auto* fx2 = forge::fixtures::find("ex-binomial-2");
    const int o1 = forge::growth::structural_order(fx1->build(fx1->branches.front()).bundle.f);
    const int o2 = forge::growth::structural_order(fx2->build(fx2->branches.front()).bundle.f);
    pass = (o1 == 10) && (o2 == 13);
    detail = "structural " + std::to_string(o1) + "/" + std::to_string(o2) + " (want 10/13)";

    // synthetic instances of orders 1..4 on r in [2, 20]
    std::string slopes = "; slopes";
    for (int k = 1; k <= 4; ++k) {
      ExpPoly f;
      if (k == 3) {
        const MPoly cube =
            forge::algebra::poly_pow(forge::algebra::poly_linear({Cx(1.0), Cx(1.0)}), 3);
        f = forge::expfun::ep_mul(
            forge::expfun::ep_exp(cube),
            forge::expfun::ep_exp(forge::algebra::poly_linear({Cx(1.0), Cx(0.0)})));
      } else {
        f = forge::expfun::ep_exp(
            forge::algebra::poly_monomial(1, forge::algebra::MIdx{k}, Cx(1.0)));
      }
      const auto est = forge::growth::estimate_order(f, 2.0, 20.0, 12, 512);
      const double rel = std::abs(est.numeric - k) / k;
      slopes += fmt(" %.3f", est.numeric);
      if (rel > 0.10) pass = false;
    }
    detail += slopes + " for orders 1..4 (each within 10%)";
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("threw: ") + e.what();
  }
  criterion(5, pass, detail);
}

// ---- 6: nonexistence verdicts on a randomized grid ----
void criterion_6() {
  using forge::equations::BinomialDiff;
  using forge::equations::Verdict;
  std::mt19937_64 rng(20240906);
  int ok = 0;
  const int total = 50;
  for (int i = 0; i < total; ++i) {
    const int n = 1 + static_cast<int>(forge::expfun::uniform01(rng) * 3);
    // P gets an explicit degree >= 1 cell so it can never collapse to a constant
    MPoly P = oracles::random_poly(rng, n, 2, 2);
    forge::algebra::MIdx e(static_cast<std::size_t>(n), 0);
    e[0] = 1 + static_cast<int>(forge::expfun::uniform01(rng) * 2);
    P.terms[e] = Cx(1.0 + forge::expfun::uniform01(rng));

    BinomialDiff eq;
    eq.a = oracles::crand(rng, 2.0);
    eq.b = oracles::crand(rng, 2.0);
    eq.P = P;
    eq.Q = oracles::random_poly(rng, n, 3, 2);
    eq.g = oracles::random_poly(rng, n, 1, 1);
    eq.c = oracles::crand_vec(rng, n);
    const bool pure_pair = (i % 2 == 0);
    if (pure_pair) {
      eq.a1 = Cx(1.0);
      eq.a0 = Cx(-1.0);
    } else {
      eq.a1 = Cx(2.0) + oracles::crand(rng, 0.5);
      eq.a0 = oracles::crand(rng, 1.0);
    }

    const Verdict v = forge::equations::diagnose(forge::equations::EquationSpec{eq});
    bool good = v.kind == Verdict::Kind::NoFiniteOrderSolution &&
                v.reason.find("th-2.1") != std::string::npos;
    if (pure_pair) {
      good = good && v.certificate.has_value() &&
             v.certificate->parity.find("p=1/2") != std::string::npos &&
             v.certificate->p == forge::algebra::poly_total_degree(eq.P);
    } else {
      good = good && !v.certificate.has_value();
    }
    if (good) ++ok;
  }
  criterion(6, ok == total,
            std::to_string(ok) + "/" + std::to_string(total) +
                " verdicts correct (half with the p=1/2 parity certificate)");
}

// ---- 7: kernel shift/derivative oracles ----
void criterion_7() {
  std::mt19937_64 rng(20240907);
  double worst_shift = 0.0, worst_part = 0.0;
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + static_cast<int>(forge::expfun::uniform01(rng) * 3);
    const MPoly p = oracles::random_poly(rng, n, 4, 5);
    const Shift c = oracles::crand_vec(rng, n);
    const CxVec z = oracles::crand_vec(rng, n);
    const Cx direct = forge::algebra::poly_eval(p, oracles::vec_add(z, c));
    const Cx shifted = forge::algebra::poly_eval(forge::algebra::poly_shift(p, c), z);
    worst_shift = std::max(worst_shift, std::abs(direct - shifted) / (1.0 + std::abs(direct)));

    const int axis = 1 + static_cast<int>(forge::expfun::uniform01(rng) * n);
    const Cx exact = forge::algebra::poly_eval(forge::algebra::poly_partial(p, axis), z);
    const Cx approx = oracles::fd_partial_poly(p, axis, z);
    worst_part = std::max(worst_part, std::abs(exact - approx) / (1.0 + std::abs(exact)));
  }
  const bool polys_ok = worst_shift <= 1e-12 && worst_part <= 1e-6;

  double worst_eshift = 0.0, worst_epart = 0.0;
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + static_cast<int>(forge::expfun::uniform01(rng) * 2);
    const ExpPoly f = oracles::random_exppoly(rng, n, 2, 2, 3);
    const Shift c = oracles::crand_vec(rng, n, 0.7);
    const CxVec z = forge::expfun::sample_polydisc(n, 0.8, rng);
    const Cx direct = oracles::ep_value_direct(f, oracles::vec_add(z, c));
    const Cx shifted = forge::expfun::ep_eval(forge::expfun::ep_shift(f, c), z).value;
    worst_eshift = std::max(worst_eshift, std::abs(direct - shifted) / (1.0 + std::abs(direct)));

    const int axis = 1 + static_cast<int>(forge::expfun::uniform01(rng) * n);
    const Cx exact = forge::expfun::ep_eval(forge::expfun::ep_partial(f, axis), z).value;
    const Cx approx = oracles::fd_partial(f, axis, z);
    worst_epart = std::max(worst_epart, std::abs(exact - approx) / (1.0 + std::abs(exact)));
  }
  const bool eps_ok = worst_eshift <= 1e-12 && worst_epart <= 1e-6;

  criterion(7, polys_ok && eps_ok,
            fmt("200 polys: shift %.2e (vs 1e-12), derivative-vs-FD %.2e (vs 1e-6); ", worst_shift,
                worst_part) +
                fmt("100 exp-polys: shift %.2e (vs 1e-12), derivative-vs-FD %.2e (vs 1e-6)",
                    worst_eshift, worst_epart));
}

// ---- 8: the four linear-reduction fixtures ----
void criterion_8() {
  bool pass = true;
  std::string detail;
  for (const char* id : {"rem35-case2-a", "rem35-case2-b", "rem35-case2-c", "rem35-case2-d"}) {
    try {
      const auto res = run_named(id);
      const bool ok =
          res.pass && (res.best.symbolic_zero || res.best.max_rel_residual <= 1e-9);
      pass = pass && ok;
      if (!detail.empty()) detail += ", ";
      detail += std::string(id) +
                (res.best.symbolic_zero ? "=0 symbolically" : fmt("=%.2e", res.best.max_rel_residual));
    } catch (const std::exception& e) {
      pass = false;
      detail += std::string(id) + " threw: " + e.what();
    }
  }
  criterion(8, pass, detail + " (each vs 1e-9)");
}

// ---- 9: round-trip solvers ----
void criterion_9() {
  std::mt19937_64 rng(20240909);
  int xi_done = 0;
  double xi_worst = 0.0;
  int guard = 0;
  while (xi_done < 100 && guard < 100000) {
    ++guard;
    const Cx a = oracles::crand(rng, 1.5), b = oracles::crand(rng, 1.5);
    const Cx w = oracles::crand(rng, 1.5);
    const Cx g1 = oracles::crand(rng, 1.5), g2 = oracles::crand(rng, 1.5);
    const Cx Lc = oracles::crand(rng, 2.0);
    if (std::abs(a) < 0.2 || std::abs(b) < 0.2 || std::abs(g1) < 0.2) continue;
    if (std::abs(w) < 0.1 || std::abs(w * w - a * b) < 0.05) continue;
    try {
      const auto r = forge::solutions::solve_xi(a, b, w, g1, g2, Lc);
      xi_worst = std::max(xi_worst, r.residual_of_constraint);
      ++xi_done;
    } catch (const forge::ForgeError&) {
      // inadmissible draw; take another
    }
  }

  int lin_done = 0;
  double lin_worst = 0.0;
  while (lin_done < 100) {
    const int n = 1 + static_cast<int>(forge::expfun::uniform01(rng) * 3);
    Shift c = oracles::crand_vec(rng, n);
    if (std::abs(c[0]) < 0.2) continue;
    const Cx target = oracles::crand(rng, 2.0);
    if (std::abs(target) < 0.2) continue;
    const auto sheets = forge::solutions::solve_linear_exponent(target, c, -2, 2);
    for (const auto& s : sheets) lin_worst = std::max(lin_worst, s.residual_of_constraint);
    ++lin_done;
  }

  const bool pass = xi_done == 100 && xi_worst <= 1e-12 && lin_worst <= 1e-12;
  criterion(9, pass,
            fmt("solve_xi worst residual %.2e on 100 draws, solve_linear_exponent worst %.2e "
                "on 100 draws (vs 1e-12)",
                xi_worst, lin_worst));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures > 0) std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
  else std::printf("ACCEPTANCE: all criteria passed\n");
  return g_failures == 0 ? 0 : 1;
}
