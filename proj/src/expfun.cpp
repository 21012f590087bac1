#include "forge/expfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "forge/errors.hpp"

namespace forge::expfun {

namespace {

using algebra::GradedLex;
using algebra::MIdx;
using algebra::PolyAccum;

constexpr double kTauExpo = 1e-10;       // absolute, per exponent coefficient
constexpr double kExpFoldLimit = 700.0;  // |Re const| beyond this cannot fold
constexpr double kLogDblMax = 709.782712893384;
constexpr double kLogDblMin = -745.0;

const double kInf = std::numeric_limits<double>::infinity();

bool expo_close(const MPoly& x, const MPoly& y) {
  // Walks both maps in GradedLex order; any leftover or mismatched cell must
  // itself be below the threshold.
  auto ix = x.terms.begin();
  auto iy = y.terms.begin();
  GradedLex lt;
  while (ix != x.terms.end() || iy != y.terms.end()) {
    if (iy == y.terms.end() || (ix != x.terms.end() && lt(ix->first, iy->first))) {
      if (std::abs(ix->second) > kTauExpo) return false;
      ++ix;
    } else if (ix == x.terms.end() || lt(iy->first, ix->first)) {
      if (std::abs(iy->second) > kTauExpo) return false;
      ++iy;
    } else {
      if (std::abs(ix->second - iy->second) > kTauExpo) return false;
      ++ix;
      ++iy;
    }
  }
  return true;
}

int term_cmp(const ExpTerm& x, const ExpTerm& y) {
  if (int c = algebra::mpoly_cmp(x.expo, y.expo)) return c;
  return algebra::mpoly_cmp(x.coef, y.coef);
}

// log|q| and arg q via eval; returns false when q(z) == 0.
bool poly_log_at(const MPoly& q, const CxVec& z, double& logmag, double& phase) {
  const Cx v = algebra::poly_eval(q, z);
  const double m = std::abs(v);
  if (m == 0.0) return false;
  logmag = std::log(m);
  phase = std::arg(v);
  return true;
}

double reduce_phase(double p) {
  // Into (-pi, pi]. remainder() lands in [-pi, pi]; nudge the open end.
  double r = std::remainder(p, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

}  // namespace

ExpPoly ep_zero(int n) { return ExpPoly{n, {}}; }

ExpPoly ep_const(int n, Cx v) {
  if (v == Cx(0.0, 0.0)) return ep_zero(n);
  ExpPoly r{n, {}};
  r.terms.push_back({algebra::poly_const(n, v), algebra::poly_zero(n)});
  return r;
}

ExpPoly ep_from_poly(const MPoly& q) {
  ExpPoly r{q.n, {}};
  if (!algebra::poly_is_zero(q)) r.terms.push_back({q, algebra::poly_zero(q.n)});
  return r;
}

ExpPoly ep_exp(const MPoly& h) {
  ExpPoly r{h.n, {}};
  r.terms.push_back({algebra::poly_const(h.n, Cx(1.0, 0.0)), h});
  return ep_normalize(r);
}

ExpPoly ep_term(const MPoly& q, const MPoly& h) {
  if (q.n != h.n) throw MalformedInput("ep_term: coefficient and exponent dimension mismatch");
  ExpPoly r{q.n, {}};
  r.terms.push_back({q, h});
  return ep_normalize(r);
}

bool ep_is_empty(const ExpPoly& x) { return x.terms.empty(); }

ExpPoly ep_normalize(const ExpPoly& x) {
  struct Class {
    MPoly expo;
    PolyAccum coef;
  };
  std::vector<Class> classes;

  for (const ExpTerm& t : x.terms) {
    if (algebra::poly_is_zero(t.coef)) continue;

    MPoly h = t.expo;
    Cx fold(1.0, 0.0);
    const MIdx zero_key(static_cast<std::size_t>(x.n), 0);
    auto it = h.terms.find(zero_key);
    if (it != h.terms.end()) {
      const Cx k = it->second;
      if (std::abs(k.real()) > kExpFoldLimit)
        throw OverflowInFold("exponent constant with |Re| > 700 cannot fold into a coefficient");
      fold = std::exp(k);
      h.terms.erase(it);
    }

    // Arrival-order scan keeps merging deterministic.
    Class* dst = nullptr;
    for (Class& c : classes) {
      if (expo_close(c.expo, h)) {
        dst = &c;
        break;
      }
    }
    if (dst == nullptr) {
      classes.push_back({std::move(h), PolyAccum(x.n)});
      dst = &classes.back();
    }
    dst->coef.add_scaled(t.coef, fold);
  }

  ExpPoly r{x.n, {}};
  for (Class& c : classes) {
    MPoly q = c.coef.finalize();
    if (algebra::poly_is_zero(q)) continue;
    r.terms.push_back({std::move(q), std::move(c.expo)});
  }
  std::sort(r.terms.begin(), r.terms.end(),
            [](const ExpTerm& p, const ExpTerm& q) { return term_cmp(p, q) < 0; });
  return r;
}

ExpPoly ep_add(const ExpPoly& x, const ExpPoly& y) {
  if (x.n != y.n) throw MalformedInput("ep_add: dimension mismatch");
  ExpPoly r{x.n, x.terms};
  r.terms.insert(r.terms.end(), y.terms.begin(), y.terms.end());
  return ep_normalize(r);
}

ExpPoly ep_sub(const ExpPoly& x, const ExpPoly& y) { return ep_add(x, ep_neg(y)); }

ExpPoly ep_neg(const ExpPoly& x) { return ep_scale(x, Cx(-1.0, 0.0)); }

ExpPoly ep_scale(const ExpPoly& x, Cx s) {
  ExpPoly r{x.n, {}};
  if (s == Cx(0.0, 0.0)) return r;
  r.terms.reserve(x.terms.size());
  for (const ExpTerm& t : x.terms) r.terms.push_back({algebra::poly_scale(t.coef, s), t.expo});
  return ep_normalize(r);
}

ExpPoly ep_mul(const ExpPoly& x, const ExpPoly& y) {
  if (x.n != y.n) throw MalformedInput("ep_mul: dimension mismatch");
  ExpPoly r{x.n, {}};
  r.terms.reserve(x.terms.size() * y.terms.size());
  for (const ExpTerm& s : x.terms)
    for (const ExpTerm& t : y.terms)
      r.terms.push_back({algebra::poly_mul(s.coef, t.coef), algebra::poly_add(s.expo, t.expo)});
  return ep_normalize(r);
}

ExpPoly ep_shift(const ExpPoly& x, const Shift& c) {
  if (static_cast<int>(c.size()) != x.n) throw MalformedInput("ep_shift: shift dimension mismatch");
  ExpPoly r{x.n, {}};
  r.terms.reserve(x.terms.size());
  for (const ExpTerm& t : x.terms)
    r.terms.push_back({algebra::poly_shift(t.coef, c), algebra::poly_shift(t.expo, c)});
  return ep_normalize(r);
}

ExpPoly ep_partial(const ExpPoly& x, int axis) {
  ExpPoly r{x.n, {}};
  for (const ExpTerm& t : x.terms) {
    const MPoly dq = algebra::poly_partial(t.coef, axis);
    const MPoly dh = algebra::poly_partial(t.expo, axis);
    r.terms.push_back({algebra::poly_add(dq, algebra::poly_mul(t.coef, dh)), t.expo});
  }
  return ep_normalize(r);
}

EvalResult ep_eval(const ExpPoly& x, const CxVec& z) {
  if (static_cast<int>(z.size()) != x.n) throw MalformedInput("ep_eval: point dimension mismatch");

  struct TermLog {
    double logmag;
    double phase;
  };
  std::vector<TermLog> logs;
  logs.reserve(x.terms.size());
  double max_logmag = -kInf;

  for (const ExpTerm& t : x.terms) {
    double lm = 0.0, ph = 0.0;
    if (!poly_log_at(t.coef, z, lm, ph)) continue;
    const Cx hv = algebra::poly_eval(t.expo, z);
    lm += hv.real();
    ph = reduce_phase(ph + hv.imag());
    logs.push_back({lm, ph});
    max_logmag = std::max(max_logmag, lm);
  }

  EvalResult res;
  if (logs.empty() || max_logmag == -kInf) {
    res.log = {-kInf, 0.0};
    return res;
  }

  // Sum against the dominant term; every addend has magnitude <= 1.
  Cx sum_scaled(0.0, 0.0);
  for (const TermLog& t : logs)
    sum_scaled += std::polar(std::exp(t.logmag - max_logmag), t.phase);

  const double sm = std::abs(sum_scaled);
  if (sm == 0.0) {
    res.log = {-kInf, 0.0};
    return res;
  }

  res.log.logmag = max_logmag + std::log(sm);
  res.log.phase = reduce_phase(std::arg(sum_scaled));
  if (res.log.logmag > kLogDblMax) {
    res.total_overflow = true;
    res.value = Cx(0.0, 0.0);
  } else if (res.log.logmag < kLogDblMin) {
    res.value = Cx(0.0, 0.0);
  } else {
    res.value = std::polar(std::exp(res.log.logmag), res.log.phase);
  }
  return res;
}

double ep_max_term_logmag(const ExpPoly& x, const CxVec& z) {
  if (static_cast<int>(z.size()) != x.n)
    throw MalformedInput("ep_max_term_logmag: point dimension mismatch");
  double best = -kInf;
  for (const ExpTerm& t : x.terms) {
    double lm = 0.0, ph = 0.0;
    if (!poly_log_at(t.coef, z, lm, ph)) continue;
    best = std::max(best, lm + algebra::poly_eval(t.expo, z).real());
  }
  return best;
}

ExpPoly ep_halve_exponent(const ExpPoly& x) {
  const ExpPoly nx = ep_normalize(x);
  if (nx.terms.size() != 1)
    throw NotSingleExponential("ep_halve_exponent needs exactly one term, got " +
                               std::to_string(nx.terms.size()));
  const ExpTerm& t = nx.terms.front();
  if (!algebra::poly_is_const(t.coef))
    throw NotSingleExponential("ep_halve_exponent needs a constant coefficient");
  const Cx root = std::sqrt(algebra::poly_const_term(t.coef));
  ExpPoly r{nx.n, {}};
  r.terms.push_back({algebra::poly_const(nx.n, root), algebra::poly_scale(t.expo, Cx(0.5, 0.0))});
  return ep_normalize(r);
}

ZeroCertificate ep_is_zero(const ExpPoly& x, const ZeroCheckConfig& cfg) {
  const ExpPoly nx = ep_normalize(x);
  ZeroCertificate cert;
  if (nx.terms.empty()) {
    cert.is_zero = true;
    cert.symbolic = true;
    return cert;
  }

  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  CxVec worst_z;
  for (int s = 0; s < cfg.n_samples; ++s) {
    const CxVec z = sample_polydisc(nx.n, cfg.radius, rng);
    const double scale = ep_max_term_logmag(nx, z);
    if (scale == -kInf) continue;  // every term vanishes here, nothing to compare
    const EvalResult ev = ep_eval(nx, z);
    const double rel =
        (ev.log.logmag == -kInf) ? 0.0 : std::exp(ev.log.logmag - scale);
    if (rel > worst) {
      worst = rel;
      worst_z = z;
    }
  }
  cert.max_rel_residual = worst;
  cert.is_zero = worst <= cfg.tol;
  if (!worst_z.empty()) cert.witness = worst_z;
  return cert;
}

int ep_structural_degree(const ExpPoly& x) {
  int d = 0;
  for (const ExpTerm& t : x.terms) d = std::max(d, algebra::poly_total_degree(t.expo));
  return d;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CxVec sample_polydisc(int n, double radius, std::mt19937_64& rng) {
  CxVec z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    const double v = uniform01(rng);
    const double r = radius * std::sqrt(u);
    z[static_cast<std::size_t>(i)] = std::polar(r, 2.0 * std::numbers::pi * v);
  }
  return z;
}

}  // namespace forge::expfun
