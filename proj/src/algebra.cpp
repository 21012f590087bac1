#include "forge/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace forge::algebra {

namespace {

using Cl = std::complex<long double>;

constexpr double kCancelDrop = 1e-14;  // cell drop threshold vs contribution peak
constexpr double kTauCoef = 1e-14;     // term drop threshold vs largest coefficient

void require_dim(const MPoly& p, std::size_t m, const char* what) {
  if (static_cast<std::size_t>(p.n) != m) {
    throw MalformedInput(std::string(what) + ": dimension mismatch");
  }
}

void require_same(const MPoly& x, const MPoly& y, const char* what) {
  if (x.n != y.n) {
    throw MalformedInput(std::string(what) + ": dimension mismatch");
  }
}

bool finite(Cx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

int total_degree(const MIdx& e) {
  int d = 0;
  for (int k : e) d += k;
  return d;
}

bool GradedLex::operator()(const MIdx& a, const MIdx& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void PolyAccum::add_term(const MIdx& e, Cl v) {
  if (static_cast<int>(e.size()) != n_) {
    throw MalformedInput("PolyAccum: exponent length mismatch");
  }
  Cell& c = cells_[e];
  c.sum += v;
  const double mag = static_cast<double>(std::abs(v));
  if (mag > c.peak) c.peak = mag;
}

void PolyAccum::add_term(const MIdx& e, Cx v) { add_term(e, Cl(v.real(), v.imag())); }

void PolyAccum::add(const MPoly& p) {
  require_dim(p, static_cast<std::size_t>(n_), "PolyAccum::add");
  for (const auto& [e, v] : p.terms) add_term(e, v);
}

void PolyAccum::add_scaled(const MPoly& p, Cx s) {
  require_dim(p, static_cast<std::size_t>(n_), "PolyAccum::add_scaled");
  const Cl sl(s.real(), s.imag());
  for (const auto& [e, v] : p.terms) add_term(e, Cl(v.real(), v.imag()) * sl);
}

MPoly PolyAccum::finalize() const {
  MPoly r;
  r.n = n_;
  double maxabs = 0.0;
  for (const auto& [e, cell] : cells_) {
    const double mag = static_cast<double>(std::abs(cell.sum));
    if (!(mag > kCancelDrop * cell.peak)) continue;  // cancellation noise (or exact zero)
    const Cx v(static_cast<double>(cell.sum.real()), static_cast<double>(cell.sum.imag()));
    if (!finite(v)) throw OverflowInFold("polynomial coefficient overflowed double range");
    r.terms.emplace(e, v);
    maxabs = std::max(maxabs, std::abs(v));
  }
  const double floor = kTauCoef * maxabs;
  for (auto it = r.terms.begin(); it != r.terms.end();) {
    if (std::abs(it->second) <= floor) {
      it = r.terms.erase(it);
    } else {
      ++it;
    }
  }
  return r;
}

MPoly poly_zero(int n) {
  MPoly p;
  p.n = n;
  return p;
}

MPoly poly_const(int n, Cx v) {
  MPoly p = poly_zero(n);
  if (v != Cx(0.0)) {
    if (!finite(v)) throw MalformedInput("poly_const: non-finite value");
    p.terms.emplace(MIdx(static_cast<std::size_t>(n), 0), v);
  }
  return p;
}

MPoly poly_monomial(int n, const MIdx& e, Cx coef) {
  if (static_cast<int>(e.size()) != n) {
    throw MalformedInput("poly_monomial: exponent length mismatch");
  }
  for (int k : e) {
    if (k < 0) throw MalformedInput("poly_monomial: negative exponent");
  }
  MPoly p = poly_zero(n);
  if (coef != Cx(0.0)) {
    if (!finite(coef)) throw MalformedInput("poly_monomial: non-finite coefficient");
    p.terms.emplace(e, coef);
  }
  return p;
}

MPoly poly_linear(const CxVec& coeffs, Cx constant) {
  const int n = static_cast<int>(coeffs.size());
  MPoly p = poly_const(n, constant);
  for (int i = 0; i < n; ++i) {
    if (coeffs[static_cast<std::size_t>(i)] == Cx(0.0)) continue;
    MIdx e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.terms.emplace(std::move(e), coeffs[static_cast<std::size_t>(i)]);
  }
  return p;
}

bool poly_is_zero(const MPoly& p) { return p.terms.empty(); }

bool poly_is_const(const MPoly& p) {
  if (p.terms.empty()) return true;
  return p.terms.size() == 1 && total_degree(p.terms.begin()->first) == 0;
}

Cx poly_const_term(const MPoly& p) {
  const MIdx zero(static_cast<std::size_t>(p.n), 0);
  auto it = p.terms.find(zero);
  return it == p.terms.end() ? Cx(0.0) : it->second;
}

int poly_total_degree(const MPoly& p) {
  if (p.terms.empty()) return 0;
  return total_degree(p.terms.rbegin()->first);  // map is graded, last key is maximal
}

double poly_max_abs(const MPoly& p) {
  double m = 0.0;
  for (const auto& [e, v] : p.terms) m = std::max(m, std::abs(v));
  return m;
}

MPoly poly_add(const MPoly& x, const MPoly& y) {
  require_same(x, y, "poly_add");
  PolyAccum acc(x.n);
  acc.add(x);
  acc.add(y);
  return acc.finalize();
}

MPoly poly_sub(const MPoly& x, const MPoly& y) {
  require_same(x, y, "poly_sub");
  PolyAccum acc(x.n);
  acc.add(x);
  acc.add_scaled(y, Cx(-1.0));
  return acc.finalize();
}

MPoly poly_neg(const MPoly& x) { return poly_scale(x, Cx(-1.0)); }

MPoly poly_scale(const MPoly& x, Cx s) {
  PolyAccum acc(x.n);
  acc.add_scaled(x, s);
  return acc.finalize();
}

MPoly poly_mul(const MPoly& x, const MPoly& y) {
  require_same(x, y, "poly_mul");
  PolyAccum acc(x.n);
  MIdx e(static_cast<std::size_t>(x.n), 0);
  for (const auto& [ex, vx] : x.terms) {
    const Cl vxl(vx.real(), vx.imag());
    for (const auto& [ey, vy] : y.terms) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ex[i] + ey[i];
      acc.add_term(e, vxl * Cl(vy.real(), vy.imag()));
    }
  }
  return acc.finalize();
}

MPoly poly_pow(const MPoly& x, int k) {
  if (k < 0) throw MalformedInput("poly_pow: negative exponent");
  MPoly r = poly_const(x.n, Cx(1.0));
  for (int i = 0; i < k; ++i) r = poly_mul(r, x);
  return r;
}

Cx poly_eval(const MPoly& p, const CxVec& z) {
  require_dim(p, z.size(), "poly_eval");
  // Per-axis power tables in long double; accumulation in map order.
  std::vector<int> maxdeg(z.size(), 0);
  for (const auto& [e, v] : p.terms) {
    for (std::size_t i = 0; i < z.size(); ++i) maxdeg[i] = std::max(maxdeg[i], e[i]);
  }
  std::vector<std::vector<Cl>> pw(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    pw[i].resize(static_cast<std::size_t>(maxdeg[i]) + 1);
    pw[i][0] = Cl(1.0L, 0.0L);
    const Cl zi(z[i].real(), z[i].imag());
    for (int k = 1; k <= maxdeg[i]; ++k) pw[i][static_cast<std::size_t>(k)] = pw[i][static_cast<std::size_t>(k - 1)] * zi;
  }
  Cl acc(0.0L, 0.0L);
  for (const auto& [e, v] : p.terms) {
    Cl t(v.real(), v.imag());
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (e[i] != 0) t *= pw[i][static_cast<std::size_t>(e[i])];
    }
    acc += t;
  }
  return Cx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

namespace {

// Expands one monomial coef * prod (z_i + c_i)^{e_i} into the accumulator.
void shift_monomial(const MIdx& e, Cl coef, const std::vector<std::vector<Cl>>& cpow,
                    const std::vector<std::vector<long double>>& binom, PolyAccum& acc) {
  const std::size_t n = e.size();
  if (n == 0) {
    acc.add_term(e, coef);
    return;
  }
  MIdx k(n, 0);
  while (true) {
    Cl t = coef;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t ei = static_cast<std::size_t>(e[i]);
      const std::size_t ki = static_cast<std::size_t>(k[i]);
      if (ei == 0) continue;
      // binom[e][e] = 1 and cpow[i][0] = 1, so the k = e face stays bit-exact.
      t *= binom[ei][ki] * cpow[i][ei - ki];
    }
    acc.add_term(k, t);
    std::size_t i = 0;
    while (i < n && k[i] == e[i]) {
      k[i] = 0;
      ++i;
    }
    if (i == n) break;
    ++k[i];
  }
}

}  // namespace

MPoly poly_shift(const MPoly& p, const Shift& c) {
  require_dim(p, c.size(), "poly_shift");
  if (p.terms.empty()) return poly_zero(p.n);

  std::vector<int> maxdeg(c.size(), 0);
  int maxtotal = 0;
  for (const auto& [e, v] : p.terms) {
    for (std::size_t i = 0; i < c.size(); ++i) maxdeg[i] = std::max(maxdeg[i], e[i]);
    maxtotal = std::max(maxtotal, total_degree(e));
  }
  std::vector<std::vector<Cl>> cpow(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    cpow[i].resize(static_cast<std::size_t>(maxdeg[i]) + 1);
    cpow[i][0] = Cl(1.0L, 0.0L);
    const Cl ci(c[i].real(), c[i].imag());
    for (int k = 1; k <= maxdeg[i]; ++k) cpow[i][static_cast<std::size_t>(k)] = cpow[i][static_cast<std::size_t>(k - 1)] * ci;
  }
  std::vector<std::vector<long double>> binom(static_cast<std::size_t>(maxtotal) + 1);
  for (std::size_t m = 0; m <= static_cast<std::size_t>(maxtotal); ++m) {
    binom[m].assign(m + 1, 1.0L);
    for (std::size_t j = 1; j < m; ++j) binom[m][j] = binom[m - 1][j - 1] + binom[m - 1][j];
  }

  // One accumulator per source total degree: junk from a high layer then
  // cannot mask or delete small true values owned by another layer.
  std::map<int, std::vector<std::pair<const MIdx*, Cx>>> layers;
  for (const auto& [e, v] : p.terms) layers[total_degree(e)].emplace_back(&e, v);

  PolyAccum out(p.n);
  for (const auto& [deg, terms] : layers) {
    PolyAccum layer(p.n);
    for (const auto& [e, v] : terms) {
      shift_monomial(*e, Cl(v.real(), v.imag()), cpow, binom, layer);
    }
    out.add(layer.finalize());
  }
  return out.finalize();
}

MPoly poly_partial(const MPoly& p, int axis) {
  if (axis < 1 || axis > p.n) throw MalformedInput("poly_partial: axis out of range");
  const std::size_t ax = static_cast<std::size_t>(axis - 1);
  MPoly r = poly_zero(p.n);
  for (const auto& [e, v] : p.terms) {
    if (e[ax] == 0) continue;
    MIdx d = e;
    d[ax] -= 1;
    r.terms.emplace(std::move(d), v * static_cast<double>(e[ax]));
  }
  return r;
}

int mpoly_cmp(const MPoly& x, const MPoly& y) {
  if (x.n != y.n) return x.n < y.n ? -1 : 1;
  const GradedLex lt;
  auto ix = x.terms.begin();
  auto iy = y.terms.begin();
  while (ix != x.terms.end() && iy != y.terms.end()) {
    if (lt(ix->first, iy->first)) return -1;
    if (lt(iy->first, ix->first)) return 1;
    if (ix->second.real() != iy->second.real()) {
      return ix->second.real() < iy->second.real() ? -1 : 1;
    }
    if (ix->second.imag() != iy->second.imag()) {
      return ix->second.imag() < iy->second.imag() ? -1 : 1;
    }
    ++ix;
    ++iy;
  }
  if (ix != x.terms.end()) return 1;
  if (iy != y.terms.end()) return -1;
  return 0;
}

bool poly_approx_equal(const MPoly& x, const MPoly& y, double tol) {
  if (x.n != y.n) return false;
  const double scale = std::max(poly_max_abs(x), poly_max_abs(y));
  const double bound = tol * scale;
  auto ix = x.terms.begin();
  auto iy = y.terms.begin();
  const GradedLex lt;
  while (ix != x.terms.end() || iy != y.terms.end()) {
    if (iy == y.terms.end() || (ix != x.terms.end() && lt(ix->first, iy->first))) {
      if (std::abs(ix->second) > bound) return false;
      ++ix;
    } else if (ix == x.terms.end() || lt(iy->first, ix->first)) {
      if (std::abs(iy->second) > bound) return false;
      ++iy;
    } else {
      if (std::abs(ix->second - iy->second) > bound) return false;
      ++ix;
      ++iy;
    }
  }
  return true;
}

MPoly direction_form(const CxVec& d) { return poly_linear(d, Cx(0.0)); }

MPoly make_periodic(const CxVec& d, const Shift& c, const CxVec& coeffs) {
  if (d.size() != c.size()) throw MalformedInput("make_periodic: d and c dimension mismatch");
  Cx pairing(0.0);
  for (std::size_t i = 0; i < d.size(); ++i) pairing += d[i] * c[i];
  if (pairing != Cx(0.0)) {
    throw PeriodicityViolation("make_periodic: d.c != 0 (got " + std::to_string(pairing.real()) +
                               (pairing.imag() < 0 ? "" : "+") + std::to_string(pairing.imag()) +
                               "i); pre-correct d so the pairing cancels exactly");
  }
  const int n = static_cast<int>(d.size());
  const MPoly s = direction_form(d);
  PolyAccum acc(n);
  MPoly spow = poly_const(n, Cx(1.0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) spow = poly_mul(spow, s);
    if (coeffs[k] != Cx(0.0)) acc.add_scaled(spow, coeffs[k]);
  }
  return acc.finalize();
}

CxVec orthogonal_direction(const Shift& c) {
  if (c.size() < 2) {
    throw MalformedInput("orthogonal_direction: needs dimension >= 2");
  }
  std::size_t i = c.size();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != Cx(0.0)) {
      i = k;
      break;
    }
  }
  if (i == c.size()) throw MalformedInput("orthogonal_direction: c = 0");
  const std::size_t j = (i == 0) ? 1 : 0;
  CxVec d(c.size(), Cx(0.0));
  d[i] = c[j];
  d[j] = -c[i];
  // d.c = c_j*c_i - c_i*c_j cancels bit-exactly (identical products).
  if (d[i] == Cx(0.0) && d[j] == Cx(0.0)) {
    // c_j = 0 and c_i = 0 cannot happen (c_i != 0); keep the -c_i leg.
    d[j] = -c[i];
  }
  return d;
}

}  // namespace forge::algebra
