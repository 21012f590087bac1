#include "forge/json_io.hpp"

#include <string>
#include <variant>

#include "forge/errors.hpp"

namespace forge::io {

namespace {

using algebra::MIdx;
using solutions::PeriodicSpec;

const ordered_json& need(const ordered_json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key))
    throw MalformedInput(what + ": missing field \"" + key + "\"");
  return j.at(key);
}

double num_from_json(const ordered_json& j, const std::string& what) {
  if (!j.is_number()) throw MalformedInput(what + ": expected a number");
  return j.get<double>();
}

int int_from_json(const ordered_json& j, const std::string& what) {
  if (!j.is_number_integer()) throw MalformedInput(what + ": expected an integer");
  return j.get<int>();
}

PeriodicSpec periodic_from_json(const ordered_json& j, const std::string& what) {
  PeriodicSpec spec;
  if (j.is_null()) return spec;
  if (!j.is_object()) throw MalformedInput(what + ": expected an object with d, coeffs");
  if (j.contains("d")) spec.d = cxvec_from_json(j.at("d"), what + ".d");
  if (j.contains("coeffs")) spec.coeffs = cxvec_from_json(j.at("coeffs"), what + ".coeffs");
  return spec;
}

ordered_json periodic_to_json(const PeriodicSpec& spec) {
  if (spec.d.empty()) return nullptr;
  ordered_json j;
  j["d"] = cxvec_to_json(spec.d);
  j["coeffs"] = cxvec_to_json(spec.coeffs);
  return j;
}

solutions::PiKind pi_kind_from_json(const ordered_json& j, const std::string& what) {
  if (!j.is_string()) throw MalformedInput(what + ": expected a string");
  const std::string s = j.get<std::string>();
  if (s == "zero") return solutions::PiKind::Zero;
  if (s == "one") return solutions::PiKind::One;
  if (s == "sin") return solutions::PiKind::Sin;
  if (s == "cos") return solutions::PiKind::Cos;
  if (s == "custom") return solutions::PiKind::Custom;
  throw MalformedInput(what + ": unknown pi kind \"" + s + "\"");
}

}  // namespace

ordered_json cx_to_json(Cx v) { return ordered_json::array({v.real(), v.imag()}); }

Cx cx_from_json(const ordered_json& j, const std::string& what) {
  if (j.is_number()) return Cx(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw MalformedInput(what + ": expected [re, im] or a number");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

ordered_json cxvec_to_json(const CxVec& v) {
  ordered_json arr = ordered_json::array();
  for (const Cx& x : v) arr.push_back(cx_to_json(x));
  return arr;
}

CxVec cxvec_from_json(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) throw MalformedInput(what + ": expected an array");
  CxVec v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(cx_from_json(j[i], what + "[" + std::to_string(i) + "]"));
  return v;
}

ordered_json poly_to_json(const MPoly& p) {
  ordered_json j;
  j["n"] = p.n;
  ordered_json terms = ordered_json::array();
  for (const auto& [exps, coef] : p.terms) {
    ordered_json t;
    t["exps"] = exps;
    t["re"] = coef.real();
    t["im"] = coef.imag();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

MPoly poly_from_json(const ordered_json& j, const std::string& what) {
  const int n = int_from_json(need(j, "n", what), what + ".n");
  if (n < 1) throw MalformedInput(what + ".n: must be positive");
  MPoly p = algebra::poly_zero(n);
  const ordered_json& terms = need(j, "terms", what);
  if (!terms.is_array()) throw MalformedInput(what + ".terms: expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string here = what + ".terms[" + std::to_string(i) + "]";
    const ordered_json& t = terms[i];
    const ordered_json& ej = need(t, "exps", here);
    if (!ej.is_array() || ej.size() != static_cast<std::size_t>(n))
      throw MalformedInput(here + ".exps: expected " + std::to_string(n) + " exponents");
    MIdx exps(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < ej.size(); ++k) {
      const int e = int_from_json(ej[k], here + ".exps");
      if (e < 0) throw MalformedInput(here + ".exps: negative exponent");
      exps[k] = e;
    }
    const double re = num_from_json(need(t, "re", here), here + ".re");
    const double im = num_from_json(need(t, "im", here), here + ".im");
    p.terms[exps] += Cx(re, im);
  }
  return p;
}

ordered_json ep_to_json(const expfun::ExpPoly& f) {
  ordered_json j;
  j["n"] = f.n;
  ordered_json terms = ordered_json::array();
  for (const auto& t : f.terms) {
    ordered_json tj;
    tj["coef"] = poly_to_json(t.coef);
    tj["expo"] = poly_to_json(t.expo);
    terms.push_back(std::move(tj));
  }
  j["terms"] = std::move(terms);
  return j;
}

expfun::ExpPoly ep_from_json(const ordered_json& j, const std::string& what) {
  const int n = int_from_json(need(j, "n", what), what + ".n");
  if (n < 1) throw MalformedInput(what + ".n: must be positive");
  expfun::ExpPoly f{n, {}};
  const ordered_json& terms = need(j, "terms", what);
  if (!terms.is_array()) throw MalformedInput(what + ".terms: expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string here = what + ".terms[" + std::to_string(i) + "]";
    expfun::ExpTerm t;
    t.coef = poly_from_json(need(terms[i], "coef", here), here + ".coef");
    t.expo = poly_from_json(need(terms[i], "expo", here), here + ".expo");
    if (t.coef.n != n || t.expo.n != n) throw MalformedInput(here + ": dimension mismatch");
    f.terms.push_back(std::move(t));
  }
  return expfun::ep_normalize(f);
}

ordered_json equation_to_json(const equations::EquationSpec& eq) {
  ordered_json j;
  if (const auto* e = std::get_if<equations::BinomialDiff>(&eq)) {
    j["kind"] = "binomial-diff";
    j["a"] = cx_to_json(e->a);
    j["b"] = cx_to_json(e->b);
    j["P"] = poly_to_json(e->P);
    j["Q"] = poly_to_json(e->Q);
    j["g"] = poly_to_json(e->g);
    j["a1"] = cx_to_json(e->a1);
    j["a0"] = cx_to_json(e->a0);
    j["c"] = cxvec_to_json(e->c);
  } else if (const auto* e = std::get_if<equations::PDDE>(&eq)) {
    j["kind"] = "pdde";
    j["a"] = cx_to_json(e->a);
    j["b"] = cx_to_json(e->b);
    j["P"] = poly_to_json(e->P);
    j["Q"] = poly_to_json(e->Q);
    j["g"] = poly_to_json(e->g);
    j["c"] = cxvec_to_json(e->c);
    j["axis"] = e->axis;
  } else if (const auto* e = std::get_if<equations::Trinomial>(&eq)) {
    j["kind"] = "trinomial";
    j["a"] = cx_to_json(e->a);
    j["b"] = cx_to_json(e->b);
    j["omega"] = cx_to_json(e->omega);
    j["g1"] = cx_to_json(e->g1);
    j["g2"] = cx_to_json(e->g2);
    j["g"] = poly_to_json(e->g);
    j["c"] = cxvec_to_json(e->c);
  } else {
    const auto& lr = std::get<equations::LinearReduced>(eq);
    j["kind"] = "linear-reduced";
    j["a"] = cx_to_json(lr.a);
    j["b"] = cx_to_json(lr.b);
    j["g1"] = cx_to_json(lr.g1);
    j["g2"] = cx_to_json(lr.g2);
    j["g"] = poly_to_json(lr.g);
    j["c"] = cxvec_to_json(lr.c);
    j["sign_b"] = lr.sign_b;
    j["sign_rhs"] = lr.sign_rhs;
  }
  return j;
}

equations::EquationSpec equation_from_json(const ordered_json& j, const std::string& what) {
  const ordered_json& kj = need(j, "kind", what);
  if (!kj.is_string()) throw MalformedInput(what + ".kind: expected a string");
  const std::string kind = kj.get<std::string>();
  if (kind == "binomial-diff") {
    equations::BinomialDiff e;
    e.a = cx_from_json(need(j, "a", what), what + ".a");
    e.b = cx_from_json(need(j, "b", what), what + ".b");
    e.P = poly_from_json(need(j, "P", what), what + ".P");
    e.Q = poly_from_json(need(j, "Q", what), what + ".Q");
    e.g = poly_from_json(need(j, "g", what), what + ".g");
    e.a1 = cx_from_json(need(j, "a1", what), what + ".a1");
    e.a0 = cx_from_json(need(j, "a0", what), what + ".a0");
    e.c = cxvec_from_json(need(j, "c", what), what + ".c");
    return e;
  }
  if (kind == "pdde") {
    equations::PDDE e;
    e.a = cx_from_json(need(j, "a", what), what + ".a");
    e.b = cx_from_json(need(j, "b", what), what + ".b");
    e.P = poly_from_json(need(j, "P", what), what + ".P");
    e.Q = poly_from_json(need(j, "Q", what), what + ".Q");
    e.g = poly_from_json(need(j, "g", what), what + ".g");
    e.c = cxvec_from_json(need(j, "c", what), what + ".c");
    e.axis = int_from_json(need(j, "axis", what), what + ".axis");
    return e;
  }
  if (kind == "trinomial") {
    equations::Trinomial e;
    e.a = cx_from_json(need(j, "a", what), what + ".a");
    e.b = cx_from_json(need(j, "b", what), what + ".b");
    e.omega = cx_from_json(need(j, "omega", what), what + ".omega");
    e.g1 = cx_from_json(need(j, "g1", what), what + ".g1");
    e.g2 = cx_from_json(need(j, "g2", what), what + ".g2");
    e.g = poly_from_json(need(j, "g", what), what + ".g");
    e.c = cxvec_from_json(need(j, "c", what), what + ".c");
    return e;
  }
  if (kind == "linear-reduced") {
    equations::LinearReduced e;
    e.a = cx_from_json(need(j, "a", what), what + ".a");
    e.b = cx_from_json(need(j, "b", what), what + ".b");
    e.g1 = cx_from_json(need(j, "g1", what), what + ".g1");
    e.g2 = cx_from_json(need(j, "g2", what), what + ".g2");
    e.g = poly_from_json(need(j, "g", what), what + ".g");
    e.c = cxvec_from_json(need(j, "c", what), what + ".c");
    e.sign_b = int_from_json(need(j, "sign_b", what), what + ".sign_b");
    e.sign_rhs = int_from_json(need(j, "sign_rhs", what), what + ".sign_rhs");
    return e;
  }
  throw MalformedInput(what + ".kind: unknown equation kind \"" + kind + "\"");
}

ordered_json bundle_to_json(const solutions::SolutionBundle& b) {
  ordered_json j;
  j["f"] = ep_to_json(b.f);
  j["g"] = poly_to_json(b.g);
  ordered_json derived;
  for (const auto& [name, value] : b.derived) derived[name] = cx_to_json(value);
  j["derived"] = std::move(derived);
  j["theorem"] = b.theorem;
  j["branch"] = solutions::branch_label(b.branch);
  return j;
}

ordered_json constructed_to_json(const solutions::Constructed& c) {
  ordered_json j;
  j["schema"] = kSchema;
  j["bundle"] = bundle_to_json(c.bundle);
  j["equation"] = c.equation.has_value() ? equation_to_json(*c.equation) : ordered_json(nullptr);
  j["partner"] = c.partner.has_value() ? ep_to_json(*c.partner) : ordered_json(nullptr);
  return j;
}

ordered_json report_to_json(const equations::VerificationReport& r) {
  ordered_json j;
  j["schema"] = kSchema;
  j["symbolic_zero"] = r.symbolic_zero;
  j["max_rel_residual"] = r.max_rel_residual;
  j["n_points"] = r.n_points;
  j["seed"] = r.seed;
  j["branch_labels"] = r.branch_labels;
  j["witness"] = r.witness.has_value() ? cxvec_to_json(*r.witness) : ordered_json(nullptr);
  return j;
}

ordered_json verdict_to_json(const equations::Verdict& v) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = equations::verdict_kind_name(v.kind);
  j["reason"] = v.reason;
  if (v.certificate.has_value()) {
    ordered_json cj;
    cj["p"] = v.certificate->p;
    cj["q"] = v.certificate->q;
    cj["parity"] = v.certificate->parity;
    j["certificate"] = std::move(cj);
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

ordered_json order_to_json(const growth::OrderEstimate& e) {
  ordered_json j;
  j["schema"] = kSchema;
  j["structural"] = e.structural;
  j["numeric"] = e.numeric;
  ordered_json pts = ordered_json::array();
  for (const auto& [x, y] : e.slope_points) pts.push_back(ordered_json::array({x, y}));
  j["slope_points"] = std::move(pts);
  j["r_grid"] = {{"r_min", e.r_min}, {"r_max", e.r_max}, {"n_radii", e.n_radii}};
  j["samples_per_radius"] = e.samples_per_radius;
  j["seed"] = e.seed;
  return j;
}

ordered_json parse_payload(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw MalformedInput("payload: expected a JSON object");
  const ordered_json& s = need(j, "schema", "payload");
  if (!s.is_string() || s.get<std::string>() != kSchema)
    throw MalformedInput(std::string("payload.schema: expected \"") + kSchema + "\"");
  return j;
}

solutions::Branch branch_from_json(const ordered_json& j, const std::string& what) {
  solutions::Branch b;
  if (j.is_null()) return b;
  if (!j.is_object()) throw MalformedInput(what + ": expected an object of integer branch keys");
  for (const auto& [key, value] : j.items())
    b[key] = int_from_json(value, what + "." + key);
  return b;
}

solutions::Constructed construct_from_json(const ordered_json& payload) {
  const ordered_json& tj = need(payload, "theorem", "construct");
  if (!tj.is_string()) throw MalformedInput("construct.theorem: expected a string");
  const std::string theorem = tj.get<std::string>();
  const ordered_json& pj = need(payload, "params", "construct");
  const std::string W = "construct.params";
  solutions::Branch branch;
  if (payload.contains("branch")) branch = branch_from_json(payload.at("branch"), "construct.branch");

  if (theorem == "th-2.1(i)") {
    solutions::Thm21iParams p;
    p.c = cxvec_from_json(need(pj, "c", W), W + ".c");
    p.a = cx_from_json(need(pj, "a", W), W + ".a");
    p.b = cx_from_json(need(pj, "b", W), W + ".b");
    p.a1 = cx_from_json(need(pj, "a1", W), W + ".a1");
    p.a0 = cx_from_json(need(pj, "a0", W), W + ".a0");
    p.L1 = cxvec_from_json(need(pj, "L1", W), W + ".L1");
    p.L2 = cxvec_from_json(need(pj, "L2", W), W + ".L2");
    if (pj.contains("psi1")) p.psi1 = periodic_from_json(pj.at("psi1"), W + ".psi1");
    if (pj.contains("psi2")) p.psi2 = periodic_from_json(pj.at("psi2"), W + ".psi2");
    if (pj.contains("k1")) p.k1 = cx_from_json(pj.at("k1"), W + ".k1");
    if (pj.contains("k2")) p.k2 = cx_from_json(pj.at("k2"), W + ".k2");
    p.Q1 = poly_from_json(need(pj, "Q1", W), W + ".Q1");
    p.Q2 = poly_from_json(need(pj, "Q2", W), W + ".Q2");
    return solutions::construct_thm21_i(p, branch);
  }
  if (theorem == "th-2.1(ii)") {
    solutions::Thm21iiParams p;
    p.c = cxvec_from_json(need(pj, "c", W), W + ".c");
    p.a = cx_from_json(need(pj, "a", W), W + ".a");
    p.b = cx_from_json(need(pj, "b", W), W + ".b");
    p.a1 = cx_from_json(need(pj, "a1", W), W + ".a1");
    p.a0 = cx_from_json(need(pj, "a0", W), W + ".a0");
    p.P = cx_from_json(need(pj, "P", W), W + ".P");
    p.B = cx_from_json(need(pj, "B", W), W + ".B");
    p.L21 = cxvec_from_json(need(pj, "L21", W), W + ".L21");
    p.beta = ep_from_json(need(pj, "beta", W), W + ".beta");
    if (pj.contains("Q") && !pj.at("Q").is_null())
      p.Q = poly_from_json(pj.at("Q"), W + ".Q");
    return solutions::construct_thm21_ii(p, branch);
  }
  if (theorem == "th-2.2(i)") {
    solutions::Thm22iParams p;
    p.c = cxvec_from_json(need(pj, "c", W), W + ".c");
    p.axis = int_from_json(need(pj, "axis", W), W + ".axis");
    p.a = cx_from_json(need(pj, "a", W), W + ".a");
    p.b = cx_from_json(need(pj, "b", W), W + ".b");
    p.h1c = cxvec_from_json(need(pj, "h1c", W), W + ".h1c");
    p.h2c = cxvec_from_json(need(pj, "h2c", W), W + ".h2c");
    p.r1 = cx_from_json(need(pj, "r1", W), W + ".r1");
    p.r2 = cx_from_json(need(pj, "r2", W), W + ".r2");
    p.alpha1 = cx_from_json(need(pj, "alpha1", W), W + ".alpha1");
    p.alpha2 = cx_from_json(need(pj, "alpha2", W), W + ".alpha2");
    return solutions::construct_thm22_i(p, branch);
  }
  if (theorem == "th-2.2(ii)") {
    solutions::Thm22iiParams p;
    p.c = cxvec_from_json(need(pj, "c", W), W + ".c");
    p.axis = int_from_json(need(pj, "axis", W), W + ".axis");
    p.a = cx_from_json(need(pj, "a", W), W + ".a");
    p.b = cx_from_json(need(pj, "b", W), W + ".b");
    p.P = cx_from_json(need(pj, "P", W), W + ".P");
    p.r5 = cx_from_json(need(pj, "r5", W), W + ".r5");
    p.gamma = ep_from_json(need(pj, "gamma", W), W + ".gamma");
    p.L1 = cxvec_from_json(need(pj, "L1", W), W + ".L1");
    if (pj.contains("H")) p.H = periodic_from_json(pj.at("H"), W + ".H");
    if (pj.contains("Q") && !pj.at("Q").is_null())
      p.Q = poly_from_json(pj.at("Q"), W + ".Q");
    return solutions::construct_thm22_ii(p, branch);
  }
  if (theorem == "th-2.3(i)") {
    solutions::Thm23iParams p;
    p.c = cxvec_from_json(need(pj, "c", W), W + ".c");
    p.a = cx_from_json(need(pj, "a", W), W + ".a");
    p.b = cx_from_json(need(pj, "b", W), W + ".b");
    p.omega = cx_from_json(need(pj, "omega", W), W + ".omega");
    p.g1 = cx_from_json(need(pj, "g1", W), W + ".g1");
    p.g2 = cx_from_json(need(pj, "g2", W), W + ".g2");
    p.xi = cx_from_json(need(pj, "xi", W), W + ".xi");
    p.axis = int_from_json(need(pj, "axis", W), W + ".axis");
    if (pj.contains("L0")) p.L0 = cxvec_from_json(pj.at("L0"), W + ".L0");
    if (pj.contains("H")) p.H = periodic_from_json(pj.at("H"), W + ".H");
    if (pj.contains("B3")) p.B3 = cx_from_json(pj.at("B3"), W + ".B3");
    return solutions::construct_thm23_i(p, branch);
  }
  if (theorem == "th-2.3(ii)") {
    solutions::Thm23iiParams p;
    p.c = cxvec_from_json(need(pj, "c", W), W + ".c");
    p.a = cx_from_json(need(pj, "a", W), W + ".a");
    p.b = cx_from_json(need(pj, "b", W), W + ".b");
    p.omega = cx_from_json(need(pj, "omega", W), W + ".omega");
    p.g1 = cx_from_json(need(pj, "g1", W), W + ".g1");
    p.g2 = cx_from_json(need(pj, "g2", W), W + ".g2");
    p.axis1 = int_from_json(need(pj, "axis1", W), W + ".axis1");
    p.axis2 = int_from_json(need(pj, "axis2", W), W + ".axis2");
    if (pj.contains("L10")) p.L10 = cxvec_from_json(pj.at("L10"), W + ".L10");
    if (pj.contains("L20")) p.L20 = cxvec_from_json(pj.at("L20"), W + ".L20");
    if (pj.contains("H1")) p.H1 = periodic_from_json(pj.at("H1"), W + ".H1");
    if (pj.contains("H2")) p.H2 = periodic_from_json(pj.at("H2"), W + ".H2");
    if (pj.contains("D1")) p.D1 = cx_from_json(pj.at("D1"), W + ".D1");
    if (pj.contains("D2")) p.D2 = cx_from_json(pj.at("D2"), W + ".D2");
    return solutions::construct_thm23_ii(p, branch);
  }
  if (theorem == "th-2.4(i)") {
    solutions::Thm24iParams p;
    p.c = cxvec_from_json(need(pj, "c", W), W + ".c");
    p.a = cx_from_json(need(pj, "a", W), W + ".a");
    p.b = cx_from_json(need(pj, "b", W), W + ".b");
    p.g1 = cx_from_json(need(pj, "g1", W), W + ".g1");
    p.g2 = cx_from_json(need(pj, "g2", W), W + ".g2");
    p.xi = cx_from_json(need(pj, "xi", W), W + ".xi");
    p.axis = int_from_json(need(pj, "axis", W), W + ".axis");
    if (pj.contains("L0")) p.L0 = cxvec_from_json(pj.at("L0"), W + ".L0");
    if (pj.contains("H")) p.H = periodic_from_json(pj.at("H"), W + ".H");
    if (pj.contains("A")) p.A = cx_from_json(pj.at("A"), W + ".A");
    return solutions::construct_thm24_i(p, branch);
  }
  if (theorem == "th-2.4(ii)") {
    solutions::Thm24iiParams p;
    p.c = cxvec_from_json(need(pj, "c", W), W + ".c");
    p.a = cx_from_json(need(pj, "a", W), W + ".a");
    p.b = cx_from_json(need(pj, "b", W), W + ".b");
    p.g1 = cx_from_json(need(pj, "g1", W), W + ".g1");
    p.g2 = cx_from_json(need(pj, "g2", W), W + ".g2");
    p.axis1 = int_from_json(need(pj, "axis1", W), W + ".axis1");
    p.axis2 = int_from_json(need(pj, "axis2", W), W + ".axis2");
    if (pj.contains("L10")) p.L10 = cxvec_from_json(pj.at("L10"), W + ".L10");
    if (pj.contains("L20")) p.L20 = cxvec_from_json(pj.at("L20"), W + ".L20");
    if (pj.contains("H1")) p.H1 = periodic_from_json(pj.at("H1"), W + ".H1");
    if (pj.contains("H2")) p.H2 = periodic_from_json(pj.at("H2"), W + ".H2");
    if (pj.contains("B1")) p.B1 = cx_from_json(pj.at("B1"), W + ".B1");
    if (pj.contains("B2")) p.B2 = cx_from_json(pj.at("B2"), W + ".B2");
    return solutions::construct_thm24_ii(p, branch);
  }
  if (theorem == "remark-3.5") {
    solutions::Remark35Params p;
    p.c = cxvec_from_json(need(pj, "c", W), W + ".c");
    p.a = cx_from_json(need(pj, "a", W), W + ".a");
    p.b = cx_from_json(need(pj, "b", W), W + ".b");
    p.g1 = cx_from_json(need(pj, "g1", W), W + ".g1");
    p.g2 = cx_from_json(need(pj, "g2", W), W + ".g2");
    p.sign_b = int_from_json(need(pj, "sign_b", W), W + ".sign_b");
    p.sign_rhs = int_from_json(need(pj, "sign_rhs", W), W + ".sign_rhs");
    p.ell = cxvec_from_json(need(pj, "ell", W), W + ".ell");
    p.case_no = int_from_json(need(pj, "case", W), W + ".case");
    if (pj.contains("pi")) p.pi_kind = pi_kind_from_json(pj.at("pi"), W + ".pi");
    if (pj.contains("pi_custom") && !pj.at("pi_custom").is_null())
      p.pi_custom = ep_from_json(pj.at("pi_custom"), W + ".pi_custom");
    if (pj.contains("g_const")) p.g_const = cx_from_json(pj.at("g_const"), W + ".g_const");
    if (pj.contains("g_periodic"))
      p.g_periodic = poly_from_json(pj.at("g_periodic"), W + ".g_periodic");
    if (pj.contains("L")) p.L = cxvec_from_json(pj.at("L"), W + ".L");
    if (pj.contains("H1")) p.H1 = periodic_from_json(pj.at("H1"), W + ".H1");
    if (pj.contains("B")) p.B = cx_from_json(pj.at("B"), W + ".B");
    return solutions::construct_remark35(p, branch);
  }
  if (theorem == "thm-1.1") {
    solutions::Thm11Params p;
    p.q = cx_from_json(need(pj, "q", W), W + ".q");
    p.c = cx_from_json(need(pj, "c", W), W + ".c");
    if (pj.contains("B")) p.B = cx_from_json(pj.at("B"), W + ".B");
    if (pj.contains("k")) p.k = int_from_json(pj.at("k"), W + ".k");
    return solutions::construct_thm11(p, branch);
  }
  if (theorem == "saleeby-m2") {
    solutions::SaleebyParams p;
    p.h = poly_from_json(need(pj, "h", W), W + ".h");
    return solutions::construct_saleeby(p);
  }
  throw MalformedInput("construct.theorem: unknown tag \"" + theorem + "\"");
}

}  // namespace forge::io
