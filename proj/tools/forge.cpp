#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "forge/errors.hpp"
#include "forge/fixtures.hpp"
#include "forge/json_io.hpp"

namespace {

using forge::io::ordered_json;

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw forge::MalformedInput("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const ordered_json& j, const std::string&) { std::cout << j.dump(2) << "\n"; }

std::string fmt_cx(forge::algebra::Cx v) {
  std::ostringstream ss;
  ss << v.real();
  if (v.imag() >= 0)
    ss << "+" << v.imag() << "i";
  else
    ss << v.imag() << "i";
  return ss.str();
}

int run_construct(const std::string& input, const std::string& output) {
  const ordered_json payload = forge::io::parse_payload(read_all(input));
  const auto built = forge::io::construct_from_json(payload);
  if (output == "json") {
    emit(forge::io::constructed_to_json(built), output);
    return 0;
  }
  std::cout << "constructed " << built.bundle.theorem << " [branch "
            << forge::solutions::branch_label(built.bundle.branch) << "]\n";
  std::cout << "  f: " << built.bundle.f.terms.size() << " exponential term(s), structural order "
            << forge::expfun::ep_structural_degree(built.bundle.f) << "\n";
  for (const auto& [name, value] : built.bundle.derived)
    std::cout << "  " << name << " = " << fmt_cx(value) << "\n";
  if (built.equation.has_value())
    std::cout << "  equation kind: "
              << forge::io::equation_to_json(*built.equation)["kind"].get<std::string>() << "\n";
  if (built.partner.has_value()) std::cout << "  partner: present\n";
  return 0;
}

int run_verify(const std::string& input, const std::string& output,
               const forge::expfun::ZeroCheckConfig& cfg) {
  const ordered_json payload = forge::io::parse_payload(read_all(input));
  if (!payload.contains("equation")) throw forge::MalformedInput("payload: missing \"equation\"");
  if (!payload.contains("candidate"))
    throw forge::MalformedInput("payload: missing \"candidate\"");
  const auto eq = forge::io::equation_from_json(payload.at("equation"), "equation");
  const auto f = forge::io::ep_from_json(payload.at("candidate"), "candidate");
  const auto rep = forge::equations::verify(eq, f, cfg);
  const bool ok = rep.symbolic_zero || rep.max_rel_residual <= cfg.tol;
  if (output == "json") {
    emit(forge::io::report_to_json(rep), output);
  } else {
    std::cout << (ok ? "VERIFIED" : "FAILED") << ": symbolic_zero="
              << (rep.symbolic_zero ? "true" : "false")
              << " max_rel_residual=" << rep.max_rel_residual << " n_points=" << rep.n_points
              << " seed=" << rep.seed << "\n";
    if (rep.witness.has_value()) {
      std::cout << "  witness:";
      for (const auto& z : *rep.witness) std::cout << " " << fmt_cx(z);
      std::cout << "\n";
    }
  }
  return ok ? 0 : 1;
}

int run_diagnose(const std::string& input, const std::string& output) {
  const ordered_json payload = forge::io::parse_payload(read_all(input));
  if (!payload.contains("equation")) throw forge::MalformedInput("payload: missing \"equation\"");
  const auto eq = forge::io::equation_from_json(payload.at("equation"), "equation");
  const auto verdict = forge::equations::diagnose(eq);
  if (output == "json") {
    emit(forge::io::verdict_to_json(verdict), output);
  } else {
    std::cout << forge::equations::verdict_kind_name(verdict.kind) << ": " << verdict.reason
              << "\n";
    if (verdict.certificate.has_value())
      std::cout << "  certificate: p=" << verdict.certificate->p
                << " q=" << verdict.certificate->q << " (" << verdict.certificate->parity << ")\n";
  }
  const bool claimed = payload.contains("candidate") && !payload.at("candidate").is_null();
  if (claimed && verdict.kind != forge::equations::Verdict::Kind::SolutionFamilyExists) return 1;
  return 0;
}

int run_order(const std::string& input, const std::string& output, double r_min, double r_max,
              int n_radii, int samples, std::uint64_t seed) {
  const ordered_json payload = forge::io::parse_payload(read_all(input));
  if (!payload.contains("f")) throw forge::MalformedInput("payload: missing \"f\"");
  const auto f = forge::io::ep_from_json(payload.at("f"), "f");
  const auto est = forge::growth::estimate_order(f, r_min, r_max, n_radii, samples, seed);
  if (output == "json") {
    emit(forge::io::order_to_json(est), output);
  } else {
    std::cout << "structural order " << est.structural << ", numeric slope " << est.numeric
              << " over " << est.slope_points.size() << " radii in [" << est.r_min << ", "
              << est.r_max << "]\n";
  }
  return 0;
}

struct ReproduceOpts {
  std::string id;
  bool all = false;
  std::string branches = "all";
  forge::fixtures::RunOverrides overrides;
};

int run_reproduce(const ReproduceOpts& opts, const std::string& output) {
  std::vector<const forge::fixtures::Fixture*> todo;
  if (opts.all) {
    for (const auto& fx : forge::fixtures::registry()) todo.push_back(&fx);
  } else {
    if (opts.id.empty())
      throw forge::MalformedInput("reproduce: give a fixture id or --all; known ids:");
    const auto* fx = forge::fixtures::find(opts.id);
    if (fx == nullptr) {
      std::string known;
      for (const auto& f : forge::fixtures::registry()) known += " " + f.id;
      throw forge::MalformedInput("unknown fixture \"" + opts.id + "\"; known:" + known);
    }
    todo.push_back(fx);
  }

  forge::fixtures::RunOverrides ov = opts.overrides;
  if (opts.branches != "all") {
    try {
      ov.branch_index = std::stoi(opts.branches);
    } catch (const std::exception&) {
      throw forge::MalformedInput("--branches expects \"all\" or a branch index");
    }
  }

  bool all_pass = true;
  ordered_json results = ordered_json::array();
  for (const auto* fx : todo) {
    const auto res = forge::fixtures::run_fixture(*fx, ov);
    all_pass = all_pass && res.pass;
    if (output == "json") {
      ordered_json rj;
      rj["id"] = res.id;
      rj["citation"] = res.citation;
      rj["pass"] = res.pass;
      ordered_json rows = ordered_json::array();
      for (const auto& row : res.rows) {
        ordered_json b;
        b["label"] = row.label;
        b["built"] = row.built;
        if (!row.build_error.empty()) b["build_error"] = row.build_error;
        b["verified"] = row.verified;
        b["symbolic"] = row.symbolic;
        b["max_rel_residual"] = row.max_rel;
        b["check_failures"] = row.check_failures;
        rows.push_back(std::move(b));
      }
      rj["branches"] = std::move(rows);
      rj["report"] = forge::io::report_to_json(res.best);
      results.push_back(std::move(rj));
    } else {
      std::cout << "== " << res.id << " ==\n";
      std::cout << "   cites: " << res.citation << "\n";
      for (const auto& row : res.rows) {
        std::cout << "   branch " << row.label << ": ";
        if (!row.built) {
          std::cout << "not built (" << row.build_error << ")\n";
          continue;
        }
        std::cout << (row.verified ? "PASS" : "FAIL");
        if (row.symbolic)
          std::cout << " residual==0 symbolically";
        else
          std::cout << " max_rel_residual=" << row.max_rel;
        std::cout << "\n";
        for (const auto& cf : row.check_failures) std::cout << "     check failed: " << cf << "\n";
      }
      std::cout << "   result: " << (res.pass ? "PASS" : "FAIL") << "\n";
    }
  }

  ordered_json coverage;
  if (opts.all) {
    coverage["constructor_arms"] = forge::fixtures::constructor_arms_covered();
    coverage["equation_arms"] = forge::fixtures::equation_arms_covered();
  }

  if (output == "json") {
    ordered_json out;
    out["schema"] = forge::io::kSchema;
    out["results"] = std::move(results);
    if (opts.all) out["coverage"] = coverage;
    out["pass"] = all_pass;
    emit(out, output);
  } else if (opts.all) {
    std::cout << "coverage: " << coverage["constructor_arms"].size()
              << " constructor arms, " << coverage["equation_arms"].size() << " equation arms\n";
    std::cout << "overall: " << (all_pass ? "PASS" : "FAIL") << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fermat-forge: constructs, verifies, and diagnoses entire solution families of "
               "Fermat-type shifted functional equations"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string output = "text";
  std::uint64_t seed = 20240901ULL;
  int samples = 200;
  double radius = 1.5;
  double tol = 1e-9;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", input, "input JSON file, or - for stdin");
    sub->add_option("--output", output, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "sampling seed");
    sub->add_option("--samples", samples, "sample points per check")->check(CLI::PositiveNumber);
    sub->add_option("--radius", radius, "polydisc sampling radius")->check(CLI::PositiveNumber);
    sub->add_option("--tol", tol, "relative residual tolerance")->check(CLI::PositiveNumber);
  };

  auto* construct = app.add_subcommand("construct", "build a solution bundle from theorem params");
  add_io(construct);

  auto* verify = app.add_subcommand("verify", "check a candidate against an equation spec");
  add_io(verify);
  add_sampling(verify);

  auto* diagnose = app.add_subcommand("diagnose", "classify an equation spec");
  add_io(diagnose);

  auto* order = app.add_subcommand("order", "estimate the order of growth of an ExpPoly");
  add_io(order);
  double r_min = 2.0, r_max = 20.0;
  int n_radii = 12, order_samples = 512;
  order->add_option("--r-min", r_min, "smallest radius (must exceed 1)");
  order->add_option("--r-max", r_max, "largest radius");
  order->add_option("--n-radii", n_radii, "radii in the geometric grid");
  order->add_option("--order-samples", order_samples, "torus samples per radius");
  order->add_option("--seed", seed, "sampling seed");

  auto* reproduce = app.add_subcommand("reproduce", "run a named fixture (or all of them)");
  ReproduceOpts ropts;
  reproduce->add_option("fixture", ropts.id, "fixture id, e.g. thm11-sine");
  reproduce->add_flag("--all", ropts.all, "run every fixture and report coverage");
  reproduce->add_option("--branches", ropts.branches, "all, or a single branch index");
  add_sampling(reproduce);
  reproduce->add_option("--output", output, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (construct->parsed()) return run_construct(input, output);
    if (verify->parsed()) {
      forge::expfun::ZeroCheckConfig cfg;
      cfg.seed = seed;
      cfg.n_samples = samples;
      cfg.radius = radius;
      cfg.tol = tol;
      return run_verify(input, output, cfg);
    }
    if (diagnose->parsed()) return run_diagnose(input, output);
    if (order->parsed())
      return run_order(input, output, r_min, r_max, n_radii, order_samples, seed);
    if (reproduce->parsed()) {
      if (reproduce->count("--seed")) ropts.overrides.seed = seed;
      if (reproduce->count("--samples")) ropts.overrides.samples = samples;
      if (reproduce->count("--radius")) ropts.overrides.radius = radius;
      if (reproduce->count("--tol")) ropts.overrides.tol = tol;
      return run_reproduce(ropts, output);
    }
  } catch (const forge::MalformedInput& e) {
    std::cerr << "error [MalformedInput]: " << e.what() << "\n";
    return 2;
  } catch (const forge::ForgeError& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
