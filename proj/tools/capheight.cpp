// capheight: command-line front end for the capheight library.
//
// Exit status: 0 ok, 1 a verified criterion failed, 2 usage or configuration
// error, 3 a numerical or mathematical error from the library.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "capheight/construct.hpp"
#include "capheight/error.hpp"
#include "capheight/experiments.hpp"
#include "capheight/heights.hpp"
#include "capheight/intpoly.hpp"
#include "capheight/io.hpp"
#include "capheight/measures.hpp"
#include "capheight/potential.hpp"
#include "capheight/roots.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace capheight;

namespace {

struct Globals {
  std::string set;
  std::string out;
  int threads = 1;
  std::string profile = "default";
};

ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return report_round(v);
}

ordered_json complex_json(Complex z) { return {{"re", num(z.real())}, {"im", num(z.imag())}}; }

// A polynomial argument is a file when one exists by that name.
IntPolynomial poly_arg(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return load_polynomial(arg);
  return parse_polynomial(arg);
}

SetDescriptor set_arg(const std::string& positional, const Globals& g) {
  const std::string& path = positional.empty() ? g.set : positional;
  if (path.empty()) throw Error(ErrorKind::InvalidConfig, "no set file given (positional or --set)");
  return load_set(path);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) std::cout << text;
  else write_text(out, text);
}

void emit(const ordered_json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      v.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidConfig, "not a number: '" + tok + "'");
    }
  }
  return v;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidConfig:
    case ErrorKind::UnknownExperiment:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity, Green functions and set-relative heights of algebraic numbers"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--set", g.set, "set descriptor file")->expected(1);
  app.add_option("--out", g.out, "output file (directory for verify)");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tolerance-profile", g.profile, "tolerance profile")->check(CLI::IsMember({"default", "strict"}));
  app.fallthrough();

  int status = 0;

  // capacity
  std::string cap_set;
  int cap_m = 400;
  int cap_fekete = 0;
  auto* cap = app.add_subcommand("capacity", "logarithmic capacity of a set");
  cap->add_option("set-file", cap_set);
  cap->add_option("--m", cap_m, "boundary samples for the discrete solver")->check(CLI::Range(16, 100000));
  cap->add_option("--fekete", cap_fekete, "also estimate d_n with n points")->check(CLI::Range(3, 4096));
  cap->callback([&] {
    const SetDescriptor set = set_arg(cap_set, g);
    const GreenModel model = make_green_model(set, cap_m);
    ordered_json j;
    j["set"] = describe(set);
    j["capacity"] = num(model.capacity());
    j["robin_constant"] = num(model.robin_constant);
    j["method"] = model.mode == GreenMode::ClosedForm ? "closed-form" : "discrete";
    ordered_json d;
    if (model.mode == GreenMode::Discrete) {
      d["samples"] = model.sample.size();
      d["ill_conditioned"] = model.ill_conditioned;
    }
    if (cap_fekete > 0) {
      const TransfiniteEstimate t = transfinite_diameter_estimate(set, cap_fekete, true);
      d["fekete_n"] = cap_fekete;
      d["fekete_d_n"] = num(t.d_n);
      d["leja_d_n"] = num(t.leja_d_n);
      d["exchanges"] = t.exchanges;
    }
    j["diagnostics"] = d.is_null() ? ordered_json::object() : d;
    emit(j, g.out);
  });

  // green
  std::string green_set;
  std::vector<double> at;
  int green_m = 400;
  auto* green = app.add_subcommand("green", "Green function with pole at infinity");
  green->add_option("set-file", green_set);
  green->add_option("--at", at, "evaluation point x y")->expected(2)->required();
  green->add_option("--m", green_m, "boundary samples when no closed form exists")->check(CLI::Range(16, 100000));
  green->callback([&] {
    const SetDescriptor set = set_arg(green_set, g);
    const GreenModel model = make_green_model(set, green_m);
    const Complex z(at[0], at[1]);
    ordered_json j;
    j["set"] = describe(set);
    j["at"] = complex_json(z);
    j["green"] = num(green_eval(model, z));
    j["capacity"] = num(model.capacity());
    j["robin_constant"] = num(model.robin_constant);
    j["method"] = model.mode == GreenMode::ClosedForm ? "closed-form" : "discrete";
    emit(j, g.out);
  });

  // levelset
  std::string ls_set;
  double level = 1.0;
  int rays = 256;
  auto* ls = app.add_subcommand("levelset", "trace {g = level} as a closed arc (written in set format)");
  ls->add_option("set-file", ls_set);
  ls->add_option("--level", level, "Green level")->required()->check(CLI::PositiveNumber);
  ls->add_option("--rays", rays, "number of rays")->check(CLI::Range(4, 1 << 20));
  ls->callback([&] {
    const SetDescriptor set = set_arg(ls_set, g);
    const Arc arc = trace_level_set(make_green_model(set), level, rays);
    emit(format_set(arc), g.out);
  });

  // roots
  std::string roots_poly;
  auto* roots = app.add_subcommand("roots", "complex roots of an integer polynomial");
  roots->add_option("poly", roots_poly, "ascending coefficients, quoted, or a file")->required();
  roots->callback([&] {
    const IntPolynomial p = poly_arg(roots_poly);
    const RootSet rs = find_roots(p);
    ordered_json j;
    j["polynomial"] = p.to_string();
    j["degree"] = p.degree();
    j["converged"] = rs.converged;
    j["residual_bound"] = num(rs.residual_bound);
    j["max_multiplicity"] = rs.max_multiplicity;
    j["roots"] = ordered_json::array();
    for (const auto& z : rs.roots) j["roots"].push_back(complex_json(z));
    emit(j, g.out);
  });

  // resultant / disc
  std::string res_a, res_b;
  auto* res = app.add_subcommand("resultant", "exact resultant Res(A, B)");
  res->add_option("polyA", res_a)->required();
  res->add_option("polyB", res_b)->required();
  res->callback([&] {
    const IntPolynomial a = poly_arg(res_a), b = poly_arg(res_b);
    ordered_json j;
    j["a"] = a.to_string();
    j["b"] = b.to_string();
    j["resultant"] = resultant(a, b).str();
    emit(j, g.out);
  });
  std::string disc_poly;
  auto* disc = app.add_subcommand("disc", "exact discriminant");
  disc->add_option("poly", disc_poly)->required();
  disc->callback([&] {
    const IntPolynomial p = poly_arg(disc_poly);
    ordered_json j;
    j["polynomial"] = p.to_string();
    j["discriminant"] = discriminant(p).str();
    j["squarefree"] = is_squarefree(p);
    emit(j, g.out);
  });

  // height / mahler
  std::string h_poly;
  bool hat = false;
  auto* height = app.add_subcommand("height", "set-relative height report");
  height->add_option("poly", h_poly)->required();
  height->add_flag("--hat", hat, "also compute the outer-domain height");
  height->callback([&] {
    const IntPolynomial p = poly_arg(h_poly);
    const HeightReport r = height_sigma(p, make_green_model(set_arg("", g)), hat);
    emit(height_reports_json({r}), g.out);
  });
  std::string m_poly;
  auto* mahler = app.add_subcommand("mahler", "set-relative Mahler measure");
  mahler->add_option("poly", m_poly)->required();
  mahler->callback([&] {
    const IntPolynomial p = poly_arg(m_poly);
    const GreenModel model = make_green_model(set_arg("", g));
    ordered_json j;
    j["polynomial"] = p.to_string();
    j["set"] = describe(model.set);
    j["log_mahler_sigma"] = num(mahler_sigma(p, model));
    j["log_mahler"] = num(log_mahler(p));
    emit(j, g.out);
  });

  // scan
  int degmax = 2, coeff = 10;
  double threshold = 0.0;
  bool no_prune = false;
  auto* scan = app.add_subcommand("scan", "all primitive irreducible polynomials below a height threshold");
  scan->add_option("--degmax", degmax)->required()->check(CLI::Range(1, 12));
  scan->add_option("--coeff", coeff)->required()->check(CLI::Range(1, 1000000));
  scan->add_option("--threshold", threshold)->required();
  scan->add_flag("--no-prune", no_prune, "enumerate the whole coefficient box");
  scan->callback([&] {
    ScanOptions opt;
    opt.threads = g.threads;
    opt.prune = !no_prune;
    const ScanResult r = northcott_scan(make_green_model(set_arg("", g)), degmax, coeff, threshold, opt);
    emit(height_reports_json(r.hits), g.out);
    const auto& d = r.diagnostics;
    std::cerr << "enumerated " << d.enumerated << ", outside bound " << d.outside_bound << ", above threshold "
              << d.above_threshold << ", non-primitive " << d.non_primitive << ", reducible " << d.reducible
              << ", undecided " << d.unknown_skipped << ", hits " << d.hits << "\n";
  });

  // measure energy
  std::string roots_file;
  auto* measure = app.add_subcommand("measure", "discrete measure diagnostics");
  measure->require_subcommand(1);
  auto* energy_cmd = measure->add_subcommand("energy", "energy of a discrete measure (roots.json)");
  energy_cmd->add_option("roots-file", roots_file)->required()->check(CLI::ExistingFile);
  energy_cmd->callback([&] {
    const DiscreteMeasure mu = load_measure(roots_file);
    ordered_json j;
    j["atoms"] = mu.size();
    j["total_mass"] = num(mu.total_mass());
    j["energy"] = num(energy(mu));
    j["truncated_energy"] = num(truncated_energy(mu));
    emit(j, g.out);
  });

  // escape
  std::string family_dir, radii = "2,4,8";
  auto* escape = app.add_subcommand("escape", "escape-rate estimate of a polynomial family");
  escape->add_option("--family", family_dir, "directory of .poly files")->required();
  escape->add_option("--radii", radii, "comma-separated increasing radii");
  escape->callback([&] {
    const GreenModel model = make_green_model(set_arg("", g));
    std::vector<RootSet> sets;
    for (const auto& m : make_family(load_family(family_dir), g.threads)) sets.push_back(m.roots);
    const EscapeEstimate e = escape_rate_estimate(sets, model, parse_list(radii));
    ordered_json j;
    j["members"] = sets.size();
    j["rows"] = ordered_json::array();
    for (const auto& r : e.rows) j["rows"].push_back({{"radius", num(r.radius)}, {"value", num(r.value)}});
    j["escape_rate"] = num(e.extrapolated);
    emit(j, g.out);
  });

  // construct
  int c_level = 2;
  double eps = 1e-3;
  auto* construct = app.add_subcommand("construct", "capacity-one union of the set and a level-set arc");
  construct->add_option("--level", c_level)->required()->check(CLI::PositiveNumber);
  construct->add_option("--eps", eps, "capacity tolerance on the Robin constant")->check(CLI::PositiveNumber);
  construct->callback([&] {
    const GreenModel sigma = make_green_model(set_arg("", g));
    ConstructionOptions opt;
    if (g.profile == "strict") {
      opt.samples = 800;
      opt.rays = 512;
    }
    const ConstructionState st = bisect_to_capacity_one(sigma, c_level, eps, opt);
    emit(construction_state_json(st, mass_law_check(st, sigma)), g.out);
  });

  // verify
  std::string verify_id, config_file, q_poly, verify_family;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
  auto* verify = app.add_subcommand("verify", "run one acceptance experiment");
  verify->add_option("experiment-id", verify_id)->required();
  verify->add_option("--config", config_file, "key = value experiment config")->check(CLI::ExistingFile);
  verify->add_option("--param", params, "key=value parameter override (repeatable)");
  verify->add_option("--family", verify_family, "directory of .poly files");
  verify->add_option("--q", q_poly, "polynomial Q for the limiting experiment");
  verify->add_option("--seed", seed, "random seed for generated inputs");
  verify->callback([&] {
    ExperimentConfig cfg = config_file.empty() ? ExperimentConfig{} : load_experiment_config(config_file);
    cfg.id = verify_id;
    if (!g.set.empty()) cfg.set_path = g.set;
    if (!g.out.empty()) cfg.out = g.out;
    if (app.count("--threads") > 0) cfg.threads = g.threads;
    if (g.profile != "default") cfg.profile = g.profile;
    if (seed) cfg.seed = *seed;
    if (!verify_family.empty()) {
      cfg.family = "files";
      cfg.params["family_dir"] = verify_family;
    }
    if (!q_poly.empty()) cfg.params["q"] = poly_arg(q_poly).to_string();
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::InvalidConfig, "--param expects key=value, got " + kv);
      cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    const Report r = run_experiment(cfg);
    if (!cfg.out.empty()) write_report(r, cfg.out);
    std::cout << report_json(r);
    for (const auto& c : r.checks) std::cerr << (c.passed ? "PASS " : "FAIL ") << r.id << ": " << c.name << "\n";
    if (!r.passed()) status = 1;
  });

  auto* list = app.add_subcommand("list-experiments", "registered experiment ids");
  list->callback([&] {
    for (const auto& e : experiment_registry()) std::cout << e.id << "\t" << e.criterion << "\t" << e.summary << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "capheight: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "capheight: " << e.what() << "\n";
    return 3;
  }
  return status;
}
