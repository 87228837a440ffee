#include "capheight/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "capheight/construct.hpp"
#include "capheight/error.hpp"
#include "capheight/heights.hpp"
#include "capheight/io.hpp"
#include "capheight/measures.hpp"
#include "capheight/potential.hpp"
#include "capheight/roots.hpp"

namespace capheight {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_floating_point_v<T>) s += fmt(v[i]);
    else s += std::to_string(v[i]);
  }
  return s;
}

// Typed access to experiment parameters; remembers the effective values
// (defaults included) for the report.
class Params {
public:
  Params(const ExperimentConfig& cfg, const ExperimentInfo& info) : raw_(cfg.params) {
    for (const auto& [k, v] : raw_)
      if (std::find(info.keys.begin(), info.keys.end(), k) == info.keys.end())
        throw Error(ErrorKind::InvalidConfig, "experiment " + info.id + " has no parameter '" + k + "'");
  }

  double number(const std::string& key, double def) {
    const double v = raw_.count(key) ? parse_double(key, raw_.at(key)) : def;
    effective_[key] = fmt(v);
    return v;
  }
  int integer(const std::string& key, int def) {
    const int v = raw_.count(key) ? parse_int(key, raw_.at(key)) : def;
    effective_[key] = std::to_string(v);
    return v;
  }
  std::vector<double> numbers(const std::string& key, std::vector<double> def) {
    if (raw_.count(key)) {
      def.clear();
      for (const auto& t : split(raw_.at(key))) def.push_back(parse_double(key, t));
    }
    if (def.empty()) throw Error(ErrorKind::InvalidConfig, key + " must not be empty");
    effective_[key] = join(def);
    return def;
  }
  std::vector<int> integers(const std::string& key, std::vector<int> def) {
    if (raw_.count(key)) {
      def.clear();
      for (const auto& t : split(raw_.at(key))) def.push_back(parse_int(key, t));
    }
    if (def.empty()) throw Error(ErrorKind::InvalidConfig, key + " must not be empty");
    effective_[key] = join(def);
    return def;
  }
  std::string text(const std::string& key, const std::string& def) {
    const std::string v = raw_.count(key) ? raw_.at(key) : def;
    effective_[key] = v;
    return v;
  }
  const std::map<std::string, std::string>& effective() const { return effective_; }

private:
  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ',' || c == ' ') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  }
  static double parse_double(const std::string& key, const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidConfig, key + ": not a number: '" + s + "'");
  }
  static int parse_int(const std::string& key, const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidConfig, key + ": not an integer: '" + s + "'");
  }

  std::map<std::string, std::string> raw_;
  std::map<std::string, std::string> effective_;
};

struct Ctx {
  const ExperimentConfig& cfg;
  Params params;
  Report& report;
  bool strict;

  int samples() { return params.integer("m", strict ? 800 : 400); }
  int rays() { return params.integer("rays", strict ? 512 : 256); }

  void check_le(const std::string& name, double value, double limit) {
    report.checks.push_back({name, value <= limit, value, limit, "<="});
  }
  void check_ge(const std::string& name, double value, double limit) {
    report.checks.push_back({name, value >= limit, value, limit, ">="});
  }
  void check(const std::string& name, bool ok) { report.checks.push_back({name, ok, std::nullopt, std::nullopt, ""}); }
  // wall-clock limit: pass/fail goes in the report, the seconds only in the timings
  void check_runtime(const std::string& cell, double seconds, double limit) {
    report.timings.push_back({cell, seconds});
    report.checks.push_back({"runtime " + cell + " (s)", seconds < limit, std::nullopt, limit, "<"});
  }
  SetDescriptor set_or(const SetDescriptor& def) {
    const SetDescriptor s = cfg.set_path ? load_set(*cfg.set_path) : def;
    report.set = describe(s);
    return s;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Runs fn(i) for i < count on up to `threads` workers; results land in
// caller-owned slots, so assembly order never depends on scheduling.
void run_cells(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

IntPolynomial random_poly(std::mt19937_64& rng, int deg_min, int deg_max, int bound) {
  std::uniform_int_distribution<int> deg(deg_min, deg_max);
  std::uniform_int_distribution<int> coef(-bound, bound);
  const int d = deg(rng);
  std::vector<Integer> c(static_cast<std::size_t>(d) + 1);
  for (auto& x : c) x = coef(rng);
  while (c.back() == 0) c.back() = coef(rng);
  return IntPolynomial(std::move(c));
}

std::vector<IntPolynomial> family_for(Ctx& ctx, const std::string& def_kind, int def_max) {
  std::string kind = ctx.cfg.family;
  if (kind.empty()) kind = ctx.cfg.params.count("family_dir") ? "files" : def_kind;
  ctx.report.parameters["family"] = kind;
  std::vector<IntPolynomial> out;
  if (kind == "files") {
    const std::string dir = ctx.params.text("family_dir", "");
    if (dir.empty()) throw Error(ErrorKind::InvalidConfig, "family = files needs family_dir");
    return load_family(dir);
  }
  const int first = ctx.params.integer("family_min", 1);
  const int last = ctx.params.integer("family_max", def_max);
  if (first < 1 || last < first) throw Error(ErrorKind::InvalidConfig, "need 1 <= family_min <= family_max");
  for (int n = first; n <= last; ++n) {
    if (kind == "chebyshev") out.push_back(monic_chebyshev(n));
    else if (kind == "cyclotomic") out.push_back(cyclotomic(n));
    else throw Error(ErrorKind::InvalidConfig, "family '" + kind + "' is not supported here");
  }
  return out;
}

// ---------------------------------------------------------------------------

void capacity_closed_form_exp(Ctx& ctx) {
  std::vector<std::pair<std::string, SetDescriptor>> sets;
  if (ctx.cfg.set_path) {
    const SetDescriptor s = ctx.set_or({});
    sets.emplace_back(describe(s), s);
  } else {
    ctx.report.set = "builtin";
    for (const auto& s : {make_interval(-1, 1), make_circle(0, 1), make_circle(0, 2), make_circle(Complex(1, 0), 0.5),
                          make_julia(IntPolynomial{-1, 0, 1}), make_julia(IntPolynomial{0, 0, 1}),
                          make_julia(IntPolynomial{-2, 0, 1}), make_julia(IntPolynomial{0, -1, 0, 1})})
      sets.emplace_back(describe(s), s);
  }
  const int m = ctx.samples();
  const double tol = ctx.params.number("rel_tol", 0.01);
  const double limit = ctx.params.number("runtime_limit", 5.0);
  struct Cell {
    double exact, discrete, secs;
  };
  std::vector<Cell> cells(sets.size());
  run_cells(sets.size(), ctx.cfg.threads, [&](std::size_t i) {
    const auto t0 = Clock::now();
    const GreenModel model = make_green_model(sets[i].second, m, true);
    cells[i] = {capacity_closed_form(sets[i].second), model.capacity(), seconds_since(t0)};
  });
  Series s{"capacity", {"set_index", "exact", "discrete", "relative_error"}, {}};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const double err = std::abs(cells[i].discrete - cells[i].exact) / cells[i].exact;
    ctx.check_le("relative error " + sets[i].first, err, tol);
    ctx.check_runtime(sets[i].first, cells[i].secs, limit);
    s.rows.push_back({static_cast<double>(i), cells[i].exact, cells[i].discrete, err});
    ctx.report.details["set " + std::to_string(i)] = sets[i].first;
  }
  ctx.report.series.push_back(std::move(s));
}

void green_cross_exp(Ctx& ctx) {
  std::vector<SetDescriptor> sets;
  if (ctx.cfg.set_path) sets.push_back(ctx.set_or({}));
  else {
    ctx.report.set = "builtin";
    sets = {make_disk(0, 1), make_interval(-1, 1)};
  }
  const int m = ctx.samples();
  const int probes = ctx.params.integer("probes", 64);
  const double tol = ctx.params.number("tolerance", 1e-2);
  Series s{"green_error", {"set_index", "probe", "closed_form", "discrete"}, {}};
  std::vector<std::vector<std::vector<double>>> rows(sets.size());
  std::vector<double> sup(sets.size(), 0.0);
  run_cells(sets.size(), ctx.cfg.threads, [&](std::size_t i) {
    const GreenModel model = make_green_model(sets[i], m, true);
    const auto ring = probe_ring(sets[i], probes);
    for (std::size_t k = 0; k < ring.size(); ++k) {
      const double exact = green_closed_form(sets[i], ring[k]);
      const double approx = green_eval(model, ring[k]);
      sup[i] = std::max(sup[i], std::abs(exact - approx));
      rows[i].push_back({static_cast<double>(i), static_cast<double>(k), exact, approx});
    }
  });
  for (std::size_t i = 0; i < sets.size(); ++i) {
    ctx.check_le("sup |g_discrete - g_exact| on probe ring, " + describe(sets[i]), sup[i], tol);
    for (auto& r : rows[i]) s.rows.push_back(std::move(r));
  }
  if (!ctx.cfg.set_path) {
    const GreenModel interval = make_green_model(make_interval(-1, 1), m, true);
    const double g2 = green_eval(interval, 2.0);
    ctx.check_le("|g_[-1,1](2) - log(2+sqrt 3)|", std::abs(g2 - std::log(2.0 + std::sqrt(3.0))), tol);
  }
  ctx.report.series.push_back(std::move(s));
}

void transfinite_exp(Ctx& ctx) {
  const SetDescriptor set = ctx.set_or(make_interval(-1, 1));
  const std::vector<int> ns = ctx.params.integers("degrees", {4, 8, 16, 32, 64});
  const double target = ctx.params.number("target", 0.5);
  const double rel_tol = ctx.params.number("rel_tol", 0.05);
  const double limit = ctx.params.number("runtime_limit", 60.0);
  const auto t0 = Clock::now();
  std::vector<TransfiniteEstimate> est(ns.size());
  run_cells(ns.size(), ctx.cfg.threads, [&](std::size_t i) { est[i] = transfinite_diameter_estimate(set, ns[i], true); });
  const double secs = seconds_since(t0);

  Series s{"transfinite", {"n", "d_n", "leja_d_n", "target"}, {}};
  double worst_increase = -HUGE_VAL;
  double worst_exchange = HUGE_VAL;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    s.rows.push_back({static_cast<double>(ns[i]), est[i].d_n, est[i].leja_d_n, target});
    worst_exchange = std::min(worst_exchange, est[i].d_n - est[i].leja_d_n);
    if (i > 0) worst_increase = std::max(worst_increase, est[i].d_n - est[i - 1].d_n);
  }
  if (ns.size() > 1) ctx.check_le("max increase d_n - d_{n-1} over the n list", worst_increase, 0.0);
  ctx.check_ge("min d_n(refined) - d_n(leja)", worst_exchange, 0.0);
  const double last = est.back().d_n;
  ctx.check_le("|d_" + std::to_string(ns.back()) + " - target| / target", std::abs(last - target) / target, rel_tol);
  ctx.check_runtime("all degrees", secs, limit);
  ctx.report.series.push_back(std::move(s));
}

void resultant_duality_exp(Ctx& ctx) {
  ctx.report.set = "none";
  const int pairs = ctx.params.integer("pairs", 200);
  const int dmax = ctx.params.integer("degree_max", 8);
  const int bound = ctx.params.integer("coeff_bound", 50);
  const double tol = ctx.params.number("rel_tol", 1e-6);
  if (pairs < 1 || dmax < 1 || bound < 1) throw Error(ErrorKind::InvalidConfig, "pairs, degree_max and coeff_bound must be positive");
  std::mt19937_64 rng(ctx.cfg.seed);
  std::vector<std::pair<IntPolynomial, IntPolynomial>> input;
  int dependent = 0;
  while (static_cast<int>(input.size()) < pairs) {
    IntPolynomial p = random_poly(rng, 1, dmax, bound);
    IntPolynomial q = random_poly(rng, 1, dmax, bound);
    if (resultant(p, q) == 0) {
      ++dependent;
      continue;
    }
    input.emplace_back(std::move(p), std::move(q));
  }
  struct Cell {
    double floating, exact, rel;
    bool res_ge_one;
  };
  std::vector<Cell> cells(input.size());
  run_cells(input.size(), ctx.cfg.threads, [&](std::size_t i) {
    const auto& [p, q] = input[i];
    const RootSet rs = find_roots(p);
    double s = 0.0;
    for (const auto& a : rs.roots) s += std::log(magnitude(q.evaluate(ComplexDD(a))));
    const Integer res = resultant(q, p);
    const double exact = log_abs(res) - q.degree() * log_abs(p.leading());
    cells[i] = {s, exact, std::abs(s - exact) / std::max(1.0, std::abs(exact)), abs(res) >= 1};
  });
  Series s{"duality", {"pair", "root_sum", "resultant_side", "relative_error"}, {}};
  double worst = 0.0;
  bool all_ge_one = true;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    worst = std::max(worst, cells[i].rel);
    all_ge_one = all_ge_one && cells[i].res_ge_one;
    s.rows.push_back({static_cast<double>(i), cells[i].floating, cells[i].exact, cells[i].rel});
  }
  ctx.check_le("max relative disagreement", worst, tol);
  ctx.check("|Res| >= 1 on every coprime pair", all_ge_one);
  ctx.report.details["redrawn dependent pairs"] = std::to_string(dependent);
  ctx.report.series.push_back(std::move(s));
}

void height_identities_exp(Ctx& ctx) {
  ctx.report.set = "circle 0 0 1; interval -1 1; interval -2 2";
  const int inputs = ctx.params.integer("inputs", 40);
  const int pairs = ctx.params.integer("pairs", 100);
  const double id_tol = ctx.params.number("identity_tol", 1e-12);
  const double mult_tol = ctx.params.number("mult_tol", 1e-6);
  const double cheb_tol = ctx.params.number("chebyshev_tol", 1e-6);
  const int cheb_max = ctx.params.integer("chebyshev_max", 64);
  std::mt19937_64 rng(ctx.cfg.seed);

  const std::vector<GreenModel> models = {make_green_model(make_circle(0, 1)), make_green_model(make_interval(-1, 1))};

  std::vector<IntPolynomial> certified;
  while (static_cast<int>(certified.size()) < inputs) {
    IntPolynomial p = random_poly(rng, 2, 6, 20);
    if (irreducibility_certificate(p) == Irreducibility::Proven) certified.push_back(std::move(p));
  }
  std::vector<double> id_err(certified.size(), 0.0);
  run_cells(certified.size(), ctx.cfg.threads, [&](std::size_t i) {
    for (const auto& model : models) {
      const HeightReport hr = height_sigma(certified[i], model, false);
      const double lm = mahler_sigma(certified[i], model);
      id_err[i] = std::max(id_err[i], std::abs(hr.h_sigma - lm / hr.degree) / std::max(1.0, std::abs(hr.h_sigma)));
    }
  });
  ctx.check_le("max |h_Sigma - log M_Sigma / deg| (certified irreducible)", *std::max_element(id_err.begin(), id_err.end()), id_tol);

  std::vector<std::pair<IntPolynomial, IntPolynomial>> fp;
  for (int i = 0; i < pairs; ++i) {
    IntPolynomial a = random_poly(rng, 1, 6, 20);
    IntPolynomial b = random_poly(rng, 1, 6, 20);
    fp.emplace_back(std::move(a), std::move(b));
  }
  std::vector<double> mult(fp.size(), 0.0);
  run_cells(fp.size(), ctx.cfg.threads, [&](std::size_t i) {
    for (const auto& model : models) mult[i] = std::max(mult[i], mahler_multiplicativity_check({fp[i].first, fp[i].second}, model));
  });
  ctx.check_le("max Mahler multiplicativity residual", *std::max_element(mult.begin(), mult.end()), mult_tol);

  const GreenModel wide = make_green_model(make_interval(-2, 2));
  Series s{"chebyshev_height", {"n", "h_sigma"}, {}};
  std::vector<double> h(static_cast<std::size_t>(cheb_max));
  run_cells(h.size(), ctx.cfg.threads, [&](std::size_t i) { h[i] = height_sigma(monic_chebyshev(static_cast<int>(i) + 1), wide, false).h_sigma; });
  double worst = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    worst = std::max(worst, std::abs(h[i]));
    s.rows.push_back({static_cast<double>(i + 1), h[i]});
  }
  ctx.check_le("max |h_[-2,2](monic Chebyshev)|", worst, cheb_tol);
  ctx.report.series.push_back(std::move(s));
}

void schur_exp(Ctx& ctx) {
  const SetDescriptor set = ctx.set_or(make_interval(-1, 1));
  const int lo = ctx.params.integer("degree_min", 2);
  const int hi = ctx.params.integer("degree_max", 64);
  const double tol = ctx.params.number("tolerance", 1e-6);
  if (lo < 2 || hi < lo) throw Error(ErrorKind::InvalidConfig, "need 2 <= degree_min <= degree_max");
  const GreenModel model = make_green_model(set, ctx.samples());
  std::vector<IntPolynomial> family;
  for (int n = lo; n <= hi; ++n) family.push_back(chebyshev_T(n));
  const GrowthTable table = leading_growth_scan(family, model);
  const double cap = model.capacity();
  const double floor_lm = -0.5 * std::log(cap);  // (1/2) log(1/c)

  Series s{"schur", {"n", "lead_root", "predicted", "sqrt2", "log_mahler_per_degree"}, {}};
  double formula_err = 0.0, min_root = HUGE_VAL, min_lm = HUGE_VAL;
  bool flagged = false;
  for (const auto& r : table.rows) {
    const double predicted = std::pow(2.0, (r.degree - 1.0) / r.degree);
    formula_err = std::max(formula_err, std::abs(r.lead_root - predicted));
    min_root = std::min(min_root, r.lead_root);
    min_lm = std::min(min_lm, r.log_mahler_per_degree);
    flagged = flagged || r.flagged;
    s.rows.push_back({static_cast<double>(r.degree), r.lead_root, predicted, std::numbers::sqrt2, r.log_mahler_per_degree});
  }
  ctx.check_le("max ||lead|^{1/n} - 2^{(n-1)/n}|", formula_err, 1e-12);
  ctx.check_ge("min |lead|^{1/n}", min_root, std::numbers::sqrt2 - 1e-12);
  ctx.check_ge("min (1/n) log M_Sigma(T_n)", min_lm, floor_lm - tol);
  ctx.check("all root sets converged", !flagged);
  ctx.report.series.push_back(std::move(s));
}

struct LevelRun {
  ConstructionState state;
  double secs = 0.0;
};

std::vector<LevelRun> construct_levels(Ctx& ctx, const GreenModel& sigma, const std::vector<int>& levels) {
  ConstructionOptions opt;
  opt.samples = ctx.samples();
  opt.rays = ctx.rays();
  const double eps = ctx.params.number("eps", 1e-3);
  std::vector<LevelRun> out(levels.size());
  run_cells(levels.size(), ctx.cfg.threads, [&](std::size_t i) {
    const auto t0 = Clock::now();
    out[i].state = bisect_to_capacity_one(sigma, levels[i], eps, opt);
    out[i].secs = seconds_since(t0);
  });
  return out;
}

void mass_law_exp(Ctx& ctx) {
  const SetDescriptor set = ctx.set_or(make_disk(0, 0.5));
  const std::vector<int> levels = ctx.params.integers("levels", {2, 4, 6});
  const double mass_tol = ctx.params.number("mass_tol", 0.02);
  const double green_tol = ctx.params.number("green_tol", 0.02);
  const double limit = ctx.params.number("runtime_limit", 120.0);
  const GreenModel sigma = make_green_model(set, ctx.samples());
  const double target = sigma.robin_constant;  // log 1/c(Sigma)
  const auto runs = construct_levels(ctx, sigma, levels);
  Series s{"mass_law", {"n", "measured", "predicted", "gap", "green_integral", "theta"}, {}};
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const MassLaw law = mass_law_check(runs[i].state, sigma);
    const std::string n = "n=" + std::to_string(levels[i]);
    ctx.check_le("mass gap " + n, law.gap, mass_tol);
    ctx.check_le("|integral g dnu - log 1/c| " + n, std::abs(law.green_integral - target), green_tol);
    ctx.check_runtime(n, runs[i].secs, limit);
    s.rows.push_back({static_cast<double>(levels[i]), law.measured, law.predicted, law.gap, law.green_integral, runs[i].state.theta});
  }
  ctx.report.series.push_back(std::move(s));
}

void remark_exp(Ctx& ctx) {
  const SetDescriptor set = ctx.set_or(make_disk(0, 0.5));
  const std::vector<int> levels = ctx.params.integers("levels", {2, 4, 6});
  const double final_tol = ctx.params.number("final_tol", 0.05);
  const GreenModel sigma = make_green_model(set, ctx.samples());
  const auto runs = construct_levels(ctx, sigma, levels);
  std::vector<ConstructionState> states;
  for (const auto& r : runs) {
    states.push_back(r.state);
    ctx.report.timings.push_back({"n=" + std::to_string(r.state.level), r.secs});
  }
  const auto rows = remark_convergence_check(states, sigma, probe_ring(set, 64));
  Series s{"remark", {"n", "discrepancy", "arc_mass"}, {}};
  double worst_step = -HUGE_VAL;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s.rows.push_back({static_cast<double>(rows[i].level), rows[i].discrepancy, rows[i].arc_mass});
    if (i > 0) worst_step = std::max(worst_step, rows[i].discrepancy - rows[i - 1].discrepancy);
  }
  if (rows.size() > 1) ctx.check("discrepancy strictly decreasing over the levels", worst_step < 0.0);
  ctx.check_le("final discrepancy", rows.back().discrepancy, final_tol);
  ctx.report.series.push_back(std::move(s));
}

void limiting_exp(Ctx& ctx) {
  const SetDescriptor set = ctx.set_or(make_circle(0, 1));
  const IntPolynomial q = parse_polynomial(ctx.params.text("q", "-2 1"));
  const double tail_tol = ctx.params.number("tail_tol", 0.05);
  const double energy_tol = ctx.params.number("energy_tol", 0.05);
  const int energy_from = ctx.params.integer("energy_from", 100);
  const GreenModel model = make_green_model(set, ctx.samples());
  const auto polys = family_for(ctx, "cyclotomic", 200);
  const auto t0 = Clock::now();
  const auto family = make_family(polys, ctx.cfg.threads);
  ctx.report.timings.push_back({"roots", seconds_since(t0)});
  const LimitingReport rep = theorem_limiting_check(family, q, model);

  // Limit value: integral of log|Q| / deg Q against mu_Sigma.
  double target = log_abs(q.leading());
  for (const auto& b : find_roots(q).roots) target += green_eval(model, b) - model.robin_constant;
  target /= q.degree();

  Series s{"limiting", {"index", "degree", "lhs_resultant", "lhs_roots", "truncated_energy", "energy"}, {}};
  double min_lhs = HUGE_VAL, tail_dev = 0.0, energy_max = -HUGE_VAL;
  const std::size_t t_start = tail_start(rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    min_lhs = std::min(min_lhs, r.lhs_resultant - rep.rhs);
    if (i >= t_start) tail_dev = std::max(tail_dev, std::abs(r.lhs_resultant - target));
    if (static_cast<int>(i) + 1 >= energy_from) energy_max = std::max(energy_max, r.truncated_energy);
    s.rows.push_back({static_cast<double>(i + 1), static_cast<double>(r.degree), r.lhs_resultant, r.lhs_roots, r.truncated_energy, r.energy});
  }
  ctx.check_ge("min LHS - RHS over the family", min_lhs, 0.0);
  ctx.check_le("max tail |LHS - integral log|Q| dmu|", tail_dev, tail_tol);
  ctx.check_le("max truncated energy, index >= " + std::to_string(energy_from), energy_max, energy_tol);
  ctx.check_le("root/resultant path disagreement", rep.max_path_disagreement, 1e-6);
  ctx.report.details["rhs"] = fmt(report_round(rep.rhs));
  ctx.report.details["limit target"] = fmt(report_round(target));
  ctx.report.details["lead coefficients non-Cauchy"] = rep.lead_non_cauchy ? "true" : "false";
  ctx.report.series.push_back(std::move(s));

  std::vector<RootSet> roots;
  for (const auto& m : family) roots.push_back(m.roots);
  const double r0 = bounding_disk(set).radius + std::abs(bounding_disk(set).center) + 1.0;
  const EscapeEstimate esc = escape_rate_estimate(roots, model, {r0, 2 * r0, 4 * r0, 8 * r0});
  Series e{"escape_rate", {"radius", "value"}, {}};
  for (const auto& row : esc.rows) e.rows.push_back({row.radius, row.value});
  ctx.report.series.push_back(std::move(e));
}

void northcott_exp(Ctx& ctx) {
  const SetDescriptor set = ctx.set_or(make_interval(-1, 1));
  const int dmax = ctx.params.integer("degree_max", 3);
  const std::vector<int> bounds = ctx.params.integers("bounds", {50, 100});
  const GreenModel model = make_green_model(set, ctx.samples());
  const double threshold = ctx.params.number("threshold", 0.5 * std::log(1.0 / model.capacity()) - 0.05);
  const double limit = ctx.params.number("runtime_limit", 600.0);
  ScanOptions opt;
  opt.threads = ctx.cfg.threads;
  std::vector<ScanResult> results;
  const auto t0 = Clock::now();
  for (int b : bounds) results.push_back(northcott_scan(model, dmax, b, threshold, opt));
  ctx.check_runtime("all bounds", seconds_since(t0), limit);

  auto names = [](const ScanResult& r) {
    std::vector<std::string> v;
    for (const auto& h : r.hits) v.push_back(h.polynomial.to_string());
    return v;
  };
  bool same = true;
  for (std::size_t i = 1; i < results.size(); ++i) same = same && names(results[i]) == names(results[0]);
  ctx.check("hit list identical across coefficient bounds", same);
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::string list;
    for (const auto& n : names(results[i])) list += (list.empty() ? "" : "; ") + n;
    ctx.report.details["hits at bound " + std::to_string(bounds[i])] = list;
    ctx.report.details["enumerated at bound " + std::to_string(bounds[i])] = std::to_string(results[i].diagnostics.enumerated);
  }
  const double width = ctx.params.number("bin_width", 0.05);
  Series s{"height_histogram", {"h_sigma_bin", "count"}, {}};
  std::map<long long, int> bins;
  for (const auto& h : results.back().hits) ++bins[static_cast<long long>(std::floor(h.h_sigma / width + 1e-9))];
  for (const auto& [b, c] : bins) s.rows.push_back({static_cast<double>(b) * width, static_cast<double>(c)});
  ctx.report.series.push_back(std::move(s));
}

void pritsker_exp(Ctx& ctx) {
  const SetDescriptor set = ctx.set_or(make_interval(-2, 2));
  const int nmax = ctx.params.integer("degree_max", 64);
  const double R = ctx.params.number("radius", 3.0);
  const double c3_tol = ctx.params.number("c3_tol", 0.05);
  const double counter_R = ctx.params.number("counter_radius", 1.5);
  if (nmax < 2) throw Error(ErrorKind::InvalidConfig, "degree_max must be at least 2");
  const GreenModel model = make_green_model(set, ctx.samples());
  const auto polys = family_for(ctx, "chebyshev", nmax);
  const PritskerReport rep = pritsker_conditions(make_family(polys, ctx.cfg.threads), model, R);

  Series s{"pritsker", {"n", "c1", "c2", "c3"}, {}};
  double c2_dev = 0.0;
  for (const auto& r : rep.rows) {
    c2_dev = std::max(c2_dev, std::abs(r.c2 - 1.0));
    s.rows.push_back({static_cast<double>(r.degree), r.c1, r.c2, r.c3});
  }
  ctx.check_le("|c1 - 1| at the last member", std::abs(rep.rows.back().c1 - 1.0), 1e-9);
  ctx.check_le("max |c2 - 1|", c2_dev, 1e-12);
  ctx.check_le("c3 at the last member", rep.rows.back().c3, c3_tol);
  ctx.report.series.push_back(std::move(s));

  // x^n - 2^n on the unit circle: capacity 1, but every root has modulus 2.
  std::vector<IntPolynomial> counter;
  for (int n = 1; n <= nmax; ++n) counter.push_back(IntPolynomial::monomial(1, n) - IntPolynomial::constant(Integer(1) << n));
  const PritskerReport bad = pritsker_conditions(make_family(counter, ctx.cfg.threads), make_green_model(make_circle(0, 1)), counter_R);
  Series sb{"pritsker_counterexample", {"n", "c1", "c2", "c3"}, {}};
  double c2_two = 0.0, tail_gap = HUGE_VAL;
  for (std::size_t i = 0; i < bad.rows.size(); ++i) {
    const auto& r = bad.rows[i];
    c2_two = std::max(c2_two, std::abs(r.c2 - 2.0));
    if (i >= tail_start(bad.rows.size())) tail_gap = std::min(tail_gap, std::abs(r.c2 - 1.0));
    sb.rows.push_back({static_cast<double>(r.degree), r.c1, r.c2, r.c3});
  }
  ctx.check_le("counterexample max |c2 - 2|", c2_two, 1e-9);
  ctx.check_ge("counterexample tail min |c2 - 1| (condition fails)", tail_gap, 0.05);
  ctx.report.series.push_back(std::move(sb));
}

using Runner = void (*)(Ctx&);

struct Entry {
  ExperimentInfo info;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {{"capacity-closed-form", 1, "discrete capacity vs closed forms (interval, circles, monic Julia sets)",
        {"m", "rel_tol", "runtime_limit"}},
       capacity_closed_form_exp},
      {{"green-cross", 2, "discrete vs closed-form Green function on a probe ring; g_[-1,1](2)",
        {"m", "probes", "tolerance"}},
       green_cross_exp},
      {{"transfinite", 3, "Leja/Fekete d_n on [-1,1]: monotone, near 0.5, exchange never worse",
        {"degrees", "target", "rel_tol", "runtime_limit"}},
       transfinite_exp},
      {{"resultant-duality", 4, "root sums vs exact resultants on random coprime pairs",
        {"pairs", "degree_max", "coeff_bound", "rel_tol"}},
       resultant_duality_exp},
      {{"height-identities", 5, "h = log M / deg, Mahler multiplicativity, Chebyshev heights on [-2,2]",
        {"inputs", "pairs", "identity_tol", "mult_tol", "chebyshev_tol", "chebyshev_max"}},
       height_identities_exp},
      {{"schur", 6, "leading-coefficient growth of T_n against sqrt 2 and (1/2) log 2",
        {"m", "degree_min", "degree_max", "tolerance"}},
       schur_exp},
      {{"mass-law", 7, "capacity-one construction: mass on Sigma vs 1 + log c / n",
        {"m", "rays", "levels", "eps", "mass_tol", "green_tol", "runtime_limit"}},
       mass_law_exp},
      {{"limiting", 8, "limiting inequality and energy bound on a family (default cyclotomic, Q = x - 2)",
        {"m", "q", "tail_tol", "energy_tol", "energy_from", "family_min", "family_max", "family_dir"}},
       limiting_exp},
      {{"northcott", 9, "height scan hit list stable under larger coefficient bounds",
        {"m", "degree_max", "bounds", "threshold", "runtime_limit", "bin_width"}},
       northcott_exp},
      {{"pritsker", 10, "Pritsker conditions on monic Chebyshev; x^n - 2^n counterexample",
        {"m", "degree_max", "radius", "c3_tol", "counter_radius", "family_min", "family_max", "family_dir"}},
       pritsker_exp},
      {{"remark", 11, "potential of renormalized nu_n on Sigma converges to the equilibrium potential",
        {"m", "rays", "levels", "eps", "final_tol"}},
       remark_exp},
  };
  return e;
}

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return report_round(v);
}

}  // namespace

bool Report::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(lineno) + ": empty key");
    try {
      if (key == "id") cfg.id = value;
      else if (key == "set") cfg.set_path = value;
      else if (key == "family") cfg.family = value;
      else if (key == "out") cfg.out = value;
      else if (key == "threads") cfg.threads = std::stoi(value);
      else if (key == "profile") cfg.profile = value;
      else if (key == "seed") cfg.seed = std::stoull(value);
      else cfg.params[key] = value;
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(lineno) + ": bad value for " + key);
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) { return parse_experiment_config(read_text(path)); }

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const ExperimentInfo& find_experiment(std::string_view id) {
  for (const auto& e : experiment_registry())
    if (e.id == id) return e;
  throw Error(ErrorKind::UnknownExperiment, "no experiment '" + std::string(id) + "'; see list-experiments");
}

Report run_experiment(const ExperimentConfig& config) {
  const ExperimentInfo& info = find_experiment(config.id);
  if (config.profile != "default" && config.profile != "strict")
    throw Error(ErrorKind::InvalidConfig, "tolerance profile must be default or strict");
  if (config.threads < 1) throw Error(ErrorKind::InvalidConfig, "threads must be positive");
  const auto runner = std::find_if(entries().begin(), entries().end(), [&](const Entry& e) { return e.info.id == info.id; })->run;

  Report report;
  report.id = info.id;
  report.criterion = info.criterion;
  Ctx ctx{config, Params(config, info), report, config.profile == "strict"};
  const auto t0 = Clock::now();
  try {
    runner(ctx);
  } catch (const Error& e) {
    throw Error(e.kind(), info.id + ": " + e.detail());
  }
  report.timings.push_back({"total", seconds_since(t0)});
  for (const auto& [k, v] : ctx.params.effective()) report.parameters[k] = v;
  report.parameters["profile"] = config.profile;
  report.parameters["seed"] = std::to_string(config.seed);
  return report;
}

std::string report_json(const Report& report) {
  ordered_json j;
  j["experiment"] = report.id;
  j["criterion"] = report.criterion;
  j["passed"] = report.passed();
  j["set"] = report.set;
  j["parameters"] = ordered_json::object();
  for (const auto& [k, v] : report.parameters) j["parameters"][k] = v;
  j["checks"] = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    if (c.value) cj["value"] = number(*c.value);
    if (c.limit) cj["limit"] = number(*c.limit);
    if (!c.relation.empty()) cj["relation"] = c.relation;
    j["checks"].push_back(std::move(cj));
  }
  j["details"] = ordered_json::object();
  for (const auto& [k, v] : report.details) j["details"][k] = v;
  j["series"] = ordered_json::array();
  for (const auto& s : report.series) {
    ordered_json sj;
    sj["name"] = s.name;
    sj["columns"] = s.columns;
    sj["rows"] = ordered_json::array();
    for (const auto& r : s.rows) {
      ordered_json row = ordered_json::array();
      for (double v : r) row.push_back(number(v));
      sj["rows"].push_back(std::move(row));
    }
    j["series"].push_back(std::move(sj));
  }
  return j.dump(2) + "\n";
}

std::string timings_json(const Report& report) {
  ordered_json j;
  j["experiment"] = report.id;
  j["seconds"] = ordered_json::object();
  for (const auto& t : report.timings) j["seconds"][t.cell] = t.seconds;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_plot_series(const Report& report, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& s : report.series) {
    std::string text;
    for (std::size_t i = 0; i < s.columns.size(); ++i) text += (i ? "," : "") + s.columns[i];
    text += '\n';
    for (const auto& r : s.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) text += (i ? "," : "") + fmt(report_round(r[i]));
      text += '\n';
    }
    const auto path = dir / (report.id + "." + s.name + ".csv");
    write_text(path, text);
    out.push_back(path);
  }
  return out;
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  write_text(dir / (report.id + ".json"), report_json(report));
  write_text(dir / (report.id + ".timings.json"), timings_json(report));
  emit_plot_series(report, dir);
}

}  // namespace capheight
