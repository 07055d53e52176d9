#include "pmelab/experiment.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "pmelab/barenblatt.hpp"
#include "pmelab/errors.hpp"
#include "pmelab/exponents.hpp"
#include "pmelab/svgplot.hpp"
#include "pmelab/version.hpp"

namespace pmelab {

namespace {

using nlohmann::json;

double clamp_unit_open(double a) { return std::clamp(a, 1e-6, 1.0 - 1e-9); }

std::vector<double> point_list(const json& j, const char* key, int d, double dflt = 0.0) {
  std::vector<double> r(static_cast<size_t>(d), dflt);
  if (!j.contains(key)) return r;
  if (j.at(key).is_number()) {
    r.assign(static_cast<size_t>(d), j.at(key).get<double>());
    return r;
  }
  const auto v = j.at(key).get<std::vector<double>>();
  if (static_cast<int>(v.size()) != d)
    throw std::domain_error(std::string("config: '") + key + "' must have d entries");
  return v;
}

}  // namespace

std::uint64_t config_hash(const json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash_hex(const json& config) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "fnv1a:%016" PRIx64, config_hash(config));
  return buf;
}

ExperimentConfig parse_experiment(const json& j) {
  ExperimentConfig cfg;
  cfg.raw = j;
  if (!j.is_object()) throw std::domain_error("config: top level must be an object");

  cfg.m = j.value("m", 2.0);
  if (!(cfg.m >= 1.0) || !std::isfinite(cfg.m))
    throw std::domain_error("config: 'm' must satisfy m >= 1");

  if (!j.contains("grid")) throw std::domain_error("config: missing 'grid'");
  const json& jg = j.at("grid");
  Grid& g = cfg.grid;
  g.d = j.value("d", 1);
  g.n = jg.value("n", 0);
  const auto xlo = point_list(jg, "xlo", g.d, -1.0);
  const auto xhi = point_list(jg, "xhi", g.d, 1.0);
  for (int k = 0; k < g.d; ++k) {
    if (!(xhi[k] > xlo[k]))
      throw std::domain_error("config: grid box must satisfy xhi > xlo");
    g.xlo[k] = xlo[k];
  }
  const double extent = xhi[0] - xlo[0];
  for (int k = 1; k < g.d; ++k)
    if (std::abs((xhi[k] - xlo[k]) - extent) > 1e-12 * extent)
      throw std::domain_error("config: grid box must be square (equal extent per axis)");
  if (g.n < 2) throw std::domain_error("config: grid.n must be at least 2");
  g.h = extent / g.n;
  g.t0 = jg.value("t0", 0.0);
  g.T = jg.value("T", 1.0);
  g.dt = jg.value("dt", 0.0);
  g.slices = jg.value("slices", 65);
  g.validate();

  const json jinit = j.value("initial", json{{"kind", "barenblatt"}});
  cfg.initial_kind = jinit.value("kind", "barenblatt");
  cfg.initial_params = jinit;
  const json jsrc = j.value("source", json{{"kind", "none"}});
  cfg.source_kind = jsrc.value("kind", "none");
  cfg.source_params = jsrc;
  cfg.boundary = j.value("boundary", "dirichlet0");
  if (cfg.boundary != "dirichlet0" && cfg.boundary != "periodic" && cfg.boundary != "exact")
    throw std::domain_error("config: boundary must be dirichlet0, periodic or exact");

  cfg.has_pq = j.contains("p") || j.contains("q");
  if (cfg.has_pq) {
    if (!(j.contains("p") && j.contains("q")))
      throw std::domain_error("config: provide both 'p' and 'q' or neither");
    cfg.p = j.at("p").get<double>();
    cfg.q = j.at("q").get<double>();
    if (!(cfg.p >= 1.0) || !(cfg.q >= 1.0))
      throw std::domain_error("config: p and q must be >= 1");
  }

  cfg.alpha = j.value("alpha", 0.6);
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw std::domain_error("config: 'alpha' must lie in (0,1)");

  if (j.contains("probes")) {
    const json& jp = j.at("probes");
    cfg.auto_probes = jp.value("auto", 0);
    cfg.seed = jp.value("seed", 1ULL);
    if (jp.contains("points")) {
      for (const auto& pt : jp.at("points")) {
        const auto v = pt.get<std::vector<double>>();
        if (static_cast<int>(v.size()) != g.d + 1)
          throw std::domain_error("config: probe points need d coordinates plus a time");
        ZeroPoint zp;
        for (int k = 0; k < g.d; ++k) zp.x[k] = v[k];
        zp.t = v[g.d];
        cfg.probe_points.push_back(zp);
      }
    }
  }
  cfg.tol_zero = j.value("tol_zero", -1.0);

  if (j.contains("radii")) {
    const json& jr = j.at("radii");
    cfg.radii_min = jr.value("min", 0.0);
    cfg.radii_max = jr.value("max", 0.0);
    cfg.radii_count = jr.value("count", 8);
  }
  if (cfg.radii_count < 4)
    throw std::domain_error("config: radii.count must be at least 4");

  if (j.contains("cascade")) {
    cfg.cascade_levels = j.at("cascade").value("levels", 0);
    cfg.cascade_rho = j.at("cascade").value("rho", 0.0);
    if (cfg.cascade_rho != 0.0 && !(cfg.cascade_rho > 0.0 && cfg.cascade_rho < 0.5))
      throw std::domain_error("config: cascade.rho must lie in (0, 1/2)");
  }
  cfg.two_sided_time = j.value("two_sided_time", true);
  cfg.out_prefix = j.value("out", "pmelab_run");
  return cfg;
}

PMEProblem build_problem(const ExperimentConfig& cfg) {
  PMEProblem prob;
  prob.m = cfg.m;
  const json& ip = cfg.initial_params;
  const int d = cfg.grid.d;

  std::shared_ptr<BarenblattSolution> bb;
  if (cfg.initial_kind == "barenblatt") {
    if (!(cfg.m > 1.0))
      throw std::domain_error("config: barenblatt initial data needs m > 1");
    if (!(cfg.grid.t0 > 0.0))
      throw std::domain_error("config: barenblatt initial data needs t0 > 0");
    bb = std::make_shared<BarenblattSolution>(cfg.m, d, ip.value("M", 1.0));
    const double t0 = cfg.grid.t0;
    prob.initial = [bb, t0](const Point& x) { return (*bb)(x, t0); };
  } else if (cfg.initial_kind == "gaussian") {
    const double A = ip.value("amplitude", 1.0);
    const double w = ip.value("width", 0.5);
    if (!(w > 0.0)) throw std::domain_error("config: initial.width must be positive");
    const auto c = point_list(ip, "center", d);
    prob.initial = [A, w, c, d](const Point& x) {
      double r2 = 0.0;
      for (int k = 0; k < d; ++k) r2 += (x[k] - c[k]) * (x[k] - c[k]);
      return A * std::exp(-r2 / (2.0 * w * w));
    };
  } else if (cfg.initial_kind == "bump") {
    const double A = ip.value("amplitude", 1.0);
    const double w = ip.value("width", 0.5);
    if (!(w > 0.0)) throw std::domain_error("config: initial.width must be positive");
    const auto c = point_list(ip, "center", d);
    prob.initial = [A, w, c, d](const Point& x) {
      double r2 = 0.0;
      for (int k = 0; k < d; ++k) r2 += (x[k] - c[k]) * (x[k] - c[k]);
      const double s2 = r2 / (w * w);
      return s2 >= 1.0 ? 0.0 : A * std::exp(1.0 - 1.0 / (1.0 - s2));
    };
  } else if (cfg.initial_kind == "constant") {
    const double v = ip.value("value", 0.0);
    prob.initial = [v](const Point&) { return v; };
  } else {
    throw std::domain_error("config: unknown initial kind '" + cfg.initial_kind + "'");
  }

  const json& sp = cfg.source_params;
  if (cfg.source_kind == "none") {
    // homogeneous
  } else if (cfg.source_kind == "constant") {
    const double v = sp.value("value", 0.0);
    prob.source = [v](const Point&, double) { return v; };
  } else if (cfg.source_kind == "gaussian") {
    const double A = sp.value("amplitude", 1.0);
    const double w = sp.value("width", 0.5);
    if (!(w > 0.0)) throw std::domain_error("config: source.width must be positive");
    const auto c = point_list(sp, "center", d);
    prob.source = [A, w, c, d](const Point& x, double) {
      double r2 = 0.0;
      for (int k = 0; k < d; ++k) r2 += (x[k] - c[k]) * (x[k] - c[k]);
      return A * std::exp(-r2 / (2.0 * w * w));
    };
  } else {
    throw std::domain_error("config: unknown source kind '" + cfg.source_kind + "'");
  }

  if (cfg.boundary == "periodic") {
    prob.boundary.kind = BoundaryKind::Periodic;
  } else if (cfg.boundary == "exact") {
    if (!bb)
      throw std::domain_error("config: boundary 'exact' requires barenblatt initial data");
    prob.boundary.kind = BoundaryKind::DirichletOracle;
    prob.boundary.oracle = [bb](const Point& x, double t) { return (*bb)(x, t); };
  } else {
    prob.boundary.kind = BoundaryKind::DirichletZero;
  }
  return prob;
}

// ---- run -------------------------------------------------------------------

namespace {

json to_json_series(const FitSeries& s) {
  return json{{"radii", s.radii},     {"values", s.values}, {"slope", s.slope},
              {"intercept", s.intercept}, {"used", s.used},     {"degenerate", s.degenerate}};
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> r(count);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < count; ++i)
    r[i] = std::pow(10.0, llo + (lhi - llo) * i / (count - 1));
  return r;
}

/* Radii for one probe: honor config overrides, otherwise fill the probe's
 * spatial/temporal budget; empty + reason when 1.5 decades do not fit. */
std::vector<double> probe_radii(const Probe& pr, const ExperimentConfig& cfg,
                                double sigma, std::string* reason) {
  double rmax = cfg.radii_max > 0.0 ? cfg.radii_max : 0.98 * pr.max_r;
  if (pr.max_back > 0.0) rmax = std::min(rmax, std::pow(0.98 * pr.max_back, 1.0 / sigma));
  if (cfg.two_sided_time && pr.max_fwd > 0.0)
    rmax = std::min(rmax, std::pow(0.98 * pr.max_fwd, 1.0 / sigma));
  double rmin = cfg.radii_min > 0.0 ? cfg.radii_min : rmax / std::pow(10.0, 1.6);
  if (pr.h_space > 0.0) rmin = std::max(rmin, 0.5 * pr.h_space);
  if (!(rmax > 0.0) || !(rmin > 0.0) || std::log10(rmax / rmin) < 1.5) {
    *reason = "probe domain cannot host radii spanning 1.5 decades";
    return {};
  }
  return log_spaced(rmin, rmax, cfg.radii_count);
}

void write_probe_csv(const std::string& path, const ExponentReport& rep) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path);
  os << "r,osc_space,window,osc_time,osc_cylinder\n";
  char buf[512];
  for (size_t i = 0; i < rep.space.radii.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  rep.space.radii[i], rep.space.values[i], rep.time.radii[i],
                  rep.time.values[i], rep.cylinder.values[i]);
    os << buf;
  }
  if (!os) throw io_error("write failed: " + path);
}

void write_probe_svg(const std::string& path, const ExponentReport& rep) {
  std::vector<PlotSeries> series;
  series.push_back({"spatial osc", rep.space.radii, rep.space.values, "#1f77b4", true, true});
  series.push_back({"cylinder osc", rep.cylinder.radii, rep.cylinder.values, "#2ca02c", true, true});
  series.push_back({"temporal osc", rep.time.radii, rep.time.values, "#d62728", true, true});
  if (!rep.space.degenerate) {
    PlotSeries fitline;
    fitline.label = "fit slope";
    fitline.color = "#888888";
    fitline.markers = false;
    for (double r : {rep.space.radii.front(), rep.space.radii.back()}) {
      fitline.x.push_back(r);
      fitline.y.push_back(std::exp(rep.space.intercept) * std::pow(r, rep.space.slope));
    }
    series.push_back(fitline);
  }
  write_loglog_svg(path, "oscillation decay", "radius / window", "oscillation", series);
}

}  // namespace

json to_json(const ExponentReport& rep) {
  return json{{"space", to_json_series(rep.space)},
              {"time", to_json_series(rep.time)},
              {"cylinder", to_json_series(rep.cylinder)},
              {"sigma", rep.sigma},
              {"two_sided_time", rep.two_sided_time},
              {"alpha_hat_space", rep.alpha_hat_space},
              {"alpha_hat_time", rep.alpha_hat_time},
              {"raw_slope_space", rep.raw_slope_space},
              {"theta_time", rep.theta_time},
              {"c_measured", rep.c_measured},
              {"noise_floor", rep.noise_floor},
              {"u0", rep.u0}};
}

json to_json(const CascadeReport& rep) {
  json levels = json::array();
  for (const auto& L : rep.levels) {
    const char* v = L.verdict == LevelVerdict::Pass     ? "pass"
                    : L.verdict == LevelVerdict::Fail   ? "fail"
                                                        : "unresolved";
    levels.push_back(json{{"level", L.level},
                          {"r", L.r},
                          {"t_extent", L.t_extent},
                          {"sup", L.sup},
                          {"bound", L.bound},
                          {"verdict", v}});
  }
  return json{{"rho", rep.rho},       {"alpha", rep.alpha},
              {"sigma", rep.sigma},   {"two_sided", rep.two_sided},
              {"levels", levels},     {"resolved", rep.resolved},
              {"first_fail", rep.first_fail}, {"pass", rep.pass()}};
}

json probe_report(const Field& u, const ExperimentConfig& cfg) {
  json out;
  const ZeroSet zs = detect_zero_set(u, cfg.tol_zero);
  out["zero_set"] = {{"tol", zs.tol}, {"count", zs.points.size()}};

  // assemble probe points: explicit ones first, then seeded draws from the
  // middle-to-late zero set (both time budgets nonempty there)
  const double t_first = u.times().front();
  const double t_last = u.times().back();
  std::vector<ZeroPoint> probes = cfg.probe_points;
  if (cfg.auto_probes > 0 && !zs.points.empty()) {
    const double tlo = t_first + 0.4 * (t_last - t_first);
    const double thi = t_first + 0.9 * (t_last - t_first);
    std::vector<size_t> candidates;
    for (size_t i = 0; i < zs.points.size(); ++i)
      if (zs.points[i].t >= tlo && zs.points[i].t <= thi) candidates.push_back(i);
    std::mt19937_64 rng(cfg.seed);
    for (int k = 0; k < cfg.auto_probes && !candidates.empty(); ++k) {
      std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
      const size_t at = pick(rng);
      probes.push_back(zs.points[candidates[at]]);
      candidates.erase(candidates.begin() + static_cast<long>(at));
    }
  }

  json jprobes = json::array();
  std::vector<std::string> csvs, svgs;
  for (size_t k = 0; k < probes.size(); ++k) {
    const ZeroPoint& zp = probes[k];
    json jp;
    jp["x"] = std::vector<double>(zp.x.begin(), zp.x.begin() + cfg.grid.d);
    jp["t"] = zp.t;
    try {
      const Probe pr = make_probe(u, zp.x, zp.t);
      const double sigma0 = sigma_of(cfg.m, clamp_unit_open(cfg.alpha));
      std::string reason;
      const auto radii = probe_radii(pr, cfg, sigma0, &reason);
      if (radii.empty()) {
        jp["skipped"] = reason;
        jprobes.push_back(jp);
        continue;
      }
      // two passes: fit with the target alpha's sigma, then refit with the
      // measured one (on radii refilled for the new window shape; if those
      // no longer span 1.5 decades the first fit stands)
      const auto first = estimate_exponent(pr, radii, sigma0, cfg.two_sided_time);
      double alpha_used = std::isnan(first.alpha_hat_space)
                              ? cfg.alpha
                              : clamp_unit_open(first.alpha_hat_space);
      const double sigma1 = sigma_of(cfg.m, alpha_used);
      ExponentReport fit = first;
      if (sigma1 != sigma0) {
        std::string reason1;
        const auto radii1 = probe_radii(pr, cfg, sigma1, &reason1);
        if (!radii1.empty())
          fit = estimate_exponent(pr, radii1, sigma1, cfg.two_sided_time);
      }
      jp["fit"] = to_json(fit);
      jp["alpha_used"] = alpha_used;

      if (cfg.cascade_levels > 0) {
        const double c_eff = std::max(1.0, fit.c_measured);
        const double rho = cfg.cascade_rho > 0.0
                               ? cfg.cascade_rho
                               : universal_rho_delta(c_eff, alpha_used).rho;
        jp["c_effective"] = c_eff;
        jp["cascade"] = to_json(cascade_check(pr, rho, alpha_used, fit.sigma,
                                              cfg.cascade_levels, false));
      }

      const std::string base = cfg.out_prefix + "_probe" + std::to_string(k);
      write_probe_csv(base + ".csv", fit);
      write_probe_svg(base + ".svg", fit);
      csvs.push_back(base + ".csv");
      svgs.push_back(base + ".svg");
      jp["csv"] = base + ".csv";
      jp["svg"] = base + ".svg";
    } catch (const std::domain_error& e) {
      jp["error"] = e.what();
    }
    jprobes.push_back(jp);
  }
  out["probes"] = jprobes;
  out["csv"] = csvs;
  out["svg"] = svgs;
  return out;
}

json run_experiment(const ExperimentConfig& cfg) {
  json report;
  report["tool"] = {{"name", "pmelab"}, {"version", kVersion}};
  report["config"] = cfg.raw;
  report["config_hash"] = config_hash_hex(cfg.raw);

  // integrability gate
  json gate;
  if (cfg.has_pq && cfg.m > 1.0 && cfg.m < 2.0) {
    const auto rep = check_admissibility(cfg.p, cfg.q, cfg.m, cfg.grid.d);
    gate = {{"applicable", true},
            {"admissible", rep.admissible},
            {"p_min", rep.p_min},
            {"q_min", rep.q_min}};
    if (!rep.admissible)
      throw std::domain_error("config: (p,q) fail the integrability gate: " + rep.reason);
  } else {
    gate = {{"applicable", false},
            {"note", cfg.has_pq ? "gate stated for m in (1,2) only"
                                : "no (p,q) supplied"}};
  }
  report["gate"] = gate;

  const PMEProblem prob = build_problem(cfg);
  const SolveResult sr = solve(prob, cfg.grid);
  report["solve"] = {{"steps", sr.steps},
                     {"dt_min", sr.dt_min},
                     {"dt_max", sr.dt_max},
                     {"mass_initial", sr.field.slice_mass(0)},
                     {"mass_final", sr.field.slice_mass(sr.field.slice_count() - 1)},
                     {"min", sr.field.min_value()},
                     {"max", sr.field.max_value()}};

  const std::filesystem::path prefix(cfg.out_prefix);
  if (prefix.has_parent_path())
    std::filesystem::create_directories(prefix.parent_path());
  const std::string snap_path = cfg.out_prefix + "_solution.pmes";
  write_snapshot({sr.field, cfg.m}, snap_path);
  json outputs;
  outputs["snapshot"] = snap_path;

  json probing = probe_report(sr.field, cfg);
  report["zero_set"] = probing["zero_set"];
  report["probes"] = probing["probes"];
  outputs["csv"] = probing["csv"];
  outputs["svg"] = probing["svg"];

  const std::string report_path = cfg.out_prefix + "_report.json";
  outputs["report"] = report_path;
  report["outputs"] = outputs;
  std::ofstream os(report_path);
  if (!os) throw io_error("cannot open for writing: " + report_path);
  os << report.dump(2) << '\n';
  if (!os) throw io_error("write failed: " + report_path);
  return report;
}

}  // namespace pmelab
