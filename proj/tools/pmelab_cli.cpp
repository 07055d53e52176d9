#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmelab/barenblatt.hpp"
#include "pmelab/errors.hpp"
#include "pmelab/experiment.hpp"
#include "pmelab/exponents.hpp"
#include "pmelab/norms.hpp"
#include "pmelab/scaling.hpp"
#include "pmelab/solver.hpp"
#include "pmelab/version.hpp"

using nlohmann::json;
using namespace pmelab;

namespace {

json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open config: " + path);
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw std::domain_error("config " + path + " is not valid JSON: " + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

Point parse_point(const std::vector<double>& v, int d, const char* what) {
  if (static_cast<int>(v.size()) != d)
    throw std::domain_error(std::string(what) + ": expected " + std::to_string(d) +
                            " coordinates");
  Point p{0.0, 0.0};
  for (int k = 0; k < d; ++k) p[k] = v[k];
  return p;
}

void ensure_parent_dir(const std::string& prefix) {
  const std::filesystem::path p(prefix);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the inhomogeneous porous medium equation"};
  app.require_subcommand(1);
  std::function<void()> action;

  // ---- exponents ----
  auto* sc_exp = app.add_subcommand("exponents", "scaling exponents, gates and zoom constants");
  struct {
    double m = 2.0;
    int d = 1;
    double alpha = -1.0, p = -1.0, q = -1.0, C = -1.0;
  } ex;
  sc_exp->add_option("--m", ex.m, "diffusion exponent")->required();
  sc_exp->add_option("--d", ex.d, "dimension");
  sc_exp->add_option("--alpha", ex.alpha, "Holder exponent in (0,1)");
  sc_exp->add_option("--p", ex.p, "spatial integrability");
  sc_exp->add_option("--q", ex.q, "temporal integrability");
  sc_exp->add_option("--C", ex.C, "approximation constant for the zoom step");
  sc_exp->callback([&] {
    action = [&] {
      json out{{"m", ex.m}, {"d", ex.d}};
      if (ex.m > 1.0) {
        const auto be = barenblatt_exponents(ex.m, ex.d);
        out["barenblatt"] = {{"alpha", be.alpha},
                             {"beta", be.beta},
                             {"curvature", barenblatt_curvature(ex.m, ex.d)}};
      }
      if (ex.alpha > 0.0) {
        out["alpha"] = ex.alpha;
        out["sigma"] = sigma_of(ex.m, ex.alpha);
        if (ex.p >= 1.0 && ex.q >= 1.0)
          out["source_transport_exponent"] =
              source_transport_exponent(ex.p, ex.q, ex.m, ex.d, ex.alpha);
      }
      if (ex.p >= 1.0 && ex.q >= 1.0) {
        const auto rep = check_admissibility(ex.p, ex.q, ex.m, ex.d);
        out["gate"] = {{"p", ex.p},
                       {"q", ex.q},
                       {"admissible", rep.admissible},
                       {"p_min", rep.p_min},
                       {"q_min", rep.q_min}};
        if (!rep.admissible) out["gate"]["reason"] = rep.reason;
      }
      if (ex.C > 0.0 && ex.alpha > 0.0) {
        const auto uc = universal_rho_delta(ex.C, ex.alpha);
        out["universal"] = {{"C", uc.c_approx},
                            {"alpha", uc.alpha},
                            {"rho", uc.rho},
                            {"delta", uc.delta},
                            {"eps", uc.eps}};
      }
      emit(out);
    };
  });

  // ---- barenblatt ----
  auto* sc_bb = app.add_subcommand("barenblatt", "sample the exact self-similar solution");
  struct {
    double m = 2.0;
    int d = 1;
    double M = 1.0;
    std::vector<double> t{1.0};
    int n = 256;
    double xlo = -5.0, xhi = 5.0;
    std::string out;
  } bb;
  sc_bb->add_option("--m", bb.m)->required();
  sc_bb->add_option("--d", bb.d);
  sc_bb->add_option("--M", bb.M, "profile height parameter");
  sc_bb->add_option("--t", bb.t, "sample times (t > 0)");
  sc_bb->add_option("--n", bb.n, "cells per axis");
  sc_bb->add_option("--xlo", bb.xlo);
  sc_bb->add_option("--xhi", bb.xhi);
  sc_bb->add_option("--out", bb.out, "output prefix (.csv and .json)")->required();
  sc_bb->callback([&] {
    action = [&] {
      const BarenblattSolution sol(bb.m, bb.d, bb.M);
      if (!(bb.xhi > bb.xlo)) throw std::domain_error("barenblatt: xhi must exceed xlo");
      if (bb.n < 2) throw std::domain_error("barenblatt: n must be at least 2");
      ensure_parent_dir(bb.out);

      json header{{"m", bb.m},
                  {"d", bb.d},
                  {"M", bb.M},
                  {"k", sol.params().k},
                  {"alpha", sol.alpha()},
                  {"beta", sol.beta()},
                  {"time_exponent", sol.params().time_exponent},
                  {"mass", sol.mass()},
                  {"times", bb.t}};
      json radii = json::array();
      for (double t : bb.t) radii.push_back(sol.support_radius(t));
      header["support_radius"] = radii;

      std::ofstream csv(bb.out + ".csv");
      if (!csv) throw io_error("cannot open for writing: " + bb.out + ".csv");
      csv << (bb.d == 1 ? "x,t,u\n" : "x,y,t,u\n");
      const double h = (bb.xhi - bb.xlo) / bb.n;
      char buf[256];
      for (double t : bb.t) {
        if (!(t > 0.0)) throw std::domain_error("barenblatt: sample times must be positive");
        for (int c = 0; c < (bb.d == 1 ? bb.n : bb.n * bb.n); ++c) {
          Point x{0.0, 0.0};
          if (bb.d == 1) {
            x[0] = bb.xlo + (c + 0.5) * h;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x[0], t, sol(x, t));
          } else {
            x[0] = bb.xlo + (c % bb.n + 0.5) * h;
            x[1] = bb.xlo + (c / bb.n + 0.5) * h;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x[0], x[1], t,
                          sol(x, t));
          }
          csv << buf;
        }
      }
      if (!csv) throw io_error("write failed: " + bb.out + ".csv");
      std::ofstream js(bb.out + ".json");
      if (!js) throw io_error("cannot open for writing: " + bb.out + ".json");
      js << header.dump(2) << '\n';
      emit(header);
    };
  });

  // ---- norm ----
  auto* sc_norm = app.add_subcommand("norm", "mixed space-time norm of a snapshot");
  struct {
    std::string input;
    double p = 2.0, q = 2.0;
    std::vector<double> center;
    double radius = -1.0, tbegin = 0.0, tend = 0.0;
    bool have_window = false;
  } nm;
  sc_norm->add_option("--input", nm.input)->required();
  sc_norm->add_option("--p", nm.p, "spatial exponent (inf allowed)");
  sc_norm->add_option("--q", nm.q, "temporal exponent (inf allowed)");
  sc_norm->add_option("--center", nm.center, "ball center (defaults to box center)");
  sc_norm->add_option("--radius", nm.radius, "ball radius (defaults to inscribed)");
  auto* tb = sc_norm->add_option("--tbegin", nm.tbegin);
  auto* te = sc_norm->add_option("--tend", nm.tend);
  tb->needs(te);
  te->needs(tb);
  sc_norm->callback([&] {
    action = [&] {
      const Snapshot snap = read_snapshot(nm.input);
      Cylinder region = full_cylinder(snap.field);
      if (!nm.center.empty())
        region.center = parse_point(nm.center, snap.field.grid().d, "norm --center");
      if (nm.radius > 0.0) region.radius = nm.radius;
      if (tb->count() > 0) {
        region.t_begin = nm.tbegin;
        region.t_end = nm.tend;
      }
      const double value = lpq_norm(snap.field, nm.p, nm.q, region);
      emit(json{{"input", nm.input},
                {"p", nm.p},
                {"q", nm.q},
                {"region",
                 {{"center", std::vector<double>(region.center.begin(),
                                                 region.center.begin() + snap.field.grid().d)},
                  {"radius", region.radius},
                  {"t_begin", region.t_begin},
                  {"t_end", region.t_end}}},
                {"norm", value}});
    };
  });

  // ---- solve ----
  auto* sc_solve = app.add_subcommand("solve", "run the explicit scheme from a config");
  struct {
    std::string config;
    std::string out;
  } sv;
  sc_solve->add_option("--config", sv.config)->required();
  sc_solve->add_option("--out", sv.out, "override the config's output prefix");
  sc_solve->callback([&] {
    action = [&] {
      json raw = load_json_file(sv.config);
      if (!sv.out.empty()) raw["out"] = sv.out;
      const ExperimentConfig cfg = parse_experiment(raw);
      const PMEProblem prob = build_problem(cfg);
      const SolveResult sr = solve(prob, cfg.grid);
      ensure_parent_dir(cfg.out_prefix);
      const std::string snap_path = cfg.out_prefix + "_solution.pmes";
      write_snapshot({sr.field, cfg.m}, snap_path);
      emit(json{{"config_hash", config_hash_hex(raw)},
                {"snapshot", snap_path},
                {"steps", sr.steps},
                {"dt_min", sr.dt_min},
                {"dt_max", sr.dt_max},
                {"mass_initial", sr.field.slice_mass(0)},
                {"mass_final", sr.field.slice_mass(sr.field.slice_count() - 1)},
                {"min", sr.field.min_value()},
                {"max", sr.field.max_value()}});
    };
  });

  // ---- rescale ----
  auto* sc_rs = app.add_subcommand("rescale", "intrinsic zoom of a snapshot onto the unit cylinder");
  struct {
    std::string input, out;
    double a = 1.0, b = 1.0, t0 = 0.0;
    std::vector<double> x0;
    double p = -1.0, q = -1.0;
    bool t0_set = false;
  } rs;
  sc_rs->add_option("--input", rs.input)->required();
  sc_rs->add_option("--out", rs.out, "output snapshot path")->required();
  sc_rs->add_option("--a", rs.a, "spatial factor")->required();
  sc_rs->add_option("--b", rs.b, "temporal factor")->required();
  sc_rs->add_option("--x0", rs.x0, "zoom center (defaults to origin)");
  auto* t0opt = sc_rs->add_option("--t0", rs.t0, "zoom base time (defaults to final slice)");
  sc_rs->add_option("--p", rs.p, "report the norm transport factor for this p");
  sc_rs->add_option("--q", rs.q, "... and this q");
  sc_rs->callback([&] {
    action = [&] {
      const Snapshot snap = read_snapshot(rs.input);
      ScalingParams sp;
      sp.a = rs.a;
      sp.b = rs.b;
      sp.m = snap.m;
      if (!rs.x0.empty()) sp.x0 = parse_point(rs.x0, snap.field.grid().d, "rescale --x0");
      sp.t0 = t0opt->count() > 0 ? rs.t0 : snap.field.times().back();
      const Field v = rescale_field(snap.field, sp);
      ensure_parent_dir(rs.out);
      write_snapshot({v, snap.m}, rs.out);
      json out{{"input", rs.input},
               {"output", rs.out},
               {"a", sp.a},
               {"b", sp.b},
               {"t0", sp.t0},
               {"m", snap.m},
               {"gamma", gamma_of(sp.a, sp.b, snap.m)},
               {"source_factor", rescaled_source_factor(sp.a, sp.b, snap.m)}};
      if (rs.p >= 1.0 && rs.q >= 1.0)
        out["norm_transport_factor"] =
            norm_transport_factor(sp.a, sp.b, snap.m, rs.p, rs.q, snap.field.grid().d);
      emit(out);
    };
  });

  // ---- regularity ----
  auto* sc_reg = app.add_subcommand("regularity", "probe a snapshot along its zero set");
  struct {
    std::string input, out = "pmelab_reg";
    std::vector<std::string> points;
    int auto_probes = 0;
    std::uint64_t seed = 1;
    double alpha = 0.6, tol_zero = -1.0, rho = 0.0;
    double rmin = 0.0, rmax = 0.0;
    int rcount = 8, levels = 0;
    bool one_sided = false;
  } rg;
  sc_reg->add_option("--input", rg.input)->required();
  sc_reg->add_option("--out", rg.out, "output prefix");
  sc_reg->add_option("--point", rg.points, "probe point 'x[,y],t' (repeatable)");
  sc_reg->add_option("--auto", rg.auto_probes, "number of seeded zero-set probes");
  sc_reg->add_option("--seed", rg.seed);
  sc_reg->add_option("--alpha", rg.alpha, "target Holder exponent");
  sc_reg->add_option("--tol-zero", rg.tol_zero, "zero-set threshold (default 1e-3 sup|u|)");
  sc_reg->add_option("--radii-min", rg.rmin);
  sc_reg->add_option("--radii-max", rg.rmax);
  sc_reg->add_option("--radii-count", rg.rcount);
  sc_reg->add_option("--cascade-levels", rg.levels);
  sc_reg->add_option("--rho", rg.rho, "cascade zoom factor (default from measured constants)");
  sc_reg->add_flag("--one-sided-time", rg.one_sided, "backward-only temporal windows");
  sc_reg->callback([&] {
    action = [&] {
      const Snapshot snap = read_snapshot(rg.input);
      ExperimentConfig cfg;
      cfg.m = snap.m;
      cfg.grid = snap.field.grid();
      cfg.alpha = rg.alpha;
      cfg.auto_probes = rg.auto_probes;
      cfg.seed = rg.seed;
      cfg.tol_zero = rg.tol_zero;
      cfg.radii_min = rg.rmin;
      cfg.radii_max = rg.rmax;
      cfg.radii_count = rg.rcount;
      cfg.cascade_levels = rg.levels;
      cfg.cascade_rho = rg.rho;
      cfg.two_sided_time = !rg.one_sided;
      cfg.out_prefix = rg.out;
      for (const auto& s : rg.points) {
        std::vector<double> v;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
        if (static_cast<int>(v.size()) != cfg.grid.d + 1)
          throw std::domain_error("regularity --point: need d coordinates plus a time");
        ZeroPoint zp;
        for (int k = 0; k < cfg.grid.d; ++k) zp.x[k] = v[k];
        zp.t = v[cfg.grid.d];
        cfg.probe_points.push_back(zp);
      }
      if (cfg.probe_points.empty() && cfg.auto_probes == 0)
        throw std::domain_error("regularity: give --point or --auto");
      ensure_parent_dir(rg.out);
      json rep = probe_report(snap.field, cfg);
      rep["tool"] = {{"name", "pmelab"}, {"version", kVersion}};
      rep["input"] = rg.input;
      rep["m"] = snap.m;
      const std::string path = rg.out + "_regularity.json";
      std::ofstream os(path);
      if (!os) throw io_error("cannot open for writing: " + path);
      os << rep.dump(2) << '\n';
      if (!os) throw io_error("write failed: " + path);
      emit(rep);
    };
  });

  // ---- run ----
  auto* sc_run = app.add_subcommand("run", "full pipeline: solve, probe, report");
  struct {
    std::string config, out;
  } rn;
  sc_run->add_option("--config", rn.config)->required();
  sc_run->add_option("--out", rn.out, "override the config's output prefix");
  sc_run->callback([&] {
    action = [&] {
      json raw = load_json_file(rn.config);
      if (!rn.out.empty()) raw["out"] = rn.out;
      const ExperimentConfig cfg = parse_experiment(raw);
      emit(run_experiment(cfg));
    };
  });

  app.set_version_flag("--version", kVersion);

  try {
    app.parse(argc, argv);
    if (action) action();
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitValidation;
  } catch (const io_error& e) {
    emit(json{{"error", {{"kind", "io"}, {"message", e.what()}}}});
    return kExitIo;
  } catch (const numerical_error& e) {
    emit(json{{"error", {{"kind", "numerical"}, {"message", e.what()}}}});
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    emit(json{{"error", {{"kind", "validation"}, {"message", e.what()}}}});
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    emit(json{{"error", {{"kind", "validation"}, {"message", e.what()}}}});
    return kExitValidation;
  } catch (const std::exception& e) {
    emit(json{{"error", {{"kind", "internal"}, {"message", e.what()}}}});
    return 1;
  }
}
