#include "infometric/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "infometric/cp2_closed_form.hpp"
#include "infometric/instanton_models.hpp"
#include "infometric/kernels/kernels.hpp"
#include "infometric/warp_curvature.hpp"
#include "report.hpp"

namespace infometric::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Inputs of the individual subcommands.
struct BpstArgs {
  double lambda = 1.0;
  std::vector<double> center{0.0, 0.0, 0.0, 0.0};
};

struct Cp2Args {
  double t = 0.8;
  std::string t_grid;
};

struct CurvArgs {
  std::string preset = "info";
  std::string lambda_grid = "0.05:0.95:19";
  double scale = 1.0;
  double lambda_ref = kDefaultLambdaRef;
  bool vertex = false;
  bool collar = false;
};

struct GeodArgs {
  std::string preset = "hyp";
  std::vector<double> start{0.5, 0.0};
  std::vector<double> vel{0.0, 1.0};
  std::size_t steps = 10000;
  double dt = kDefaultGeodesicStep;
  std::size_t every = 100;
  double scale = 1.0;
};

struct ProbeArgs {
  std::string preset = "info";
  double lambda0 = 0.5;
  std::string eps_grid = "1e-2:1e-6:5";
  double scale = 1.0;
};

double parse_real(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

// "a:b:n" → n points from a to b, evenly spaced (or geometrically when
// geometric is set); "x,y,..." → the listed values.
std::vector<double> parse_grid(const std::string& text, bool geometric) {
  std::vector<double> out;
  if (text.find(':') == std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("grid must have the form a:b:n, got " + text);
  const double a = parse_real(parts[0]);
  const double b = parse_real(parts[1]);
  const long n = std::stol(parts[2]);
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  if (geometric && !(a > 0.0 && b > 0.0)) throw std::invalid_argument("geometric grid needs positive ends");
  for (long k = 0; k < n; ++k) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(geometric ? a * std::pow(b / a, frac) : a + (b - a) * frac);
  }
  return out;
}

QuadratureScheme scheme_from(const RunConfig& cfg) {
  QuadratureScheme s;
  s.radial_nodes = cfg.nodes;
  s.rel_tol = cfg.rel_tol;
  return s;
}

WarpedMetric metric_from(const std::string& preset, double scale) {
  if (preset == "info") return info_cp2_metric();
  if (preset == "hyp") return hyperbolic_metric(scale);
  if (preset == "collar") return collar_metric(scale);
  if (preset == "vertex") return vertex_metric();
  throw std::invalid_argument("unknown preset: " + preset);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Report run_bpst(const RunConfig& cfg, const BpstArgs& args) {
  if (args.center.size() != 4) throw std::invalid_argument("--center needs four values");
  const BpstParams p{args.lambda, {args.center[0], args.center[1], args.center[2], args.center[3]}};
  p.validate();
  const QuadratureScheme scheme = scheme_from(cfg);
  const DensityFamily family = bpst_family();
  const auto theta = p.theta();
  const GramMatrix g = info_gram(family, theta, scheme);
  const QuadResult mass = total_mass(family, theta, scheme);

  const double expected = kCollarConstant / (p.lambda * p.lambda);
  const double diag_tol = std::max(1e-7, 10.0 * cfg.rel_tol);
  const double off_tol = std::max(1e-9, 0.1 * cfg.rel_tol) * expected;
  const double mass_tol = std::max(1e-9, cfg.rel_tol);

  Report rep(Command::bpst);
  double max_diag = 0.0, max_off = 0.0;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) {
      const double want = i == j ? expected : 0.0;
      const double dev = std::abs(g(i, j) - want);
      if (i == j) max_diag = std::max(max_diag, dev / expected);
      else max_off = std::max(max_off, dev);
      rep.add_row({static_cast<long long>(i), static_cast<long long>(j), g(i, j), g.error(i, j), want, dev,
                   g.converged});
    }
  }
  const double mass_rel = rel(mass.value, kInstantonAction);
  rep.set("lambda", p.lambda);
  rep.set("center", format_short(p.center[0]) + "," + format_short(p.center[1]) + "," + format_short(p.center[2]) +
                        "," + format_short(p.center[3]));
  rep.set("collar_constant", kCollarConstant);
  rep.set("expected_diagonal", expected);
  rep.set("max_rel_err_diagonal", max_diag);
  rep.set("max_abs_offdiagonal", max_off);
  rep.set("min_eigenvalue", g.min_eigenvalue());
  rep.set("mass", mass.value);
  rep.set("mass_err", mass.err);
  rep.set("mass_rel_err", mass_rel);
  rep.set("converged", g.converged && mass.converged);
  rep.set("nodes", static_cast<long long>(g.nodes));
  rep.set("doublings", static_cast<long long>(g.doublings));
  rep.set("isa", std::string(kernels::isa_name(kernels::active().isa)));
  rep.check(g.converged && mass.converged && max_diag <= diag_tol && max_off <= off_tol && mass_rel <= mass_tol);
  return rep;
}

Report run_cp2(const RunConfig& cfg, const Cp2Args& args) {
  const std::vector<double> ts = args.t_grid.empty() ? std::vector<double>{args.t} : parse_grid(args.t_grid, false);
  for (double t : ts)
    if (!(t >= 1e-3 && t <= 0.999))
      throw DomainError("t = " + format_short(t) + " outside the validated window [0.001, 0.999]");
  const QuadratureScheme scheme = scheme_from(cfg);
  const double tolerance = 1e-3;
  Report rep(Command::cp2);
  double max_err = 0.0;
  bool any_printed = false;
  for (double t : ts) {
    const CrossCheckReport r = crosscheck(t, scheme, tolerance);
    rep.add_row({r.t, r.lambda, r.closed_radial, r.quad_radial, r.rel_err_radial, r.closed_tangential,
                 r.quad_tangential, r.rel_err_tangential, r.quad_radial_err, r.quad_tangential_err, r.quad_converged,
                 r.diverged, r.printed.closed_radial, r.printed.closed_tangential, r.printed.rel_err_radial,
                 r.printed.rel_err_tangential, r.printed_radial_ratio, r.printed_discrepancy});
    max_err = std::max({max_err, r.rel_err_radial, r.rel_err_tangential});
    any_printed = any_printed || r.printed_discrepancy;
    rep.check(r.passed());
  }
  rep.set("tolerance", tolerance);
  rep.set("transcription", std::string(transcription_name(Transcription::reconciled)));
  rep.set("max_rel_err", max_err);
  rep.set("any_printed_discrepancy", any_printed);
  rep.set("isa", std::string(kernels::isa_name(kernels::active().isa)));
  return rep;
}

Report run_curv(const CurvArgs& args) {
  const WarpedMetric m = metric_from(args.preset, args.scale);
  const std::vector<double> grid = parse_grid(args.lambda_grid, false);
  for (double l : grid) m.require_contains(l);
  Report rep(Command::curv);
  bool all_stable = true;
  double constant_dev = 0.0;
  for (double l : grid) {
    const CurvatureSample c = primary_curvatures(m, l, args.lambda_ref);
    rep.add_row({c.lambda, c.r, c.sigma_TN, c.sigma_TT1, c.sigma_TT4, c.stable, c.fd_change});
    all_stable = all_stable && c.stable;
    for (double s : {c.sigma_TN, c.sigma_TT1, c.sigma_TT4})
      constant_dev = std::max(constant_dev, std::abs(m.scale * s + 1.0));
  }
  rep.set("preset", args.preset);
  rep.set("scale", m.scale);
  rep.set("lambda_ref", args.lambda_ref);
  rep.set("all_stable", all_stable);
  rep.check(all_stable);
  if (m.preset == Preset::hyperbolic_model) {
    rep.set("constant_curvature_dev", constant_dev);
    rep.check(constant_dev <= 1e-9);
  }
  if (args.vertex) {
    const VertexLimits v = vertex_asymptotics(m, {0.08, 0.04, 0.02, 0.01, 0.005});
    rep.set("vertex_sigma_TN", v.sigma_TN_limit);
    rep.set("vertex_r2_sigma_TT1", v.r2_sigma_TT1_limit);
    rep.set("vertex_r2_sigma_TT4", v.r2_sigma_TT4_limit);
    rep.set("vertex_fs_coefficient", v.fs_coefficient);
    rep.set("vertex_stable", v.stable);
    rep.check(v.stable);
    if (m.preset == Preset::info_cp2) {
      rep.check(rel(v.sigma_TN_limit, -8.0 / 125.0) <= 0.05 && rel(v.r2_sigma_TT1_limit, -2.0 / 3.0) <= 0.05 &&
                rel(v.r2_sigma_TT4_limit, 1.0 / 3.0) <= 0.05 && rel(v.fs_coefficient, 3.0) <= 0.05);
    }
  }
  if (args.collar) {
    const CollarLimits c = collar_limits(m, {0.2, 0.1, 0.05, 0.02, 0.01});
    rep.set("collar_max_deviation", c.max_deviation);
    rep.set("collar_deviation_at_0.05", c.deviation[2]);
    rep.set("collar_monotone", c.monotone);
    rep.check(c.monotone && c.deviation[2] < 0.05);
  }
  return rep;
}

Report run_geod(const GeodArgs& args) {
  if (args.start.size() != 2 || args.vel.size() != 2) throw std::invalid_argument("--start and --vel need two values");
  if (args.every == 0) throw std::invalid_argument("--every must be positive");
  const WarpedMetric m = metric_from(args.preset, args.scale);
  const GeodesicTrace trace = geodesic_trace(m, {args.start[0], args.start[1]}, {args.vel[0], args.vel[1]},
                                             args.steps, args.dt);
  Report rep(Command::geod);
  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    if (k % args.every != 0 && k + 1 != trace.points.size()) continue;
    const GeodesicPoint& p = trace.points[k];
    rep.add_row({static_cast<long long>(k), p.time, p.lambda, p.s, p.lambda_dot, p.s_dot, p.energy, p.momentum});
  }
  const double drift_tol = 1e-8;
  rep.set("preset", args.preset);
  rep.set("dt", args.dt);
  rep.set("steps", static_cast<long long>(args.steps));
  rep.set("max_energy_drift", trace.max_energy_drift);
  rep.set("max_momentum_drift", trace.max_momentum_drift);
  rep.set("drift_tol", drift_tol);
  rep.set("rejected", trace.rejected);
  rep.set("substeps", static_cast<long long>(trace.substeps));
  rep.check(!trace.rejected && trace.max_energy_drift <= drift_tol && trace.max_momentum_drift <= drift_tol);
  return rep;
}

Report run_probe(const ProbeArgs& args) {
  const WarpedMetric m = metric_from(args.preset, args.scale);
  const CompletenessProbe probe = completeness_probe(m, args.lambda0, parse_grid(args.eps_grid, true));
  Report rep(Command::probe);
  bool clean = true;
  for (const ProbeRow& row : probe.rows) {
    rep.add_row({row.eps, row.log_ratio, row.length.value, row.length.err, row.length.converged,
                 row.length.divergent});
    clean = clean && row.length.converged && !row.length.divergent;
  }
  // Collar-type presets grow like sqrt(scale)·log(λ0/ε).
  const bool collar_type = m.preset != Preset::vertex_model;
  const double expected = collar_type ? std::sqrt(m.scale) : kNaN;
  const double dev = collar_type ? rel(probe.fitted_slope, expected) : kNaN;
  rep.set("preset", args.preset);
  rep.set("lambda0", args.lambda0);
  rep.set("fitted_slope", probe.fitted_slope);
  rep.set("tail_slope", probe.tail_slope);
  rep.set("expected_slope", expected);
  rep.set("slope_rel_dev", dev);
  rep.check(clean && (!collar_type || dev <= 0.02));
  return rep;
}

Report run_fixtures(const RunConfig& cfg) {
  Report rep(Command::fixtures);
  long long checks = 0, failed = 0;
  const auto add = [&](const std::string& name, double value, double expected, double tol, bool relative,
                       bool converged) {
    const double abs_err = std::abs(value - expected);
    const double rel_err = abs_err / std::abs(expected);
    const bool ok = converged && (relative ? rel_err : abs_err) <= tol;
    rep.add_row({name, value, expected, abs_err, rel_err, tol, converged, ok});
    ++checks;
    if (!ok) ++failed;
    rep.check(ok);
  };

  const ModelIntegrals mi = model_integrals(1e6);
  add("I1(1e6)", mi.i1.value, 1.0 / 60.0, 1e-10, false, mi.i1.converged);
  add("I2(1e6)", mi.i2.value, 1.0 / 60.0, 1e-10, false, mi.i2.converged);

  const QuadratureScheme scheme = scheme_from(cfg);
  const DensityFamily bpst = bpst_family();
  const std::vector<BpstParams> samples{
      {1.0, {0.0, 0.0, 0.0, 0.0}}, {0.5, {0.0, 0.0, 0.0, 0.0}}, {2.0, {1.0, 1.0, 0.0, 0.0}},
      {0.1, {-3.0, 0.5, 2.0, 7.0}}, {7.5, {0.25, -0.25, 4.0, -1.0}}};
  for (const BpstParams& p : samples) {
    const auto theta = p.theta();
    const QuadResult m = total_mass(bpst, theta, scheme);
    add("bpst_mass(lambda=" + format_short(p.lambda) + ")", m.value, kInstantonAction, 1e-9, true, m.converged);
  }

  const BpstParams unit{};
  const auto unit_theta = unit.theta();
  const GramMatrix g = info_gram(bpst, unit_theta, scheme);
  add("bpst_gram_lambda_lambda(lambda=1)", g(0, 0), kCollarConstant, 1e-7, true, g.converged);

  const DensityFamily cp2 = cp2_family({Covector{}});
  const std::vector<double> cp2_theta{0.5, 0.0};
  const QuadResult cm = total_mass(cp2, cp2_theta, scheme);
  add("cp2_mass(t=0.5)", cm.value, kInstantonAction, 1e-9, true, cm.converged);

  rep.set("checks", checks);
  rep.set("failed", failed);
  return rep;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::bpst:
      return "bpst";
    case Command::cp2:
      return "cp2";
    case Command::curv:
      return "curv";
    case Command::geod:
      return "geod";
    case Command::probe:
      return "probe";
    case Command::fixtures:
      return "fixtures";
  }
  return "fixtures";
}

void RunConfig::validate() const {
  if (!(rel_tol >= 1e-14 && rel_tol <= 1e-2)) throw std::invalid_argument("--tol must lie in [1e-14, 1e-2]");
  if (nodes < 8 || nodes > 1000000) throw std::invalid_argument("--nodes must lie in [8, 1e6]");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  BpstArgs bpst;
  Cp2Args cp2;
  CurvArgs curv;
  GeodArgs geod;
  ProbeArgs probe;
  std::string format = "csv";
  bool no_timestamp = false;
  bool schema = false;

  CLI::App app{"Information metric of charge-one instanton moduli spaces", "infometric"};
  app.fallthrough();
  app.set_config("--config", "", "Read options from a key = value file; flags override it");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.output_path, "Write the report to this file instead of stdout");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the wall-clock timestamp");
  app.add_option("--tol", cfg.rel_tol, "Relative quadrature tolerance");
  app.add_option("--nodes", cfg.nodes, "Initial radial node count");
  app.add_flag("--schema", schema, "Print the report schema and exit");

  auto* bpst_cmd = app.add_subcommand("bpst", "Information Gram and total mass of the standard instanton");
  bpst_cmd->add_option("--lambda", bpst.lambda, "Scale");
  bpst_cmd->add_option("--center", bpst.center, "Center x,y,z,w")->delimiter(',')->expected(4);

  auto* cp2_cmd = app.add_subcommand("cp2", "Closed-form CP2 metric against quadrature");
  auto* t_opt = cp2_cmd->add_option("--t", cp2.t, "Family parameter");
  cp2_cmd->add_option("--t-grid", cp2.t_grid, "a:b:n")->excludes(t_opt);

  auto* curv_cmd = app.add_subcommand("curv", "Primary sectional curvatures on a lambda grid");
  curv_cmd->add_option("--preset", curv.preset)->check(CLI::IsMember({"info", "hyp", "vertex", "collar"}));
  curv_cmd->add_option("--lambda-grid", curv.lambda_grid, "a:b:n");
  curv_cmd->add_option("--scale", curv.scale, "Constant factor of the hyp and collar presets");
  curv_cmd->add_option("--lambda-ref", curv.lambda_ref, "Origin of the r coordinate");
  curv_cmd->add_flag("--vertex", curv.vertex, "Extrapolate the curvatures to the cone vertex");
  curv_cmd->add_flag("--collar", curv.collar, "Deviation from constant curvature -1 toward lambda = 0");

  auto* geod_cmd = app.add_subcommand("geod", "Geodesics in the warped 2-strip");
  geod_cmd->add_option("--preset", geod.preset)->check(CLI::IsMember({"info", "hyp", "vertex", "collar"}));
  geod_cmd->add_option("--start", geod.start, "lambda,s")->delimiter(',')->expected(2);
  geod_cmd->add_option("--vel", geod.vel, "dlambda,ds")->delimiter(',')->expected(2);
  geod_cmd->add_option("--steps", geod.steps);
  geod_cmd->add_option("--dt", geod.dt);
  geod_cmd->add_option("--every", geod.every, "Write every n-th step");
  geod_cmd->add_option("--scale", geod.scale, "Constant factor of the hyp and collar presets");

  auto* probe_cmd = app.add_subcommand("probe", "Arc length toward the ideal boundary");
  probe_cmd->add_option("--preset", probe.preset)->check(CLI::IsMember({"info", "hyp", "vertex", "collar"}));
  probe_cmd->add_option("--lambda0", probe.lambda0);
  probe_cmd->add_option("--eps-grid", probe.eps_grid, "a:b:n (geometric) or a comma list");
  probe_cmd->add_option("--scale", probe.scale, "Constant factor of the hyp and collar presets");

  app.add_subcommand("fixtures", "Model integrals and normalization checks");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  if (schema) {
    out << report_schema();
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    err << "error: a subcommand is required\n" << app.help();
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  cfg.output_format = format == "json" ? Format::json : Format::csv;
  cfg.timestamp = !no_timestamp;

  std::optional<Report> report;
  try {
    cfg.validate();
    if (name == "bpst") {
      cfg.command = Command::bpst;
      report = run_bpst(cfg, bpst);
    } else if (name == "cp2") {
      cfg.command = Command::cp2;
      report = run_cp2(cfg, cp2);
    } else if (name == "curv") {
      cfg.command = Command::curv;
      report = run_curv(curv);
    } else if (name == "geod") {
      cfg.command = Command::geod;
      report = run_geod(geod);
    } else if (name == "probe") {
      cfg.command = Command::probe;
      report = run_probe(probe);
    } else {
      cfg.command = Command::fixtures;
      report = run_fixtures(cfg);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::string invocation;
  for (int k = 1; k < argc; ++k) invocation += (k > 1 ? " " : "") + std::string(argv[k]);
  report->invocation = invocation;
  if (cfg.timestamp) report->timestamp = utc_timestamp();

  std::ofstream file;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path);
    if (!file) {
      err << "error: cannot open " << cfg.output_path << " for writing\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = cfg.output_path.empty() ? out : file;
  if (cfg.output_format == Format::json) report->write_json(sink);
  else report->write_csv(sink);
  sink.flush();
  if (!sink) {
    err << "error: failed writing the report\n";
    return kExitUsage;
  }
  return report->passed() ? kExitOk : kExitCheckFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("infometric");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace infometric::cli
