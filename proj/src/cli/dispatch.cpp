#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "curvelab/cli.hpp"
#include "curvelab/monodromy.hpp"

namespace curvelab::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Opts {
  std::string curve, curve_v, curve_w;
  std::string expr, expr_v, expr_w;
  std::vector<std::string> params;
  std::string e1, e2, e3;
  std::string disk = "0,0,0.9";
  std::string vdisk = "0,0,1.5";
  std::string tdisk = "0,0,1";
  double tol = 1e-10;
  int samples = -1;
  int steps = 512;
  int turns = 1;
  std::string format;
  long long seed = 0;
  std::string z;
  std::string center = "0,0";
  double radius = -1;
  int order = kDefaultPuiseuxOrder;
  std::vector<std::string> exclude;
  int grid = kDefaultSeparationGrid;
  std::string sweep_params;
  std::vector<std::string> values;
  std::string g1, g2, g3, q;
  std::string line;
};

// A curve given either as a spec file or as an expression; rebuilt on demand
// so that sweeps can vary its parameters.
struct CurveSource {
  std::optional<CurveSpec> spec;
  std::string expr;

  BivarPoly build(const ParamMap &params) const { return spec ? to_poly(*spec, params) : parse_bivar(expr, params); }
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read curve file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CurveSource load_source(const std::string &file, const std::string &expr, const std::string &file_flag,
                        const std::string &expr_flag) {
  if (!file.empty() && !expr.empty()) throw UsageError("give only one of " + file_flag + " and " + expr_flag);
  if (file.empty() && expr.empty()) throw UsageError(file_flag + " or " + expr_flag + " is required");
  CurveSource src;
  if (!file.empty()) {
    src.spec = parse_curve(read_file(file));
  } else {
    src.expr = expr;
  }
  return src;
}

ParamMap overrides(const Opts &o) {
  ParamMap out;
  for (const auto &p : o.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects NAME=RE[,IM], got '" + p + "'");
    out[p.substr(0, eq)] = parse_complex(p.substr(eq + 1));
  }
  if (!o.e1.empty()) out["e1"] = parse_complex(o.e1);
  if (!o.e2.empty()) out["e2"] = parse_complex(o.e2);
  if (!o.e3.empty()) out["e3"] = parse_complex(o.e3);
  return out;
}

int positive(int v, int fallback, const std::string &flag) {
  if (v == -1) return fallback;
  if (v < 1) throw UsageError(flag + " must be a positive integer");
  return v;
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    out.push_back(s.substr(start, at - start));
    if (at == std::string::npos) return out;
    start = at + 1;
  }
}

ojson cjson(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

ojson cjson_list(const std::vector<Complex> &v) {
  auto a = ojson::array();
  for (auto c : v) a.push_back(cjson(c));
  return a;
}

ojson disk_json(const Disk &d) { return {{"center", cjson(d.center)}, {"radius", d.radius}}; }

ojson point_json(Complex z, Complex w) { return {{"z", cjson(z)}, {"w", cjson(w)}}; }

std::string crossing_name(Crossing c) {
  return c == Crossing::NormalCrossing ? "normal_crossing" : "non_normal_crossing";
}

Polydisk polydisk(const Opts &o) { return {parse_disk(o.disk), parse_disk(o.vdisk)}; }

BivarPoly single_curve(const Opts &o) { return load_source(o.curve, o.expr, "--curve", "--expr").build(overrides(o)); }

std::pair<BivarPoly, BivarPoly> curve_pair(const Opts &o) {
  const ParamMap p = overrides(o);
  return {load_source(o.curve_v, o.expr_v, "--curve-v", "--expr-v").build(p),
          load_source(o.curve_w, o.expr_w, "--curve-w", "--expr-w").build(p)};
}

ojson run_good_check(const Opts &o) {
  const auto r = check_good(single_curve(o), polydisk(o), positive(o.samples, 32, "--samples"));
  ojson doc{{"command", "good-check"}, {"good", r.good}};
  doc["witness"] = r.witness ? point_json(r.witness->first, r.witness->second) : ojson(nullptr);
  doc["degenerate_slice"] = r.degenerate_slice;
  return doc;
}

ojson run_fiber(const Opts &o) {
  if (o.z.empty()) throw UsageError("--z is required");
  if (!(o.tol > 0)) throw UsageError("--tol must be positive");
  RootOptions ro;
  ro.tol = o.tol;
  const Fiber f = fiber(single_curve(o), parse_complex(o.z), ro);
  return {{"command", "fiber"}, {"base_point", cjson(f.base_point)}, {"size", f.size()}, {"points", cjson_list(f.points)}};
}

ojson run_discriminant(const Opts &o) {
  const Disk base = parse_disk(o.disk);
  const DiscriminantReport r = discriminant(single_curve(o), base);
  auto pts = ojson::array();
  for (const auto &p : r.points)
    pts.push_back({{"location", cjson(p.location)}, {"multiplicity", p.multiplicity}, {"crossing", crossing_name(p.crossing)}});
  return {{"command", "discriminant"}, {"disk", disk_json(base)}, {"sheet_count", r.sheet_count}, {"points", pts}};
}

ojson polygon_json(const BivarPoly &F, Complex cz, Complex cw) {
  BivarPoly local = F.translated(cz, cw).chopped(1e-12);
  local.set(0, 0, 0.0);
  try {
    const NewtonPolygon np = newton_polygon(local);
    auto edges = ojson::array();
    for (const auto &e : np.edges)
      edges.push_back({{"from", {e.from.first, e.from.second}},
                       {"to", {e.to.first, e.to.second}},
                       {"exponent", to_string(e.exponent)},
                       {"slope", to_string(e.slope)}});
    return {{"z_factor", np.z_factor}, {"w_factor", np.w_factor}, {"edges", edges}};
  } catch (const CurveError &) {
    return nullptr;
  }
}

ojson run_puiseux(const Opts &o) {
  const BivarPoly F = single_curve(o);
  std::vector<double> c;
  for (const auto &part : split(o.center, ',')) c.push_back(parse_complex(part).real());
  if (c.size() != 2 && c.size() != 4) throw UsageError("--center expects ZRE,ZIM[,WRE,WIM]");
  const Complex cz(c[0], c[1]);
  const Complex cw = c.size() == 4 ? Complex(c[2], c[3]) : Complex{};
  if (o.order < 1) throw UsageError("--order must be positive");
  const double radius = o.radius == -1 ? 0.3 : o.radius;
  if (!(radius > 0)) throw UsageError("--radius must be positive");
  const int samples = positive(o.samples, 64, "--samples");

  const PuiseuxExpansion ex = puiseux_expand(F, cz, cw, o.order);
  auto branches = ojson::array();
  for (const auto &b : ex.branches)
    branches.push_back({{"ramification", b.ramification},
                        {"truncation_order", b.truncation_order},
                        {"exact", b.exact},
                        {"base_shift", point_json(b.base_shift.first, b.base_shift.second)},
                        {"series", cjson_list(b.series)},
                        {"residual", param_residual(b, F, samples, radius)}});
  return {{"command", "puiseux"},
          {"center", point_json(cz, cw)},
          {"newton_polygon", polygon_json(F, cz, cw)},
          {"vertical_factor", ex.vertical_factor},
          {"residual_radius", radius},
          {"branches", branches}};
}

ojson run_monodromy(const Opts &o) {
  LoopSpec loop;
  loop.center = parse_complex(o.center);
  loop.radius = o.radius == -1 ? 0.5 : o.radius;
  if (!(loop.radius > 0)) throw UsageError("--radius must be positive");
  if (o.turns < 1) throw UsageError("--turns must be positive");
  if (o.steps < 8) throw UsageError("--steps must be at least 8");
  loop.turns = o.turns;
  loop.steps_per_turn = o.steps;
  const MonodromyResult r = track(single_curve(o), loop);

  auto perm = ojson::array();
  for (int p : r.permutation) perm.push_back(p + 1);
  auto cycles = ojson::array();
  for (const auto &cyc : cycle_decomposition(r.permutation)) {
    auto c = ojson::array();
    for (int k : cyc) c.push_back(k + 1);
    cycles.push_back(c);
  }
  return {{"command", "monodromy"},
          {"center", cjson(loop.center)},
          {"radius", loop.radius},
          {"turns", loop.turns},
          {"steps_per_turn", r.steps_per_turn},
          {"start_fiber", cjson_list(r.start_fiber.points)},
          {"permutation", perm},
          {"cycles", r.cycles},
          {"cycle_decomposition", cycles},
          {"order", r.order()}};
}

ojson run_separation(const Opts &o) {
  const Disk region = parse_disk(o.disk);
  std::vector<Disk> excluded;
  auto ex = ojson::array();
  for (const auto &e : o.exclude) {
    excluded.push_back(parse_disk(e));
    ex.push_back(disk_json(excluded.back()));
  }
  if (o.grid < 2) throw UsageError("--grid must be at least 2");
  const double s = separation(single_curve(o), region, excluded, o.grid);
  return {{"command", "separation"}, {"region", disk_json(region)}, {"excluded", ex}, {"grid", o.grid}, {"separation", s}};
}

ojson run_dsym(const Opts &o) {
  if (o.z.empty()) throw UsageError("--z is required");
  const auto [V, W] = curve_pair(o);
  const Complex z0 = parse_complex(o.z);
  const Fiber a = fiber(V, z0);
  const Fiber b = fiber(W, z0);
  return {{"command", "dsym"},
          {"z", cjson(z0)},
          {"fiber_v", cjson_list(a.points)},
          {"fiber_w", cjson_list(b.points)},
          {"d_sym_vw", d_sym(a, b)},
          {"d_sym_wv", d_sym(b, a)},
          {"d_sym_max", d_sym_symmetric(a, b)}};
}

ojson run_hausdorff(const Opts &o) {
  const auto [V, W] = curve_pair(o);
  const Polydisk H = polydisk(o);
  const int radial = positive(o.samples, 12, "--samples");
  const int angular = 4 * radial;
  const SampledCurve a = sample_curve(V, H, radial, angular, "v");
  const SampledCurve b = sample_curve(W, H, radial, angular, "w");
  return {{"command", "hausdorff"},
          {"estimate", true},
          {"radial_samples", radial},
          {"angular_samples", angular},
          {"points_v", a.points.size()},
          {"points_w", b.points.size()},
          {"hausdorff", hausdorff(a, b)}};
}

ojson run_intersect(const Opts &o) {
  const auto [V, W] = curve_pair(o);
  CertifyOptions co;
  if (o.order < 1) throw UsageError("--order must be positive");
  co.order = o.order;
  co.max_order = std::max(co.max_order, o.order);
  co.winding_samples = positive(o.samples, kDefaultWindingSamples, "--samples");
  const Disk t_disk = parse_disk(o.tdisk);
  const IntersectionVerdict v = certify(V, W, polydisk(o), t_disk, co);

  auto witnesses = ojson::array();
  for (std::size_t k = 0; k < v.witnesses.size(); ++k) {
    ojson wj = point_json(v.witnesses[k].first, v.witnesses[k].second);
    wj["abs_f"] = v.residuals[k].first;
    wj["abs_g"] = v.residuals[k].second;
    witnesses.push_back(wj);
  }
  auto branches = ojson::array();
  for (const auto &b : v.branches) {
    ojson bj{{"center", point_json(b.center_z, b.center_w)},
             {"ramification", b.ramification},
             {"exact_series", b.exact_series},
             {"order", b.order},
             {"pullback_degree", b.pullback_degree},
             {"zero_count", b.zero_count}};
    bj["failure"] = b.failure.empty() ? ojson(nullptr) : ojson(b.failure);
    branches.push_back(bj);
  }
  return {{"command", "intersect"},
          {"status", std::string(to_string(v.status))},
          {"zero_count", v.zero_count},
          {"t_disk", disk_json(t_disk)},
          {"common_component", v.common_component},
          {"prescan_hits", v.prescan_hits},
          {"hypothesis",
           {{"nnc_count_w", v.hypothesis.nnc_count_W},
            {"d_h_estimate", v.hypothesis.d_H_estimate},
            {"d_h_radial_samples", co.hausdorff_radial},
            {"d_h_angular_samples", co.hausdorff_angular}}},
          {"witnesses", witnesses},
          {"branches", branches}};
}

LineSpec parse_line(const std::string &text, const ParamMap &params) {
  const auto eq = text.find('=');
  std::string var = text.substr(0, eq);
  std::erase(var, ' ');
  if (eq == std::string::npos || (var != "z" && var != "w")) throw UsageError("--line expects z=VALUE or w=VALUE");
  return {var[0], parse_constant(text.substr(eq + 1), params)};
}

ojson run_pullback3(const Opts &o) {
  if (o.g1.empty() || o.g2.empty() || o.g3.empty() || o.q.empty())
    throw UsageError("--g1, --g2, --g3 and --q are required");
  const ParamMap params = overrides(o);
  const BivarPoly p = pullback_map({parse_bivar(o.g1, params), parse_bivar(o.g2, params), parse_bivar(o.g3, params)},
                                   parse_trivar(o.q, params));
  ojson doc{{"command", "pullback3"},
            {"z_degree", p.z_degree()},
            {"w_degree", p.w_degree()},
            {"curve", curve_to_json(spec_from_poly(p, "pullback"))}};
  if (!o.line.empty()) {
    const LineSpec line = parse_line(o.line, params);
    const Disk d = parse_disk(o.disk);
    const auto zs = line_zero(p, line, d);
    auto res = ojson::array();
    for (auto x : zs) res.push_back(std::abs(line.fixed == 'w' ? eval_bivar(p, x, line.value) : eval_bivar(p, line.value, x)));
    doc["line"] = {{"fixed", std::string(1, line.fixed)},
                   {"value", cjson(line.value)},
                   {"disk", disk_json(d)},
                   {"zeros", cjson_list(zs)},
                   {"residuals", res}};
  }
  return doc;
}

std::vector<std::string> split_names(const std::string &s) {
  std::vector<std::string> out;
  for (auto n : split(s, ',')) {
    std::erase(n, ' ');
    if (!n.empty()) out.push_back(n);
  }
  return out;
}

struct SweepOutput {
  ojson doc;
  std::string csv;
};

SweepOutput run_sweep(const Opts &o) {
  const ParamMap base = overrides(o);
  const CurveSource vsrc = load_source(o.curve_v, o.expr_v, "--curve-v", "--expr-v");
  const CurveSource wsrc = load_source(o.curve_w, o.expr_w, "--curve-w", "--expr-w");
  std::vector<std::string> names = split_names(o.sweep_params);
  if (names.empty() && wsrc.spec)
    for (const auto &[k, v] : wsrc.spec->params) names.push_back(k);
  if (names.empty()) throw UsageError("--sweep-params is required");
  if (o.values.empty()) throw UsageError("--values is required");
  std::vector<Complex> values;
  for (const auto &v : o.values) values.push_back(parse_complex(v));

  CertifyOptions co;
  co.order = o.order;
  co.max_order = std::max(co.max_order, o.order);
  const auto family = [&](Complex eps) {
    ParamMap p = base;
    for (const auto &n : names) p[n] = eps;
    return wsrc.build(p);
  };
  const auto rows = sweep(vsrc.build(base), family, values, polydisk(o), parse_disk(o.tdisk), co);

  SweepOutput out;
  out.csv = "eps_re,eps_im,status,zero_count,d_h_estimate,nnc_count_w,error\n";
  auto jrows = ojson::array();
  for (const auto &r : rows) {
    const std::string status = r.status ? std::string(to_string(*r.status)) : "";
    std::string err = r.error;
    std::replace(err.begin(), err.end(), '"', '\'');
    out.csv += format_double(r.eps.real()) + "," + format_double(r.eps.imag()) + "," + status + "," +
               std::to_string(r.zero_count) + "," + format_double(r.d_H_estimate) + "," + std::to_string(r.nnc_count) +
               "," + (err.empty() ? "" : "\"" + err + "\"") + "\n";
    ojson row{{"eps", cjson(r.eps)}};
    row["status"] = r.status ? ojson(status) : ojson(nullptr);
    row["zero_count"] = r.zero_count;
    row["d_h_estimate"] = r.d_H_estimate;
    row["nnc_count_w"] = r.nnc_count;
    row["error"] = r.error.empty() ? ojson(nullptr) : ojson(r.error);
    jrows.push_back(row);
  }
  out.doc = {{"command", "sweep"}, {"params", names}, {"rows", jrows}};
  return out;
}

void add_curve(CLI::App *s, Opts &o) {
  s->add_option("--curve", o.curve, "Curve spec JSON file");
  s->add_option("--expr", o.expr, "Curve as an expression in z, w");
}

void add_pair(CLI::App *s, Opts &o) {
  s->add_option("--curve-v", o.curve_v, "First curve spec JSON file");
  s->add_option("--curve-w", o.curve_w, "Second curve spec JSON file");
  s->add_option("--expr-v", o.expr_v, "First curve as an expression");
  s->add_option("--expr-w", o.expr_w, "Second curve as an expression");
}

void add_common(CLI::App *s, Opts &o) {
  s->add_option("--param", o.params, "Parameter value NAME=RE[,IM] (repeatable)");
  s->add_option("--e1", o.e1, "Shorthand for --param e1=...");
  s->add_option("--e2", o.e2, "Shorthand for --param e2=...");
  s->add_option("--e3", o.e3, "Shorthand for --param e3=...");
  s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  s->add_option("--seed", o.seed, "Seed (all commands are deterministic)");
}

void add_polydisk(CLI::App *s, Opts &o) {
  s->add_option("--disk", o.disk, "Base disk CX,CY,R")->capture_default_str();
  s->add_option("--vdisk", o.vdisk, "Vertical disk CX,CY,R")->capture_default_str();
}

}  // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Opts o;
  CLI::App app{"Analysis of singular plane curves and certified intersection of nearby curves", "curvelab"};
  app.require_subcommand(1, 1);

  auto *good = app.add_subcommand("good-check", "Check that the curve stays inside the vertical disk over the base disk");
  add_curve(good, o);
  add_polydisk(good, o);
  good->add_option("--samples", o.samples, "Radial and angular grid size (default 32)");

  auto *fib = app.add_subcommand("fiber", "Fibre of the projection over a base point");
  add_curve(fib, o);
  fib->add_option("--z", o.z, "Base point RE[,IM]");
  fib->add_option("--tol", o.tol, "Root tolerance")->capture_default_str();

  auto *disc = app.add_subcommand("discriminant", "Discriminant points in the base disk");
  add_curve(disc, o);
  disc->add_option("--disk", o.disk, "Base disk CX,CY,R")->capture_default_str();

  auto *pui = app.add_subcommand("puiseux", "Puiseux parametrizations of the branches at a point");
  add_curve(pui, o);
  pui->add_option("--center", o.center, "Centre ZRE,ZIM[,WRE,WIM]")->capture_default_str();
  pui->add_option("--order", o.order, "Truncation order")->capture_default_str();
  pui->add_option("--radius", o.radius, "Radius for the residual check (default 0.3)");
  pui->add_option("--samples", o.samples, "Samples for the residual check (default 64)");

  auto *mono = app.add_subcommand("monodromy", "Sheet permutation along a circle in the base");
  add_curve(mono, o);
  mono->add_option("--center", o.center, "Circle centre RE[,IM]")->capture_default_str();
  mono->add_option("--radius", o.radius, "Circle radius (default 0.5)");
  mono->add_option("--turns", o.turns, "Number of turns")->capture_default_str();
  mono->add_option("--steps", o.steps, "Steps per turn")->capture_default_str();

  auto *sep = app.add_subcommand("separation", "Minimum distance between distinct fibre points");
  add_curve(sep, o);
  sep->add_option("--disk", o.disk, "Region CX,CY,R")->capture_default_str();
  sep->add_option("--exclude", o.exclude, "Excluded disk CX,CY,R (repeatable)");
  sep->add_option("--grid", o.grid, "Radial grid size")->capture_default_str();

  auto *ds = app.add_subcommand("dsym", "Directed fibre distances of two curves over a base point");
  add_pair(ds, o);
  ds->add_option("--z", o.z, "Base point RE[,IM]");

  auto *hd = app.add_subcommand("hausdorff", "Sampled Hausdorff distance of two curves in the polydisk");
  add_pair(hd, o);
  add_polydisk(hd, o);
  hd->add_option("--samples", o.samples, "Radial samples; angular is four times this (default 12)");

  auto *is = app.add_subcommand("intersect", "Certify whether two curves meet in the polydisk");
  add_pair(is, o);
  add_polydisk(is, o);
  is->add_option("--tdisk", o.tdisk, "Parameter disk CX,CY,R")->capture_default_str();
  is->add_option("--order", o.order, "Initial Puiseux order")->capture_default_str();
  is->add_option("--samples", o.samples, "Winding-number samples");

  auto *pb = app.add_subcommand("pullback3", "Pull a hypersurface Q(a, b, c) back through (g1, g2, g3)");
  pb->add_option("--g1", o.g1, "First component in z, w");
  pb->add_option("--g2", o.g2, "Second component in z, w");
  pb->add_option("--g3", o.g3, "Third component in z, w");
  pb->add_option("--q", o.q, "Hypersurface in a, b, c");
  pb->add_option("--line", o.line, "Restrict to z=VALUE or w=VALUE and list zeros");
  pb->add_option("--disk", o.disk, "Disk for line zeros CX,CY,R")->capture_default_str();

  auto *sw = app.add_subcommand("sweep", "Run intersect over a list of parameter values");
  add_pair(sw, o);
  add_polydisk(sw, o);
  sw->add_option("--tdisk", o.tdisk, "Parameter disk CX,CY,R")->capture_default_str();
  sw->add_option("--order", o.order, "Initial Puiseux order")->capture_default_str();
  sw->add_option("--sweep-params", o.sweep_params, "Comma-separated parameters set to each value");
  sw->add_option("--values", o.values, "Values RE[,IM]");

  for (auto *s : app.get_subcommands({})) add_common(s, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "curvelab: usage: " << msg << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    std::string text;
    if (name == "sweep") {
      auto r = run_sweep(o);
      text = o.format == "json" ? dump(r.doc) : r.csv;
    } else {
      ojson doc;
      if (name == "good-check") doc = run_good_check(o);
      else if (name == "fiber") doc = run_fiber(o);
      else if (name == "discriminant") doc = run_discriminant(o);
      else if (name == "puiseux") doc = run_puiseux(o);
      else if (name == "monodromy") doc = run_monodromy(o);
      else if (name == "separation") doc = run_separation(o);
      else if (name == "dsym") doc = run_dsym(o);
      else if (name == "hausdorff") doc = run_hausdorff(o);
      else if (name == "intersect") doc = run_intersect(o);
      else doc = run_pullback3(o);
      text = o.format == "csv" ? flatten_csv(doc) : dump(doc);
    }
    out << text;
    return 0;
  } catch (const UsageError &e) {
    err << "curvelab: usage: " << e.what() << "\n";
    return 2;
  } catch (const CurveError &e) {
    const bool usage = e.kind() == ErrorKind::SchemaError || e.kind() == ErrorKind::DuplicateTerm;
    err << "curvelab: " << (usage ? "usage: " : "error: ") << e.what() << "\n";
    return usage ? 2 : 1;
  } catch (const std::exception &e) {
    err << "curvelab: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace curvelab::cli
