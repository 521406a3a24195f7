#include "cantorvort/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cantorvort/battery.hpp"
#include "cantorvort/concentration.hpp"
#include "cantorvort/errors.hpp"
#include "cantorvort/sparse.hpp"
#include "cantorvort/vortex.hpp"

namespace cantorvort {

namespace {

struct CubeArgs {
  std::int64_t level = 0;
  std::string ix = "0";
  std::string iy = "0";

  DyadicCube cube() const {
    if (level < 0) throw DomainError("negative level");
    DyadicCube q{level, BigInt(ix), BigInt(iy)};
    if (!q.in_unit()) throw DomainError("cube " + q.to_string() + " lies outside the unit square");
    return q;
  }
};

void add_cube_options(CLI::App* sub, CubeArgs& c) {
  sub->add_option("--level", c.level, "dyadic level of the cube");
  sub->add_option("--ix", c.ix, "column index at that level");
  sub->add_option("--iy", c.iy, "row index at that level");
}

std::string rstr(const DyadicScalar& d) { return rational_string(d.to_rational()); }

nlohmann::json rendered(const Rational& q) { return to_json_value(render(q)); }
nlohmann::json rendered(const ExtScalar& x) { return to_json_value(render(x)); }

Table level_table(const MorreyReport& r) {
  Table t;
  t.columns = {"level", "x", "y", "mass", "mass_error", "value", "value_exact", "value_log2"};
  for (const auto& lm : r.per_level_max) {
    char err[32];
    std::snprintf(err, sizeof err, "%.3Le", lm.mass_error);
    t.rows.push_back({std::to_string(lm.level), rstr(lm.cube.x()), rstr(lm.cube.y()), rational_string(lm.mass), err,
                      lm.value.decimal_string(), lm.exact ? rational_string(*lm.exact) : "", lm.value.log2_string()});
  }
  return t;
}

void put_morrey(VerificationReport& rep, const MorreyReport& r) {
  rep.data["norm"] = to_json_value(render(r.norm_value));
  if (r.exact) rep.data["norm"]["exact"] = rational_string(*r.exact);
  rep.data["argmax"] = cube_json(r.argmax);
  rep.tables["per_level_max"] = level_table(r);
  rep.csv_table = "per_level_max";
}

// ---------------------------------------------------------------------------

struct Options {
  RunConfig cfg;
  std::string log_base = "2";
  std::string format = "json";
  std::string patch_c = "2";
  std::string alpha = "1";

  // cantor
  int k = 1;
  std::optional<std::string> side;
  std::optional<int> intersections;
  int samples = 1000;
  // measure
  CubeArgs cube;
  std::optional<int> measure_k;
  std::optional<std::string> ax, ay, aside;
  // morrey
  std::string target = "omega";
  std::int64_t min_level = 1;
  // sparse
  bool profile = false;
  std::optional<std::int64_t> tower_index;
  std::int64_t threshold = 0;
  std::optional<int> vortex;
  // patch
  std::optional<std::string> px, py;
  // energy
  std::string method = "both";
  // defect
  int k_max = 4;
  // scaling
  std::string eps = "1/16";
  // certify-dimension
  std::string gamma = "1/10";
  std::string delta = "1/100";
};

VerificationReport cmd_cantor(const Options& o) {
  const RunConfig& cfg = o.cfg;
  VerificationReport rep;
  rep.command = "cantor";
  Table t;
  t.columns = {"generation", "index", "address", "level", "x", "y", "side", "center_x", "center_y"};
  for (const auto& c : cantor_generation(o.k, cfg.max_generation)) {
    t.rows.push_back({std::to_string(c.generation), std::to_string(c.index), c.address_string(),
                      std::to_string(c.cube.level), rstr(c.cube.x()), rstr(c.cube.y()), rstr(c.cube.side()),
                      rstr(c.center_x), rstr(c.center_y)});
  }
  rep.tables["cubes"] = t;
  rep.csv_table = "cubes";
  rep.data["generation"] = std::to_string(o.k);
  rep.data["side_length"] = rendered(pow2_rational(-cantor_level(o.k)));
  if (o.side) {
    const DyadicScalar s = DyadicScalar::from_rational(parse_rational(*o.side));
    rep.data["bracket"] = {{"side", rstr(s)}, {"j", std::to_string(generation_bracket(s))}};
  }
  if (o.intersections) {
    const IntersectionSearch r = max_intersections(*o.intersections, o.samples, cfg.seed);
    rep.data["intersections"] = {{"j", std::to_string(*o.intersections)},
                                 {"max_count", std::to_string(r.max_count)},
                                 {"placements", std::to_string(r.placements)},
                                 {"witness",
                                  {{"x", rstr(r.witness.x)}, {"y", rstr(r.witness.y)}, {"side", rstr(r.witness.side)}}}};
  }
  return rep;
}

VerificationReport cmd_measure(const Options& o) {
  VerificationReport rep;
  rep.command = "measure";
  if (o.ax || o.ay || o.aside) {
    if (!(o.ax && o.ay && o.aside)) throw DomainError("--x, --y and --side go together");
    const ArbitraryCube q{DyadicScalar::from_rational(parse_rational(*o.ax)),
                          DyadicScalar::from_rational(parse_rational(*o.ay)),
                          DyadicScalar::from_rational(parse_rational(*o.aside))};
    rep.data["cube"] = {{"x", rstr(q.x)}, {"y", rstr(q.y)}, {"side", rstr(q.side)}};
    rep.data["omega"] = rendered(omega_arbitrary_cube(q, o.cfg.max_generation).to_rational());
    return rep;
  }
  const DyadicCube q = o.cube.cube();
  rep.data["cube"] = cube_json(q);
  if (o.measure_k) {
    rep.data["k"] = std::to_string(*o.measure_k);
    rep.data["omega_k"] = rendered(omega_k_cube(*o.measure_k, q).to_rational());
  } else {
    rep.data["omega"] = rendered(omega_cube(q).to_rational());
    rep.data["stabilization_generation"] = std::to_string(stabilization_generation(q.level));
  }
  return rep;
}

VerificationReport cmd_morrey(const Options& o) {
  const RunConfig& cfg = o.cfg;
  MorreyConfig mc;
  mc.alpha = cfg.morrey_alpha;
  mc.log_base = cfg.log_base;
  mc.max_level = cfg.morrey_depth;
  mc.min_level = o.min_level;
  VerificationReport rep;
  rep.command = "morrey";
  rep.data["target"] = o.target;
  if (o.target == "omega") {
    put_morrey(rep, morrey_log_norm_omega(mc));
  } else if (o.target == "omega-k") {
    rep.data["k"] = std::to_string(o.k);
    put_morrey(rep, morrey_log_norm(omega_k_measure(o.k, cfg.max_generation), mc));
  } else if (o.target == "patch") {
    rep.data["k"] = std::to_string(o.k);
    put_morrey(rep, density_morrey_norm(patch_params(o.k, cfg.patch_c, cfg.max_generation), mc));
  } else {
    throw DomainError("unknown target '" + o.target + "'");
  }
  return rep;
}

VerificationReport cmd_sparse(const Options& o) {
  const RunConfig& cfg = o.cfg;
  VerificationReport rep;
  rep.command = "sparse";
  if (o.profile) {
    Table t;
    t.columns = {"k", "generation_contribution", "generation_contribution_exact", "cumulative_sum_sq",
                 "cumulative_sum_sq_exact", "cubes"};
    for (const auto& g : divergence_profile(cfg.max_generation, cfg.max_generation)) {
      t.rows.push_back({std::to_string(g.k), decimal_string(g.contribution), rational_string(g.contribution),
                        decimal_string(g.cumulative), rational_string(g.cumulative), std::to_string(g.cubes)});
    }
    rep.tables["profile"] = t;
    rep.csv_table = "profile";
  }
  if (o.tower_index) {
    const SparseFamily fam = build_tower(o.k, *o.tower_index, cfg.max_generation);
    const SparseCertificate cert = verify_sparse(fam);
    rep.data["tower"] = {{"k", std::to_string(o.k)},
                         {"index", std::to_string(*o.tower_index)},
                         {"cubes", family_json(fam)},
                         {"sparse", cert.valid ? "true" : "false"},
                         {"failure", cert.failure}};
    if (cert.valid) {
      const SparseSum s = sparse_partial_sum(omega_mass(), fam, o.threshold);
      rep.data["tower"]["partial_sum"] = {{"n", std::to_string(o.threshold)},
                                          {"sum_squares", rendered(s.sum_squares)},
                                          {"value", rendered(s.value)},
                                          {"cubes_used", std::to_string(s.cubes_used)}};
    }
  }
  if (o.vortex) {
    const VortexSparseBound b = vortex_sparse_lower_bound(*o.vortex, cfg.patch_c, cfg.max_generation);
    rep.data["vortex"] = {{"n", std::to_string(b.n)},
                          {"inner_cube", cube_json(b.inner_cube)},
                          {"cubes", std::to_string(b.family.size())},
                          {"sparse", b.certificate.valid ? "true" : "false"},
                          {"area_squares", rendered(b.area_squares)},
                          {"lower_bound", rendered(b.value)}};
  }
  if (!o.profile && !o.tower_index && !o.vortex) throw DomainError("sparse needs --profile, --tower or --vortex");
  return rep;
}

VerificationReport cmd_patch(const Options& o) {
  const PatchParams p = patch_params(o.k, o.cfg.patch_c, o.cfg.max_generation);
  VerificationReport rep;
  rep.command = "patch";
  const CirculationReport circ = patch_l1_and_circulation(p);
  rep.data["params"] = {{"k", std::to_string(p.k)},
                        {"c", rational_string(p.c)},
                        {"delta", rendered(p.delta)},
                        {"core_radius2", rendered(p.delta2())},
                        {"support_radius2", rendered(p.r2)},
                        {"omega_plus_times_pi", rendered(p.omega_plus_pi)},
                        {"omega_minus_times_pi", rendered(p.omega_minus_pi)},
                        {"omega_plus", rendered(p.omega_plus())},
                        {"omega_minus", rendered(p.omega_minus())}};
  rep.data["circulation"] = {{"l1_per_cube", rendered(circ.l1_per_cube)},
                             {"net_circulation", rendered(circ.net_circulation)},
                             {"total_l1", rendered(circ.total_l1)}};
  rep.data["speed_at_support_edge"] = rendered(speed_profile(p, p.r2));
  if (o.px || o.py) {
    if (!(o.px && o.py)) throw DomainError("--x and --y go together");
    const Point x{parse_rational(*o.px), parse_rational(*o.py)};
    const PatchHit hit = locate_patch(p, x);
    const Velocity v = velocity_at(p, x);
    rep.data["point"] = {{"x", rational_string(x.x)},
                         {"y", rational_string(x.y)},
                         {"region", region_name(hit.region)},
                         {"patch", std::to_string(hit.m)},
                         {"vorticity", rendered(vorticity_at(p, x))},
                         {"ux", rendered(v.ux)},
                         {"uy", rendered(v.uy)}};
  }
  return rep;
}

VerificationReport cmd_energy(const Options& o) {
  const PatchParams p = patch_params(o.k, o.cfg.patch_c, o.cfg.max_generation);
  VerificationReport rep;
  rep.command = "energy";
  rep.data["k"] = std::to_string(o.k);
  if (o.method == "closed" || o.method == "both") {
    rep.data["closed_form"] = {{"patch_energy", rendered(patch_energy(p))},
                               {"l2_norm_squared", rendered(l2_norm_squared(p))},
                               {"middle_term", rendered(l2_middle_term(p))}};
  }
  if (o.method == "quadrature" || o.method == "both") {
    if (o.method == "quadrature" || p.k <= 2) {
      rep.data["quadrature"] = {{"patch_energy", rendered(patch_energy(p, EnergyMethod::Quadrature))},
                                {"l2_norm_squared", rendered(l2_norm_squared(p, EnergyMethod::Quadrature))}};
    }
  }
  if (o.method != "closed" && o.method != "quadrature" && o.method != "both") {
    throw DomainError("unknown method '" + o.method + "'");
  }
  const WeakPairing w = weak_pairing_bound(o.k, o.cfg.patch_c);
  rep.data["weak_pairing"] = {{"support_area", rendered(w.support_area)}, {"bound", rendered(w.bound)}};
  if (w.pairing) rep.data["weak_pairing"]["pairing"] = to_json_value(render(*w.pairing));
  return rep;
}

VerificationReport cmd_defect(const Options& o) {
  const DyadicCube q = o.cube.cube();
  const DefectReport d = reduced_defect(q, o.k_max, o.cfg.patch_c);
  VerificationReport rep;
  rep.command = "defect";
  rep.data["cube"] = cube_json(q);
  rep.data["stabilized_fraction"] = rendered(d.stabilized_fraction);
  rep.data["omega_value"] = rendered(d.omega_value);
  rep.data["limit_constant"] = rendered(d.limit_constant);
  Table t;
  t.columns = {"k", "energy", "energy_log2", "fraction"};
  for (const auto& e : d.per_k_energy) {
    t.rows.push_back({std::to_string(e.k), e.energy.decimal_string(), e.energy.log2_string(), rational_string(e.fraction)});
  }
  rep.tables["per_k_energy"] = t;
  rep.csv_table = "per_k_energy";
  return rep;
}

VerificationReport cmd_scaling(const Options& o) {
  const DyadicScalar eps = DyadicScalar::from_rational(parse_rational(o.eps));
  VerificationReport rep;
  rep.command = "scaling";
  rep.data["eps"] = rstr(eps);
  rep.data["alpha"] = rational_string(o.cfg.morrey_alpha);
  put_morrey(rep, dm_scaling_morrey(eps, o.cfg.morrey_alpha));
  return rep;
}

VerificationReport cmd_certify(const Options& o) {
  const DimensionCertificate c = dimension_zero_certificate(parse_rational(o.gamma), parse_rational(o.delta));
  VerificationReport rep;
  rep.command = "certify-dimension";
  rep.data["gamma"] = rational_string(c.gamma);
  rep.data["delta"] = rational_string(c.delta);
  rep.data["m"] = std::to_string(c.m);
  rep.data["check_values"] = {{"first", {{"log2_exact", rational_string(c.log2_first)}, {"value", rendered(c.first)}}},
                              {"second", {{"log2_exact", rational_string(c.log2_second)}, {"value", rendered(c.second)}}}};
  return rep;
}

}  // namespace

int run_command(int argc, const char* const* argv) {
  CLI::App app{"Exact dyadic measures, sparse families and vortex patches"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");
  Options o;
  auto env = [](CLI::Option* opt, const char* name) { opt->envname(std::string("CANTORVORT_") + name); };
  env(app.add_option("--max-gen", o.cfg.max_generation, "largest Cantor generation (<= 6)")->capture_default_str(),
      "MAX_GEN");
  env(app.add_option("--patch-c", o.patch_c, "patch constant c > 1")->capture_default_str(), "PATCH_C");
  env(app.add_option("--alpha", o.alpha, "Morrey exponent alpha")->capture_default_str(), "ALPHA");
  env(app.add_option("--log-base", o.log_base, "Morrey logarithm base")
          ->check(CLI::IsMember({"2", "e"}))
          ->capture_default_str(),
      "LOG_BASE");
  env(app.add_option("--depth", o.cfg.morrey_depth, "deepest Morrey level")->capture_default_str(), "DEPTH");
  env(app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str(),
      "FORMAT");
  env(app.add_option("--output", o.cfg.output_path, "output file; stdout when omitted"), "OUTPUT");
  env(app.add_option("--seed", o.cfg.seed, "seed for sampled checks")->capture_default_str(), "SEED");

  auto* cantor = app.add_subcommand("cantor", "generation-k Cantor cubes");
  cantor->add_option("--k", o.k, "generation")->capture_default_str();
  cantor->add_option("--side", o.side, "dyadic side for the generation bracket");
  cantor->add_option("--intersections", o.intersections, "generation j for the intersection search");
  cantor->add_option("--samples", o.samples, "random placements for the search")->capture_default_str();

  auto* measure = app.add_subcommand("measure", "exact measure of a dyadic or arbitrary cube");
  add_cube_options(measure, o.cube);
  measure->add_option("--k", o.measure_k, "use omega_k instead of the limit measure");
  measure->add_option("--x", o.ax, "corner x of an arbitrary cube");
  measure->add_option("--y", o.ay, "corner y of an arbitrary cube");
  measure->add_option("--side", o.aside, "side of an arbitrary cube");

  auto* morrey = app.add_subcommand("morrey", "dyadic log-Morrey norm");
  morrey->add_option("--target", o.target, "omega, omega-k or patch")
      ->check(CLI::IsMember({"omega", "omega-k", "patch"}))
      ->capture_default_str();
  morrey->add_option("--k", o.k, "generation for omega-k and patch")->capture_default_str();
  morrey->add_option("--min-level", o.min_level, "shallowest level")->capture_default_str();

  auto* sparse = app.add_subcommand("sparse", "towers, sparse certificates and the divergence profile");
  sparse->add_flag("--profile", o.profile, "divergence profile up to --max-gen");
  sparse->add_option("--k", o.k, "tower generation")->capture_default_str();
  sparse->add_option("--tower", o.tower_index, "tower index m (1-based)");
  sparse->add_option("--n", o.threshold, "partial sums use cubes of side < 2^-n")->capture_default_str();
  sparse->add_option("--vortex", o.vortex, "inner-tower lower bound for patch generation N");

  auto* patch = app.add_subcommand("patch", "vortex patch parameters and point evaluation");
  patch->add_option("--k", o.k, "generation")->capture_default_str();
  patch->add_option("--x", o.px, "point x");
  patch->add_option("--y", o.py, "point y");

  auto* energy = app.add_subcommand("energy", "kinetic energy and the weak pairing bound");
  energy->add_option("--k", o.k, "generation")->capture_default_str();
  energy->add_option("--method", o.method, "closed, quadrature or both")
      ->check(CLI::IsMember({"closed", "quadrature", "both"}))
      ->capture_default_str();

  auto* defect = app.add_subcommand("defect", "energy in a cube across generations");
  add_cube_options(defect, o.cube);
  defect->add_option("--k-max", o.k_max, "last generation")->capture_default_str();

  auto* scaling = app.add_subcommand("scaling", "Morrey norm of a single scaled patch");
  scaling->add_option("--eps", o.eps, "dyadic scale in (0, 1)")->capture_default_str();

  auto* certify = app.add_subcommand("certify-dimension", "dimension-zero certificate");
  certify->add_option("--gamma", o.gamma, "gamma > 0")->capture_default_str();
  certify->add_option("--delta", o.delta, "delta > 0")->capture_default_str();

  auto* verify = app.add_subcommand("verify-all", "run the acceptance battery");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    o.cfg.patch_c = parse_rational(o.patch_c);
    o.cfg.morrey_alpha = parse_rational(o.alpha);
    o.cfg.log_base = o.log_base == "e" ? LogBase::E : LogBase::Two;
    o.cfg.format = o.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    o.cfg.validate();

    VerificationReport rep;
    if (*cantor) rep = cmd_cantor(o);
    if (*measure) rep = cmd_measure(o);
    if (*morrey) rep = cmd_morrey(o);
    if (*sparse) rep = cmd_sparse(o);
    if (*patch) rep = cmd_patch(o);
    if (*energy) rep = cmd_energy(o);
    if (*defect) rep = cmd_defect(o);
    if (*scaling) rep = cmd_scaling(o);
    if (*certify) rep = cmd_certify(o);
    if (*verify) rep = verify_all(o.cfg);
    if (!*verify) rep.config = config_json(o.cfg);

    try {
      emit_report(rep, o.cfg.format, o.cfg.output_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 4;
    }
    if (!rep.passed()) {
      for (const auto& c : rep.checks) {
        if (!c.pass) std::cerr << "check failed: " << c.id << " (" << c.detail << ")\n";
      }
      return 1;
    }
    return 0;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cantorvort
