#include "cantorvort/battery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "cantorvort/concentration.hpp"
#include "cantorvort/errors.hpp"
#include "cantorvort/sparse.hpp"
#include "cantorvort/vortex.hpp"

namespace cantorvort {

void RunConfig::validate() const {
  if (max_generation < 0 || max_generation > 6) throw DomainError("max_generation must lie in 0..6");
  if (patch_c <= 1) throw DomainError("patch_c must exceed 1");
  if (sgn(morrey_alpha) < 0) throw DomainError("alpha must be nonnegative");
  if (morrey_depth < 1) throw DomainError("morrey_depth must be at least 1");
}

nlohmann::json config_json(const RunConfig& cfg) {
  return {{"max_generation", std::to_string(cfg.max_generation)},
          {"patch_c", rational_string(cfg.patch_c)},
          {"morrey_alpha", rational_string(cfg.morrey_alpha)},
          {"log_base", cfg.log_base == LogBase::Two ? "2" : "e"},
          {"morrey_depth", std::to_string(cfg.morrey_depth)},
          {"output_format", cfg.format == OutputFormat::Json ? "json" : "csv"},
          {"seed", std::to_string(cfg.seed)}};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string str(std::int64_t v) { return std::to_string(v); }

BigInt random_index(std::mt19937_64& rng, std::int64_t level) {
  BigInt r = 0;
  for (std::int64_t bits = 0; bits < level; bits += 64) {
    r <<= 64;
    const std::uint64_t w = rng();
    r += BigInt(static_cast<unsigned long>(w >> 32)) * BigInt(4294967296UL) +
         BigInt(static_cast<unsigned long>(w & 0xffffffffULL));
  }
  mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(level));
  return r;
}

// Half the samples sit on a Cantor center of generation k, half are uniform.
DyadicCube sample_cube(std::mt19937_64& rng, std::int64_t max_level, int k, int max_generation, bool on_set) {
  const std::int64_t level = std::uniform_int_distribution<std::int64_t>(0, max_level)(rng);
  if (on_set) {
    const std::int64_t n = std::int64_t{1} << (2 * k);
    const std::int64_t m = std::uniform_int_distribution<std::int64_t>(1, n)(rng);
    const CantorCube c = cantor_cube(k, m, max_generation);
    return DyadicCube::containing(c.center_x, c.center_y, level);
  }
  return DyadicCube{level, random_index(rng, level), random_index(rng, level)};
}

Check make_check(std::string id, std::string anchor, std::string relation) {
  Check c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.relation = std::move(relation);
  return c;
}

// ---------------------------------------------------------------------------

Check cantor_exactness(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Check c = make_check("cantor_exactness", "\\omega(Q_{2^{2k},m}) = 2^{-2k}",
                       "omega(Q) = 4^-k on every generation-k cube, k = 1..4; child sums exact on 1000 samples");
  bool ok = true;
  std::int64_t cubes = 0;
  for (int k = 1; k <= 4 && ok; ++k) {
    const Rational want = pow2_rational(-2 * k);
    for (const auto& q : cantor_generation(k, cfg.max_generation)) {
      ++cubes;
      if (omega_cube(q.cube).to_rational() != want) {
        ok = false;
        c.detail = "mismatch at " + q.cube.to_string();
        break;
      }
    }
  }
  std::mt19937_64 rng(cfg.seed);
  int additive = 0;
  for (int i = 0; i < 1000 && ok; ++i) {
    const DyadicCube q = sample_cube(rng, 80, 4, cfg.max_generation, i % 2 == 0);
    DyadicScalar sum;
    for (int ch = 0; ch < 4; ++ch) sum = sum + omega_cube(q.child(ch));
    if (sum == omega_cube(q)) {
      ++additive;
    } else {
      ok = false;
      c.detail = "child sum mismatch at " + q.to_string();
    }
  }
  const double t = seconds_since(t0);
  c.value = render(Rational(omega_cube(cantor_cube(4, 1, cfg.max_generation).cube).to_rational()));
  c.pass = ok && t < 10.0;
  if (ok) c.detail = str(cubes) + " generation cubes exact; " + std::to_string(additive) + " additive samples";
  if (ok && t >= 10.0) c.detail += "; runtime limit exceeded";
  return c;
}

Check morrey_membership(const RunConfig&) {
  const auto t0 = Clock::now();
  Check c = make_check("morrey_membership", "\\omega \\in M^{\\log,1}",
                       "norm = 9/4 exactly at level 4; every level maximum <= 9/4 up to level 1024");
  MorreyConfig mc;
  mc.alpha = 1;
  mc.max_level = 1024;
  const MorreyReport r = morrey_log_norm_omega(mc);
  const Rational bound(9, 4);
  bool levels_ok = true;
  for (const auto& lm : r.per_level_max) levels_ok = levels_ok && lm.exact && *lm.exact <= bound;
  const double t = seconds_since(t0);
  c.value = render(r.exact.value_or(Rational(-1)));
  c.pass = r.exact && *r.exact == bound && r.argmax.level == 4 && levels_ok && t < 30.0;
  c.detail = "argmax " + r.argmax.to_string() + "; " + str(static_cast<std::int64_t>(r.per_level_max.size())) +
             " levels";
  return c;
}

Check dirac_contrast(const RunConfig& cfg) {
  Check c = make_check("dirac_contrast", "\\omega_k \\notin M^{\\log,1}",
                       "omega_1 level maxima = (1 + 2 level) / 4, strictly increasing on levels 5..64");
  MorreyConfig mc;
  mc.alpha = 1;
  mc.max_level = 64;
  const MorreyReport r = morrey_log_norm(omega_k_measure(1, cfg.max_generation), mc);
  bool ok = true;
  Rational prev = -1;
  for (const auto& lm : r.per_level_max) {
    if (lm.level < 5) continue;
    const Rational want = Rational(1 + 2 * lm.level) / 4;
    ok = ok && lm.exact && *lm.exact == want && *lm.exact > prev;
    if (lm.exact) prev = *lm.exact;
  }
  c.value = render(prev);
  c.pass = ok;
  c.detail = "level 64 maximum shown";
  return c;
}

Check sparse_divergence(const RunConfig& cfg) {
  Check c = make_check("sparse_divergence", "s_n(\\omega) = \\infty",
                       "generation contributions all 3/16, cumulative 3/16, 6/16, 9/16, 12/16; towers sparse with "
                       "ratios 3/4");
  const auto profile = divergence_profile(4, cfg.max_generation);
  bool ok = profile.size() == 4;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    ok = ok && profile[i].contribution == Rational(3, 16) &&
         profile[i].cumulative == Rational(3, 16) * static_cast<long>(i + 1);
  }
  std::int64_t towers = 0;
  for (int k = 1; k <= 4 && ok; ++k) {
    for (std::int64_t m = 1; m <= (std::int64_t{1} << (2 * k)) && ok; ++m) {
      const SparseCertificate cert = verify_sparse(build_tower(k, m, cfg.max_generation));
      ++towers;
      ok = cert.valid;
      for (const auto& ratio : cert.ratios) ok = ok && ratio == Rational(3, 4);
      if (!ok) c.detail = "tower (" + std::to_string(k) + ", " + str(m) + ") failed: " + cert.failure;
    }
  }
  c.value = render(profile.empty() ? Rational(0) : profile.back().cumulative);
  c.pass = ok;
  if (ok) c.detail = str(towers) + " towers verified";
  return c;
}

Check patch_exactness(const RunConfig& cfg) {
  Check c = make_check("patch_exactness", "\\int_0^{R_k} s\\,\\omega_k(s)\\,ds = 0",
                       "net circulation 0, L1 mass per cube 4^-k, speed(R^2) = 0, branches continuous; k = 1..4");
  bool ok = true;
  for (int k = 1; k <= 4; ++k) {
    const PatchParams p = patch_params(k, 2, cfg.max_generation);
    const CirculationReport circ = patch_l1_and_circulation(p);
    const bool row = sgn(circ.net_circulation) == 0 && circ.l1_per_cube == pow2_rational(-2 * k) &&
                     sgn(speed_squared_times_pi2(p, p.r2)) == 0 &&
                     sgn(speed_branch_times_pi2(p, PatchRegion::Annulus, p.r2)) == 0 &&
                     speed_branch_times_pi2(p, PatchRegion::Core, p.delta2()) ==
                         speed_branch_times_pi2(p, PatchRegion::Gap, p.delta2()) &&
                     speed_branch_times_pi2(p, PatchRegion::Gap, p.delta) ==
                         speed_branch_times_pi2(p, PatchRegion::Annulus, p.delta);
    if (!row && ok) c.detail = "failed at k = " + std::to_string(k);
    ok = ok && row;
  }
  c.value = render(patch_l1_and_circulation(patch_params(4, 2, cfg.max_generation)).net_circulation);
  c.pass = ok;
  if (ok) c.detail = "k = 4 net circulation shown";
  return c;
}

Check energy_agreement(const RunConfig& cfg) {
  Check c = make_check("energy_agreement", "\\|u_k\\|_{L^2} \\lesssim 1",
                       "closed form vs quadrature within 1e-6 (k = 1, 2); closed form in [1/50, 1] and |E_k - ln2/(8 pi)| "
                       "strictly decreasing (k = 1..4)");
  bool ok = true;
  long double worst = 0.0L;
  for (int k = 1; k <= 2; ++k) {
    const PatchParams p = patch_params(k, 2, cfg.max_generation);
    const long double a = l2_norm_squared(p, EnergyMethod::ClosedForm).to_long_double();
    const long double b = l2_norm_squared(p, EnergyMethod::Quadrature).to_long_double();
    worst = std::max(worst, std::fabs(a - b) / std::fabs(a));
  }
  ok = worst <= 1e-6L;
  const long double limit = std::numbers::ln2_v<long double> / (8.0L * std::numbers::pi_v<long double>);
  long double prev_gap = INFINITY;
  long double last = 0.0L;
  for (int k = 1; k <= 4; ++k) {
    last = l2_norm_squared(patch_params(k, 2, cfg.max_generation)).to_long_double();
    const long double gap = std::fabs(last - limit);
    ok = ok && last >= 1.0L / 50.0L && last <= 1.0L && gap < prev_gap;
    prev_gap = gap;
  }
  c.value = render(last);
  c.pass = ok;
  char buf[96];
  std::snprintf(buf, sizeof buf, "max relative disagreement %.3Le; k = 4 closed form shown", worst);
  c.detail = buf;
  return c;
}

Check energy_fraction_identity(const RunConfig& cfg) {
  Check c = make_check("energy_fraction_identity", "\\int_Q |u_k|^2 \\approx \\omega(Q)",
                       "energy fraction = omega_k(Q) exactly on 100 sampled cubes per k <= 3; stabilized fractions = "
                       "omega(Q)");
  std::mt19937_64 rng(cfg.seed + 7);
  bool ok = true;
  int stabilized = 0;
  for (int k = 0; k <= 3 && ok; ++k) {
    for (int i = 0; i < 100; ++i) {
      const DyadicCube q = sample_cube(rng, cantor_level(k), k, cfg.max_generation, i % 2 == 0);
      const Rational f = energy_fraction(k, q);
      if (f != omega_k_cube(k, q).to_rational()) {
        ok = false;
        c.detail = "mismatch at k = " + std::to_string(k) + ", " + q.to_string();
        break;
      }
      if (stabilization_generation(q.level) <= k) {
        ++stabilized;
        if (f != omega_cube(q).to_rational()) {
          ok = false;
          c.detail = "not stabilized at " + q.to_string();
          break;
        }
      }
    }
  }
  const DefectReport d = reduced_defect(cantor_cube(1, 1, cfg.max_generation).cube, 3);
  ok = ok && d.stabilized_fraction == d.omega_value && d.omega_value == Rational(1, 4);
  c.value = render(d.stabilized_fraction);
  c.pass = ok;
  if (ok) c.detail = "400 samples, " + std::to_string(stabilized) + " past stabilization; first generation-1 cube shown";
  return c;
}

Check weak_convergence(const RunConfig&) {
  Check c = make_check("weak_convergence", "2^{-2^{2k}} 2^{2k} \\to 0",
                       "log2 bound <= -15, -120, -2040, -32760 for k = 1..4; k = 1 pairing within the bound");
  const long double limits[4] = {-15.0L, -120.0L, -2040.0L, -32760.0L};
  bool ok = true;
  std::string logs;
  ExtScalar last;
  for (int k = 1; k <= 4; ++k) {
    const WeakPairing w = weak_pairing_bound(k);
    last = w.bound;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%.2Lf", k == 1 ? "" : ", ", w.bound.log2());
    logs += buf;
    ok = ok && w.bound.log2() <= limits[k - 1];
    if (w.pairing) ok = ok && *w.pairing <= w.phi_sup * w.bound.to_long_double();
  }
  c.value = render(last);
  c.pass = ok;
  c.detail = "log2 bounds " + logs;
  return c;
}

Check vortex_sparse_blowup(const RunConfig& cfg) {
  Check c = make_check("vortex_sparse_blowup", "s_{2^{2N}}(\\{\\omega_k\\}) \\to \\infty",
                       "log2 lower bound >= 25 (N = 1) and >= 490 (N = 2), strictly increasing");
  const VortexSparseBound b1 = vortex_sparse_lower_bound(1, 2, cfg.max_generation);
  const VortexSparseBound b2 = vortex_sparse_lower_bound(2, 2, cfg.max_generation);
  const long double l1 = b1.value.log2();
  const long double l2 = b2.value.log2();
  c.value = render(b2.value);
  c.pass = b1.certificate.valid && b2.certificate.valid && l1 >= 25.0L && l2 >= 490.0L && l2 > l1;
  char buf[96];
  std::snprintf(buf, sizeof buf, "log2 bounds %.2Lf, %.2Lf; families sparse: %s", l1, l2,
                b1.certificate.valid && b2.certificate.valid ? "yes" : "no");
  c.detail = buf;
  return c;
}

Check dimension_zero(const RunConfig&) {
  Check c = make_check("dimension_zero", "l_m^{\\gamma} 2^{2m} < \\delta",
                       "(0.1, 0.01) gives m = 4; (2, 0.01) gives m = 2; both checks below delta");
  const Rational d(1, 100);
  const DimensionCertificate a = dimension_zero_certificate(Rational(1, 10), d);
  const DimensionCertificate b = dimension_zero_certificate(2, d);
  auto below = [&](const DimensionCertificate& x) {
    return pow2_below(x.log2_first, x.delta) && pow2_below(x.log2_second, x.delta);
  };
  c.value = render(Rational(a.m));
  c.pass = a.m == 4 && b.m == 2 && below(a) && below(b);
  c.detail = "m = " + std::to_string(a.m) + " and " + std::to_string(b.m) + "; log2 checks " +
             rational_string(a.log2_first) + ", " + rational_string(b.log2_first);
  return c;
}

Check scaling_contrast(const RunConfig&) {
  Check c = make_check("scaling_contrast",
                       "(\\log \\frac{1}{\\varepsilon})^{-1/2} \\varepsilon^{-1} u_0 (\\frac{x}{\\varepsilon})",
                       "alpha = 1/2 values within a factor 2 over eps = 2^-4, 2^-8, 2^-12; alpha = 1 values within 25% "
                       "of c sqrt(log2 1/eps)");
  const int logs[3] = {4, 8, 12};
  long double half[3];
  long double one[3];
  for (int i = 0; i < 3; ++i) {
    const DyadicScalar eps = DyadicScalar::pow2(-logs[i]);
    half[i] = dm_scaling_morrey(eps, Rational(1, 2)).norm_value.to_long_double();
    one[i] = dm_scaling_morrey(eps, 1).norm_value.to_long_double();
  }
  const long double hi = std::max({half[0], half[1], half[2]});
  const long double lo = std::min({half[0], half[1], half[2]});
  // c from the geometric mean of value / sqrt(L)
  long double logc = 0.0L;
  for (int i = 0; i < 3; ++i) logc += std::log(one[i] / std::sqrt(static_cast<long double>(logs[i])));
  const long double cfit = std::exp(logc / 3.0L);
  long double worst = 0.0L;
  for (int i = 0; i < 3; ++i) {
    worst = std::max(worst, std::fabs(one[i] / (cfit * std::sqrt(static_cast<long double>(logs[i]))) - 1.0L));
  }
  c.value = render(hi / lo);
  c.pass = hi <= 2.0L * lo && worst <= 0.25L;
  char buf[160];
  std::snprintf(buf, sizeof buf, "alpha 1/2: %.4Lf, %.4Lf, %.4Lf; alpha 1: %.4Lf, %.4Lf, %.4Lf; fit c = %.4Lf, worst %.3Lf",
                half[0], half[1], half[2], one[0], one[1], one[2], cfit, worst);
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------

}  // namespace

nlohmann::json cube_json(const DyadicCube& q) {
  return {{"level", str(q.level)},
          {"x", rational_string(q.x().to_rational())},
          {"y", rational_string(q.y().to_rational())},
          {"side", rational_string(q.side().to_rational())}};
}

nlohmann::json family_json(const SparseFamily& fam) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    nlohmann::json e = cube_json(fam.cubes[i]);
    if (fam.witnesses[i].hole) e["hole"] = cube_json(*fam.witnesses[i].hole);
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> all = {
      {1, "Cantor/measure exactness", cantor_exactness},
      {2, "Morrey membership", morrey_membership},
      {3, "Dirac non-membership contrast", dirac_contrast},
      {4, "Sparse divergence", sparse_divergence},
      {5, "Patch exactness", patch_exactness},
      {6, "Energy oracle agreement", energy_agreement},
      {7, "Energy-fraction identity", energy_fraction_identity},
      {8, "Weak convergence profile", weak_convergence},
      {9, "Vortex sparse blow-up", vortex_sparse_blowup},
      {10, "Dimension-zero certificate", dimension_zero},
      {11, "Scaling baseline contrast", scaling_contrast},
  };
  return all;
}

void add_artifacts(VerificationReport& report, const RunConfig& cfg) {
  nlohmann::json hierarchy = nlohmann::json::array();
  for (int k = 0; k <= std::min(2, cfg.max_generation); ++k) {
    for (const auto& c : cantor_generation(k, cfg.max_generation)) {
      nlohmann::json e = cube_json(c.cube);
      e["generation"] = std::to_string(k);
      e["index"] = str(c.index);
      e["address"] = c.address_string();
      e["center_x"] = rational_string(c.center_x.to_rational());
      e["center_y"] = rational_string(c.center_y.to_rational());
      hierarchy.push_back(std::move(e));
    }
  }
  report.data["cantor_hierarchy"] = hierarchy;

  report.data["sparse_tower"] = {{"generation", "1"}, {"index", "1"},
                                 {"cubes", family_json(build_tower(1, 1, cfg.max_generation))}};

  const PatchParams p = patch_params(1, cfg.patch_c, cfg.max_generation);
  nlohmann::json centers = nlohmann::json::array();
  for (const auto& c : cantor_generation(1, cfg.max_generation)) {
    centers.push_back({{"x", rational_string(c.center_x.to_rational())},
                       {"y", rational_string(c.center_y.to_rational())},
                       {"cube", cube_json(c.cube)}});
  }
  report.data["patch_geometry"] = {{"k", "1"},
                                   {"c", rational_string(p.c)},
                                   {"core_radius2", rational_string(p.delta2())},
                                   {"annulus_inner_radius2", rational_string(p.delta)},
                                   {"support_radius2", rational_string(p.r2)},
                                   {"omega_plus", to_json_value(render(p.omega_plus()))},
                                   {"omega_minus", to_json_value(render(p.omega_minus()))},
                                   {"centers", centers}};

  if (cfg.max_generation >= 2) {
    const VortexSparseBound b = vortex_sparse_lower_bound(1, cfg.patch_c, cfg.max_generation);
    SparseFamily first;
    const auto per_patch = b.family.size() / 4;
    for (std::size_t i = 0; i < per_patch; ++i) first.add(b.family.cubes[i], b.family.witnesses[i]);
    report.data["inner_tower"] = {{"n", "1"},
                                  {"inner_cube", cube_json(b.inner_cube)},
                                  {"cubes", family_json(first)},
                                  {"lower_bound", to_json_value(render(b.value))}};
  }

  Table growth;
  growth.columns = {"level", "omega_value", "omega1_value"};
  MorreyConfig mc;
  mc.max_level = 64;
  const MorreyReport lim = morrey_log_norm_omega(mc);
  const MorreyReport dirac = morrey_log_norm(omega_k_measure(1, cfg.max_generation), mc);
  for (std::size_t i = 0; i < lim.per_level_max.size(); ++i) {
    growth.rows.push_back({str(lim.per_level_max[i].level), rational_string(*lim.per_level_max[i].exact),
                           rational_string(*dirac.per_level_max[i].exact)});
  }
  report.tables["morrey_growth"] = growth;

  Table div;
  div.columns = {"k", "generation_contribution", "generation_contribution_exact", "cumulative_sum_sq",
                 "cumulative_sum_sq_exact", "cubes"};
  for (const auto& g : divergence_profile(std::min(cfg.max_generation, 4), cfg.max_generation)) {
    div.rows.push_back({std::to_string(g.k), decimal_string(g.contribution), rational_string(g.contribution),
                        decimal_string(g.cumulative), rational_string(g.cumulative), str(g.cubes)});
  }
  report.tables["sparse_divergence"] = div;

  Table decay;
  decay.columns = {"k", "l2_norm_squared", "weak_pairing_bound", "weak_pairing_bound_log2"};
  for (int k = 1; k <= cfg.max_generation; ++k) {
    const WeakPairing w = weak_pairing_bound(k, cfg.patch_c);
    const ExtScalar e = l2_norm_squared(patch_params(k, cfg.patch_c, cfg.max_generation));
    decay.rows.push_back({std::to_string(k), e.decimal_string(), w.bound.to_string(), w.bound.log2_string()});
  }
  report.tables["energy_decay"] = decay;
}

namespace {

VerificationReport battery_pass(const RunConfig& cfg) {
  VerificationReport r;
  r.command = "verify-all";
  r.config = config_json(cfg);
  for (const auto& c : acceptance_criteria()) r.checks.push_back(c.run(cfg));
  add_artifacts(r, cfg);
  return r;
}

}  // namespace

VerificationReport verify_all(const RunConfig& cfg) {
  cfg.validate();
  VerificationReport r = battery_pass(cfg);
  const std::string first = serialize(r, cfg.format);
  const std::string second = serialize(battery_pass(cfg), cfg.format);
  Check c = make_check("determinism", "byte-identical reports",
                       "two in-process runs with the same configuration serialize identically");
  c.pass = first == second;
  c.value = render(Rational(static_cast<long>(first.size())));
  c.detail = "serialized size in bytes shown";
  r.checks.push_back(std::move(c));
  return r;
}

}  // namespace cantorvort
