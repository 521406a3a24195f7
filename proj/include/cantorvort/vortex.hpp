#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cantorvort/cantor.hpp"
#include "cantorvort/dyadic.hpp"
#include "cantorvort/ext_scalar.hpp"
#include "cantorvort/measure.hpp"

namespace cantorvort {

/// Patch generation k. Irrational quantities are kept squared or multiplied by pi:
/// R itself is never formed, and Omega^{+-} are stored as Omega * pi.
struct PatchParams {
  int k = 1;
  Rational c = 2;
  Rational delta;           ///< core radius; also the squared inner radius of the annulus
  Rational r2;              ///< R^2 = c delta
  Rational omega_plus_pi;   ///< Omega^+ * pi
  Rational omega_minus_pi;  ///< Omega^- * pi

  Rational delta2() const { return delta * delta; }
  ExtScalar omega_plus() const;
  ExtScalar omega_minus() const;
};

PatchParams patch_params(int k, const Rational& c = 2, int max_generation = kDefaultMaxGeneration);

struct Point {
  Rational x;
  Rational y;
};

enum class PatchRegion { Core, Gap, Annulus, Outside };
const char* region_name(PatchRegion r);

struct PatchHit {
  PatchRegion region = PatchRegion::Outside;
  std::int64_t m = 0;  ///< 1-based patch index, 0 when outside every Cantor cube
  Rational dx;         ///< offset from the patch center
  Rational dy;
  Rational d2;
};

/// Which patch (if any) governs x; balls are disjoint, so at most one does.
PatchHit locate_patch(const PatchParams& p, const Point& x);

/// Omega * pi at x (exact).
Rational vorticity_times_pi_at(const PatchParams& p, const Point& x);
ExtScalar vorticity_at(const PatchParams& p, const Point& x);

/// Breakpoints of the radial speed, as squared radii: delta^2, delta, R^2.
struct RadialSpeed {
  Rational core_end2;
  Rational gap_end2;
  Rational support_end2;
};
RadialSpeed radial_speed(const PatchParams& p);

/// |u|^2 pi^2 at squared radius r2 (exact).
Rational speed_squared_times_pi2(const PatchParams& p, const Rational& r2);
ExtScalar speed_profile(const PatchParams& p, const Rational& r2);
/// One closed-form branch evaluated at any r2; used to check continuity at the breakpoints.
Rational speed_branch_times_pi2(const PatchParams& p, PatchRegion branch, const Rational& r2);

struct Velocity {
  ExtScalar ux;
  ExtScalar uy;
};
Velocity velocity_at(const PatchParams& p, const Point& x);

struct CirculationReport {
  Rational l1_per_cube;
  Rational net_circulation;
  Rational total_l1;
};
CirculationReport patch_l1_and_circulation(const PatchParams& p);

enum class EnergyMethod { ClosedForm, Quadrature };

/// Energy of one patch, 2 pi ∫ |u|^2 r dr.
ExtScalar patch_energy(const PatchParams& p, EnergyMethod method = EnergyMethod::ClosedForm);
/// ||u_k||^2 over the unit square (4^k patches).
ExtScalar l2_norm_squared(const PatchParams& p, EnergyMethod method = EnergyMethod::ClosedForm);
/// The middle-annulus part of ||u_k||^2, a lower bound for it.
ExtScalar l2_middle_term(const PatchParams& p);

/// ∫ u_k . phi over the unit square for phi = (-y, x), by quadrature; k <= 2.
long double pairing_with_rotation_field(const PatchParams& p);

/// Weak-form residuals of the steady equations for k <= 1, by polar quadrature.
struct SteadyResiduals {
  long double divergence = 0.0L;  ///< max |∫ u . grad f| over the test battery
  long double transport = 0.0L;   ///< max |∫ (u . grad u) . phi| over the test battery
};
SteadyResiduals steady_state_residuals(const PatchParams& p);

// ---------------------------------------------------------------------------
// Morrey norms of absolutely continuous radial densities

/// |omega| = density on r^2 in [inner2, outer2) around each center.
struct DensityBand {
  Rational inner2;
  Rational outer2;
  long double density = 0.0L;
  std::optional<Rational> density_pi;  ///< density * pi when rational
};

struct RadialDensity {
  std::vector<Point> centers;
  std::vector<DensityBand> bands;  ///< shared by every center
};

RadialDensity patch_density(const PatchParams& p);

struct CubeMassBounds {
  long double value = 0.0L;
  long double error = 0.0L;
  /// mass = over_pi / pi + plain when every piece was decided exactly.
  std::optional<std::array<Rational, 2>> exact;
};
CubeMassBounds density_cube_mass(const RadialDensity& d, const DyadicCube& q);

/// Branch and bound over the dyadic tree, certified to the area error bound.
MorreyReport density_morrey(const RadialDensity& d, const MorreyConfig& cfg);
/// Requires cfg.max_level <= 4 * 4^(k+1).
MorreyReport density_morrey_norm(const PatchParams& p, const MorreyConfig& cfg);

/// Scaled unit patch eps^-2 (log2(1/eps))^(-1/2) 1_{B(c, eps)}, c = (1/2, 1/2), over
/// levels 0 .. 2 log2(1/eps) + 10.
MorreyReport dm_scaling_morrey(const DyadicScalar& eps, const Rational& alpha);

}  // namespace cantorvort
