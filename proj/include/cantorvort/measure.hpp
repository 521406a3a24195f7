#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantorvort/cantor.hpp"
#include "cantorvort/dyadic.hpp"
#include "cantorvort/ext_scalar.hpp"

namespace cantorvort {

struct Atom {
  DyadicScalar x;
  DyadicScalar y;
  DyadicScalar weight;
};

/// Finite sum of weighted Dirac masses.
struct AtomicMeasure {
  std::vector<Atom> atoms;

  DyadicScalar total_mass() const;
  /// Exact mass of the half-open cube.
  DyadicScalar mass(const DyadicCube& q) const;
};

/// omega_k: one atom of weight 4^-k at every center of generation k.
AtomicMeasure omega_k_measure(int k, int max_generation = kDefaultMaxGeneration);
AtomicMeasure point_mass(const DyadicScalar& x, const DyadicScalar& y, const DyadicScalar& weight);

DyadicScalar omega_k_cube(int k, const DyadicCube& q);
/// Smallest k with 4^k >= level + 1; omega_j agrees with omega on such cubes for every j >= k.
int stabilization_generation(std::int64_t level);
/// Exact value of the limit measure.
DyadicScalar omega_cube(const DyadicCube& q);
/// Exact value of the limit measure on a cube with dyadic corner and side.
DyadicScalar omega_arbitrary_cube(const ArbitraryCube& q, int max_generation = kDefaultMaxGeneration);

enum class LogBase { Two, E };

struct MorreyConfig {
  Rational alpha = 1;
  LogBase log_base = LogBase::Two;
  std::int64_t max_level = 1024;
  std::int64_t min_level = 1;
};

struct LevelMax {
  std::int64_t level = 0;
  DyadicCube cube;
  Rational mass;                ///< mass of `cube` (exact unless mass_error > 0)
  long double mass_error = 0.0L;
  ExtScalar value;              ///< weight^alpha * mass
  std::optional<Rational> exact;  ///< when alpha is an integer and the base is 2
};

struct MorreyReport {
  ExtScalar norm_value;
  std::optional<Rational> exact;
  DyadicCube argmax;
  std::vector<LevelMax> per_level_max;
};

/// (1 + 2 level log 2)^alpha with the logarithm taken in the configured base.
ExtScalar morrey_weight(std::int64_t level, const MorreyConfig& cfg);
/// Exact weight^alpha when it is rational.
std::optional<Rational> morrey_weight_exact(std::int64_t level, const MorreyConfig& cfg);

/// Dyadic log-Morrey norm over levels min_level..max_level.
MorreyReport morrey_log_norm(const AtomicMeasure& mu, const MorreyConfig& cfg);
/// The same for the limit measure: on levels <= L it coincides with omega_{k*(L)}.
MorreyReport morrey_log_norm_omega(const MorreyConfig& cfg);

/// Folds one level's maximum into a report (keeps the first maximum among ties).
void absorb_level(MorreyReport& report, LevelMax lm);

}  // namespace cantorvort
