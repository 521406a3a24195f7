#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantorvort/cantor.hpp"
#include "cantorvort/ext_scalar.hpp"
#include "cantorvort/sparse.hpp"
#include "cantorvort/vortex.hpp"

namespace cantorvort {

/// ∫_Q |u_k|^2 for level(Q) <= 4^k, where every patch ball lies inside Q or outside it.
ExtScalar energy_in_cube(const PatchParams& p, const DyadicCube& q);
/// energy_in_cube / ||u_k||^2, exactly (the per-patch energy cancels).
Rational energy_fraction(int k, const DyadicCube& q);

struct DefectEntry {
  int k = 0;
  ExtScalar energy;
  Rational fraction;
};

struct DefectReport {
  DyadicCube cube;
  std::vector<DefectEntry> per_k_energy;
  Rational stabilized_fraction;
  Rational omega_value;
  ExtScalar limit_constant;  ///< ||u_kmax||^2
};

/// Energies for k = first admissible generation .. k_max.
DefectReport reduced_defect(const DyadicCube& q, int k_max, const Rational& c = 2);

struct WeakPairing {
  int k = 0;
  Rational support_area;  ///< |E_k| = 4^k l_k^2
  ExtScalar bound;        ///< sqrt(|E_k|) ||u_k||
  std::optional<long double> pairing;  ///< |∫ u_k . phi| for phi = (-y, x), k == 1 only
  long double phi_sup = 0.0L;
};
WeakPairing weak_pairing_bound(int k, const Rational& c = 2);

struct VortexSparseBound {
  int n = 0;
  DyadicCube inner_cube;  ///< the inner cube of the first patch
  SparseFamily family;
  SparseCertificate certificate;
  Rational area_squares;  ///< sum of |Q|^2 over the family
  ExtScalar value;        ///< Omega^+ sqrt(area_squares)
};
/// Inner towers under the core of every generation-N patch.
VortexSparseBound vortex_sparse_lower_bound(int n, const Rational& c = 2,
                                            int max_generation = kDefaultMaxGeneration);

struct DimensionCertificate {
  Rational gamma;
  Rational delta;
  int m = 0;
  Rational log2_first;   ///< log2(l_m^gamma 4^m)
  Rational log2_second;  ///< log2(l_m)
  ExtScalar first;
  ExtScalar second;
};
/// 2^e < d, exactly; e should have a small denominator.
bool pow2_below(const Rational& e, const Rational& d);

/// Smallest m with l_m^gamma 4^m < delta and l_m < delta.
DimensionCertificate dimension_zero_certificate(const Rational& gamma, const Rational& delta);

}  // namespace cantorvort
