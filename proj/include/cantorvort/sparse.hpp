#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cantorvort/cantor.hpp"
#include "cantorvort/ext_scalar.hpp"

namespace cantorvort {

/// Witness set of a cube: the cube itself, or the cube minus a strict dyadic subcube.
struct Witness {
  std::optional<DyadicCube> hole;

  Rational area_ratio(const DyadicCube& q) const;
};

struct SparseFamily {
  std::vector<DyadicCube> cubes;
  std::vector<Witness> witnesses;

  void add(DyadicCube q, Witness w = {});
  std::size_t size() const { return cubes.size(); }
};

struct SparseCertificate {
  bool valid = false;
  std::vector<Rational> ratios;  ///< |witness| / |cube|, in family order
  std::string failure;
};

/// Nested cubes at the lower-left corner of Cantor cube m (1-based) of generation k,
/// levels 4^k + 1 .. 4^(k+1); each witness is the cube minus its lower-left child.
SparseFamily build_tower(int k, std::int64_t m, int max_generation = kDefaultMaxGeneration);
/// Same construction for an explicit anchor and level range.
SparseFamily nested_tower(const DyadicScalar& x, const DyadicScalar& y, std::int64_t first_level,
                          std::int64_t last_level);
/// Union of the towers of every Cantor cube of generation k.
SparseFamily generation_towers(int k, int max_generation = kDefaultMaxGeneration);

SparseCertificate verify_sparse(const SparseFamily& fam);

/// Exact cube mass of some measure.
using CubeMass = std::function<Rational(const DyadicCube&)>;
CubeMass omega_mass();

struct SparseSum {
  Rational sum_squares;
  ExtScalar value;  ///< sqrt(sum_squares)
  std::int64_t cubes_used = 0;
};

/// (sum over cubes of side < 2^-n of mass^2)^(1/2).
SparseSum sparse_partial_sum(const CubeMass& mu, const SparseFamily& fam, std::int64_t n);

struct GenerationContribution {
  int k = 0;
  Rational contribution;
  Rational cumulative;
  std::int64_t cubes = 0;
};

std::vector<GenerationContribution> divergence_profile(int K, int max_generation = kDefaultMaxGeneration);

}  // namespace cantorvort
