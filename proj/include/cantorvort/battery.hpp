#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantorvort/measure.hpp"
#include "cantorvort/report.hpp"
#include "cantorvort/sparse.hpp"

namespace cantorvort {

struct RunConfig {
  int max_generation = 4;
  Rational patch_c = 2;
  Rational morrey_alpha = 1;
  LogBase log_base = LogBase::Two;
  std::int64_t morrey_depth = 1024;
  OutputFormat format = OutputFormat::Json;
  std::string output_path;
  std::uint64_t seed = 0;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

nlohmann::json config_json(const RunConfig& cfg);

/// Level, corner and side as strings.
nlohmann::json cube_json(const DyadicCube& q);
/// Cubes with their witness holes.
nlohmann::json family_json(const SparseFamily& fam);

struct Criterion {
  int number;
  const char* title;
  Check (*run)(const RunConfig&);
};

/// Criteria 1..11; determinism (12) needs whole reports and lives in verify_all.
const std::vector<Criterion>& acceptance_criteria();

/// Figure inputs: cube lists, profiles and series consumed by the plotting scripts.
void add_artifacts(VerificationReport& report, const RunConfig& cfg);

/// Every criterion, the artifacts, and an in-process determinism check.
VerificationReport verify_all(const RunConfig& cfg);

}  // namespace cantorvort
