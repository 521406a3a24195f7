#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantorvort/dyadic.hpp"
#include "cantorvort/ext_scalar.hpp"

namespace cantorvort {

/// A number rendered three ways. Every field is a string in the output.
struct Rendered {
  std::string decimal;
  std::optional<std::string> exact;     ///< "p/q"
  std::optional<std::string> extended;  ///< "+m*2^e"
  std::optional<std::string> log2;   ///< "log2=..."
};

Rendered render(const Rational& q);
Rendered render(const ExtScalar& x);
Rendered render(long double v);

struct Check {
  std::string id;
  std::string anchor;
  std::string relation;
  Rendered value;
  bool pass = false;
  std::string detail;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct VerificationReport {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();
  std::map<std::string, Table> tables;
  std::string csv_table;  ///< table written in CSV mode; the check list when empty

  bool passed() const;
};

enum class OutputFormat { Json, Csv };

std::string to_json(const VerificationReport& r);
std::string to_csv(const VerificationReport& r);
std::string serialize(const VerificationReport& r, OutputFormat fmt);

/// Writes through a temporary file and a rename; "-" or "" means stdout.
void emit_report(const VerificationReport& r, OutputFormat fmt, const std::string& path);

nlohmann::json to_json_value(const Rendered& v);
nlohmann::json to_json_value(const Table& t);

}  // namespace cantorvort
