#include "cantorvort/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <unistd.h>

namespace cantorvort {

Rendered render(const Rational& q) {
  Rendered r;
  r.decimal = decimal_string(q);
  r.exact = rational_string(q);
  if (sgn(q) > 0) r.log2 = ExtScalar::from_rational(q).log2_string();
  return r;
}

Rendered render(const ExtScalar& x) {
  Rendered r;
  r.decimal = x.decimal_string();
  r.extended = x.to_string();
  if (x.sign() > 0) r.log2 = x.log2_string();
  return r;
}

Rendered render(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  Rendered r;
  r.decimal = buf;
  if (v > 0.0L) r.log2 = log2_domain_string(std::log2(v));
  return r;
}

bool VerificationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::json to_json_value(const Rendered& v) {
  nlohmann::json j = {{"decimal", v.decimal}};
  if (v.exact) j["exact"] = *v.exact;
  if (v.extended) j["extended"] = *v.extended;
  if (v.log2) j["log2"] = *v.log2;
  return j;
}

nlohmann::json to_json_value(const Table& t) {
  return {{"columns", t.columns}, {"rows", t.rows}};
}

std::string to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["config"] = r.config;
  j["status"] = r.passed() ? "pass" : "fail";
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"id", c.id},
                           {"anchor", c.anchor},
                           {"relation", c.relation},
                           {"value", to_json_value(c.value)},
                           {"pass", c.pass ? "true" : "false"},
                           {"detail", c.detail}});
  }
  j["data"] = r.data;
  j["tables"] = nlohmann::json::object();
  for (const auto& [name, t] : r.tables) j["tables"][name] = to_json_value(t);
  return j.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void csv_row(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const VerificationReport& r) {
  Table t;
  if (!r.csv_table.empty()) {
    t = r.tables.at(r.csv_table);
  } else {
    t.columns = {"id", "anchor", "relation", "decimal", "exact", "log2", "pass", "detail"};
    for (const auto& c : r.checks) {
      t.rows.push_back({c.id, c.anchor, c.relation, c.value.decimal, c.value.exact.value_or(""),
                        c.value.log2.value_or(""), c.pass ? "true" : "false", c.detail});
    }
  }
  std::string out;
  csv_row(out, t.columns);
  for (const auto& row : t.rows) csv_row(out, row);
  return out;
}

std::string serialize(const VerificationReport& r, OutputFormat fmt) {
  return fmt == OutputFormat::Json ? to_json(r) : to_csv(r);
}

void emit_report(const VerificationReport& r, OutputFormat fmt, const std::string& path) {
  const std::string text = serialize(r, fmt);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

}  // namespace cantorvort
