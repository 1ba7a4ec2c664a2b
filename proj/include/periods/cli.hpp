#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "periods/padic.hpp"

namespace periods {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

struct RunConfig {
  std::string command;
  std::optional<long> p;
  std::optional<long> precision;
  bool json = false;
  std::uint64_t seed = 1;

  std::string x;           // gamma
  std::optional<long> a;   // gk
  std::string a_rational;  // kummer
  std::optional<long> d;   // cm
  std::optional<long> ramified_n;
  std::optional<long> probe_height;
  std::string matrix_path;  // mixed
  std::string v0_path;
  std::string lambda0;  // hyper
  std::string e = "0";
  std::optional<long> order;
  std::string at;
  std::string f;  // frob
  bool selftest = false;
  std::string case_name;  // bound
  std::optional<long> r;  // closure
  std::optional<long> cap;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 failed check or precision shortfall, 2 configuration error
  Json report;
  std::string text;
};

/// Upper bound on requested precision; PERIODS_PRECISION_CAP overrides.
long precision_cap();

/// Runs one subcommand. Never throws for library errors; they are mapped
/// to exit codes and an "error" object in the report.
RunResult execute(const RunConfig& config);

Json padic_json(const Padic& x);

}  // namespace periods
