#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aswtower/profile.hpp"
#include "aswtower/rational.hpp"
#include "aswtower/tower.hpp"
#include "json.hpp"

namespace aswtower::cli {

using Json = nlohmann::ordered_json;

struct RunContext {
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  bool csv = false;
  bool timestamp = true;
  std::optional<LiftConvention> lift;
  LambdaMode lambda;
  unsigned threads = 0;
};

struct CommandResult {
  Json report;
  bool ok = true;
  std::string summary;  // human-readable, goes to stderr
};

// integers that fit in int64 become JSON numbers, others decimal strings
Json big_json(const BigInt& v);
Json rat_json(const Rational& q);

// skeleton with command echo and parameters; results filled by the caller
Json make_report(const RunContext& ctx, const std::string& command, Json parameters);
// adds ok, timings and timestamp
void finish_report(Json& report, const RunContext& ctx, bool ok, double seconds);

// path,value rows with CRLF line endings
std::string to_csv(const Json& report);
void emit(const Json& report, const RunContext& ctx, std::ostream& os);

}  // namespace aswtower::cli
