#include "report.hpp"

#include <chrono>
#include <ctime>
#include <limits>
#include <sstream>

namespace aswtower::cli {

Json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

Json rat_json(const Rational& q) { return to_str(q); }

Json make_report(const RunContext& ctx, const std::string& command, Json parameters) {
  Json r;
  r["tool"] = "aswtower";
  r["schema_version"] = 1;
  r["command"] = command;
  r["argv"] = ctx.argv;
  r["spec_digest"] = nullptr;
  Json globals;
  globals["seed"] = ctx.seed;
  globals["lift_override"] = ctx.lift ? Json(to_string(*ctx.lift)) : Json(nullptr);
  globals["lambda"] = ctx.lambda.kind == LambdaMode::Kind::safe
                          ? std::string("safe")
                      : ctx.lambda.scan ? "empirical:" + std::to_string(ctx.lambda.scan)
                                        : std::string("empirical");
  parameters["globals"] = std::move(globals);
  r["parameters"] = std::move(parameters);
  r["results"] = Json::object();
  return r;
}

void finish_report(Json& report, const RunContext& ctx, bool ok, double seconds) {
  report["ok"] = ok;
  if (!ctx.timestamp) return;
  report["timings"] = {{"total_seconds", seconds}};
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  report["timestamp"] = buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
  } else if (j.is_array()) {
    if (j.empty()) rows.emplace_back(path, "");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), rows);
  } else if (j.is_string()) {
    rows.emplace_back(path, j.get<std::string>());
  } else if (j.is_null()) {
    rows.emplace_back(path, "");
  } else {
    rows.emplace_back(path, j.dump());
  }
}

}  // namespace

std::string to_csv(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  os << "path,value\r\n";
  for (const auto& [k, v] : rows) os << csv_field(k) << ',' << csv_field(v) << "\r\n";
  return os.str();
}

void emit(const Json& report, const RunContext& ctx, std::ostream& os) {
  if (ctx.csv)
    os << to_csv(report);
  else
    os << report.dump(2) << '\n';
}

}  // namespace aswtower::cli
