#include "diagbase/report.hpp"

#include <openssl/evp.h>

#include <boost/version.hpp>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "diagbase/errors.hpp"

namespace diagbase {

bool SuiteReport::all_pass() const { return resource_error.empty() && failures() == 0; }

std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const auto& a : assertions) n += !a.pass;
  return n;
}

int SuiteReport::exit_code() const {
  if (!resource_error.empty()) return 2;
  return failures() == 0 ? 0 : 1;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["suite"] = suite;
  j["parameters"] = parameters;
  j["pass"] = all_pass();
  j["failures"] = failures();
  j["resource_error"] = resource_error.empty() ? nlohmann::json(nullptr) : nlohmann::json(resource_error);
  auto& arr = j["assertions"] = nlohmann::json::array();
  for (const auto& a : assertions)
    arr.push_back({{"id", a.id},
                   {"claim", a.claim},
                   {"computed", a.computed},
                   {"predicted", a.predicted},
                   {"pass", a.pass},
                   {"detail", a.detail}});
  return j;
}

SuiteReport SuiteReport::from_json(const nlohmann::json& j) {
  if (j.at("schema_version").get<int>() != kReportSchemaVersion)
    throw ConfigError("unsupported report schema version");
  SuiteReport r;
  r.suite = j.at("suite").get<std::string>();
  r.parameters = j.at("parameters");
  if (!j.at("resource_error").is_null()) r.resource_error = j["resource_error"].get<std::string>();
  for (const auto& a : j.at("assertions"))
    r.assertions.push_back({a.at("id").get<std::string>(), a.at("claim").get<std::string>(),
                            a.at("computed").get<std::string>(), a.at("predicted").get<std::string>(),
                            a.at("pass").get<bool>(), a.at("detail")});
  return r;
}

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalConsistencyError("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

nlohmann::json version_info() {
  nlohmann::json j;
#ifdef DIAGBASE_VERSION
  j["diagbase"] = DIAGBASE_VERSION;
#else
  j["diagbase"] = "0.1.0";
#endif
  j["boost"] = std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) + "." +
               std::to_string(BOOST_VERSION % 100);
  j["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH);
#if defined(__clang__)
  j["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  j["compiler"] = std::string("gcc ") + __VERSION__;
#endif
  j["cplusplus"] = static_cast<std::int64_t>(__cplusplus);
  return j;
}

RunManifest RunManifest::begin(int argc, const char* const* argv) {
  RunManifest m;
  for (int i = 0; i < argc; ++i) m.command_line.emplace_back(argv[i]);
  m.versions = version_info();
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  m.started_at = os.str();
  return m;
}

void RunManifest::record(const SuiteReport& report, double ms) {
  elapsed_ms.emplace_back(report.suite, ms);
  for (const auto& a : report.assertions) results.emplace_back(a.id, a.pass);
  if (config_digest.empty()) config_digest = sha256_hex(canonical_dump(report.parameters));
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command_line"] = command_line;
  j["config_digest"] = config_digest;
  j["versions"] = versions;
  j["started_at"] = started_at;
  auto& el = j["elapsed_ms"] = nlohmann::json::object();
  for (const auto& [k, v] : elapsed_ms) el[k] = v;
  auto& res = j["results"] = nlohmann::json::object();
  for (const auto& [k, v] : results) res[k] = v;
  j["outputs"] = outputs;
  return j;
}

// ---------------------------------------------------------------------------

namespace {

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += quote_field(row[i]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const CsvTable& t) {
  std::string out;
  append_row(out, t.header);
  for (const auto& r : t.rows) {
    if (r.size() != t.header.size()) throw ConfigError("csv row width does not match header");
    append_row(out, r);
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"': quoted = true; any = true; break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r': break;
      case '\n':
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
        break;
      default: field += c; any = true;
    }
  }
  if (quoted) throw ConfigError("unterminated quoted csv field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  CsvTable t;
  if (rows.empty()) return t;
  t.header = std::move(rows.front());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != t.header.size())
      throw ConfigError("csv line " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                        " fields, expected " + std::to_string(t.header.size()));
    t.rows.push_back(std::move(rows[i]));
  }
  return t;
}

CsvTable assertions_csv(const SuiteReport& r) {
  CsvTable t;
  t.header = {"suite", "id", "claim", "computed", "predicted", "pass"};
  for (const auto& a : r.assertions)
    t.rows.push_back({r.suite, a.id, a.claim, a.computed, a.predicted, a.pass ? "true" : "false"});
  return t;
}

void write_text_file(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace diagbase
