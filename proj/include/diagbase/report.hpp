#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace diagbase {

inline constexpr int kReportSchemaVersion = 1;

// One checked claim: what was computed, what the closed form or lemma
// predicts, and whether they agree.
struct Assertion {
  std::string id;  // stable key, e.g. "thm1.1-k2/A5/H4"
  std::string claim;
  std::string computed;
  std::string predicted;
  bool pass = false;
  nlohmann::json detail = nlohmann::json::object();
};

// Result of one verification suite. Serialises without timings so that
// repeated runs give byte-identical output; timings go to the manifest.
struct SuiteReport {
  std::string suite;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Assertion> assertions;
  std::string resource_error;  // non-empty when a cap was hit

  void add(Assertion a) { assertions.push_back(std::move(a)); }
  bool all_pass() const;
  std::size_t failures() const;
  // 0 all pass, 1 evidence against a prediction, 2 resource error.
  int exit_code() const;
  nlohmann::json to_json() const;
  static SuiteReport from_json(const nlohmann::json& j);
};

// Deterministic text form: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

std::string sha256_hex(std::string_view data);

struct RunManifest {
  std::vector<std::string> command_line;
  std::string config_digest;  // sha256 of the canonical parameters
  nlohmann::json versions = nlohmann::json::object();
  std::string started_at;  // UTC, ISO 8601
  std::vector<std::pair<std::string, double>> elapsed_ms;  // per suite
  std::vector<std::pair<std::string, bool>> results;       // per assertion id
  std::vector<std::string> outputs;

  static RunManifest begin(int argc, const char* const* argv);
  void record(const SuiteReport& report, double ms);
  nlohmann::json to_json() const;
};

nlohmann::json version_info();

// ---------------------------------------------------------------------------
// CSV, RFC 4180 quoting. Every row has as many fields as the header.

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

std::string to_csv(const CsvTable& t);
CsvTable parse_csv(std::string_view text);

// Columns: suite,id,claim,computed,predicted,pass
CsvTable assertions_csv(const SuiteReport& r);

// Writes a file, creating parent directories; failures name the path.
void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace diagbase
