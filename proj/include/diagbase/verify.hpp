#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagbase/base_suite.hpp"
#include "diagbase/report.hpp"
#include "json.hpp"

namespace diagbase {

// Knobs shared by every verification suite. Empty lists mean "use the
// suite's default instances".
struct VerifyOptions {
  std::vector<std::string> T;          // simple groups, e.g. {"A5", "L2_8"}
  std::uint64_t cap_omega = kDefaultOmegaCap;
  std::uint64_t cap_order = 1200;      // largest |T| the catalog will build
  std::uint32_t max_len = 4;           // longest witness tuple searched
  unsigned threads = 0;                // 0: hardware concurrency
  std::vector<std::uint64_t> n;        // degrees for the partition lemmas
  std::uint64_t k_max = 0;             // 0: 3n
  std::vector<std::uint64_t> sim_n;    // |T| values for the refinement simulator
  std::uint64_t ceil_m_max = 10000;
  std::uint32_t log_chain_max = 5000;  // largest m for the asymptotic chain
  bool include_optional = false;       // the slow Alt(6) tuple instance

  nlohmann::json to_json() const;
  // Unknown keys are rejected so that typos in config files surface.
  static VerifyOptions from_json(const nlohmann::json& j);
};

const std::vector<std::string>& suite_names();

// Runs a suite by name. Resource errors are caught and recorded in the
// report; any other error propagates.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opts = {});

SuiteReport verify_two_factor(const VerifyOptions& opts = {});
SuiteReport verify_three_factor(const VerifyOptions& opts = {});
SuiteReport verify_greedy_excess(const VerifyOptions& opts = {});
SuiteReport verify_partition_lemmas(const VerifyOptions& opts = {});
SuiteReport verify_rc_witnesses(const VerifyOptions& opts = {});
SuiteReport verify_k2_criteria(const VerifyOptions& opts = {});
SuiteReport verify_all_desk(const VerifyOptions& opts = {});

// When the greedy bound exceeds b by one, the value of the greedy bound,
// read off the explicit list of exceptions: k = |T|^2 - 2 with Q = S_k
// (except the full group over A5, A6), k = |T|^l - 2 with l >= 3 and
// Q = S_k, or k = |T|^l with l >= 2 and Q = A_k.
std::optional<std::uint32_t> greedy_excess_case(const ClosedFormInput& in);

// The five k = 3 configurations over A5 with P and Q in {A_3, S_3}.
std::vector<DiagonalConfig> a5_cube_configs();

}  // namespace diagbase
