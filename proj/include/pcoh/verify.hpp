#ifndef PCOH_VERIFY_HPP
#define PCOH_VERIFY_HPP

// Per-group analysis records and the corpus verification runner.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcoh/cohomology.hpp"
#include "pcoh/pcgroup.hpp"

namespace pcoh {

/// Registered checks, in report order.
const std::vector<std::string> &check_registry();

struct CheckResult {
  std::string verdict = "skipped";  // pass | fail | inconclusive | skipped
  std::string witness;
};

struct VerifyOptions {
  std::size_t max_degree = 8;
  std::optional<std::size_t> rank_override;
  int threads = 1;
  bool timings = false;
  MinresOptions minres;
};

struct GroupInput {
  std::string name;  // used when the group failed to load
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::optional<PcGroup> group;
  std::string error;
  std::uint32_t p = 0;  // from the raw file when the group failed to load
  std::size_t order_exp = 0;
};

struct GroupRecord {
  std::string name;
  std::uint32_t p = 0;
  std::size_t order_exp = 0;
  std::string family;
  bool error = false;
  nlohmann::json data;  // invariants, predicates, tower, dims, timings
  std::map<std::string, CheckResult> checks;
};

struct VerificationReport {
  std::vector<GroupRecord> groups;  // ordered by name
  std::map<std::string, CheckResult> global;
  bool any_fail() const;
  nlohmann::json to_json() const;
  /// name,p,order_exp,check,verdict,witness
  std::string to_csv() const;
};

/// Full record for one group; FAMILY-CONST is left skipped (it needs the
/// whole corpus).
GroupRecord analyze_group(const PcGroup &G, const std::string &family,
                          const VerifyOptions &opts = {});

std::vector<GroupInput> builtin_inputs(std::uint32_t p);
/// One input per corpus file; files that fail to load become error inputs.
std::vector<GroupInput> directory_inputs(const std::filesystem::path &dir,
                                         const ValidateOptions &vopts = {});

VerificationReport run_verify(const std::vector<GroupInput> &inputs,
                              const VerifyOptions &opts = {});

}  // namespace pcoh

#endif
