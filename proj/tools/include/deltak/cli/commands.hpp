#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deltak/cli/problem.hpp"
#include "deltak/errors.hpp"

namespace deltak::cli {

using Json = nlohmann::ordered_json;

/// Bad command line, unknown command or a target of the wrong kind.
class UsageError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

inline constexpr const char* kCharSetAssumption =
    "input set assumed to be a characteristic set; primality/coherence not verified";

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<std::string> assumptions;
  Json timings = Json::object();
  std::vector<std::string> text;

  Json to_json() const;
};

/// Words after the command: "--key value" options, "--flag" switches and
/// positional words.
struct CommandArgs {
  std::vector<std::string> positional;
  std::map<std::string, std::string> options;
  std::set<std::string> flags;

  static CommandArgs parse(const std::vector<std::string>& words);
  std::optional<std::string> option(const std::string& key) const;
  unsigned unsigned_option(const std::string& key, unsigned fallback) const;
  std::string joined() const;
};

struct RunOptions {
  bool timings = false;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> target;
};

std::vector<std::string> command_names();

Report run_command(const std::string& command, const std::vector<std::string>& args, const ProblemFile& pf,
                   const RunOptions& options = {});

/// Human-readable rendering of a report.
std::string render_text(const Report& r);

}  // namespace deltak::cli
