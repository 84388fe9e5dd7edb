#pragma once

#include <string>

#include "ffgal/certify.hpp"

namespace ffgal {

struct RunOptions {
  u64 seed = 1;
  u64 budget = u64{1} << 20;
  unsigned jobs = 1;
  u64 samples = 1000;
  int max_k = 4;
};

// Exit-code contract shared by the C API and the CLI.
enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitHypothesis = 2, kExitBudget = 3, kExitFailed = 4 };
int exit_code_for(Errc e);

struct CommandResult {
  int status = kExitOk;
  std::string json;     // two-space indented
  std::string summary;  // one or more human-readable lines
};

// Each command throws Error on bad input or unmet hypotheses; a FAILED certificate is a status, not a throw.
CommandResult cmd_reproduce(const std::string& table, const RunOptions& opt);
CommandResult cmd_search(const std::string& field, const std::string& target, int n, int m, const std::string& strategy,
                         const RunOptions& opt);
CommandResult cmd_twin(const std::string& field, int deg, const std::string& b, const RunOptions& opt);
CommandResult cmd_hsearch(const std::string& field, const std::string& F, int e, const std::string& strategy, const RunOptions& opt);
CommandResult cmd_morse_count(const std::string& field, int n, const RunOptions& opt);
CommandResult cmd_frob(const std::string& field, const std::string& F, const RunOptions& opt);
CommandResult cmd_group(const std::string& gens, u64 p);
CommandResult cmd_family(const std::string& spec, const RunOptions& opt);
CommandResult cmd_replay(const std::string& certificate_json);

}  // namespace ffgal
