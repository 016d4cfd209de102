#pragma once

#include "datum/dsl.hpp"

namespace datum {
namespace cli {

/// Exit codes: 0 ok, 1 verification or evaluation failure, 2 usage/IO error.
struct CommandResult {
  int exit_code = 0;
  std::string output;
};

/// Budget resolution: explicit value, else DATUM_BUDGET from the environment,
/// else one million steps.
StepBudget resolve_budget(std::optional<std::uint64_t> requested);

/// Parses the file, runs every stored edge verification, witness
/// processability, both order checks and the dimension-acyclicity check.
CommandResult cmd_check(const std::string& path, bool json);

CommandResult cmd_eval(const std::string& path, const std::string& op_name,
                       const std::vector<std::string>& args,
                       std::optional<std::uint64_t> budget = std::nullopt);

CommandResult cmd_cast(const std::string& path, const std::string& from_type,
                       const std::string& to_type, const std::string& value);

CommandResult cmd_graph(const std::string& path, const std::string& format);

CommandResult cmd_closure(const std::string& path, int depth, std::size_t cap);

} // namespace cli
} // namespace datum
