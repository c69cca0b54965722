#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "infswitch/config.hpp"
#include "infswitch/ladder.hpp"
#include "infswitch/potentials.hpp"

namespace infswitch {

/// Command-line overrides that take precedence over file and environment.
struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> replicas;
};

/// Subcommand entry points; they throw on error (main translates exceptions
/// into nonzero exit codes and messages).
void cmd_run(const std::string& config_path, const CliOverrides& overrides = {});
void cmd_adapt(const std::string& config_path, const CliOverrides& overrides = {});
void cmd_ldp(const std::string& config_path, const CliOverrides& overrides = {});
void cmd_reference(const std::string& config_path,
                   const CliOverrides& overrides = {});

/// Shared config resolution, exposed for tests.
std::unique_ptr<PotentialModel> resolve_model(Config& cfg);
TemperatureLadder resolve_ladder(Config& cfg, const PotentialModel& model);

}  // namespace infswitch
