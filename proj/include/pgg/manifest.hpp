#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgg/agents.hpp"
#include "pgg/http_gateway.hpp"
#include "pgg/runner.hpp"

namespace pgg {

enum class GatewayMode { Live, Replay, Mock };

GatewayMode parse_gateway_mode(const std::string& s);
const char* to_string(GatewayMode m);

struct GatewaySettings {
  GatewayMode mode = GatewayMode::Mock;
  /// Replay source; required in replay mode.
  std::string fixture;
  /// When set, every live/mock exchange is captured here.
  std::string record;
  TransportPolicy policy;
  /// Manifest-declared endpoints, by provider id; falls back to built-ins.
  std::map<std::string, ProviderConfig> providers;
};

/// Everything a batch run needs, as loaded from a manifest file. CLI flags
/// override individual fields after loading.
struct RunManifest {
  StudyStyle study = StudyStyle::Study1;
  std::vector<AgentSpec> agents;
  /// Empty filters mean "the full grid".
  std::optional<Condition> condition_filter;
  std::vector<std::string> pairing_filter;
  int games = 0;  // 0: study default
  std::uint64_t seed = 1;
  int parallelism = 1;
  int num_rounds = 20;
  int endowment = 10;
  std::int64_t multiplier_tenths = 16;
  TemplateEdition edition = TemplateEdition::Corrected;
  std::string out_dir = "out";
  GatewaySettings gateway;

  void validate() const;
};

/// ${VAR} references in any manifest string are replaced from the
/// environment; an unset variable is a ConfigError naming it.
std::string interpolate_env(const std::string& text);

RunManifest load_manifest(const std::filesystem::path& path);
RunManifest manifest_from_json(const std::string& text);

AgentSpec agent_spec_from_json(const std::string& text);

/// Builds the transport stack the settings describe: mock or live underneath,
/// record capture around it if asked, or pure replay. Replay needs no
/// credentials and performs no network I/O. routes lists the (provider id,
/// model) pairs live traffic will carry, so requests reach the right
/// endpoint when a run mixes providers.
std::shared_ptr<Transport> build_transport(
    const GatewaySettings& settings,
    const std::vector<std::pair<std::string, std::string>>& routes = {});

}  // namespace pgg
