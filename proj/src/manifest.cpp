#include "pgg/manifest.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "pgg/errors.hpp"

namespace pgg {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

AgentSpec agent_spec_from(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "scripted") {
    ScriptedSpec s;
    s.strategy = parse_strategy(j.at("strategy").get<std::string>());
    s.param = j.value("param", 0);
    return AgentSpec{s};
  }
  if (kind == "llm") {
    LlmSpec l;
    l.provider = j.value("provider", "openai");
    l.model = j.at("model").get<std::string>();
    l.display_name = j.at("display_name").get<std::string>();
    l.temperature = j.value("temperature", 1.0);
    return AgentSpec{l};
  }
  throw ConfigError("unknown agent kind '" + kind + "' (expected scripted/llm)");
}

ProviderConfig provider_from(const std::string& id, const json& j) {
  ProviderConfig p;
  try {
    p = builtin_provider(id);
  } catch (const ConfigError&) {
    p.id = id;  // fully manifest-defined
  }
  if (j.contains("dialect")) p.dialect = parse_dialect(j.at("dialect").get<std::string>());
  if (j.contains("base_url")) p.base_url = j.at("base_url").get<std::string>();
  if (j.contains("api_key_env")) p.api_key_env = j.at("api_key_env").get<std::string>();
  if (j.contains("api_version")) p.api_version = j.at("api_version").get<std::string>();
  if (j.contains("max_tokens")) p.max_tokens = j.at("max_tokens").get<int>();
  return p;
}

std::int64_t multiplier_from(const json& v) {
  if (v.is_string()) return parse_tenths(v.get<std::string>());
  if (v.is_number()) {
    double x = v.get<double>();
    double scaled = x * 10.0;
    auto rounded = static_cast<std::int64_t>(scaled >= 0 ? scaled + 0.5 : scaled - 0.5);
    if (std::abs(scaled - static_cast<double>(rounded)) > 1e-6) {
      throw ConfigError("multiplier must be exact in tenths, got " + v.dump());
    }
    return rounded;
  }
  throw ConfigError("multiplier must be a number or a string like \"1.6\"");
}

}  // namespace

GatewayMode parse_gateway_mode(const std::string& s) {
  if (s == "live") return GatewayMode::Live;
  if (s == "replay") return GatewayMode::Replay;
  if (s == "mock") return GatewayMode::Mock;
  throw ConfigError("unknown gateway mode '" + s + "' (expected live/replay/mock)");
}

const char* to_string(GatewayMode m) {
  switch (m) {
    case GatewayMode::Live: return "live";
    case GatewayMode::Replay: return "replay";
    case GatewayMode::Mock: return "mock";
  }
  return "unknown";
}

std::string interpolate_env(const std::string& text) {
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t start = text.find("${", pos);
    if (start == std::string::npos) {
      out += text.substr(pos);
      return out;
    }
    std::size_t end = text.find('}', start + 2);
    if (end == std::string::npos) {
      out += text.substr(pos);
      return out;
    }
    out += text.substr(pos, start - pos);
    std::string var = text.substr(start + 2, end - start - 2);
    const char* value = var.empty() ? nullptr : std::getenv(var.c_str());
    if (!value) {
      throw ConfigError("manifest references undefined environment variable '" + var + "'");
    }
    out += value;
    pos = end + 1;
  }
}

void RunManifest::validate() const {
  if (agents.empty()) throw ConfigError("manifest declares no agents");
  for (const auto& a : agents) a.validate(endowment);
  if (gateway.mode == GatewayMode::Replay && gateway.fixture.empty()) {
    throw ConfigError("replay mode needs a fixture path");
  }
  gateway.policy.validate();
  if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
  if (games < 0) throw ConfigError("games must not be negative");
  for (const auto& p : pairing_filter) {
    std::size_t expected = study == StudyStyle::Study3 ? 1 : 2;
    if (p.size() != expected) {
      throw ConfigError("pairing filter '" + p + "' has the wrong length for " +
                        to_string(study));
    }
    for (char c : p) {
      if (c != 'C' && c != 'N' && c != 'S') {
        throw ConfigError("pairing filter '" + p + "' may only use C/N/S");
      }
    }
  }
}

RunManifest manifest_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }

  // Interpolate environment references across every string in the tree
  // before reading any field.
  std::function<void(json&)> walk = [&](json& node) {
    if (node.is_string()) {
      node = interpolate_env(node.get<std::string>());
    } else if (node.is_object() || node.is_array()) {
      for (auto& child : node) walk(child);
    }
  };
  walk(j);

  RunManifest m;
  try {
    if (j.contains("study")) m.study = parse_study(j.at("study").get<std::string>());
    if (j.contains("agents")) {
      for (const auto& a : j.at("agents")) m.agents.push_back(agent_spec_from(a));
    }
    if (j.contains("condition")) {
      m.condition_filter = parse_condition(j.at("condition").get<std::string>());
    }
    if (j.contains("pairings")) {
      m.pairing_filter = j.at("pairings").get<std::vector<std::string>>();
    }
    if (j.contains("games")) m.games = j.at("games").get<int>();
    if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("parallelism")) m.parallelism = j.at("parallelism").get<int>();
    if (j.contains("rounds")) m.num_rounds = j.at("rounds").get<int>();
    if (j.contains("endowment")) m.endowment = j.at("endowment").get<int>();
    if (j.contains("multiplier")) m.multiplier_tenths = multiplier_from(j.at("multiplier"));
    if (j.contains("edition")) m.edition = parse_edition(j.at("edition").get<std::string>());
    if (j.contains("out_dir")) m.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("gateway")) {
      const json& g = j.at("gateway");
      if (g.contains("mode")) m.gateway.mode = parse_gateway_mode(g.at("mode").get<std::string>());
      if (g.contains("fixture")) m.gateway.fixture = g.at("fixture").get<std::string>();
      if (g.contains("record")) m.gateway.record = g.at("record").get<std::string>();
      if (g.contains("policy")) {
        const json& p = g.at("policy");
        if (p.contains("max_in_flight")) m.gateway.policy.max_in_flight = p.at("max_in_flight");
        if (p.contains("retry_budget")) m.gateway.policy.retry_budget = p.at("retry_budget");
        if (p.contains("backoff_base_ms")) {
          m.gateway.policy.backoff_base_ms = p.at("backoff_base_ms");
        }
        if (p.contains("backoff_multiplier")) {
          m.gateway.policy.backoff_multiplier = p.at("backoff_multiplier");
        }
        if (p.contains("timeout_ms")) m.gateway.policy.timeout_ms = p.at("timeout_ms");
      }
      if (g.contains("providers")) {
        for (const auto& [id, spec] : g.at("providers").items()) {
          m.gateway.providers[id] = provider_from(id, spec);
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest field error: ") + e.what());
  }
  m.validate();
  return m;
}

RunManifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_json(read_file(path));
}

AgentSpec agent_spec_from_json(const std::string& text) {
  try {
    return agent_spec_from(json::parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("agent spec is not valid JSON: ") + e.what());
  }
}

namespace {

/// Dispatches each request to the transport of the provider its model was
/// declared under.
class RoutingTransport : public Transport {
 public:
  RoutingTransport(std::map<std::string, std::shared_ptr<Transport>> by_model)
      : by_model_(std::move(by_model)) {}

  std::string send(const ChatRequest& request) override {
    auto it = by_model_.find(request.model);
    if (it == by_model_.end()) {
      throw GatewayError(GatewayErrorKind::Provider,
                         "no provider route for model '" + request.model + "'");
    }
    return it->second->send(request);
  }
  std::string name() const override { return "routing"; }

 private:
  std::map<std::string, std::shared_ptr<Transport>> by_model_;
};

}  // namespace

std::shared_ptr<Transport> build_transport(
    const GatewaySettings& settings,
    const std::vector<std::pair<std::string, std::string>>& routes) {
  auto resolve_provider = [&](const std::string& id) {
    auto it = settings.providers.find(id);
    if (it != settings.providers.end()) return it->second;
    return builtin_provider(id);
  };
  auto wrap_record = [&](std::shared_ptr<Transport> base) {
    if (settings.record.empty()) return base;
    return std::shared_ptr<Transport>(std::make_shared<RecordReplayTransport>(
        RecordReplayTransport::Mode::Record, settings.record, base));
  };

  switch (settings.mode) {
    case GatewayMode::Replay:
      return std::make_shared<RecordReplayTransport>(RecordReplayTransport::Mode::Replay,
                                                     settings.fixture);
    case GatewayMode::Mock:
      return wrap_record(std::make_shared<MockTransport>());
    case GatewayMode::Live: {
      if (routes.empty()) {
        throw ConfigError("live mode needs at least one (provider, model) route");
      }
      std::map<std::string, std::shared_ptr<Transport>> by_provider;
      std::map<std::string, std::shared_ptr<Transport>> by_model;
      for (const auto& [provider_id, model] : routes) {
        auto& transport = by_provider[provider_id];
        if (!transport) {
          transport = std::make_shared<HttpTransport>(resolve_provider(provider_id),
                                                      settings.policy.timeout_ms);
        }
        by_model[model] = transport;
      }
      return wrap_record(std::make_shared<RoutingTransport>(std::move(by_model)));
    }
  }
  throw ConfigError("unhandled gateway mode");
}

}  // namespace pgg
