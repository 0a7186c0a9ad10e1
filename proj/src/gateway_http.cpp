#include "pgg/http_gateway.hpp"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace pgg {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

GatewayError malformed(const std::string& detail) {
  return GatewayError(GatewayErrorKind::Provider, "malformed provider response: " + detail, 200,
                      false);
}

}  // namespace

Dialect parse_dialect(const std::string& s) {
  if (s == "chat" || s == "chat-completions") return Dialect::ChatCompletions;
  if (s == "messages") return Dialect::Messages;
  throw ConfigError("unknown dialect '" + s + "' (expected 'chat' or 'messages')");
}

const char* to_string(Dialect d) {
  return d == Dialect::ChatCompletions ? "chat" : "messages";
}

ProviderConfig builtin_provider(const std::string& id) {
  if (id == "openai") {
    return {"openai", Dialect::ChatCompletions, "https://api.openai.com", "OPENAI_API_KEY", "",
            1024};
  }
  if (id == "anthropic") {
    return {"anthropic", Dialect::Messages, "https://api.anthropic.com", "ANTHROPIC_API_KEY",
            "2023-06-01", 1024};
  }
  throw ConfigError("unknown provider '" + id +
                    "'; declare it in the manifest with base_url and dialect");
}

std::string build_request_body(const ProviderConfig& provider, const ChatRequest& request) {
  if (provider.dialect == Dialect::ChatCompletions) {
    ordered_json messages = ordered_json::array();
    for (const auto& m : request.messages) {
      messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
    }
    return ordered_json{{"model", request.model},
                        {"messages", std::move(messages)},
                        {"temperature", request.temperature}}
        .dump();
  }
  // messages dialect: the system prompt rides in its own top-level field.
  ordered_json messages = ordered_json::array();
  for (const auto& m : request.messages) {
    if (m.role == ChatMessage::Role::System) continue;
    messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  }
  return ordered_json{{"model", request.model},
                      {"max_tokens", provider.max_tokens},
                      {"system", request.messages.front().content},
                      {"messages", std::move(messages)},
                      {"temperature", request.temperature}}
      .dump();
}

std::string extract_response_text(Dialect dialect, const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw malformed(e.what());
  }
  try {
    if (dialect == Dialect::ChatCompletions) {
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    }
    return j.at("content").at(0).at("text").get<std::string>();
  } catch (const json::exception&) {
    throw malformed("completion text not found where the " +
                    std::string(to_string(dialect)) + " dialect puts it");
  }
}

HttpTransport::HttpTransport(ProviderConfig provider, int timeout_ms)
    : provider_(std::move(provider)), timeout_ms_(timeout_ms) {
  if (provider_.base_url.empty()) {
    throw ConfigError("provider '" + provider_.id + "' has no base_url");
  }
  const char* key = provider_.api_key_env.empty() ? nullptr : std::getenv(provider_.api_key_env.c_str());
  if (!key || !*key) {
    throw GatewayError(GatewayErrorKind::Auth,
                       "missing credential: environment variable " + provider_.api_key_env +
                           " is not set");
  }
  api_key_ = key;
}

std::string HttpTransport::send(const ChatRequest& request) {
  // A client per call: httplib clients are not thread-safe, and connection
  // setup is noise next to model latency.
  httplib::Client client(provider_.base_url);
  client.set_connection_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
  client.set_read_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);

  httplib::Headers headers;
  std::string path;
  if (provider_.dialect == Dialect::ChatCompletions) {
    headers.emplace("Authorization", "Bearer " + api_key_);
    path = "/v1/chat/completions";
  } else {
    headers.emplace("x-api-key", api_key_);
    if (!provider_.api_version.empty()) {
      headers.emplace("anthropic-version", provider_.api_version);
    }
    path = "/v1/messages";
  }

  auto result = client.Post(path, headers, build_request_body(provider_, request),
                            "application/json");
  if (!result) {
    throw GatewayError(GatewayErrorKind::Timeout,
                       "no response from " + provider_.base_url + ": " +
                           httplib::to_string(result.error()),
                       0, true);
  }
  int status = result->status;
  if (status == 401 || status == 403) {
    throw GatewayError(GatewayErrorKind::Auth,
                       "authentication rejected by " + provider_.id + " (status " +
                           std::to_string(status) + ")",
                       status, false);
  }
  if (status == 429) {
    throw GatewayError(GatewayErrorKind::RateLimited, "rate limited by " + provider_.id, status,
                       true);
  }
  if (status == 408) {
    throw GatewayError(GatewayErrorKind::Timeout, "request timed out at " + provider_.id, status,
                       true);
  }
  if (status >= 500) {
    throw GatewayError(GatewayErrorKind::Provider,
                       provider_.id + " server error (status " + std::to_string(status) + ")",
                       status, true);
  }
  if (status != 200) {
    throw GatewayError(GatewayErrorKind::Provider,
                       provider_.id + " rejected the request (status " + std::to_string(status) +
                           "): " + result->body.substr(0, 200),
                       status, false);
  }
  return extract_response_text(provider_.dialect, result->body);
}

}  // namespace pgg
