#pragma once

#include <string>

#include "pgg/gateway.hpp"

namespace pgg {

/// The two wire dialects in circulation: `chat` nests the text under
/// choices[0].message.content and authenticates with a Bearer header;
/// `messages` nests it under content[0].text, authenticates with x-api-key,
/// and requires max_tokens and a version header.
enum class Dialect { ChatCompletions, Messages };

Dialect parse_dialect(const std::string& s);
const char* to_string(Dialect d);

struct ProviderConfig {
  std::string id;
  Dialect dialect = Dialect::ChatCompletions;
  std::string base_url;      // scheme + host, e.g. "https://api.openai.com"
  std::string api_key_env;   // environment variable holding the credential
  std::string api_version;   // messages dialect version header; may be empty
  int max_tokens = 1024;     // messages dialect requires an explicit cap
};

/// Built-in endpoints for the common services; anything else comes from the
/// manifest. Throws ConfigError for an id it does not know.
ProviderConfig builtin_provider(const std::string& id);

/// Request body for one dialect; exposed for tests.
std::string build_request_body(const ProviderConfig& provider, const ChatRequest& request);

/// Pulls the completion text out of a provider response body. Throws a
/// non-transient GatewayError when the shape is wrong.
std::string extract_response_text(Dialect dialect, const std::string& body);

/// Live HTTP backend. Reads the credential from the configured environment
/// variable at construction — before any network call — and maps HTTP
/// status to GatewayError kinds (429 and 5xx transient, auth failures not).
class HttpTransport : public Transport {
 public:
  HttpTransport(ProviderConfig provider, int timeout_ms);

  std::string send(const ChatRequest& request) override;
  std::string name() const override { return "http:" + provider_.id; }

 private:
  ProviderConfig provider_;
  std::string api_key_;
  int timeout_ms_;
};

}  // namespace pgg
