#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "pgg/errors.hpp"

namespace pgg {

struct ChatMessage {
  enum class Role { System, User, Assistant };
  Role role = Role::User;
  std::string content;
};

const char* to_string(ChatMessage::Role role);
ChatMessage::Role parse_role(const std::string& s);

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 1.0;

  /// Shape checks: non-empty model, a leading system message, then strict
  /// user/assistant alternation ending on user, temperature in [0, 2].
  void validate() const;
};

/// Stable key for fixture lookup: FNV-1a over model, temperature (4 decimal
/// places), and every message. Prompt-affecting change => different hash.
std::uint64_t request_hash(const ChatRequest& request);

/// One completion backend. Implementations throw GatewayError; the transient
/// flag on it is what the retry loop keys on.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string send(const ChatRequest& request) = 0;
  virtual std::string name() const = 0;
};

struct TransportPolicy {
  int max_in_flight = 4;
  int retry_budget = 3;
  int backoff_base_ms = 250;
  double backoff_multiplier = 2.0;
  int timeout_ms = 60000;

  void validate() const;
};

/// Wraps a transport with the run-wide concerns: bounded in-flight requests,
/// retry with exponential backoff on transient failures, request counters.
class Gateway {
 public:
  struct Counters {
    std::uint64_t requests = 0;  // attempts handed to the transport
    std::uint64_t retries = 0;   // attempts after the first, per request
  };

  Gateway(std::shared_ptr<Transport> transport, TransportPolicy policy);

  std::string chat_complete(const ChatRequest& request);

  const TransportPolicy& policy() const { return policy_; }
  Counters counters() const;
  Transport& transport() { return *transport_; }

 private:
  void acquire_slot();
  void release_slot();

  std::shared_ptr<Transport> transport_;
  TransportPolicy policy_;
  std::mutex slot_mutex_;
  std::condition_variable slot_cv_;
  int in_flight_ = 0;
  std::atomic<std::uint64_t> requests_{0};
  std::atomic<std::uint64_t> retries_{0};
};

/// Deterministic offline stand-in. The default handler answers contribution
/// requests with hash-derived integers (and judge requests with hash-derived
/// scores), so full batches run with zero infrastructure and reproduce
/// exactly. A custom handler turns this into an arbitrary scripted backend.
class MockTransport : public Transport {
 public:
  using Handler = std::function<std::string(const ChatRequest&)>;

  MockTransport();  // default deterministic handler
  explicit MockTransport(Handler handler);

  std::string send(const ChatRequest& request) override;
  std::string name() const override { return "mock"; }

  std::uint64_t calls() const { return calls_.load(); }

 private:
  Handler handler_;
  std::atomic<std::uint64_t> calls_{0};
};

/// The response the default mock handler would give; exposed so tests can
/// predict transcript content.
std::string default_mock_response(const ChatRequest& request);

/// Canned step sequence, failures included; for exercising retry paths.
class ScriptedTransport : public Transport {
 public:
  using Step = std::variant<std::string, GatewayError>;

  explicit ScriptedTransport(std::vector<Step> steps);

  std::string send(const ChatRequest& request) override;
  std::string name() const override { return "scripted"; }

  std::size_t consumed() const;

 private:
  std::vector<Step> steps_;
  std::size_t next_ = 0;
  mutable std::mutex mutex_;
};

/// Fails on any use and counts the attempts; wiring it in proves a code path
/// never reaches for the network.
class PoisonTransport : public Transport {
 public:
  std::string send(const ChatRequest& request) override;
  std::string name() const override { return "poison"; }
  std::uint64_t touches() const { return touches_.load(); }

 private:
  std::atomic<std::uint64_t> touches_{0};
};

/// Pass-through wrapper that tracks concurrency (peak in-flight) and can
/// inject latency to force overlap; test instrumentation.
class InstrumentedTransport : public Transport {
 public:
  InstrumentedTransport(std::shared_ptr<Transport> inner, int delay_ms = 0);

  std::string send(const ChatRequest& request) override;
  std::string name() const override { return "instrumented"; }

  int peak_in_flight() const { return peak_.load(); }

 private:
  std::shared_ptr<Transport> inner_;
  int delay_ms_;
  std::atomic<int> current_{0};
  std::atomic<int> peak_{0};
};

/// One recorded exchange in a session fixture.
struct FixtureEntry {
  std::uint64_t hash = 0;
  ChatRequest request;
  std::string response;
};

std::vector<FixtureEntry> load_fixture(const std::filesystem::path& path);

/// Capture-or-replay layer. Record mode forwards to the inner transport and
/// appends each successful exchange to a session file (JSON lines, one entry
/// per exchange, flushed as written). Replay mode serves responses purely
/// from the file, keyed by request hash — same hash recorded n times comes
/// back in order, then the last response repeats; an unknown hash is a
/// non-transient HashMismatch error. Replay never touches a network.
class RecordReplayTransport : public Transport {
 public:
  enum class Mode { Record, Replay };

  RecordReplayTransport(Mode mode, std::filesystem::path session_file,
                        std::shared_ptr<Transport> inner = nullptr);

  std::string send(const ChatRequest& request) override;
  std::string name() const override;

  std::size_t entries_loaded() const { return entries_loaded_; }

 private:
  Mode mode_;
  std::filesystem::path session_file_;
  std::shared_ptr<Transport> inner_;
  std::ofstream out_;
  std::map<std::uint64_t, std::deque<std::string>> responses_;
  std::size_t entries_loaded_ = 0;
  std::mutex mutex_;
};

/// Sleep hook used between retries; tests swap it out to keep backoff
/// observable but instantaneous. Returns the previous hook.
using SleepFn = std::function<void(int /*ms*/)>;
SleepFn set_sleep_hook(SleepFn fn);

}  // namespace pgg
