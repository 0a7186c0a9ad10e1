#include "pgg/gateway.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "json.hpp"
#include "pgg/rng.hpp"

namespace pgg {

namespace {

using nlohmann::ordered_json;

std::mutex g_sleep_mutex;
SleepFn g_sleep = [](int ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };

void do_sleep(int ms) {
  SleepFn fn;
  {
    std::lock_guard lock(g_sleep_mutex);
    fn = g_sleep;
  }
  fn(ms);
}

std::string format_temperature(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", t);
  return buf;
}

}  // namespace

SleepFn set_sleep_hook(SleepFn fn) {
  std::lock_guard lock(g_sleep_mutex);
  std::swap(g_sleep, fn);
  return fn;
}

const char* to_string(ChatMessage::Role role) {
  switch (role) {
    case ChatMessage::Role::System: return "system";
    case ChatMessage::Role::User: return "user";
    case ChatMessage::Role::Assistant: return "assistant";
  }
  return "unknown";
}

ChatMessage::Role parse_role(const std::string& s) {
  if (s == "system") return ChatMessage::Role::System;
  if (s == "user") return ChatMessage::Role::User;
  if (s == "assistant") return ChatMessage::Role::Assistant;
  throw ConfigError("unknown chat role '" + s + "'");
}

void ChatRequest::validate() const {
  if (model.empty()) throw ValidationError("chat request needs a model");
  if (messages.empty()) throw ValidationError("chat request needs messages");
  if (messages.front().role != ChatMessage::Role::System) {
    throw ValidationError("first message must be the system prompt");
  }
  for (std::size_t i = 1; i < messages.size(); ++i) {
    auto expected = i % 2 == 1 ? ChatMessage::Role::User : ChatMessage::Role::Assistant;
    if (messages[i].role != expected) {
      throw ValidationError("messages must alternate user/assistant after the system prompt");
    }
  }
  if (messages.back().role != ChatMessage::Role::User) {
    throw ValidationError("a request must end on a user message");
  }
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ValidationError("temperature must lie in [0, 2]");
  }
}

std::uint64_t request_hash(const ChatRequest& request) {
  // Field and record separators keep adjacent strings from colliding.
  std::string canon = request.model;
  canon += '\x1f';
  canon += format_temperature(request.temperature);
  for (const auto& m : request.messages) {
    canon += '\x1e';
    canon += to_string(m.role);
    canon += '\x1f';
    canon += m.content;
  }
  return fnv1a64(canon);
}

void TransportPolicy::validate() const {
  if (max_in_flight < 1) throw ConfigError("max_in_flight must be at least 1");
  if (retry_budget < 0) throw ConfigError("retry_budget must not be negative");
  if (backoff_base_ms < 0) throw ConfigError("backoff_base_ms must not be negative");
  if (backoff_multiplier < 1.0) throw ConfigError("backoff_multiplier must be at least 1");
  if (timeout_ms < 1) throw ConfigError("timeout_ms must be positive");
}

Gateway::Gateway(std::shared_ptr<Transport> transport, TransportPolicy policy)
    : transport_(std::move(transport)), policy_(policy) {
  if (!transport_) throw ConfigError("gateway needs a transport");
  policy_.validate();
}

void Gateway::acquire_slot() {
  std::unique_lock lock(slot_mutex_);
  slot_cv_.wait(lock, [&] { return in_flight_ < policy_.max_in_flight; });
  ++in_flight_;
}

void Gateway::release_slot() {
  {
    std::lock_guard lock(slot_mutex_);
    --in_flight_;
  }
  slot_cv_.notify_one();
}

std::string Gateway::chat_complete(const ChatRequest& request) {
  request.validate();
  for (int attempt = 0;; ++attempt) {
    acquire_slot();
    requests_.fetch_add(1);
    if (attempt > 0) retries_.fetch_add(1);
    try {
      std::string response = transport_->send(request);
      release_slot();
      return response;
    } catch (const GatewayError& e) {
      release_slot();
      if (!e.transient() || attempt >= policy_.retry_budget) throw;
      double factor = std::pow(policy_.backoff_multiplier, attempt);
      do_sleep(static_cast<int>(policy_.backoff_base_ms * factor));
    }
  }
}

Gateway::Counters Gateway::counters() const { return {requests_.load(), retries_.load()}; }

std::string default_mock_response(const ChatRequest& request) {
  std::uint64_t h = request_hash(request);
  const std::string& system = request.messages.front().content;
  if (system.find("Rate the sentiment") != std::string::npos) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", static_cast<double>(h % 101) / 100.0);
    return buf;
  }
  int contribution = static_cast<int>(h % 11);
  ordered_json reply;
  if (system.find("'reasoning'") != std::string::npos) {
    reply["reasoning"] = "Contributing " + std::to_string(contribution) + " this round.";
  }
  reply["contribution"] = contribution;
  return reply.dump();
}

MockTransport::MockTransport() : handler_(nullptr) {}

MockTransport::MockTransport(Handler handler) : handler_(std::move(handler)) {}

std::string MockTransport::send(const ChatRequest& request) {
  calls_.fetch_add(1);
  if (handler_) return handler_(request);
  return default_mock_response(request);
}

ScriptedTransport::ScriptedTransport(std::vector<Step> steps) : steps_(std::move(steps)) {}

std::string ScriptedTransport::send(const ChatRequest&) {
  std::lock_guard lock(mutex_);
  if (next_ >= steps_.size()) {
    throw GatewayError(GatewayErrorKind::Provider, "scripted transport exhausted after " +
                                                       std::to_string(steps_.size()) + " steps");
  }
  Step& step = steps_[next_++];
  if (auto* err = std::get_if<GatewayError>(&step)) throw *err;
  return std::get<std::string>(step);
}

std::size_t ScriptedTransport::consumed() const {
  std::lock_guard lock(mutex_);
  return next_;
}

std::string PoisonTransport::send(const ChatRequest&) {
  touches_.fetch_add(1);
  throw GatewayError(GatewayErrorKind::Provider,
                     "poisoned transport touched: this run must not reach a backend");
}

InstrumentedTransport::InstrumentedTransport(std::shared_ptr<Transport> inner, int delay_ms)
    : inner_(std::move(inner)), delay_ms_(delay_ms) {
  if (!inner_) throw ConfigError("instrumented transport needs an inner transport");
}

std::string InstrumentedTransport::send(const ChatRequest& request) {
  int now = current_.fetch_add(1) + 1;
  int prev_peak = peak_.load();
  while (now > prev_peak && !peak_.compare_exchange_weak(prev_peak, now)) {
  }
  if (delay_ms_ > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_));
  try {
    std::string r = inner_->send(request);
    current_.fetch_sub(1);
    return r;
  } catch (...) {
    current_.fetch_sub(1);
    throw;
  }
}

namespace {

ordered_json fixture_entry_json(const ChatRequest& request, const std::string& response) {
  ordered_json messages = ordered_json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  }
  return ordered_json{{"hash", hash_hex(request_hash(request))},
                      {"model", request.model},
                      {"temperature", format_temperature(request.temperature)},
                      {"messages", std::move(messages)},
                      {"response", response}};
}

}  // namespace

std::vector<FixtureEntry> load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw GatewayError(GatewayErrorKind::FixtureMissing,
                       "session fixture not found: " + path.string());
  }
  std::vector<FixtureEntry> entries;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      FixtureEntry e;
      e.hash = std::stoull(j.at("hash").get<std::string>(), nullptr, 16);
      e.request.model = j.at("model").get<std::string>();
      e.request.temperature = std::stod(j.at("temperature").get<std::string>());
      for (const auto& m : j.at("messages")) {
        e.request.messages.push_back(
            {parse_role(m.at("role").get<std::string>()), m.at("content").get<std::string>()});
      }
      e.response = j.at("response").get<std::string>();
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw IoError("session fixture " + path.string() + " line " + std::to_string(line_number) +
                    ": " + ex.what());
    }
  }
  return entries;
}

RecordReplayTransport::RecordReplayTransport(Mode mode, std::filesystem::path session_file,
                                             std::shared_ptr<Transport> inner)
    : mode_(mode), session_file_(std::move(session_file)), inner_(std::move(inner)) {
  if (mode_ == Mode::Record) {
    if (!inner_) throw ConfigError("record mode needs an inner transport to capture");
    if (session_file_.has_parent_path()) {
      std::filesystem::create_directories(session_file_.parent_path());
    }
    out_.open(session_file_, std::ios::app);
    if (!out_) throw IoError("cannot open session fixture for append: " + session_file_.string());
  } else {
    for (auto& entry : load_fixture(session_file_)) {
      responses_[entry.hash].push_back(std::move(entry.response));
      ++entries_loaded_;
    }
  }
}

std::string RecordReplayTransport::name() const {
  return mode_ == Mode::Record ? "record" : "replay";
}

std::string RecordReplayTransport::send(const ChatRequest& request) {
  if (mode_ == Mode::Record) {
    std::string response = inner_->send(request);
    std::lock_guard lock(mutex_);
    out_ << fixture_entry_json(request, response).dump() << '\n';
    out_.flush();
    if (!out_) throw IoError("failed writing session fixture: " + session_file_.string());
    return response;
  }
  std::uint64_t h = request_hash(request);
  std::lock_guard lock(mutex_);
  auto it = responses_.find(h);
  if (it == responses_.end()) {
    throw GatewayError(GatewayErrorKind::HashMismatch,
                       "no recorded response for request hash " + hash_hex(h) + " (model '" +
                           request.model + "', " + std::to_string(request.messages.size()) +
                           " messages); the fixture was recorded against different prompts");
  }
  // In-order replay; once a hash runs dry its last response keeps serving,
  // so replays tolerate extra identical calls.
  std::string response = it->second.front();
  if (it->second.size() > 1) it->second.pop_front();
  return response;
}

}  // namespace pgg
