// Copyright 2026 The groundmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundmem/error.h"

namespace groundmem {

struct ChatMessage {
  std::string role;  // "user" or "assistant"
  std::string text;
  std::vector<std::string> image_refs;  // bundle-relative image paths

  nlohmann::json ToJson() const;
  static ChatMessage FromJson(const nlohmann::json& j);
};

struct ChatRequest {
  std::string agent;  // planner, grounder, coder
  std::string system;
  std::vector<ChatMessage> messages;

  // {"agent", "messages": [...], "system"} with sorted keys.
  nlohmann::json ToJson() const;
  static ChatRequest FromJson(const nlohmann::json& j);
  // SHA-256 hex digest of the compact ToJson() dump.
  std::string Hash() const;
};

// Transport or protocol failure of a model client. Transient failures
// (timeouts, 5xx, 429) are retried by RetryingClient.
class ClientError : public SessionError {
 public:
  ClientError(const std::string& what, bool transient)
      : SessionError(what), transient_(transient) {}
  bool transient() const { return transient_; }

 private:
  bool transient_;
};

class ModelClient {
 public:
  virtual ~ModelClient() = default;
  // Returns the completion text. Throws ClientError.
  virtual std::string Complete(const ChatRequest& request) = 0;
};

// Replays a JSONL transcript of {"request_hash", "response": {"text"}} lines.
// Repeated hashes are served in file order; the last one then repeats.
// Lines may carry the full "request" for readability; it is not consulted.
class TranscriptClient : public ModelClient {
 public:
  explicit TranscriptClient(const std::filesystem::path& path);
  TranscriptClient(std::istream& in, const std::string& source);

  std::string Complete(const ChatRequest& request) override;
  size_t size() const { return entries_; }

 private:
  void Parse(std::istream& in, const std::string& source);

  std::mutex mu_;
  std::map<std::string, std::deque<std::string>> responses_;
  size_t entries_ = 0;
};

// Serves a fixed list of replies in order, ignoring the request content.
class ScriptedClient : public ModelClient {
 public:
  explicit ScriptedClient(std::vector<std::string> replies) : replies_(std::move(replies)) {}

  std::string Complete(const ChatRequest& request) override;
  size_t consumed() const { return next_; }

 private:
  std::mutex mu_;
  std::vector<std::string> replies_;
  size_t next_ = 0;
};

// Forwards to `inner` and appends each exchange as a transcript line.
class RecordingClient : public ModelClient {
 public:
  RecordingClient(std::shared_ptr<ModelClient> inner, std::ostream& out)
      : inner_(std::move(inner)), out_(out) {}

  std::string Complete(const ChatRequest& request) override;

  static nlohmann::json TranscriptLine(const ChatRequest& request, const std::string& text);

 private:
  std::shared_ptr<ModelClient> inner_;
  std::ostream& out_;
  std::mutex mu_;
};

// Retries transient ClientErrors with exponential backoff
// (backoff, 2 * backoff, ...). Non-transient errors propagate at once.
class RetryingClient : public ModelClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  RetryingClient(std::shared_ptr<ModelClient> inner, int retries,
                 std::chrono::milliseconds backoff, Sleeper sleeper = nullptr);

  std::string Complete(const ChatRequest& request) override;

 private:
  std::shared_ptr<ModelClient> inner_;
  int retries_;
  std::chrono::milliseconds backoff_;
  Sleeper sleeper_;
};

// OpenAI-compatible chat completions endpoint. Image references are read
// relative to `image_root` and sent inline as base64 data URLs.
struct HttpClientConfig {
  std::string base_url;  // e.g. https://host/v1
  std::string model;
  std::string token_env = "GROUNDMEM_API_TOKEN";
  double timeout_s = 120.0;
  std::filesystem::path image_root;
};

class HttpChatClient : public ModelClient {
 public:
  explicit HttpChatClient(HttpClientConfig config);
  std::string Complete(const ChatRequest& request) override;

  // The request body sent to the endpoint; exposed for tests.
  nlohmann::json RequestBody(const ChatRequest& request) const;

 private:
  HttpClientConfig config_;
  std::string token_;
};

// Role-indexed clients. Missing roles fall back to "default".
class ClientSet {
 public:
  void Set(const std::string& role, std::shared_ptr<ModelClient> client);
  // Throws InvalidArgumentError when neither the role nor a default exists.
  // Has() answers whether For() would succeed.
  ModelClient& For(const std::string& role) const;
  bool Has(const std::string& role) const;
  bool empty() const { return clients_.empty(); }
  const std::map<std::string, std::shared_ptr<ModelClient>>& roles() const { return clients_; }

  // One client for every role.
  static ClientSet Uniform(std::shared_ptr<ModelClient> client);

  // {"<role>|default": {"transport": "transcript", "path": ...} |
  //                    {"transport": "http", "base_url", "model", "token_env"?, "timeout_s"?}}
  // Relative transcript paths resolve against `base_dir`. Every client is
  // wrapped in a RetryingClient.
  static ClientSet FromJson(const nlohmann::json& j, const std::filesystem::path& base_dir,
                            const std::filesystem::path& image_root, int retries,
                            std::chrono::milliseconds backoff);

 private:
  std::map<std::string, std::shared_ptr<ModelClient>> clients_;
};

}  // namespace groundmem
