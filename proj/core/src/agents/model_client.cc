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

#include "groundmem/agents/model_client.h"

#include <fstream>
#include <thread>

#include "groundmem/util/hash.h"

namespace groundmem {
using nlohmann::json;

json ChatMessage::ToJson() const {
  return {{"role", role}, {"text", text}, {"image_refs", image_refs}};
}

ChatMessage ChatMessage::FromJson(const json& j) {
  ChatMessage m;
  m.role = j.at("role").get<std::string>();
  m.text = j.value("text", "");
  if (j.contains("image_refs")) m.image_refs = j["image_refs"].get<std::vector<std::string>>();
  return m;
}

json ChatRequest::ToJson() const {
  json msgs = json::array();
  for (const ChatMessage& m : messages) msgs.push_back(m.ToJson());
  return {{"agent", agent}, {"system", system}, {"messages", std::move(msgs)}};
}

ChatRequest ChatRequest::FromJson(const json& j) {
  ChatRequest r;
  r.agent = j.value("agent", "");
  r.system = j.value("system", "");
  for (const json& m : j.at("messages")) r.messages.push_back(ChatMessage::FromJson(m));
  return r;
}

std::string ChatRequest::Hash() const { return Sha256Hex(ToJson().dump()); }

TranscriptClient::TranscriptClient(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), "file", "cannot open transcript");
  Parse(in, path.string());
}

TranscriptClient::TranscriptClient(std::istream& in, const std::string& source) {
  Parse(in, source);
}

void TranscriptClient::Parse(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      responses_[j.at("request_hash").get<std::string>()].push_back(
          j.at("response").at("text").get<std::string>());
      ++entries_;
    } catch (const json::exception& e) {
      throw FormatError(source, "line " + std::to_string(line_no), e.what());
    }
  }
}

std::string TranscriptClient::Complete(const ChatRequest& request) {
  const std::string hash = request.Hash();
  std::lock_guard<std::mutex> lock(mu_);
  auto it = responses_.find(hash);
  if (it == responses_.end()) {
    throw ClientError("transcript has no response for " + request.agent + " request " + hash,
                      false);
  }
  std::deque<std::string>& queue = it->second;
  std::string text = queue.front();
  if (queue.size() > 1) queue.pop_front();
  return text;
}

std::string ScriptedClient::Complete(const ChatRequest& request) {
  std::lock_guard<std::mutex> lock(mu_);
  if (next_ >= replies_.size()) {
    throw ClientError("script exhausted after " + std::to_string(next_) + " " + request.agent +
                          " replies",
                      false);
  }
  return replies_[next_++];
}

json RecordingClient::TranscriptLine(const ChatRequest& request, const std::string& text) {
  json line = json::object();
  line["request_hash"] = request.Hash();
  line["request"] = request.ToJson();
  line["response"] = {{"text", text}};
  return line;
}

std::string RecordingClient::Complete(const ChatRequest& request) {
  std::string text = inner_->Complete(request);
  std::lock_guard<std::mutex> lock(mu_);
  out_ << TranscriptLine(request, text).dump() << '\n';
  out_.flush();
  return text;
}

RetryingClient::RetryingClient(std::shared_ptr<ModelClient> inner, int retries,
                               std::chrono::milliseconds backoff, Sleeper sleeper)
    : inner_(std::move(inner)), retries_(retries), backoff_(backoff), sleeper_(std::move(sleeper)) {
  if (retries_ < 0) throw InvalidArgumentError("client retries must be >= 0");
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string RetryingClient::Complete(const ChatRequest& request) {
  std::chrono::milliseconds wait = backoff_;
  for (int attempt = 0;; ++attempt) {
    try {
      return inner_->Complete(request);
    } catch (const ClientError& e) {
      if (!e.transient() || attempt >= retries_) {
        if (attempt == 0) throw;
        throw ClientError(std::string(e.what()) + " (after " + std::to_string(attempt + 1) +
                              " attempts)",
                          e.transient());
      }
    }
    sleeper_(wait);
    wait *= 2;
  }
}

void ClientSet::Set(const std::string& role, std::shared_ptr<ModelClient> client) {
  if (!client) throw InvalidArgumentError("null client for role " + role);
  clients_[role] = std::move(client);
}

bool ClientSet::Has(const std::string& role) const {
  return clients_.count(role) || clients_.count("default");
}

ModelClient& ClientSet::For(const std::string& role) const {
  auto it = clients_.find(role);
  if (it == clients_.end()) it = clients_.find("default");
  if (it == clients_.end()) throw InvalidArgumentError("no client configured for role " + role);
  return *it->second;
}

ClientSet ClientSet::Uniform(std::shared_ptr<ModelClient> client) {
  ClientSet set;
  set.Set("default", std::move(client));
  return set;
}

ClientSet ClientSet::FromJson(const json& j, const std::filesystem::path& base_dir,
                              const std::filesystem::path& image_root, int retries,
                              std::chrono::milliseconds backoff) {
  if (!j.is_object() || j.empty()) {
    throw InvalidArgumentError("client config must be a non-empty object of roles");
  }
  ClientSet set;
  for (const auto& [role, spec] : j.items()) {
    const std::string transport = spec.value("transport", "");
    std::shared_ptr<ModelClient> client;
    if (transport == "transcript") {
      std::filesystem::path path = spec.at("path").get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      client = std::make_shared<TranscriptClient>(path);
    } else if (transport == "http") {
      HttpClientConfig cfg;
      cfg.base_url = spec.at("base_url").get<std::string>();
      cfg.model = spec.at("model").get<std::string>();
      cfg.token_env = spec.value("token_env", cfg.token_env);
      cfg.timeout_s = spec.value("timeout_s", cfg.timeout_s);
      cfg.image_root = image_root;
      client = std::make_shared<HttpChatClient>(cfg);
    } else {
      throw InvalidArgumentError("client " + role + ": unknown transport '" + transport + "'");
    }
    set.Set(role, std::make_shared<RetryingClient>(std::move(client), retries, backoff));
  }
  return set;
}

}  // namespace groundmem
