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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iterator>

#include "groundmem/agents/model_client.h"

namespace groundmem {
namespace {

std::string Base64(const std::string& bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(bytes.data()),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<size_t>(n));
  return out;
}

std::string MimeType(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  return "image/png";
}

// Splits "https://host:port/prefix" into scheme+authority and path prefix.
std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  const size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw InvalidArgumentError("base_url lacks a scheme: " + url);
  const size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, ""};
  std::string prefix = url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, slash), prefix};
}

}  // namespace

HttpChatClient::HttpChatClient(HttpClientConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty() || config_.model.empty()) {
    throw InvalidArgumentError("http client needs base_url and model");
  }
  SplitUrl(config_.base_url);
  if (const char* token = std::getenv(config_.token_env.c_str())) token_ = token;
}

nlohmann::json HttpChatClient::RequestBody(const ChatRequest& request) const {
  using nlohmann::json;
  json messages = json::array();
  if (!request.system.empty()) messages.push_back({{"role", "system"}, {"content", request.system}});
  for (const ChatMessage& m : request.messages) {
    if (m.image_refs.empty()) {
      messages.push_back({{"role", m.role}, {"content", m.text}});
      continue;
    }
    json parts = json::array();
    parts.push_back({{"type", "text"}, {"text", m.text}});
    for (const std::string& ref : m.image_refs) {
      const std::filesystem::path path = config_.image_root / ref;
      std::ifstream in(path, std::ios::binary);
      if (!in) throw ClientError("cannot read image " + path.string(), false);
      const std::string bytes{std::istreambuf_iterator<char>(in), {}};
      parts.push_back({{"type", "image_url"},
                       {"image_url", {{"url", "data:" + MimeType(path) + ";base64," +
                                                  Base64(bytes)}}}});
    }
    messages.push_back({{"role", m.role}, {"content", std::move(parts)}});
  }
  return {{"model", config_.model}, {"messages", std::move(messages)}, {"temperature", 0}};
}

std::string HttpChatClient::Complete(const ChatRequest& request) {
  const auto [origin, prefix] = SplitUrl(config_.base_url);
  httplib::Client client(origin);
  const auto seconds = static_cast<time_t>(config_.timeout_s);
  client.set_connection_timeout(seconds);
  client.set_read_timeout(seconds);
  client.set_write_timeout(seconds);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  const std::string body = RequestBody(request).dump();
  auto res = client.Post(prefix + "/chat/completions", headers, body, "application/json");
  if (!res) {
    throw ClientError("http transport failure: " + httplib::to_string(res.error()), true);
  }
  if (res->status == 429 || res->status >= 500) {
    throw ClientError("http status " + std::to_string(res->status), true);
  }
  if (res->status != 200) {
    throw ClientError("http status " + std::to_string(res->status) + ": " + res->body, false);
  }
  try {
    const nlohmann::json reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ClientError(std::string("malformed completion response: ") + e.what(), false);
  }
}

}  // namespace groundmem
