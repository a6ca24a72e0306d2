#pragma once

// HTTP chat client against an OpenAI-style /v1/chat/completions endpoint.
// Kept out of llm.hpp so the test binaries need no TLS dependency; only the
// CLI links this.

#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "netzero/errors.hpp"
#include "netzero/llm.hpp"

namespace netzero {

class HttpChatClient final : public ChatClient {
 public:
  HttpChatClient(std::string endpoint, std::string model, std::string api_key)
      : endpoint_(std::move(endpoint)),
        model_(std::move(model)),
        api_key_(std::move(api_key)) {
    if (api_key_.empty())
      throw ConfigError("no API key; set it in the environment");
  }

  std::string complete(const std::string& prompt) override {
    nlohmann::json body = {
        {"model", model_},
        {"temperature", 0},
        {"messages",
         nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}};

    httplib::Client cli(endpoint_);
    cli.set_connection_timeout(30);
    cli.set_read_timeout(120);
    httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};
    auto res = cli.Post("/v1/chat/completions", headers, body.dump(),
                        "application/json");
    if (!res) throw IoError("chat endpoint unreachable: " + endpoint_);
    if (res->status != 200)
      throw IoError("chat endpoint returned status " +
                    std::to_string(res->status) + ": " + res->body);
    try {
      auto j = nlohmann::json::parse(res->body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed chat response: " + std::string(e.what()));
    }
  }

  std::string model_name() const override { return model_; }

 private:
  std::string endpoint_;
  std::string model_;
  std::string api_key_;
};

}  // namespace netzero
