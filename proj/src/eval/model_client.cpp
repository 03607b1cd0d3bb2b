#include "txf/eval/model_client.hpp"

#include <cmath>
#include <regex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace txf::eval {

using nlohmann::json;

std::string request_to_json(const GenerationRequest& request) {
  json j{{"prompt", request.prompt}, {"max_tokens", request.max_tokens}, {"temperature", request.temperature}};
  if (request.stop) j["stop"] = *request.stop;
  return j.dump();
}

GenerationResponse response_from_json(const std::string& body) {
  GenerationResponse out;
  try {
    const json j = json::parse(body);
    out.text = j.at("text").get<std::string>();
    if (j.contains("option_scores") && !j["option_scores"].is_null()) {
      for (const auto& [key, value] : j["option_scores"].items()) {
        const double v = value.get<double>();
        if (!std::isfinite(v)) throw TransportError("non-finite option score");
        out.option_scores[key] = v;
      }
    }
    if (j.contains("logprob") && !j["logprob"].is_null()) {
      out.logprob = j["logprob"].get<double>();
      if (!std::isfinite(*out.logprob)) throw TransportError("non-finite logprob");
    }
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed model response: ") + e.what());
  }
  return out;
}

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int retry) {
  auto delay = policy.initial_backoff;
  for (int i = 0; i < retry && delay < policy.max_backoff; ++i) delay *= 2;
  return std::min(delay, policy.max_backoff);
}

HttpModelClient::HttpModelClient(const std::string& url, RetryPolicy policy, std::chrono::seconds timeout)
    : policy_(policy), timeout_(timeout) {
  static const std::regex kUrl(R"(http://([^/:]+)(?::(\d+))?(/.*)?)");
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) throw std::invalid_argument("unsupported model URL: " + url);
  host_ = m[1];
  if (m[2].matched) port_ = std::stoi(m[2]);
  path_ = m[3].matched ? std::string(m[3]) : "/";
  if (policy_.attempts < 1) policy_.attempts = 1;
}

GenerationResponse HttpModelClient::generate(const GenerationRequest& request) {
  const std::string body = request_to_json(request);
  std::string last_error;
  for (int attempt = 0; attempt < policy_.attempts; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(backoff_delay(policy_, attempt - 1));
    // one client per call keeps this thread-safe without locking
    httplib::Client client(host_, port_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    const auto start = std::chrono::steady_clock::now();
    const auto result = client.Post(path_, body, "application/json");
    if (!result) {
      last_error = httplib::to_string(result.error());
      continue;
    }
    if (result->status >= 500 || result->status == 429) {
      last_error = "HTTP " + std::to_string(result->status);
      continue;
    }
    if (result->status != 200) throw TransportError("model answered HTTP " + std::to_string(result->status));
    GenerationResponse response = response_from_json(result->body);
    response.latency_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return response;
  }
  throw TransportError("model unreachable after " + std::to_string(policy_.attempts) + " attempts: " + last_error);
}

}  // namespace txf::eval
