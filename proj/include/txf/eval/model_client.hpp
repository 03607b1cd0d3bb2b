#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace txf::eval {

struct GenerationRequest {
  std::string prompt;
  int max_tokens = 512;
  double temperature = 0.0;
  std::optional<std::string> stop;
};

struct GenerationResponse {
  std::string text;
  std::map<std::string, double> option_scores;
  std::optional<double> logprob;
  double latency_ms = 0.0;
};

/// Raised when the model cannot be reached or answers malformed data.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The model boundary. Implementations must be safe to call from several
/// threads at once.
class ModelClient {
 public:
  virtual ~ModelClient() = default;
  virtual GenerationResponse generate(const GenerationRequest& request) = 0;
};

std::string request_to_json(const GenerationRequest& request);
/// Throws TransportError on malformed JSON, a missing "text" field or
/// non-finite scores.
GenerationResponse response_from_json(const std::string& body);

struct RetryPolicy {
  int attempts = 4;
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::milliseconds max_backoff{5000};
};

/// Backoff before retry number `retry` (0-based): initial * 2^retry, capped.
std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int retry);

/// POSTs the request JSON to an http:// URL and retries transport errors
/// and 5xx answers with capped exponential backoff.
class HttpModelClient : public ModelClient {
 public:
  /// Throws std::invalid_argument for URLs that are not http://host[:port][/path].
  explicit HttpModelClient(const std::string& url, RetryPolicy policy = {},
                           std::chrono::seconds timeout = std::chrono::seconds(120));
  GenerationResponse generate(const GenerationRequest& request) override;

 private:
  std::string host_;
  int port_ = 80;
  std::string path_;
  RetryPolicy policy_;
  std::chrono::seconds timeout_;
};

}  // namespace txf::eval
